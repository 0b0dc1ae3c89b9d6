//! Spectral primitives: Hermitian eigendecomposition, SVD, polar
//! decomposition, unitary diagonalization and PSD certification.
//!
//! Both decompositions are Jacobi methods. The Hermitian solver is the
//! classical two-sided cyclic Jacobi iteration with a complex phase
//! rotation folded into each plane rotation. The SVD runs the same plane
//! rotations one-sided (Hestenes), on the columns of `X` itself, so small
//! singular values are resolved to `eps * ||X||` instead of the
//! `sqrt(eps) * ||X||` one would get from the eigenvalues of `X*X`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

/// Relative tolerance used when none is supplied.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Eigenvalues of `H = (W + W*)/2` closer than this are treated as one
/// cluster by [`diagonalize_unitary`].
pub const CLUSTER_GAP: f64 = 1e-7;

const MAX_SWEEPS: usize = 80;
const ROTATION_EPS: f64 = 4.0 * f64::EPSILON;

/// Outcome of a positive semi-definiteness test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    /// `max |A - A*|` over all entries.
    pub hermitian_defect: f64,
    /// Absolute threshold actually applied: `tol * max(1, ||A||_op)`.
    pub tolerance_used: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarSide {
    /// `X = P U` with `P = (X X*)^{1/2}`.
    Left,
    /// `X = U |X|` with `|X| = (X* X)^{1/2}`.
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarFactors {
    pub p: ComplexMatrix,
    pub u: ComplexMatrix,
    pub side: PolarSide,
}

/// `W = X* diag(d) X` with `X` unitary and `|d_j| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryDiagonalization {
    pub x: ComplexMatrix,
    pub d: Vec<C64>,
}

/// Full singular value decomposition `X = U Σ V*`.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd {
    /// `rows x rows`, unitary.
    pub u: ComplexMatrix,
    /// `min(rows, cols)` values, descending.
    pub s: Vec<f64>,
    /// `cols x cols`, unitary.
    pub v: ComplexMatrix,
}

impl Svd {
    /// Recomposes `U Σ V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut sigma = ComplexMatrix::zeros(m, n);
        for (j, &s) in self.s.iter().enumerate() {
            sigma[(j, j)] = C64::new(s, 0.0);
        }
        &(&self.u * &sigma) * &self.v.adjoint()
    }
}

/// Plane rotation `J = P G` acting on coordinates `(p, q)`, where `P`
/// multiplies coordinate `q` by `phase` and `G` is the real rotation
/// `[[c, s], [-s, c]]`. Chosen so that `J* M J` is diagonal for the 2x2
/// Hermitian `M = [[app, b], [conj(b), aqq]]`.
#[derive(Clone, Copy)]
struct Rotation {
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    phase: C64,
}

impl Rotation {
    fn annihilating(p: usize, q: usize, app: f64, aqq: f64, b: C64) -> Self {
        let abs_b = b.norm();
        // Rescale before normalizing: for subnormal `b` the quotient
        // `conj(b) / |b|` is visibly off the unit circle.
        let unit = b.conj() / b.re.abs().max(b.im.abs());
        let phase = unit / unit.norm();
        let theta = (aqq - app) / (2.0 * abs_b);
        let t = if theta.abs() > 1e150 {
            0.5 / theta
        } else {
            theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        Rotation {
            p,
            q,
            c,
            s: t * c,
            phase,
        }
    }

    /// `M <- M J`.
    fn apply_cols(&self, m: &mut ComplexMatrix) {
        for i in 0..m.rows() {
            let mip = m[(i, self.p)];
            let miq = m[(i, self.q)] * self.phase;
            m[(i, self.p)] = mip * self.c - miq * self.s;
            m[(i, self.q)] = mip * self.s + miq * self.c;
        }
    }

    /// `M <- J* M`.
    fn apply_rows(&self, m: &mut ComplexMatrix) {
        let phase = self.phase.conj();
        for j in 0..m.cols() {
            let mpj = m[(self.p, j)];
            let mqj = m[(self.q, j)] * phase;
            m[(self.p, j)] = mpj * self.c - mqj * self.s;
            m[(self.q, j)] = mpj * self.s + mqj * self.c;
        }
    }
}

/// Cyclic Jacobi on an exactly Hermitian matrix. Returns eigenvalues in
/// descending order with matching eigenvector columns.
fn jacobi_hermitian(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = h.rows();
    let mut a = h.clone();
    let mut q = ComplexMatrix::identity(n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for r in (p + 1)..n {
                let b = a[(p, r)];
                let app = a[(p, p)].re;
                let arr = a[(r, r)].re;
                if b.norm() <= ROTATION_EPS * (app.abs() * arr.abs()).sqrt()
                    || b.norm() < f64::MIN_POSITIVE
                {
                    continue;
                }
                rotated = true;
                let rot = Rotation::annihilating(p, r, app, arr, b);
                rot.apply_cols(&mut a);
                rot.apply_rows(&mut a);
                rot.apply_cols(&mut q);
                a[(p, r)] = ZERO;
                a[(r, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(r, r)] = C64::new(a[(r, r)].re, 0.0);
            }
        }
        if !rotated {
            break;
        }
    }
    let values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    sort_descending(values, q)
}

fn sort_descending(values: Vec<f64>, vectors: ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let sorted = order.iter().map(|&i| values[i]).collect();
    let permuted = ComplexMatrix::from_fn(vectors.rows(), vectors.cols(), |i, j| {
        vectors[(i, order[j])]
    });
    (sorted, permuted)
}

/// Eigendecomposition `A = Q diag(λ) Q*` of a Hermitian matrix, eigenvalues
/// descending. The input is symmetrized as `(A + A*)/2` first; a Hermitian
/// defect above `tol * max(1, ||A||_op)` is rejected.
pub fn eig_hermitian(a: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    a.ensure_square("eig_hermitian")?;
    let (values, q) = jacobi_hermitian(&a.symmetrize());
    let scale = spectral_scale(&values);
    let defect = a.hermitian_defect();
    if defect > tol * scale {
        return Err(Error::NotHermitian {
            defect,
            allowed: tol * scale,
        });
    }
    Ok((values, q))
}

fn spectral_scale(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().map(|v| v.abs()).fold(1.0, f64::max)
}

/// One-sided Jacobi on the columns of `g`, accumulating the rotations in `v`.
fn hestenes(g: &mut ComplexMatrix, v: &mut ComplexMatrix) {
    let n = g.cols();
    let m = g.rows();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, ZERO);
                for i in 0..m {
                    let gp = g[(i, p)];
                    let gq = g[(i, q)];
                    alpha += gp.norm_sqr();
                    beta += gq.norm_sqr();
                    gamma += gp.conj() * gq;
                }
                if gamma.norm() <= ROTATION_EPS * (alpha * beta).sqrt()
                    || gamma.norm() < f64::MIN_POSITIVE
                {
                    continue;
                }
                rotated = true;
                let rot = Rotation::annihilating(p, q, alpha, beta, gamma);
                rot.apply_cols(g);
                rot.apply_cols(v);
            }
        }
        if !rotated {
            break;
        }
    }
}

fn column_norm(m: &ComplexMatrix, j: usize) -> f64 {
    (0..m.rows())
        .map(|i| m[(i, j)].norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Extends the given orthonormal columns (some slots may be empty) to a full
/// unitary of dimension `dim`, filling empty slots in order with
/// Gram-Schmidt-orthogonalized standard basis vectors.
fn complete_unitary(slots: Vec<Option<Vec<C64>>>, dim: usize) -> ComplexMatrix {
    debug_assert_eq!(slots.len(), dim);
    let mut basis: Vec<Vec<C64>> = slots.iter().flatten().cloned().collect();
    let mut extra = Vec::new();
    while basis.len() < dim {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for e in 0..dim {
            let mut cand = vec![ZERO; dim];
            cand[e] = ONE;
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for b in &basis {
                    let proj: C64 = b.iter().zip(&cand).map(|(x, y)| x.conj() * y).sum();
                    for (c, x) in cand.iter_mut().zip(b) {
                        *c -= proj * x;
                    }
                }
            }
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
                best = Some((norm, cand));
            }
        }
        let (norm, mut cand) = best.expect("dim > 0");
        for c in cand.iter_mut() {
            *c /= norm;
        }
        basis.push(cand.clone());
        extra.push(cand);
    }
    let mut extra = extra.into_iter();
    let columns: Vec<Vec<C64>> = slots
        .into_iter()
        .map(|s| s.unwrap_or_else(|| extra.next().expect("enough completions")))
        .collect();
    ComplexMatrix::from_fn(dim, dim, |i, j| columns[j][i])
}

/// Full SVD with unitary `U` and `V`. Zero singular values get an arbitrary
/// orthonormal completion of the corresponding singular vectors.
pub fn svd(x: &ComplexMatrix) -> Svd {
    let (m, n) = (x.rows(), x.cols());
    // Wide inputs are padded with zero rows; column rotations keep them zero.
    let mut g = if m >= n {
        x.clone()
    } else {
        x.zero_pad(n, n).expect("padding grows")
    };
    let mut v = ComplexMatrix::identity(n);
    hestenes(&mut g, &mut v);

    let norms: Vec<f64> = (0..n).map(|j| column_norm(&g, j)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let v = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    let k = m.min(n);
    let s: Vec<f64> = order[..k].iter().map(|&j| norms[j]).collect();

    let mut slots: Vec<Option<Vec<C64>>> = vec![None; m];
    for (slot, &j) in slots.iter_mut().zip(&order[..k]) {
        let sigma = norms[j];
        if sigma > f64::MIN_POSITIVE * 1e6 {
            *slot = Some((0..m).map(|i| g[(i, j)] / sigma).collect());
        }
    }
    let u = complete_unitary(slots, m);
    Svd { u, s, v }
}

/// Singular values `s_1 >= ... >= s_min(rows, cols) >= 0`.
pub fn singular_values(x: &ComplexMatrix) -> Vec<f64> {
    svd(x).s
}

/// Largest singular value.
pub fn operator_norm(x: &ComplexMatrix) -> f64 {
    singular_values(x).first().copied().unwrap_or(0.0)
}

fn weighted_gram(basis: &ComplexMatrix, weights: &[f64]) -> ComplexMatrix {
    let dim = basis.rows();
    let mut out = ComplexMatrix::from_fn(dim, dim, |i, j| {
        weights
            .iter()
            .enumerate()
            .map(|(k, &w)| basis[(i, k)] * basis[(j, k)].conj() * w)
            .sum()
    });
    out = out.symmetrize();
    out
}

/// `|X| = (X* X)^{1/2}`, a `cols x cols` PSD matrix.
pub fn abs_matrix(x: &ComplexMatrix) -> ComplexMatrix {
    let d = svd(x);
    let mut weights = d.s.clone();
    weights.resize(x.cols(), 0.0);
    weighted_gram(&d.v, &weights)
}

/// Polar decomposition of a square matrix. On singular input the unitary
/// factor is one valid completion among many.
pub fn polar(x: &ComplexMatrix, side: PolarSide) -> Result<PolarFactors> {
    x.ensure_square("polar")?;
    let d = svd(x);
    let u = &d.u * &d.v.adjoint();
    let p = match side {
        PolarSide::Left => weighted_gram(&d.u, &d.s),
        PolarSide::Right => weighted_gram(&d.v, &d.s),
    };
    Ok(PolarFactors { p, u, side })
}

/// `max |W* W - I|`.
pub fn unitary_defect(w: &ComplexMatrix) -> f64 {
    let n = w.cols();
    (&w.adjoint() * w).max_abs_diff(&ComplexMatrix::identity(n))
}

/// Writes a unitary `W` as `X* diag(d) X`.
///
/// Eigenvectors come from the Hermitian part `H = (W + W*)/2`. Where `H`
/// has (near-)repeated eigenvalues the skew part `K = (W - W*)/(2i)` is
/// diagonalized inside that eigenspace; `H` and `K` commute because `W` is
/// normal, so this splits every remaining degeneracy.
pub fn diagonalize_unitary(w: &ComplexMatrix, tol: f64) -> Result<UnitaryDiagonalization> {
    w.ensure_square("diagonalize_unitary")?;
    let n = w.rows();
    let defect = unitary_defect(w);
    let allowed = tol * n as f64;
    if defect > allowed {
        return Err(Error::NotUnitary { defect, allowed });
    }
    let (values, mut q) = jacobi_hermitian(&w.symmetrize());
    // K = (W - W*)/(2i)
    let skew = (w - &w.adjoint()).scale(C64::new(0.0, -0.5)).symmetrize();

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end - 1] - values[end] < CLUSTER_GAP {
            end += 1;
        }
        if end - start > 1 {
            let basis = q.submatrix(0, start, n, end - start);
            let restricted = &(&basis.adjoint() * &skew) * &basis;
            let (_, y) = jacobi_hermitian(&restricted.symmetrize());
            q.set_submatrix(0, start, &(&basis * &y));
        }
        start = end;
    }

    let wq = w * &q;
    let d = (0..n)
        .map(|j| {
            let mu: C64 = (0..n).map(|i| q[(i, j)].conj() * wq[(i, j)]).sum();
            let r = mu.norm();
            if r > 0.0 {
                mu / r
            } else {
                ONE
            }
        })
        .collect();
    Ok(UnitaryDiagonalization { x: q.adjoint(), d })
}

impl UnitaryDiagonalization {
    /// `X* diag(d) X`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        &(&self.x.adjoint() * &ComplexMatrix::from_diag(&self.d)) * &self.x
    }
}

/// Certifies positive semi-definiteness of the Hermitian part of `a`.
///
/// `tol` is relative: the verdict uses `tol * max(1, ||A||_op)` both as
/// the eigenvalue floor and as the allowed Hermitian defect.
pub fn is_psd(a: &ComplexMatrix, tol: f64) -> Result<PsdVerdict> {
    a.ensure_square("is_psd")?;
    let (values, _) = jacobi_hermitian(&a.symmetrize());
    let min_eigenvalue = values.last().copied().unwrap_or(0.0);
    let hermitian_defect = a.hermitian_defect();
    let tolerance_used = tol * spectral_scale(&values);
    Ok(PsdVerdict {
        is_psd: min_eigenvalue >= -tolerance_used && hermitian_defect <= tolerance_used,
        min_eigenvalue,
        hermitian_defect,
        tolerance_used,
    })
}

/// Eigenvalues of the Hermitian part, descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    jacobi_hermitian(&a.symmetrize()).0
}

/// Entrywise zero padding; see [`ComplexMatrix::zero_pad`].
pub fn zero_pad(x: &ComplexMatrix, rows: usize, cols: usize) -> Result<ComplexMatrix> {
    x.zero_pad(rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows)
    }

    #[test]
    fn eig_of_diagonal_is_sorted_permutation() {
        let (vals, q) =
            eig_hermitian(&ComplexMatrix::from_real_diag(&[1.0, 3.0, 2.0]), 1e-8).unwrap();
        assert_eq!(vals, vec![3.0, 2.0, 1.0]);
        for j in 0..3 {
            let nonzero: Vec<_> = (0..3).filter(|&i| q[(i, j)].norm() > 0.5).collect();
            assert_eq!(nonzero.len(), 1);
        }
    }

    #[test]
    fn eig_of_swap() {
        let (vals, _) = eig_hermitian(&real(&[&[0.0, 1.0], &[1.0, 0.0]]), 1e-8).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_rejects_non_hermitian_and_non_square() {
        let a = real(&[&[1.0, 5.0], &[0.0, 1.0]]);
        assert!(matches!(
            eig_hermitian(&a, 1e-8),
            Err(Error::NotHermitian { .. })
        ));
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(eig_hermitian(&b, 1e-8), Err(Error::Dimension(_))));
    }

    #[test]
    fn complex_hermitian_eigenpairs() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                C64::new(2.0, 0.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, -1.0),
                C64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let (vals, q) = eig_hermitian(&a, 1e-8).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        let rebuilt = &(&q * &ComplexMatrix::from_real_diag(&vals)) * &q.adjoint();
        assert!(rebuilt.max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn singular_values_examples() {
        assert_eq!(
            singular_values(&ComplexMatrix::from_real_diag(&[3.0, -4.0])),
            vec![4.0, 3.0]
        );
        let wide = real(&[&[1.0, 0.0, 1.0, 0.0], &[0.0, 1.0, 0.0, 1.0]]);
        let s = singular_values(&wide);
        assert_eq!(s.len(), 2);
        for v in s {
            assert!((v - 2f64.sqrt()).abs() < 1e-15);
        }
        assert_eq!(singular_values(&ComplexMatrix::zeros(3, 2)), vec![0.0, 0.0]);
    }

    #[test]
    fn abs_matrix_examples() {
        let a = abs_matrix(&ComplexMatrix::from_real_diag(&[-2.0, 5.0]));
        assert!(a.max_abs_diff(&ComplexMatrix::from_real_diag(&[2.0, 5.0])) < 1e-15);
        let nil = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(abs_matrix(&nil).max_abs_diff(&ComplexMatrix::from_real_diag(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn polar_examples() {
        let f = polar(&ComplexMatrix::from_real_diag(&[2.0, 3.0]), PolarSide::Left).unwrap();
        assert!(f.p.max_abs_diff(&ComplexMatrix::from_real_diag(&[2.0, 3.0])) < 1e-15);
        assert!(f.u.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);

        let nil = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let f = polar(&nil, PolarSide::Left).unwrap();
        assert!((&f.p * &f.u).max_abs_diff(&nil) < 1e-15);
        assert!(unitary_defect(&f.u) < 1e-15);
        assert!(f.p.max_abs_diff(&ComplexMatrix::from_real_diag(&[1.0, 0.0])) < 1e-15);

        let rot = real(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let f = polar(&rot, PolarSide::Left).unwrap();
        assert!(f.p.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        assert!(f.u.max_abs_diff(&rot) < 1e-15);

        assert!(matches!(
            polar(&ComplexMatrix::zeros(2, 3), PolarSide::Right),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn diagonalize_simple_unitaries() {
        let id = diagonalize_unitary(&ComplexMatrix::identity(3), 1e-8).unwrap();
        assert!(id.d.iter().all(|d| (d - ONE).norm() < 1e-15));
        assert!(id.reconstruct().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);

        let w = ComplexMatrix::from_diag(&[C64::new(0.0, 1.0), C64::new(-1.0, 0.0)]);
        let dz = diagonalize_unitary(&w, 1e-8).unwrap();
        let mut d = dz.d.clone();
        d.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((d[0] - C64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((d[1] - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(dz.reconstruct().max_abs_diff(&w) < 1e-14);

        // i and -i share a Hermitian part of zero; the skew part splits them.
        let w = ComplexMatrix::from_diag(&[C64::new(0.0, 1.0), C64::new(0.0, -1.0)]);
        assert!(
            diagonalize_unitary(&w, 1e-8)
                .unwrap()
                .reconstruct()
                .max_abs_diff(&w)
                < 1e-14
        );

        assert!(matches!(
            diagonalize_unitary(&ComplexMatrix::from_real_diag(&[1.0, 2.0]), 1e-8),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn psd_verdicts() {
        let v = is_psd(&real(&[&[1.0, 2.0], &[2.0, 1.0]]), 1e-8).unwrap();
        assert!(!v.is_psd);
        assert!((v.min_eigenvalue + 1.0).abs() < 1e-14);
        let v = is_psd(&ComplexMatrix::identity(4), 1e-8).unwrap();
        assert!(v.is_psd);
        assert_eq!(v.min_eigenvalue, 1.0);
        let skewed = real(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(!is_psd(&skewed, 1e-8).unwrap().is_psd);
    }
}
