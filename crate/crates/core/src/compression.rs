//! Norm compressions `(||A_ij||)` of partitioned PSD matrices.
//!
//! [`reduce_theorem1`] carries out the constructive argument that the
//! trace-norm compression of a 3x3-block PSD matrix is PSD, recording every
//! intermediate matrix so each step can be checked independently.
//! [`sufficiency_check`] runs the argument that extends the result to any
//! unitarily invariant norm satisfying condition (b).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::MatrixFile;
use crate::matrix::{ComplexMatrix, C64};
use crate::norms::{condition_b, UINorm, CONDITION_B_TOL};
use crate::spectral::{
    diagonalize_unitary, hermitian_eigenvalues, is_psd, polar, singular_values, svd, PolarSide,
    PsdVerdict,
};

/// Stage labels of a [`ReductionTrace`], in order.
pub const STAGE_LABELS: [&str; 7] = [
    "pad", "polar12", "polar23", "diagW", "extractQ", "absQ", "assemble",
];

/// A square matrix together with its block sizes `(n_1, ..., n_m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MatrixFile", try_from = "MatrixFile")]
pub struct PartitionedMatrix {
    a: ComplexMatrix,
    sizes: Vec<usize>,
}

impl From<PartitionedMatrix> for MatrixFile {
    fn from(pm: PartitionedMatrix) -> Self {
        MatrixFile::from_matrix(&pm.a, Some(pm.sizes))
    }
}

impl TryFrom<MatrixFile> for PartitionedMatrix {
    type Error = Error;

    fn try_from(file: MatrixFile) -> Result<Self> {
        let sizes = file
            .partition
            .clone()
            .ok_or_else(|| Error::Partition("matrix file has no partition".into()))?;
        PartitionedMatrix::new(file.to_matrix()?, sizes)
    }
}

impl PartitionedMatrix {
    pub fn new(a: ComplexMatrix, sizes: Vec<usize>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Partition(format!(
                "partitioned matrices are square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if sizes.is_empty() || sizes.contains(&0) || sizes.iter().sum::<usize>() != a.rows() {
            return Err(Error::Partition(format!(
                "block sizes {sizes:?} do not split dimension {}",
                a.rows()
            )));
        }
        Ok(Self { a, sizes })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.sizes.len()
    }

    pub fn max_block(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    fn offset(&self, i: usize) -> usize {
        self.sizes[..i].iter().sum()
    }

    /// Block `A_ij`.
    pub fn block(&self, i: usize, j: usize) -> ComplexMatrix {
        self.a
            .submatrix(self.offset(i), self.offset(j), self.sizes[i], self.sizes[j])
    }

    /// Reorders blocks so that new block `i` is old block `order[i]`.
    pub fn permute_blocks(&self, order: &[usize]) -> Result<Self> {
        let m = self.num_blocks();
        let mut seen = vec![false; m];
        if order.len() != m
            || order
                .iter()
                .any(|&i| i >= m || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::Partition(format!(
                "{order:?} is not a permutation of 0..{m}"
            )));
        }
        let sizes: Vec<usize> = order.iter().map(|&i| self.sizes[i]).collect();
        let mut a = ComplexMatrix::zeros(self.a.rows(), self.a.cols());
        let mut row = 0;
        for &bi in order {
            let mut col = 0;
            for &bj in order {
                a.set_submatrix(row, col, &self.block(bi, bj));
                col += self.sizes[bj];
            }
            row += self.sizes[bi];
        }
        Self::new(a, sizes)
    }

    /// `max(1, ||A||_op)`.
    pub fn scale(&self) -> f64 {
        spectral_scale(&self.a)
    }

    pub fn psd_verdict(&self, tol: f64) -> PsdVerdict {
        is_psd(&self.a, tol).expect("partitioned matrices are square")
    }

    fn require_psd(&self, tol: f64) -> Result<PsdVerdict> {
        let v = self.psd_verdict(tol);
        if v.is_psd {
            Ok(v)
        } else {
            Err(Error::NotPsd {
                min_eigenvalue: v.min_eigenvalue,
            })
        }
    }
}

fn spectral_scale(a: &ComplexMatrix) -> f64 {
    hermitian_eigenvalues(a)
        .iter()
        .map(|v| v.abs())
        .fold(1.0, f64::max)
}

fn real_matrix(values: &[Vec<f64>]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(values)
}

/// The `m x m` matrix `(||A_ij||)` and its PSD verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormCompression {
    pub values: Vec<Vec<f64>>,
    pub verdict: PsdVerdict,
    pub norm_used: UINorm,
}

impl NormCompression {
    fn from_values(values: Vec<Vec<f64>>, norm: &UINorm, tol: f64) -> Self {
        let verdict = is_psd(&real_matrix(&values), tol).expect("square");
        NormCompression {
            values,
            verdict,
            norm_used: norm.clone(),
        }
    }

    pub fn values_matrix(&self) -> ComplexMatrix {
        real_matrix(&self.values)
    }

    pub fn determinant(&self) -> f64 {
        self.values_matrix().determinant().expect("square").re
    }
}

/// `values[i][j] = ||A_ij||` computed on the Hermitian part of `A`. Only the
/// upper triangle is evaluated; `A_ji = A_ij*` has the same singular values.
fn compression_values(pm: &PartitionedMatrix, norm: &UINorm) -> Result<Vec<Vec<f64>>> {
    if norm.ambient_dim() < pm.max_block() {
        return Err(Error::Dimension(format!(
            "norm lives on M_{} but the largest block is {}x{}",
            norm.ambient_dim(),
            pm.max_block(),
            pm.max_block()
        )));
    }
    let sym = PartitionedMatrix {
        a: pm.a.symmetrize(),
        sizes: pm.sizes.clone(),
    };
    let m = pm.num_blocks();
    let mut values = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i..m {
            let v = norm.eval(&sym.block(i, j))?;
            values[i][j] = v;
            values[j][i] = v;
        }
    }
    Ok(values)
}

/// Trace-norm compression `(tr|A_ij|)`.
pub fn trace_compression(pm: &PartitionedMatrix) -> Vec<Vec<f64>> {
    let norm = UINorm::trace(pm.max_block());
    compression_values(pm, &norm).expect("trace norm sized to the largest block")
}

/// `(||A_ij||)` for a PSD partitioned matrix. Non-PSD input is rejected.
pub fn compress(pm: &PartitionedMatrix, norm: &UINorm, tol: f64) -> Result<NormCompression> {
    pm.require_psd(tol)?;
    let values = compression_values(pm, norm)?;
    Ok(NormCompression::from_values(values, norm, tol))
}

/// Two-block compressions are always PSD; a violation is reported as an
/// internal-consistency error.
pub fn compress_m2(pm: &PartitionedMatrix, norm: &UINorm, tol: f64) -> Result<NormCompression> {
    if pm.num_blocks() != 2 {
        return Err(Error::Partition(format!(
            "expected 2 diagonal blocks, got {}",
            pm.num_blocks()
        )));
    }
    let c = compress(pm, norm, tol)?;
    if !c.verdict.is_psd {
        return Err(Error::internal(
            "compress_m2",
            format!(
                "2x2 compression has min eigenvalue {:e}",
                c.verdict.min_eigenvalue
            ),
        ));
    }
    Ok(c)
}

/// Entrywise moduli `(|b_ij|)`.
pub fn abs_entries(b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(b.rows(), b.cols(), |i, j| C64::new(b[(i, j)].norm(), 0.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub label: String,
    pub matrix: PartitionedMatrix,
}

/// Worst-case residuals of the reduction invariants, all absolute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionChecks {
    pub scale: f64,
    pub tolerance: f64,
    /// Smallest eigenvalue over all stage snapshots.
    pub min_stage_eigenvalue: f64,
    /// Largest eigenvalue drift of a congruence stage against the padded input.
    pub max_congruence_drift: f64,
    /// `max |tr Q_ij - tr|A_ij||`.
    pub max_trace_defect: f64,
    /// Smallest eigenvalue over all `Q_r`.
    pub min_q_eigenvalue: f64,
    /// Eigenvalue distance between `(Q_ij)` and `Q_1 + ... + Q_n` (direct sum).
    pub permutation_drift: f64,
}

/// Full record of the three-block reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub stages: Vec<Stage>,
    /// Unitary of the polar decomposition of `A_12`.
    pub u12: ComplexMatrix,
    /// Unitary of the polar decomposition of `A_23` after the first step.
    pub u23: ComplexMatrix,
    /// `W = x* diag(d) x` for the polar unitary `W` of `A_13`.
    pub x: ComplexMatrix,
    pub d: Vec<C64>,
    /// `Q_r` after the absolute-value step, one per diagonal index.
    pub q_triples: Vec<ComplexMatrix>,
    /// `q_blocks[i][j]` is the diagonal of `Q_ij`.
    pub q_blocks: Vec<Vec<Vec<C64>>>,
    /// `(tr|A_ij|)` of the input blocks.
    pub trace_matrix: Vec<Vec<f64>>,
    pub trace_verdict: PsdVerdict,
    pub checks: ReductionChecks,
}

impl ReductionTrace {
    pub fn stage(&self, label: &str) -> Option<&PartitionedMatrix> {
        self.stages
            .iter()
            .find(|s| s.label == label)
            .map(|s| &s.matrix)
    }
}

/// `C A C*` for block-diagonal `C = c_1 + c_2 + c_3` (direct sum).
fn congruence(a: &ComplexMatrix, factors: [&ComplexMatrix; 3]) -> ComplexMatrix {
    let c = ComplexMatrix::direct_sum(&factors);
    (&(&c * a) * &c.adjoint()).symmetrize()
}

fn eigen_drift(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Three-block reduction of a PSD matrix to a direct sum of 3x3 PSD
/// matrices with the same trace-norm compression.
///
/// Steps, each recorded as a stage:
/// 1. `pad`: pad every block to `n x n`, `n = max(n_1, n_2, n_3)`.
/// 2. `polar12`: with `A_12 = P_12 U`, conjugate by `I + U + I` so `A_12 = P_12`.
/// 3. `polar23`: with `A_23 = P_23 V`, conjugate by `I + I + V` so `A_23 = P_23`.
/// 4. `diagW`: with `A_13 = P_13 W` and `W = X* D X`, conjugate by
///    `X + X + X`; now `A_13 = (X P_13 X*) D`.
/// 5. `extractQ`: `Q~_r` collects the `(r, r)` entries of the nine blocks.
/// 6. `absQ`: `Q_r` replaces the `(1,3)` and `(3,1)` entries of `Q~_r` by
///    their moduli.
/// 7. `assemble`: `Q_ij = diag_r (Q_r)_ij`, a permutation of `Q_1 + ... + Q_n`.
pub fn reduce_theorem1(pm: &PartitionedMatrix, tol: f64) -> Result<ReductionTrace> {
    if pm.num_blocks() != 3 {
        return Err(Error::Partition(format!(
            "the reduction needs exactly 3 diagonal blocks, got {}",
            pm.num_blocks()
        )));
    }
    pm.require_psd(tol)?;
    let scale = pm.scale();
    let abs_tol = tol * scale;
    let n = pm.max_block();
    let id = ComplexMatrix::identity(n);
    let sizes = vec![n; 3];
    let blocks_of = |a: &ComplexMatrix, i: usize, j: usize| a.submatrix(i * n, j * n, n, n);

    let mut stages = Vec::with_capacity(STAGE_LABELS.len());
    let mut push = |label: &str, a: &ComplexMatrix, sizes: Vec<usize>| -> Result<()> {
        stages.push(Stage {
            label: label.to_string(),
            matrix: PartitionedMatrix::new(a.clone(), sizes)?,
        });
        Ok(())
    };

    // 1. pad
    let mut padded = ComplexMatrix::zeros(3 * n, 3 * n);
    let sym = pm.a.symmetrize();
    let sym_pm = PartitionedMatrix {
        a: sym,
        sizes: pm.sizes.clone(),
    };
    for i in 0..3 {
        for j in 0..3 {
            padded.set_submatrix(i * n, j * n, &sym_pm.block(i, j));
        }
    }
    push("pad", &padded, sizes.clone())?;

    // 2. polar12
    let u12 = polar(&blocks_of(&padded, 0, 1), PolarSide::Left)?.u;
    let a = congruence(&padded, [&id, &u12, &id]);
    push("polar12", &a, sizes.clone())?;

    // 3. polar23
    let u23 = polar(&blocks_of(&a, 1, 2), PolarSide::Left)?.u;
    let a = congruence(&a, [&id, &id, &u23]);
    push("polar23", &a, sizes.clone())?;

    // 4. diagW
    let w = polar(&blocks_of(&a, 0, 2), PolarSide::Left)?.u;
    let diag_w = diagonalize_unitary(&w, tol)?;
    let x = diag_w.x.clone();
    let a = congruence(&a, [&x, &x, &x]);
    push("diagW", &a, sizes.clone())?;

    // 5. extractQ
    let q_tilde: Vec<ComplexMatrix> = (0..n)
        .map(|r| ComplexMatrix::from_fn(3, 3, |i, j| a[(i * n + r, j * n + r)]).symmetrize())
        .collect();
    let q_tilde_refs: Vec<&ComplexMatrix> = q_tilde.iter().collect();
    push(
        "extractQ",
        &ComplexMatrix::direct_sum(&q_tilde_refs),
        vec![3; n],
    )?;

    // 6. absQ
    let q_triples: Vec<ComplexMatrix> = q_tilde
        .iter()
        .map(|q| {
            let mut q = q.clone();
            let m13 = C64::new(q[(0, 2)].norm(), 0.0);
            q[(0, 2)] = m13;
            q[(2, 0)] = m13;
            q
        })
        .collect();
    let q_refs: Vec<&ComplexMatrix> = q_triples.iter().collect();
    let direct = ComplexMatrix::direct_sum(&q_refs);
    push("absQ", &direct, vec![3; n])?;

    // 7. assemble
    let q_blocks: Vec<Vec<Vec<C64>>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| q_triples.iter().map(|q| q[(i, j)]).collect())
                .collect()
        })
        .collect();
    let mut assembled = ComplexMatrix::zeros(3 * n, 3 * n);
    for i in 0..3 {
        for j in 0..3 {
            assembled.set_submatrix(i * n, j * n, &ComplexMatrix::from_diag(&q_blocks[i][j]));
        }
    }
    push("assemble", &assembled, sizes.clone())?;

    // invariants
    let mut min_stage_eigenvalue = f64::INFINITY;
    let mut max_congruence_drift: f64 = 0.0;
    let pad_eigs = hermitian_eigenvalues(&padded);
    for stage in &stages {
        let eigs = hermitian_eigenvalues(stage.matrix.matrix());
        let lo = *eigs.last().expect("nonempty");
        min_stage_eigenvalue = min_stage_eigenvalue.min(lo);
        if lo < -abs_tol {
            return Err(Error::internal(
                &stage.label,
                format!("snapshot has eigenvalue {lo:e} below -{abs_tol:e}"),
            ));
        }
        if ["polar12", "polar23", "diagW"].contains(&stage.label.as_str()) {
            let drift = eigen_drift(&eigs, &pad_eigs);
            max_congruence_drift = max_congruence_drift.max(drift);
            if drift > abs_tol {
                return Err(Error::internal(
                    &stage.label,
                    format!("congruence moved the spectrum by {drift:e}"),
                ));
            }
        }
    }

    let trace_matrix = trace_compression(pm);
    let mut max_trace_defect: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let tr: C64 = q_blocks[i][j].iter().sum();
            let defect = (tr - C64::new(trace_matrix[i][j], 0.0)).norm();
            max_trace_defect = max_trace_defect.max(defect);
        }
    }
    if max_trace_defect > abs_tol {
        return Err(Error::internal(
            "assemble",
            format!("tr Q_ij differs from tr|A_ij| by {max_trace_defect:e}"),
        ));
    }

    let mut min_q_eigenvalue = f64::INFINITY;
    for (r, q) in q_triples.iter().enumerate() {
        let v = is_psd(q, tol)?;
        min_q_eigenvalue = min_q_eigenvalue.min(v.min_eigenvalue);
        if !v.is_psd {
            return Err(Error::internal(
                "absQ",
                format!("Q_{} has min eigenvalue {:e}", r + 1, v.min_eigenvalue),
            ));
        }
    }

    // (Q_ij) is P (Q_1 + ... + Q_n) P^T for the perfect-shuffle permutation
    // sending index (block i, diagonal r) to (triple r, slot i).
    let shuffled = ComplexMatrix::from_fn(3 * n, 3 * n, |row, col| {
        let (i, r) = (row / n, row % n);
        let (j, s) = (col / n, col % n);
        direct[(3 * r + i, 3 * s + j)]
    });
    if shuffled != assembled {
        return Err(Error::internal(
            "assemble",
            "(Q_ij) is not a shuffle of the Q_r",
        ));
    }
    let mut union: Vec<f64> = q_triples.iter().flat_map(hermitian_eigenvalues).collect();
    union.sort_by(|a, b| b.total_cmp(a));
    let permutation_drift = eigen_drift(&hermitian_eigenvalues(&assembled), &union);
    if permutation_drift > abs_tol {
        return Err(Error::internal(
            "assemble",
            format!("spectrum of (Q_ij) differs from that of the Q_r by {permutation_drift:e}"),
        ));
    }

    let trace_verdict = is_psd(&real_matrix(&trace_matrix), tol)?;
    Ok(ReductionTrace {
        stages,
        u12,
        u23,
        x,
        d: diag_w.d,
        q_triples,
        q_blocks,
        trace_matrix,
        trace_verdict,
        checks: ReductionChecks {
            scale,
            tolerance: abs_tol,
            min_stage_eigenvalue,
            max_congruence_drift,
            max_trace_defect,
            min_q_eigenvalue,
            permutation_drift,
        },
    })
}

/// Outcome of [`sufficiency_check`], in the caller's block order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SufficiencyOutcome {
    pub compression: NormCompression,
    /// `||A_33|| - tr|Â_33|` for the largest block, clamped at 0.
    pub epsilon: f64,
    pub k: usize,
    /// Block permutation that sorted the sizes ascending.
    pub block_order: Vec<usize>,
    /// `(tr|Â_ij|)`; equals `values - diag(0, 0, epsilon)` in sorted order.
    pub trace_part: Vec<Vec<f64>>,
}

fn unpermute(values: &[Vec<f64>], order: &[usize]) -> Vec<Vec<f64>> {
    let m = order.len();
    let mut out = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            out[order[i]][order[j]] = values[i][j];
        }
    }
    out
}

/// Decides positivity of a three-block compression for a norm satisfying
/// condition (b) at `k = min(n_1 + n_2, n)`, by reduction to the trace norm.
///
/// With sizes sorted so `n_1 <= n_2 <= n`: if `k = n` every block has rank
/// at most `k`, so `||A_ij|| = tr|A_ij|`. Otherwise a unitary `V` zeroes the
/// last `n - k` columns of `(A_13; A_23) V`; deleting those rows and columns
/// leaves `Â` with `(||A_ij||) = (tr|Â_ij|) + diag(0, 0, epsilon)`,
/// `epsilon >= 0`. Both identities hold for the norm scaled to
/// `||E_11|| = 1`; reported values are scaled back by `||E_11||`.
pub fn sufficiency_check(
    pm: &PartitionedMatrix,
    norm: &UINorm,
    tol: f64,
) -> Result<SufficiencyOutcome> {
    if pm.num_blocks() != 3 {
        return Err(Error::Partition(format!(
            "expected 3 diagonal blocks, got {}",
            pm.num_blocks()
        )));
    }
    pm.require_psd(tol)?;
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by_key(|&i| pm.sizes[i]);
    let sorted = pm.permute_blocks(&order)?;
    let (n1, n2, n) = (sorted.sizes[0], sorted.sizes[1], sorted.sizes[2]);
    let k = (n1 + n2).min(n);
    if norm.ambient_dim() < n {
        return Err(Error::Dimension(format!(
            "norm lives on M_{} but the largest block is {n}x{n}",
            norm.ambient_dim()
        )));
    }
    let cert = condition_b(norm, k, CONDITION_B_TOL)?;
    if !cert.holds {
        return Err(Error::Precondition(format!(
            "{norm} fails condition (b) at k = {k} (slack {:e}); no positivity guarantee",
            cert.slack
        )));
    }
    let abs_tol = tol * sorted.scale();
    let gamma = norm.e11_value();
    let values = compression_values(&sorted, &norm.normalize())?;

    let (trace_part, epsilon) = if k == n {
        let traces = trace_compression(&sorted);
        for i in 0..3 {
            for j in 0..3 {
                let gap = (values[i][j] - traces[i][j]).abs();
                if gap > abs_tol {
                    return Err(Error::internal(
                        "rank",
                        format!("block ({i},{j}) has rank <= k but ||A_ij|| - tr|A_ij| = {gap:e}"),
                    ));
                }
            }
        }
        (traces, 0.0)
    } else {
        let stacked = sorted.a.symmetrize().submatrix(0, n1 + n2, n1 + n2, n);
        let v = svd(&stacked).v;
        let tail = (&stacked * &v).submatrix(0, k, n1 + n2, n - k).max_abs();
        if tail > abs_tol {
            return Err(Error::internal(
                "zero-columns",
                format!("(A_13; A_23) V keeps entries of size {tail:e} past column {k}"),
            ));
        }
        let lift = ComplexMatrix::direct_sum(&[&ComplexMatrix::identity(n1 + n2), &v]);
        let rotated = (&(&lift.adjoint() * &sorted.a) * &lift).symmetrize();
        let hat = PartitionedMatrix::new(
            rotated.submatrix(0, 0, n1 + n2 + k, n1 + n2 + k),
            vec![n1, n2, k],
        )?;
        let traces = trace_compression(&hat);
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) == (2, 2) {
                    continue;
                }
                let gap = (values[i][j] - traces[i][j]).abs();
                if gap > abs_tol {
                    return Err(Error::internal(
                        "truncate",
                        format!("||A_ij|| and tr|Â_ij| differ by {gap:e} at ({i},{j})"),
                    ));
                }
            }
        }
        let eps = values[2][2] - traces[2][2];
        if eps < -abs_tol {
            return Err(Error::internal(
                "epsilon",
                format!("epsilon = {eps:e} is negative"),
            ));
        }
        (traces, eps.max(0.0))
    };

    let rescale = |m: Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        let m: Vec<Vec<f64>> = m
            .into_iter()
            .map(|row| row.into_iter().map(|x| x * gamma).collect())
            .collect();
        unpermute(&m, &order)
    };
    let compression = NormCompression::from_values(rescale(values), norm, tol);
    if !compression.verdict.is_psd {
        return Err(Error::internal(
            "verdict",
            format!(
                "compression has min eigenvalue {:e} although condition (b) holds",
                compression.verdict.min_eigenvalue
            ),
        ));
    }
    Ok(SufficiencyOutcome {
        compression,
        epsilon: epsilon * gamma,
        k,
        trace_part: rescale(trace_part),
        block_order: order,
    })
}

/// `tr|X|` (sum of singular values).
pub fn trace_norm(x: &ComplexMatrix) -> f64 {
    singular_values(x).iter().sum()
}
