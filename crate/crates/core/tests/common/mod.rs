//! Oracles shared by the integration tests. Nothing here calls into the
//! library's spectral kernels except where noted.

#![allow(dead_code)]

use normcomp::norms::{SchattenP, UINorm};
use normcomp::spectral::hermitian_eigenvalues;
use normcomp::{ComplexMatrix, C64};

/// 3x3 determinant by cofactor expansion along the first row.
pub fn det3(m: &[Vec<f64>]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Whether `(A + A*)/2 + shift I` admits a Cholesky factorization with
/// diagonal pivoting, i.e. no pivot drops to zero or below.
pub fn cholesky_feasible(a: &ComplexMatrix, shift: f64) -> bool {
    let n = a.rows();
    let mut m: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (a[(i, j)] + a[(j, i)].conj()) * 0.5
                        + if i == j {
                            C64::new(shift, 0.0)
                        } else {
                            C64::new(0.0, 0.0)
                        }
                })
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let (pos, &p) = active
            .iter()
            .enumerate()
            .max_by(|x, y| m[*x.1][*x.1].re.total_cmp(&m[*y.1][*y.1].re))
            .unwrap();
        let pivot = m[p][p].re;
        if pivot <= 0.0 {
            return false;
        }
        active.swap_remove(pos);
        for &i in &active {
            for &j in &active {
                let update = m[i][p] * m[p][j] / pivot;
                m[i][j] -= update;
            }
        }
    }
    true
}

/// Half the sum of `|eig|` of the Hermitian dilation `[[0, X], [X*, 0]]`,
/// whose eigenvalues are `±s_j(X)`. Avoids the SVD path, and unlike
/// `sqrt(eig(X* X))` keeps small singular values accurate.
pub fn trace_norm_oracle(x: &ComplexMatrix) -> f64 {
    let (m, n) = (x.rows(), x.cols());
    let mut dilation = ComplexMatrix::zeros(m + n, m + n);
    dilation.set_submatrix(0, m, x);
    dilation.set_submatrix(m, 0, &x.adjoint());
    hermitian_eigenvalues(&dilation)
        .iter()
        .map(|l| l.abs())
        .sum::<f64>()
        / 2.0
}

/// Eigenvalues in descending order, differences elementwise.
pub fn spectrum_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// A norm family member described independently of the library, so closed
/// forms can be evaluated without calling `eval`.
#[derive(Debug, Clone)]
pub enum GridNorm {
    Schatten(SchattenP),
    KyFan(usize),
    /// Weights on `M_5`, truncated to the ambient dimension.
    C(Vec<f64>),
    MaxC(Vec<Vec<f64>>),
}

impl GridNorm {
    /// `None` when the family member does not exist on `M_n`.
    pub fn on(&self, n: usize) -> Option<UINorm> {
        match self {
            GridNorm::Schatten(SchattenP::Infinity) => Some(UINorm::operator(n)),
            GridNorm::Schatten(SchattenP::Finite(p)) => UINorm::schatten(*p, n).ok(),
            GridNorm::KyFan(r) => (*r <= n).then(|| UINorm::ky_fan(*r, n).unwrap()),
            GridNorm::C(v) => Some(UINorm::c_norm(v[..n].to_vec()).unwrap()),
            GridNorm::MaxC(vs) => {
                Some(UINorm::max_c_norm(vs.iter().map(|v| v[..n].to_vec()).collect()).unwrap())
            }
        }
    }

    /// `||E_11 + ... + E_kk||` on `M_n`.
    pub fn partial_identity(&self, n: usize, k: usize) -> f64 {
        let kf = k as f64;
        match self {
            GridNorm::Schatten(SchattenP::Infinity) => 1.0,
            GridNorm::Schatten(SchattenP::Finite(p)) => kf.powf(1.0 / p),
            GridNorm::KyFan(r) => k.min(*r) as f64,
            GridNorm::C(v) => v[..n][..k].iter().sum(),
            GridNorm::MaxC(vs) => vs
                .iter()
                .map(|v| v[..k].iter().sum::<f64>())
                .fold(0.0, f64::max),
        }
    }

    /// `k ||E_11|| - ||E_11 + ... + E_kk||` for the norm scaled to `||E_11|| = 1`.
    pub fn slack(&self, n: usize, k: usize) -> f64 {
        k as f64 - self.partial_identity(n, k) / self.partial_identity(n, 1)
    }

    /// The closed-form verdict of condition (b).
    pub fn holds(&self, n: usize, k: usize) -> bool {
        k <= n
            && match self {
                GridNorm::Schatten(SchattenP::Finite(p)) => *p == 1.0 || k == 1,
                GridNorm::Schatten(SchattenP::Infinity) => k == 1,
                GridNorm::KyFan(r) => *r >= k,
                GridNorm::C(v) => v[..k].iter().all(|&x| x == v[0]),
                GridNorm::MaxC(vs) => {
                    let top = vs.iter().map(|v| v[0]).fold(0.0, f64::max);
                    vs.iter().any(|v| v[..k].iter().all(|&x| x == top))
                }
            }
    }

    /// Largest `s <= n` with condition (b) at `s`.
    pub fn flat_prefix(&self, n: usize) -> usize {
        (1..=n).filter(|&s| self.holds(n, s)).max().unwrap_or(1)
    }
}

/// 26 norm instances across every implemented family.
pub fn norm_grid() -> Vec<GridNorm> {
    use GridNorm::*;
    let mut grid = vec![
        Schatten(SchattenP::Finite(1.0)),
        Schatten(SchattenP::Finite(1.5)),
        Schatten(SchattenP::Finite(2.0)),
        Schatten(SchattenP::Finite(3.0)),
        Schatten(SchattenP::Finite(7.5)),
        Schatten(SchattenP::Infinity),
    ];
    grid.extend((1..=5).map(KyFan));
    for v in [
        [1.0, 1.0, 1.0, 1.0, 1.0],
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.5, 0.5, 0.0],
        [1.0, 0.5, 0.25, 0.125, 0.0625],
        [2.0, 2.0, 2.0, 1.0, 1.0],
        [3.0, 3.0, 3.0, 3.0, 0.5],
        [1.0, 0.75, 0.75, 0.75, 0.75],
        [0.5, 0.5, 0.25, 0.0, 0.0],
    ] {
        grid.push(C(v.to_vec()));
    }
    for vs in [
        vec![vec![1.0, 1.0, 0.0, 0.0, 0.0], vec![1.0, 0.5, 0.5, 0.5, 0.5]],
        vec![
            vec![1.0, 0.25, 0.0, 0.0, 0.0],
            vec![0.5, 0.5, 0.5, 0.5, 0.5],
        ],
        vec![
            vec![2.0, 1.0, 1.0, 0.0, 0.0],
            vec![2.0, 2.0, 0.0, 0.0, 0.0],
            vec![1.0, 1.0, 1.0, 1.0, 1.0],
        ],
        vec![vec![1.0, 1.0, 1.0, 0.0, 0.0]],
        vec![
            vec![0.75, 0.5, 0.25, 0.0, 0.0],
            vec![0.75, 0.75, 0.75, 0.75, 0.1],
        ],
        vec![vec![1.0, 0.9, 0.8, 0.7, 0.6], vec![0.9, 0.9, 0.9, 0.9, 0.9]],
        vec![vec![4.0, 4.0, 4.0, 4.0, 4.0], vec![4.0, 1.0, 1.0, 1.0, 1.0]],
    ] {
        grid.push(MaxC(vs));
    }
    grid
}
