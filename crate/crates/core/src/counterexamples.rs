//! Certified counterexamples: PSD block matrices whose norm compression is
//! not PSD.
//!
//! Every generator checks its own output before returning it: the block
//! matrix must pass [`is_psd`] and the compression must fail it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::compression::{abs_entries, compress, NormCompression, PartitionedMatrix};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::norms::{condition_b, largest_flat_prefix, SchattenP, UINorm, CONDITION_B_TOL};
use crate::parallel::{find_first, Execution};
use crate::random::{real_gaussian, trial_rng};
use crate::spectral::is_psd;

/// Seed used by [`thompson_search`] callers that do not pick one.
pub const DEFAULT_THOMPSON_SEED: u64 = 0x7407_5EED;

/// Tolerance for the 4x4 seed search.
pub const THOMPSON_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Real(f64),
    Text(String),
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        if v.is_finite() {
            Param::Real(v)
        } else {
            Param::Text(if v > 0.0 { "inf" } else { "-inf" }.into())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub kind: String,
    pub pm: PartitionedMatrix,
    pub norm: UINorm,
    pub compression: NormCompression,
    /// Determinant or min eigenvalue of the compression; negative.
    pub witness: f64,
    pub construction_params: BTreeMap<String, Param>,
}

fn certify(
    kind: &str,
    pm: PartitionedMatrix,
    norm: UINorm,
    compression: NormCompression,
    witness: f64,
    construction_params: BTreeMap<String, Param>,
    tol: f64,
) -> Result<CounterexampleReport> {
    let input = pm.psd_verdict(tol);
    if !input.is_psd {
        return Err(Error::internal(
            kind,
            format!(
                "constructed matrix is not PSD (min eigenvalue {:e})",
                input.min_eigenvalue
            ),
        ));
    }
    let v = &compression.verdict;
    if v.is_psd || v.min_eigenvalue >= -v.tolerance_used {
        return Err(Error::internal(
            kind,
            format!("compression is PSD (min eigenvalue {:e})", v.min_eigenvalue),
        ));
    }
    if witness >= 0.0 {
        return Err(Error::internal(
            kind,
            format!("witness {witness:e} is not negative"),
        ));
    }
    Ok(CounterexampleReport {
        kind: kind.to_string(),
        pm,
        norm,
        compression,
        witness,
        construction_params,
    })
}

/// The 4x4 matrix `[[I_2, I_2], [I_2, I_2]]` split as `(1, 1, 2)`.
pub fn schatten_example_matrix() -> PartitionedMatrix {
    let i2 = ComplexMatrix::identity(2);
    let mut a = ComplexMatrix::zeros(4, 4);
    for (r, c) in [(0, 0), (0, 2), (2, 0), (2, 2)] {
        a.set_submatrix(r, c, &i2);
    }
    PartitionedMatrix::new(a, vec![1, 1, 2]).expect("valid partition")
}

/// Schatten-`p` counterexample, `p > 1`: the compression
/// `[[1, 0, 1], [0, 1, 1], [1, 1, 2^{1/p}]]` has determinant `2^{1/p} - 2`.
pub fn schatten_example(p: SchattenP, tol: f64) -> Result<CounterexampleReport> {
    let p_value = p.as_f64();
    if p_value <= 1.0 || p_value.is_nan() {
        return Err(Error::Parameter(format!(
            "Schatten p = {p_value} gives a PSD compression; need p > 1"
        )));
    }
    let norm = match p {
        SchattenP::Infinity => UINorm::operator(2),
        SchattenP::Finite(v) => UINorm::schatten(v, 2)?,
    };
    let pm = schatten_example_matrix();
    let compression = compress(&pm, &norm, tol)?;
    let witness = compression.determinant();
    let mut params = BTreeMap::new();
    params.insert("p".into(), Param::from(p_value));
    certify("schatten", pm, norm, compression, witness, params, tol)
}

/// Block matrix `Ã` of the necessity argument, zero-padded to `(n1, n2, n)`:
/// `Ã_11 = I_ñ1`, `Ã_22 = I_ñ2`, `Ã_33 = I_ñ`, `Ã_12 = 0`,
/// `Ã_13 = (I_ñ1 0)`, `Ã_23 = (0 I_ñ2)`, with `ñ = ñ1 + ñ2`.
fn necessity_matrix(t1: usize, t2: usize, n1: usize, n2: usize, n: usize) -> PartitionedMatrix {
    let dim = n1 + n2 + n;
    let mut a = ComplexMatrix::zeros(dim, dim);
    let one = C64::new(1.0, 0.0);
    let (o2, o3) = (n1, n1 + n2);
    for r in 0..t1 {
        a[(r, r)] = one;
        a[(r, o3 + r)] = one;
        a[(o3 + r, r)] = one;
    }
    for r in 0..t2 {
        a[(o2 + r, o2 + r)] = one;
        a[(o2 + r, o3 + t1 + r)] = one;
        a[(o3 + t1 + r, o2 + r)] = one;
    }
    for r in 0..(t1 + t2) {
        a[(o3 + r, o3 + r)] = one;
    }
    PartitionedMatrix::new(a, vec![n1, n2, n]).expect("sizes sum to dim")
}

/// Counterexample for a norm on `M_n` that fails condition (b) at
/// `k = min(n1 + n2, n)`.
///
/// With `s` the largest flat prefix of the normalized norm, picks
/// `ñ1 = min(n1, s)`, `ñ2 = s + 1 - ñ1`, and `δ = ||I_{s+1}|| - s`. The
/// compression is `[[ñ1, 0, ñ1], [0, ñ2, ñ2], [ñ1, ñ2, s + δ]]` with
/// determinant `ñ1 ñ2 (δ - 1) < 0`.
pub fn thm2_necessity(
    norm: &UINorm,
    n1: usize,
    n2: usize,
    n: usize,
    tol: f64,
) -> Result<CounterexampleReport> {
    if !(1 <= n1 && n1 <= n2 && n2 <= n) {
        return Err(Error::Parameter(format!(
            "need 1 <= n1 <= n2 <= n, got ({n1}, {n2}, {n})"
        )));
    }
    if norm.ambient_dim() != n {
        return Err(Error::Dimension(format!(
            "norm lives on M_{} but A_33 is {n}x{n}",
            norm.ambient_dim()
        )));
    }
    let norm = norm.normalize();
    let k = (n1 + n2).min(n);
    let cert = condition_b(&norm, k, CONDITION_B_TOL)?;
    if cert.holds {
        return Err(Error::Parameter(format!(
            "{norm} satisfies condition (b) at k = {k}; every compression is PSD"
        )));
    }
    let s = largest_flat_prefix(&norm, CONDITION_B_TOL);
    if s >= k {
        return Err(Error::internal(
            "flat-prefix",
            format!("largest flat prefix {s} is not below k = {k}"),
        ));
    }
    let t1 = n1.min(s);
    let t2 = s + 1 - t1;
    if t2 == 0 || t2 > n2.min(s) {
        return Err(Error::internal(
            "tie-break",
            format!("ñ2 = {t2} is outside 1..={}", n2.min(s)),
        ));
    }
    let t = s + 1;
    let delta = norm.eval(&ComplexMatrix::partial_identity(n, t))? - s as f64;
    if !(-CONDITION_B_TOL * t as f64..1.0).contains(&delta) {
        return Err(Error::internal(
            "delta",
            format!("delta = {delta} is outside [0, 1)"),
        ));
    }

    let pm = necessity_matrix(t1, t2, n1, n2, n);
    let compression = compress(&pm, &norm, tol)?;
    let (f1, f2) = (t1 as f64, t2 as f64);
    let expected = [[f1, 0.0, f1], [0.0, f2, f2], [f1, f2, s as f64 + delta]];
    let scale = (s as f64 + 1.0).max(1.0);
    for i in 0..3 {
        for j in 0..3 {
            let gap = (compression.values[i][j] - expected[i][j]).abs();
            if gap > 1e-9 * scale {
                return Err(Error::internal(
                    "compression",
                    format!(
                        "entry ({i},{j}) is {} instead of {}",
                        compression.values[i][j], expected[i][j]
                    ),
                ));
            }
        }
    }
    let det = compression.determinant();
    let closed_form = f1 * f2 * (delta - 1.0);
    if (det - closed_form).abs() > 1e-9 * scale {
        return Err(Error::internal(
            "determinant",
            format!("det = {det} but ñ1 ñ2 (δ - 1) = {closed_form}"),
        ));
    }

    let mut params = BTreeMap::new();
    params.insert("k".into(), Param::from(k));
    params.insert("s".into(), Param::from(s));
    params.insert("delta".into(), Param::from(delta));
    params.insert("n1_tilde".into(), Param::from(t1));
    params.insert("n2_tilde".into(), Param::from(t2));
    params.insert("n_tilde".into(), Param::from(t));
    params.insert("n1".into(), Param::from(n1));
    params.insert("n2".into(), Param::from(n2));
    params.insert("n".into(), Param::from(n));
    params.insert("det_closed_form".into(), Param::from(closed_form));
    certify("thm2", pm, norm, compression, det, params, tol)
}

/// A 4x4 real PSD matrix whose entrywise modulus is not PSD.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThompsonSeed {
    pub b: ComplexMatrix,
    /// Index of the successful trial.
    pub trial: u64,
    pub seed: u64,
    pub min_eigenvalue: f64,
    pub abs_min_eigenvalue: f64,
}

/// Searches `B = R R^T`, `R` a 4x3 standard normal matrix, for one with
/// `abs_entries(B)` not PSD. The lowest successful trial index wins, so the
/// result depends only on `seed`.
pub fn thompson_search(trials: u64, seed: u64, exec: Execution) -> Result<ThompsonSeed> {
    if trials == 0 {
        return Err(Error::Parameter("trials must be at least 1".into()));
    }
    let hit = find_first(0..trials, exec, |i| {
        let mut rng = trial_rng(seed, i);
        let r = real_gaussian(4, 3, &mut rng);
        let b = (&r * &r.adjoint()).symmetrize();
        let v = is_psd(&b, THOMPSON_TOL).ok()?;
        let w = is_psd(&abs_entries(&b), THOMPSON_TOL).ok()?;
        (v.is_psd && !w.is_psd && w.min_eigenvalue < -THOMPSON_TOL).then_some((b, v, w))
    });
    match hit {
        Some((trial, (b, v, w))) => Ok(ThompsonSeed {
            b,
            trial,
            seed,
            min_eigenvalue: v.min_eigenvalue,
            abs_min_eigenvalue: w.min_eigenvalue,
        }),
        None => Err(Error::NotFound { trials }),
    }
}

/// Lifts an `m x m` scalar seed (`m >= 4`, PSD, entrywise modulus not PSD)
/// to `m` blocks of size `n` with `A_ij = b_ij E_11`. The compression is
/// `||E_11||` times `abs_entries(b)`.
pub fn m4_block_lift(
    b: &ComplexMatrix,
    block_dim: usize,
    norm: &UINorm,
    tol: f64,
) -> Result<CounterexampleReport> {
    if !b.is_square() || b.rows() < 4 {
        return Err(Error::Parameter(format!(
            "seed must be square with at least 4 rows, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    if block_dim == 0 {
        return Err(Error::Parameter("block_dim must be at least 1".into()));
    }
    if !is_psd(b, tol)?.is_psd {
        return Err(Error::Parameter("seed matrix is not PSD".into()));
    }
    let abs_b = abs_entries(b);
    if is_psd(&abs_b, tol)?.is_psd {
        return Err(Error::Parameter(
            "entrywise modulus of the seed is PSD".into(),
        ));
    }
    if norm.ambient_dim() < block_dim {
        return Err(Error::Dimension(format!(
            "norm lives on M_{} but blocks are {block_dim}x{block_dim}",
            norm.ambient_dim()
        )));
    }
    let m = b.rows();
    let mut a = ComplexMatrix::zeros(m * block_dim, m * block_dim);
    for i in 0..m {
        for j in 0..m {
            a[(i * block_dim, j * block_dim)] = b[(i, j)];
        }
    }
    let pm = PartitionedMatrix::new(a, vec![block_dim; m])?;
    let compression = compress(&pm, norm, tol)?;
    let gamma = norm.eval(&ComplexMatrix::partial_identity(block_dim, 1))?;
    let scale = gamma * abs_b.max_abs().max(1.0);
    for i in 0..m {
        for j in 0..m {
            let expected = gamma * abs_b[(i, j)].re;
            let gap = (compression.values[i][j] - expected).abs();
            if gap > 1e-9 * scale {
                return Err(Error::internal(
                    "lift",
                    format!(
                        "entry ({i},{j}) is {} instead of {expected}",
                        compression.values[i][j]
                    ),
                ));
            }
        }
    }
    let witness = compression.verdict.min_eigenvalue;
    let mut params = BTreeMap::new();
    params.insert("m".into(), Param::from(m));
    params.insert("block_dim".into(), Param::from(block_dim));
    params.insert("gamma".into(), Param::from(gamma));
    certify("m4", pm, norm.clone(), compression, witness, params, tol)
}
