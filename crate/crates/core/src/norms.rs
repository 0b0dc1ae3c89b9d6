//! Unitarily invariant norms on `M_n` and their extension to smaller or
//! rectangular blocks by zero padding.
//!
//! Every norm here is a maximum of finitely many c-norms
//! `||X||_v = sum_j v_j s_j(X)`: Schatten norms are evaluated directly, Ky
//! Fan norms are the c-norm with `v = (1, .., 1, 0, .., 0)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::spectral::singular_values;

/// Per-unit tolerance for condition (b): a certificate at `k` accepts a
/// slack up to `CONDITION_B_TOL * k`.
pub const CONDITION_B_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchattenP {
    Finite(f64),
    Infinity,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormKind {
    Schatten(SchattenP),
    KyFan(usize),
    CNorm(Vec<f64>),
    MaxCNorm(Vec<Vec<f64>>),
}

/// A unitarily invariant norm on `M_n`, `n = ambient_dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "NormDescriptor", try_from = "NormDescriptor")]
pub struct UINorm {
    kind: NormKind,
    ambient_dim: usize,
}

#[derive(Serialize, Deserialize)]
struct NormDescriptor {
    spec: String,
    ambient_dim: usize,
}

impl From<UINorm> for NormDescriptor {
    fn from(n: UINorm) -> Self {
        NormDescriptor {
            spec: n.spec_string(),
            ambient_dim: n.ambient_dim,
        }
    }
}

impl TryFrom<NormDescriptor> for UINorm {
    type Error = Error;

    fn try_from(d: NormDescriptor) -> Result<Self> {
        UINorm::parse(&d.spec, d.ambient_dim)
    }
}

fn check_weights(v: &[f64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::Parameter(format!(
            "weight vector has length {}, ambient dimension is {n}",
            v.len()
        )));
    }
    if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::Parameter(format!(
            "weights must be finite and nonnegative: {v:?}"
        )));
    }
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Parameter(format!(
            "weights must be nonincreasing: {v:?}"
        )));
    }
    if v[0] <= 0.0 {
        return Err(Error::Parameter(format!(
            "leading weight must be positive: {v:?}"
        )));
    }
    Ok(())
}

impl UINorm {
    pub fn new(kind: NormKind, ambient_dim: usize) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::Dimension(
                "ambient dimension must be positive".into(),
            ));
        }
        match &kind {
            NormKind::Schatten(SchattenP::Finite(p)) => {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(Error::Parameter(format!(
                        "Schatten p must be >= 1, got {p}"
                    )));
                }
            }
            NormKind::Schatten(SchattenP::Infinity) => {}
            NormKind::KyFan(r) => {
                if *r < 1 || *r > ambient_dim {
                    return Err(Error::Parameter(format!(
                        "Ky Fan r must lie in 1..={ambient_dim}, got {r}"
                    )));
                }
            }
            NormKind::CNorm(v) => check_weights(v, ambient_dim)?,
            NormKind::MaxCNorm(vs) => {
                if vs.is_empty() {
                    return Err(Error::Parameter(
                        "maxc needs at least one weight vector".into(),
                    ));
                }
                for v in vs {
                    check_weights(v, ambient_dim)?;
                }
            }
        }
        Ok(UINorm { kind, ambient_dim })
    }

    pub fn trace(n: usize) -> Self {
        Self::schatten(1.0, n).expect("p = 1 is valid")
    }

    pub fn operator(n: usize) -> Self {
        UINorm {
            kind: NormKind::Schatten(SchattenP::Infinity),
            ambient_dim: n,
        }
    }

    pub fn schatten(p: f64, n: usize) -> Result<Self> {
        if p == f64::INFINITY {
            return Ok(Self::operator(n));
        }
        Self::new(NormKind::Schatten(SchattenP::Finite(p)), n)
    }

    pub fn ky_fan(r: usize, n: usize) -> Result<Self> {
        Self::new(NormKind::KyFan(r), n)
    }

    pub fn c_norm(v: Vec<f64>) -> Result<Self> {
        let n = v.len();
        Self::new(NormKind::CNorm(v), n)
    }

    pub fn max_c_norm(vs: Vec<Vec<f64>>) -> Result<Self> {
        let n = vs.first().map_or(0, Vec::len);
        Self::new(NormKind::MaxCNorm(vs), n)
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Same norm family on a different `M_n`. Weight vectors are truncated or
    /// padded with zeros.
    pub fn with_ambient(&self, n: usize) -> Result<Self> {
        let resize = |v: &Vec<f64>| {
            let mut v = v.clone();
            v.resize(n, 0.0);
            v
        };
        let kind = match &self.kind {
            NormKind::CNorm(v) => NormKind::CNorm(resize(v)),
            NormKind::MaxCNorm(vs) => NormKind::MaxCNorm(vs.iter().map(resize).collect()),
            other => other.clone(),
        };
        Self::new(kind, n)
    }

    /// Parses the norm grammar: `schatten:p=<float|inf>`, `trace`, `op`,
    /// `kyfan:r=<int>`, `c:[v1,...]`, `maxc:[...];[...]`. Weight vectors
    /// shorter than `ambient_dim` are padded with zeros.
    pub fn parse(spec: &str, ambient_dim: usize) -> Result<Self> {
        let spec = spec.trim();
        let bad = |why: &str| Error::Parse(format!("norm spec `{spec}`: {why}"));
        let weights = |text: &str| -> Result<Vec<f64>> {
            let inner = text
                .trim()
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| bad("weight vectors are written [v1,v2,...]"))?;
            let mut v = inner
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| bad("weights must be numbers"))
                })
                .collect::<Result<Vec<f64>>>()?;
            if v.len() > ambient_dim {
                return Err(bad("more weights than the ambient dimension"));
            }
            v.resize(ambient_dim, 0.0);
            Ok(v)
        };
        let kind = match spec {
            "trace" => NormKind::Schatten(SchattenP::Finite(1.0)),
            "op" => NormKind::Schatten(SchattenP::Infinity),
            _ => {
                let (family, rest) = spec.split_once(':').ok_or_else(|| bad("unknown norm"))?;
                match family {
                    "schatten" => {
                        let p = rest
                            .strip_prefix("p=")
                            .ok_or_else(|| bad("expected p=<value>"))?;
                        match p {
                            "inf" | "infinity" => NormKind::Schatten(SchattenP::Infinity),
                            _ => NormKind::Schatten(SchattenP::Finite(
                                p.parse().map_err(|_| bad("p must be a number or inf"))?,
                            )),
                        }
                    }
                    "kyfan" => {
                        let r = rest
                            .strip_prefix("r=")
                            .ok_or_else(|| bad("expected r=<int>"))?;
                        NormKind::KyFan(r.parse().map_err(|_| bad("r must be an integer"))?)
                    }
                    "c" => NormKind::CNorm(weights(rest)?),
                    "maxc" => NormKind::MaxCNorm(
                        rest.split(';').map(weights).collect::<Result<Vec<_>>>()?,
                    ),
                    _ => return Err(bad("unknown norm family")),
                }
            }
        };
        Self::new(kind, ambient_dim)
    }

    /// Canonical spec string; `parse(spec_string(), n)` gives back `self`.
    pub fn spec_string(&self) -> String {
        let vec = |v: &[f64]| {
            let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
            format!("[{}]", parts.join(","))
        };
        match &self.kind {
            NormKind::Schatten(SchattenP::Finite(p)) if *p == 1.0 => "trace".into(),
            NormKind::Schatten(SchattenP::Finite(p)) => format!("schatten:p={p}"),
            NormKind::Schatten(SchattenP::Infinity) => "op".into(),
            NormKind::KyFan(r) => format!("kyfan:r={r}"),
            NormKind::CNorm(v) => format!("c:{}", vec(v)),
            NormKind::MaxCNorm(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| vec(v)).collect();
                format!("maxc:{}", parts.join(";"))
            }
        }
    }

    /// Norm of a matrix with singular values `s` (descending, any length up
    /// to `n`; missing values are zero).
    pub fn eval_singular_values(&self, s: &[f64]) -> f64 {
        let c_norm = |v: &[f64]| v.iter().zip(s).map(|(w, x)| w * x).sum::<f64>();
        match &self.kind {
            NormKind::Schatten(SchattenP::Infinity) => s.first().copied().unwrap_or(0.0),
            NormKind::Schatten(SchattenP::Finite(p)) => {
                let top = s.first().copied().unwrap_or(0.0);
                if top == 0.0 {
                    return 0.0;
                }
                if *p == 1.0 {
                    return s.iter().sum();
                }
                top * s
                    .iter()
                    .map(|x| (x / top).powf(*p))
                    .sum::<f64>()
                    .powf(1.0 / p)
            }
            NormKind::KyFan(r) => s.iter().take(*r).sum(),
            NormKind::CNorm(v) => c_norm(v),
            NormKind::MaxCNorm(vs) => vs
                .iter()
                .map(|v| c_norm(v))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// `||X||`, with `X` implicitly zero-padded to `n x n`.
    pub fn eval(&self, x: &ComplexMatrix) -> Result<f64> {
        if x.rows() > self.ambient_dim || x.cols() > self.ambient_dim {
            return Err(Error::Dimension(format!(
                "a {}x{} block does not fit in M_{}",
                x.rows(),
                x.cols(),
                self.ambient_dim
            )));
        }
        Ok(self.eval_singular_values(&singular_values(x)))
    }

    /// `||E_11||`.
    pub fn e11_value(&self) -> f64 {
        match &self.kind {
            NormKind::Schatten(_) | NormKind::KyFan(_) => 1.0,
            NormKind::CNorm(v) => v[0],
            NormKind::MaxCNorm(vs) => vs.iter().map(|v| v[0]).fold(0.0, f64::max),
        }
    }

    /// The multiple of `self` with `||E_11|| = 1`.
    pub fn normalize(&self) -> Self {
        let g = self.e11_value();
        let kind = match &self.kind {
            NormKind::CNorm(v) => NormKind::CNorm(v.iter().map(|x| x / g).collect()),
            NormKind::MaxCNorm(vs) => NormKind::MaxCNorm(
                vs.iter()
                    .map(|v| v.iter().map(|x| x / g).collect())
                    .collect(),
            ),
            other => other.clone(),
        };
        UINorm {
            kind,
            ambient_dim: self.ambient_dim,
        }
    }

    /// Scales the norm by a positive factor. Only c-norm families carry an
    /// explicit scale; Schatten and Ky Fan norms are rewritten as c-norms.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::Parameter(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        let n = self.ambient_dim;
        let kind = match &self.kind {
            NormKind::CNorm(v) => NormKind::CNorm(v.iter().map(|x| x * factor).collect()),
            NormKind::MaxCNorm(vs) => NormKind::MaxCNorm(
                vs.iter()
                    .map(|v| v.iter().map(|x| x * factor).collect())
                    .collect(),
            ),
            NormKind::KyFan(r) => {
                NormKind::CNorm((0..n).map(|j| if j < *r { factor } else { 0.0 }).collect())
            }
            NormKind::Schatten(SchattenP::Finite(p)) if *p == 1.0 => {
                NormKind::CNorm(vec![factor; n])
            }
            NormKind::Schatten(SchattenP::Infinity) => {
                NormKind::CNorm((0..n).map(|j| if j == 0 { factor } else { 0.0 }).collect())
            }
            NormKind::Schatten(_) => {
                return Err(Error::Parameter(
                    "Schatten p-norms with 1 < p < inf have no finite c-norm form".into(),
                ))
            }
        };
        Self::new(kind, n)
    }
}

impl fmt::Display for UINorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on M_{}", self.spec_string(), self.ambient_dim)
    }
}

impl FromStr for SchattenP {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" => Ok(SchattenP::Infinity),
            _ => s
                .parse::<f64>()
                .map(|p| {
                    if p.is_infinite() {
                        SchattenP::Infinity
                    } else {
                        SchattenP::Finite(p)
                    }
                })
                .map_err(|_| Error::Parse(format!("invalid Schatten exponent `{s}`"))),
        }
    }
}

impl SchattenP {
    pub fn as_f64(self) -> f64 {
        match self {
            SchattenP::Finite(p) => p,
            SchattenP::Infinity => f64::INFINITY,
        }
    }
}

/// Result of testing `||E_11 + ... + E_kk|| = k ||E_11||` on the normalized norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionBCertificate {
    pub k: usize,
    pub norm_of_e11: f64,
    pub norm_of_partial_identity: f64,
    pub holds: bool,
    /// `k ||E_11|| - ||E_11 + ... + E_kk||`.
    pub slack: f64,
    pub tolerance: f64,
}

/// Checks condition (b) at `k`, accepting slack up to `tol * k`.
pub fn condition_b(norm: &UINorm, k: usize, tol: f64) -> Result<ConditionBCertificate> {
    let n = norm.ambient_dim();
    if k < 1 || k > n {
        return Err(Error::Dimension(format!("k = {k} is outside 1..={n}")));
    }
    let normalized = norm.normalize();
    let norm_of_e11 = normalized.eval(&ComplexMatrix::partial_identity(n, 1))?;
    let norm_of_partial_identity = normalized.eval(&ComplexMatrix::partial_identity(n, k))?;
    let slack = k as f64 * norm_of_e11 - norm_of_partial_identity;
    let tolerance = tol * k as f64;
    Ok(ConditionBCertificate {
        k,
        norm_of_e11,
        norm_of_partial_identity,
        holds: slack <= tolerance,
        slack,
        tolerance,
    })
}

/// Largest `s` in `1..=n` at which condition (b) holds. Every `s` is
/// checked; monotonicity in `s` is not assumed.
pub fn largest_flat_prefix(norm: &UINorm, tol: f64) -> usize {
    (1..=norm.ambient_dim())
        .filter(|&s| condition_b(norm, s, tol).is_ok_and(|c| c.holds))
        .max()
        .unwrap_or(1)
}
