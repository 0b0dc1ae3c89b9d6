//! Randomized property harness for the positivity theorems.
//!
//! Every mode checks a statement that is proven, so any failure points at a
//! numerical or implementation defect. Trials derive their seeds from the
//! master seed and their index and can run in any order.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::compression::{
    abs_entries, compress, compress_m2, reduce_theorem1, sufficiency_check, PartitionedMatrix,
};
use crate::error::{Error, Result};
use crate::io::MatrixFile;
use crate::norms::{condition_b, UINorm, CONDITION_B_TOL};
use crate::parallel::{map_indices, Execution};
use crate::random::{derive_seed, random_norm, random_psd, rng_from_seed, InstanceRng};
use crate::spectral::{is_psd, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FuzzMode {
    /// Trace-norm compressions of 3-block PSD matrices, plus the full
    /// reduction with all of its invariants.
    Thm1,
    /// Compressions under a norm satisfying condition (b), via the
    /// sufficiency decision procedure.
    Thm2,
    /// Two-block compressions under any norm.
    M2,
    /// Entrywise modulus of 3x3 PSD matrices.
    Abs3,
}

impl FromStr for FuzzMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm1" => Ok(FuzzMode::Thm1),
            "thm2" => Ok(FuzzMode::Thm2),
            "m2" => Ok(FuzzMode::M2),
            "abs3" => Ok(FuzzMode::Abs3),
            _ => Err(Error::Parse(format!("unknown fuzz mode `{s}`"))),
        }
    }
}

impl fmt::Display for FuzzMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FuzzMode::Thm1 => "thm1",
            FuzzMode::Thm2 => "thm2",
            FuzzMode::M2 => "m2",
            FuzzMode::Abs3 => "abs3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub mode: FuzzMode,
    /// Fixed block sizes; drawn from `1..=4` per trial when absent.
    pub sizes: Option<Vec<usize>>,
    /// Norm spec string, instantiated on `M_n` with `n` the largest block.
    /// Absent means the trace norm (thm1/thm2) or a random family (m2).
    pub norm: Option<String>,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    /// Also run the full three-block reduction in thm1 mode.
    #[serde(default = "default_true")]
    pub check_reduction: bool,
}

fn default_true() -> bool {
    true
}

impl FuzzConfig {
    pub fn new(mode: FuzzMode, trials: u64, seed: u64) -> Self {
        FuzzConfig {
            mode,
            sizes: None,
            norm: None,
            trials,
            seed,
            tol: DEFAULT_TOL,
            check_reduction: true,
        }
    }

    pub fn with_sizes(mut self, sizes: Vec<usize>) -> Self {
        self.sizes = Some(sizes);
        self
    }

    pub fn with_norm(mut self, spec: impl Into<String>) -> Self {
        self.norm = Some(spec.into());
        self
    }

    fn block_count(&self) -> Option<usize> {
        match self.mode {
            FuzzMode::Thm1 | FuzzMode::Thm2 => Some(3),
            FuzzMode::M2 => Some(2),
            FuzzMode::Abs3 => None,
        }
    }

    /// Rejects configurations the harness cannot run, including a thm2 norm
    /// that fails condition (b).
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Parameter("trials must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Parameter(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if let (Some(sizes), Some(m)) = (&self.sizes, self.block_count()) {
            if sizes.len() != m || sizes.contains(&0) {
                return Err(Error::Partition(format!(
                    "{} mode needs {m} positive block sizes, got {sizes:?}",
                    self.mode
                )));
            }
        }
        if let Some(spec) = &self.norm {
            UINorm::parse(
                spec,
                self.sizes
                    .as_ref()
                    .map_or(4, |s| s.iter().copied().max().unwrap_or(1)),
            )?;
        }
        if self.mode == FuzzMode::Thm2 {
            let sizes = self
                .sizes
                .as_ref()
                .ok_or_else(|| Error::Parameter("thm2 mode needs fixed block sizes".into()))?;
            let mut sorted = sizes.clone();
            sorted.sort_unstable();
            let k = (sorted[0] + sorted[1]).min(sorted[2]);
            let norm = self.norm_for(sorted[2])?;
            let cert = condition_b(&norm, k, CONDITION_B_TOL)?;
            if !cert.holds {
                return Err(Error::Precondition(format!(
                    "{norm} fails condition (b) at k = {k} (slack {:e}); use the thm2 counterexample generator instead",
                    cert.slack
                )));
            }
        }
        Ok(())
    }

    fn norm_for(&self, n: usize) -> Result<UINorm> {
        match &self.norm {
            Some(spec) => UINorm::parse(spec, n),
            None => Ok(UINorm::trace(n)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailurePayload {
    pub trial: u64,
    pub trial_seed: u64,
    pub input: MatrixFile,
    pub norm: Option<UINorm>,
    pub compression: Option<Vec<Vec<f64>>>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub trials: u64,
    pub failures: u64,
    /// Smallest eigenvalue seen over all checked matrices.
    pub worst_min_eigenvalue: f64,
    /// Smallest eigenvalue divided by its `max(1, ||.||_op)` scale.
    pub worst_relative_min_eigenvalue: f64,
    pub seed: u64,
    /// Sorted by trial index.
    pub failure_payloads: Vec<FailurePayload>,
}

struct TrialOutcome {
    min_eigenvalue: f64,
    relative: f64,
    failure: Option<FailurePayload>,
}

fn random_sizes(count: usize, rng: &mut InstanceRng) -> Vec<usize> {
    (0..count).map(|_| rng.random_range(1..=4)).collect()
}

fn random_partitioned(sizes: Vec<usize>, rng: &mut InstanceRng) -> PartitionedMatrix {
    let dim: usize = sizes.iter().sum();
    let rank = rng.random_range(1..=dim);
    let a = random_psd(dim, rank, rng).expect("rank within 1..=dim");
    PartitionedMatrix::new(a, sizes).expect("sizes sum to dim")
}

fn run_trial(config: &FuzzConfig, index: u64) -> TrialOutcome {
    let trial_seed = derive_seed(config.seed, index);
    let mut rng = rng_from_seed(trial_seed);
    let tol = config.tol;
    let fail = |input: MatrixFile,
                norm: Option<UINorm>,
                compression: Option<Vec<Vec<f64>>>,
                message: String| {
        Some(FailurePayload {
            trial: index,
            trial_seed,
            input,
            norm,
            compression,
            message,
        })
    };

    if config.mode == FuzzMode::Abs3 {
        let rank = rng.random_range(1..=3);
        let b = random_psd(3, rank, &mut rng).expect("rank in range");
        let v = is_psd(&abs_entries(&b), tol).expect("square");
        let scale = v.tolerance_used / tol;
        let failure = (!v.is_psd).then(|| {
            fail(
                MatrixFile::from_matrix(&b, None),
                None,
                Some(abs_entries(&b).to_real_rows()),
                format!(
                    "entrywise modulus has min eigenvalue {:e}",
                    v.min_eigenvalue
                ),
            )
        });
        return TrialOutcome {
            min_eigenvalue: v.min_eigenvalue,
            relative: v.min_eigenvalue / scale,
            failure: failure.flatten(),
        };
    }

    let m = config.block_count().expect("block modes");
    let sizes = config
        .sizes
        .clone()
        .unwrap_or_else(|| random_sizes(m, &mut rng));
    let n = sizes.iter().copied().max().unwrap_or(1);
    let norm = match (&config.norm, config.mode) {
        (None, FuzzMode::M2) => random_norm(n, &mut rng),
        _ => config.norm_for(n).expect("validated"),
    };
    let pm = random_partitioned(sizes, &mut rng);
    let input = || MatrixFile::from(pm.clone());

    let result = match config.mode {
        FuzzMode::Thm1 => compress(&pm, &norm, tol).and_then(|c| {
            if config.check_reduction {
                reduce_theorem1(&pm, tol)?;
            }
            Ok(c)
        }),
        FuzzMode::Thm2 => sufficiency_check(&pm, &norm, tol).map(|o| o.compression),
        FuzzMode::M2 => compress_m2(&pm, &norm, tol),
        FuzzMode::Abs3 => unreachable!(),
    };
    match result {
        Ok(c) => {
            let v = &c.verdict;
            let scale = v.tolerance_used / tol;
            let failure = if v.is_psd {
                None
            } else {
                fail(
                    input(),
                    Some(norm),
                    Some(c.values.clone()),
                    format!("compression has min eigenvalue {:e}", v.min_eigenvalue),
                )
            };
            TrialOutcome {
                min_eigenvalue: v.min_eigenvalue,
                relative: v.min_eigenvalue / scale,
                failure,
            }
        }
        Err(e) => TrialOutcome {
            min_eigenvalue: f64::NAN,
            relative: f64::NAN,
            failure: fail(input(), Some(norm), None, e.to_string()),
        },
    }
}

/// Runs the configured trials and aggregates a report.
pub fn run_fuzz(config: &FuzzConfig, exec: Execution) -> Result<FuzzReport> {
    config.validate()?;
    let outcomes = map_indices(0..config.trials, exec, |i| run_trial(config, i));
    let mut worst = f64::INFINITY;
    let mut worst_relative = f64::INFINITY;
    let mut payloads = Vec::new();
    for o in outcomes {
        if !o.min_eigenvalue.is_nan() {
            worst = worst.min(o.min_eigenvalue);
            worst_relative = worst_relative.min(o.relative);
        }
        payloads.extend(o.failure);
    }
    payloads.sort_by_key(|p| p.trial);
    Ok(FuzzReport {
        config: config.clone(),
        trials: config.trials,
        failures: payloads.len() as u64,
        worst_min_eigenvalue: worst,
        worst_relative_min_eigenvalue: worst_relative,
        seed: config.seed,
        failure_payloads: payloads,
    })
}
