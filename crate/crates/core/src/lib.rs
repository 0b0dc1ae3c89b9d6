//! Positivity of norm compressions of partitioned positive semi-definite
//! matrices.
//!
//! For a PSD matrix `A = (A_ij)` split into `m x m` blocks and a unitarily
//! invariant norm, the compression is the scalar matrix `(||A_ij||)`. This
//! crate computes compressions, reproduces the constructive reduction that
//! makes trace-norm compressions of three-block matrices PSD, decides
//! exactly which unitarily invariant norms keep three-block compressions
//! PSD, and builds certified counterexamples for every other case.
//!
//! Module map:
//! - [`matrix`], [`spectral`]: dense complex matrices and Jacobi-based
//!   eigen/singular value kernels.
//! - [`norms`]: Schatten, Ky Fan and c-norm families, condition (b).
//! - [`compression`]: compressions, the three-block reduction and the
//!   sufficiency procedure.
//! - [`counterexamples`]: generators that certify their own output.
//! - [`fuzz`], [`random`], [`io`], [`parallel`]: harness and plumbing.

#![allow(clippy::needless_range_loop)]

pub mod compression;
pub mod counterexamples;
pub mod error;
pub mod fuzz;
pub mod io;
pub mod matrix;
pub mod norms;
pub mod parallel;
pub mod random;
pub mod spectral;

pub use compression::{
    abs_entries, compress, compress_m2, reduce_theorem1, sufficiency_check, NormCompression,
    PartitionedMatrix, ReductionTrace, SufficiencyOutcome,
};
pub use counterexamples::{
    m4_block_lift, schatten_example, thm2_necessity, thompson_search, CounterexampleReport,
};
pub use error::{Error, Result};
pub use fuzz::{run_fuzz, FuzzConfig, FuzzMode, FuzzReport};
pub use io::{to_json, MatrixFile};
pub use matrix::{ComplexMatrix, C64};
pub use norms::{condition_b, largest_flat_prefix, ConditionBCertificate, SchattenP, UINorm};
pub use parallel::Execution;
pub use spectral::{
    abs_matrix, diagonalize_unitary, eig_hermitian, is_psd, polar, singular_values, svd,
    PolarFactors, PolarSide, PsdVerdict, UnitaryDiagonalization, DEFAULT_TOL,
};
