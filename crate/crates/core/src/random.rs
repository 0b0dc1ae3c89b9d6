//! Seeded random instances: Gram-construction PSD matrices, Haar-ish
//! unitaries and random norms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::norms::UINorm;

pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for trial `index` of a run with master seed `master`; independent
/// of scheduling so parallel and sequential runs see identical trials.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    // splitmix64 finalizer over a golden-ratio stride
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(master: u64, index: u64) -> InstanceRng {
    rng_from_seed(derive_seed(master, index))
}

/// Entries with independent `N(0, 1/2)` real and imaginary parts, so
/// `E|z|^2 = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re * s, im * s)
    })
}

pub fn real_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(StandardNormal.sample(rng), 0.0))
}

/// `R* R` with `R` a `rank x dim` complex Gaussian matrix.
pub fn random_psd<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::Parameter(format!(
            "rank must lie in 1..={dim}, got {rank}"
        )));
    }
    let r = complex_gaussian(rank, dim, rng);
    Ok((&r.adjoint() * &r).symmetrize())
}

/// `R + R*` with `R` complex Gaussian.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let r = complex_gaussian(dim, dim, rng);
    (&r + &r.adjoint()).symmetrize()
}

/// Unitary from the QR factorization of a complex Gaussian matrix, with the
/// diagonal of `R` made positive. Computed with modified Gram-Schmidt.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = complex_gaussian(dim, dim, rng);
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|j| g.column(j)).collect();
    for j in 0..dim {
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let proj: C64 = done[i]
                    .iter()
                    .zip(&rest[0])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for (c, a) in rest[0].iter_mut().zip(&done[i]) {
                    *c -= proj * a;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for c in cols[j].iter_mut() {
            *c /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// A norm on `M_n` drawn uniformly from the implemented families.
pub fn random_norm<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UINorm {
    let weights = |rng: &mut R| {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v[0] = v[0].max(0.05);
        v
    };
    match rng.random_range(0..5) {
        0 => UINorm::trace(n),
        1 => UINorm::operator(n),
        2 => UINorm::schatten(1.0 + 4.0 * rng.random::<f64>(), n).expect("p >= 1"),
        3 => UINorm::ky_fan(rng.random_range(1..=n), n).expect("r in range"),
        _ => {
            let count = rng.random_range(1..=3);
            let vs = (0..count).map(|_| weights(rng)).collect();
            UINorm::max_c_norm(vs).expect("valid weights")
        }
    }
}
