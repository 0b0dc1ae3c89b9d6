mod common;

use normcomp::compression::{compress, reduce_theorem1, sufficiency_check, PartitionedMatrix};
use normcomp::counterexamples::{schatten_example, thm2_necessity, thompson_search};
use normcomp::fuzz::{run_fuzz, FuzzConfig, FuzzMode};
use normcomp::norms::{condition_b, SchattenP, UINorm, CONDITION_B_TOL};
use normcomp::random::{random_hermitian, random_psd, rng_from_seed};
use normcomp::spectral::is_psd;
use normcomp::{ComplexMatrix, Error, Execution};
use rand::Rng;

use common::{cholesky_feasible, norm_grid};

#[test]
fn psd_verdict_agrees_with_pivoted_cholesky() {
    let mut rng = rng_from_seed(11);
    let mut negatives = 0;
    for t in 0..1000 {
        let dim = rng.random_range(1..=8);
        let a = match t % 4 {
            0 => random_hermitian(dim, &mut rng),
            1 => random_psd(dim, rng.random_range(1..=dim), &mut rng).unwrap(),
            // PSD pushed slightly negative, well beyond the tolerance
            2 => {
                let b = random_psd(dim, rng.random_range(1..=dim), &mut rng).unwrap();
                &b - &ComplexMatrix::identity(dim).scale_real(1e-5)
            }
            // rank-deficient PSD plus noise far below the tolerance
            _ => {
                let b = random_psd(dim, 1, &mut rng).unwrap();
                &b + &random_hermitian(dim, &mut rng).scale_real(1e-14)
            }
        };
        let v = is_psd(&a, 1e-8).unwrap();
        assert_eq!(
            v.is_psd,
            cholesky_feasible(&a, v.tolerance_used),
            "trial {t}: {v:?}"
        );
        negatives += usize::from(!v.is_psd);
    }
    assert!(negatives > 100, "only {negatives} negative cases");
}

#[test]
fn block_diagonal_reduction() {
    let mut rng = rng_from_seed(5);
    let blocks: Vec<ComplexMatrix> = [2, 1, 3]
        .iter()
        .map(|&n| random_psd(n, n, &mut rng).unwrap())
        .collect();
    let refs: Vec<&ComplexMatrix> = blocks.iter().collect();
    let pm = PartitionedMatrix::new(ComplexMatrix::direct_sum(&refs), vec![2, 1, 3]).unwrap();
    let t = reduce_theorem1(&pm, 1e-8).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert!(t.trace_matrix[i][j].abs() < 1e-12);
            }
        }
    }
    assert!(t.trace_verdict.is_psd);
}

#[test]
fn reduction_rejects_bad_input() {
    let pm = PartitionedMatrix::new(ComplexMatrix::identity(4), vec![2, 2]).unwrap();
    assert!(matches!(
        reduce_theorem1(&pm, 1e-8),
        Err(Error::Partition(_))
    ));
    let neg = ComplexMatrix::from_real_diag(&[1.0, -1.0, 1.0]);
    let pm = PartitionedMatrix::new(neg, vec![1, 1, 1]).unwrap();
    assert!(matches!(
        reduce_theorem1(&pm, 1e-8),
        Err(Error::NotPsd { .. })
    ));
}

#[test]
fn schatten_entries_match_recomputation() {
    for p in [
        SchattenP::Finite(1.5),
        SchattenP::Finite(2.0),
        SchattenP::Finite(3.0),
        SchattenP::Infinity,
    ] {
        let r = schatten_example(p, 1e-8).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    r.compression.values[i][j],
                    r.norm.eval(&r.pm.block(i, j)).unwrap()
                );
            }
        }
        assert!(cholesky_feasible(r.pm.matrix(), 1e-12));
        assert!(!cholesky_feasible(&r.compression.values_matrix(), 0.0));
    }
}

/// Over every partition with `n <= 4` and every grid norm, exactly one of
/// "sufficiency holds on random input" and "a certified counterexample
/// exists" happens, as predicted by condition (b).
#[test]
fn condition_b_pairs_sufficiency_with_counterexamples() {
    for n in 1..=4 {
        for n2 in 1..=n {
            for n1 in 1..=n2 {
                let k = (n1 + n2).min(n);
                for g in norm_grid() {
                    let Some(norm) = g.on(n) else { continue };
                    let holds = condition_b(&norm, k, CONDITION_B_TOL).unwrap().holds;
                    let config = FuzzConfig::new(FuzzMode::Thm2, 40, 3)
                        .with_sizes(vec![n1, n2, n])
                        .with_norm(norm.spec_string());
                    let fuzz = run_fuzz(&config, Execution::Sequential);
                    let counterexample = thm2_necessity(&norm, n1, n2, n, 1e-8);
                    let tag = format!("({n1}, {n2}, {n}) {norm}");
                    if holds {
                        assert_eq!(fuzz.unwrap().failures, 0, "{tag}");
                        assert!(matches!(counterexample, Err(Error::Parameter(_))), "{tag}");
                    } else {
                        assert!(matches!(fuzz, Err(Error::Precondition(_))), "{tag}");
                        let r = counterexample.unwrap();
                        assert!(cholesky_feasible(r.pm.matrix(), 1e-12), "{tag}");
                        assert!(
                            !cholesky_feasible(&r.compression.values_matrix(), 0.0),
                            "{tag}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn sufficiency_is_scale_and_order_independent() {
    let mut rng = rng_from_seed(21);
    for _ in 0..50 {
        // k = 3 < n = 4, so the truncation path with epsilon runs
        let sizes = vec![4, 1, 2];
        let pm = PartitionedMatrix::new(
            random_psd(7, rng.random_range(1..=7), &mut rng).unwrap(),
            sizes,
        )
        .unwrap();
        let unit = UINorm::c_norm(vec![1.0, 1.0, 1.0, 0.5]).unwrap();
        let scaled = UINorm::c_norm(vec![4.0, 4.0, 4.0, 2.0]).unwrap();
        let a = sufficiency_check(&pm, &unit, 1e-8).unwrap();
        let b = sufficiency_check(&pm, &scaled, 1e-8).unwrap();
        let direct = compress(&pm, &scaled, 1e-8).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (4.0 * a.compression.values[i][j] - b.compression.values[i][j]).abs() < 1e-10
                );
                assert!((direct.values[i][j] - b.compression.values[i][j]).abs() < 1e-10);
                let split = b.trace_part[i][j] + if (i, j) == (0, 0) { b.epsilon } else { 0.0 };
                assert!((split - b.compression.values[i][j]).abs() < 1e-8 * pm.scale() * 4.0);
            }
        }
        assert_eq!(b.block_order, vec![1, 2, 0]);
        assert!(b.epsilon >= 0.0);
    }
}

#[test]
fn fuzz_reports_do_not_depend_on_the_schedule() {
    for mode in [FuzzMode::Thm1, FuzzMode::M2, FuzzMode::Abs3] {
        let config = FuzzConfig::new(mode, 300, 99);
        let seq = run_fuzz(&config, Execution::Sequential).unwrap();
        let par = run_fuzz(&config, Execution::Parallel).unwrap();
        assert_eq!(normcomp::to_json(&seq), normcomp::to_json(&par));
        assert_eq!(seq.failures, 0);
    }
}

#[test]
fn search_picks_the_lowest_trial() {
    let a = thompson_search(100_000, 17, Execution::Sequential).unwrap();
    let b = thompson_search(100_000, 17, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert!(thompson_search(a.trial, 17, Execution::Parallel).is_err());
}
