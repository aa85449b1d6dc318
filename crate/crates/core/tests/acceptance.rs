//! Acceptance suite: one test per shipped claim, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`). Every
//! tolerance is pinned here; nothing defers to later calibration.

mod common;

use std::time::Instant;

use hyperphase::branching::{
    coupled_domination_run_random_start, mean_progeny_mc, survival_mc, OffspringLaw,
};
use hyperphase::census::build_census;
use hyperphase::combinat::binom_u64;
use hyperphase::explorer::{explore, verify_ledger, ExploreMode, ExploreOptions, StopParams};
use hyperphase::harness::{
    bracket_holds, run_census_sweep, run_exploration_sweep, ExperimentConfig, Regime,
};
use hyperphase::randsrc::{sample_hypergraph, EdgeOracle, SeededStream};
use hyperphase::theory::{critical_p, default_params, subcritical_bound, SUBCRITICAL_SIZE_MARGIN};
use rand::Rng;

/// Criterion 1 — Graph-case giant: k=2, j=1, n=1e5, eps=0.1, 10 seeds. Mean largest
/// fraction within 10% of the solver survival (~0.17615); second-largest
/// at most 5% of the largest in every seed; runtime under a minute.
#[test]
fn acceptance_01_graph_giant() {
    let clock = Instant::now();
    let mut config = ExperimentConfig::new(100_000, 2, 1, 0.1, Regime::Super, 10, 20_240_101);
    config.giant_rel_tol = Some(0.10);
    config.second_ratio = Some(0.05);
    config.second_ratio_min_fraction = Some(1.0);
    let report = run_census_sweep(&config).unwrap();
    let a = &report.aggregate;
    assert!(
        (a.solver_survival - 0.17615).abs() < 2e-4,
        "solver drifted from the frozen oracle value: {}",
        a.solver_survival
    );
    assert!(a.rel_gap <= 0.10, "mean largest off by {:.3} rel", a.rel_gap);
    assert!(
        a.small_second_fraction == 1.0,
        "second/largest above 5% in some seed (max {:.4})",
        a.max_second_ratio
    );
    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 graph giant: mean {:.1} vs solver {:.1} (gap {:.3}), max second ratio {:.4}, {:?} => PASS",
        a.mean_largest, a.solver_size, a.rel_gap, a.max_second_ratio, elapsed
    );
}

/// Criterion 2 — Hypergraph giant: k=3, j=2, n=700, eps=0.15, 10 seeds. Mean largest
/// within 15% of the solver size; second-largest at most 10% of the
/// largest in at least 9 of 10 seeds; runtime under 5 minutes.
#[test]
fn acceptance_02_hypergraph_giant() {
    let clock = Instant::now();
    let mut config = ExperimentConfig::new(700, 3, 2, 0.15, Regime::Super, 10, 20_240_202);
    config.giant_rel_tol = Some(0.15);
    config.second_ratio = Some(0.10);
    config.second_ratio_min_fraction = Some(0.9);
    let report = run_census_sweep(&config).unwrap();
    let a = &report.aggregate;
    assert!(
        (a.solver_survival - 0.13349).abs() < 5e-4,
        "solver drifted from the recorded oracle value: {}",
        a.solver_survival
    );
    assert!(a.rel_gap <= 0.15, "mean largest off by {:.3} rel", a.rel_gap);
    assert!(
        a.small_second_fraction >= 0.9,
        "second/largest above 10% in more than one seed"
    );
    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 2 hypergraph giant: mean {:.1} vs solver {:.1} (gap {:.3}), small-second fraction {:.2}, {:?} => PASS",
        a.mean_largest, a.solver_size, a.rel_gap, a.small_second_fraction, elapsed
    );
}

/// Criterion 3 — Subcritical smallness: k=3, j=2, n=700, eps=0.15, p=(1-eps)p_hat,
/// 20 seeds. Every component below the frozen-margin size bound.
#[test]
fn acceptance_03_subcritical_smallness() {
    let config = ExperimentConfig::new(700, 3, 2, 0.15, Regime::Sub, 20, 20_240_303);
    let report = run_census_sweep(&config).unwrap();
    let a = &report.aggregate;
    let bound = subcritical_bound(700, 2, 0.15, SUBCRITICAL_SIZE_MARGIN);
    assert_eq!(a.bound_violations, 0, "max component {} vs bound {bound:.1}", a.max_component);
    println!(
        "ACCEPTANCE 3 subcritical smallness: max component {} <= bound {:.1} over 20 seeds => PASS",
        a.max_component, bound
    );
}

/// Criterion 4 — Generation degree bounds: k=3, j=2, n=500, eps=0.2, delta=0.15,
/// constants from the recursion — 100 explorations, zero violations of
/// `Delta_ell(G_i) <= C_ell (|G_i|/n^ell + n^delta)` for all `i <= T`.
#[test]
fn acceptance_04_degree_bounds() {
    let config = ExperimentConfig::new(500, 3, 2, 0.2, Regime::Super, 100, 20_240_404);
    let report = run_exploration_sweep(&config).unwrap();
    let a = &report.aggregate;
    assert_eq!(a.degree_violations_total, 0, "degree bound violations found");
    assert!(a.ledger_all_clean);
    // side checks of the same sweep: escaped-generation degree bound rate
    // and the escape frequency gate
    assert!(a.pass, "exploration sweep checks failed: {a:?}");
    println!(
        "ACCEPTANCE 4 degree bounds: 0 violations across 100 explorations (escape {:.3}, stopped-gen bound rate {:.2}) => PASS",
        a.escape_rate, a.stopped_degree_pass_fraction
    );
}

/// Criterion 5 — Escape frequency vs survival: k=3, j=2, n=500, eps=0.1, 2000
/// explorations — estimate within 3 standard errors of the solver
/// survival and bracketed by the lower/upper-law Monte Carlo survivals.
#[test]
fn acceptance_05_stop_frequency() {
    let mut config = ExperimentConfig::new(500, 3, 2, 0.1, Regime::Super, 2000, 20_240_505);
    config.ledger = Some(false);
    let report = run_exploration_sweep(&config).unwrap();
    let a = &report.aggregate;
    assert!(
        (a.escape_rate - a.solver_survival).abs() <= 3.0 * a.escape_stderr,
        "escape {:.4}+-{:.4} vs solver {:.4}",
        a.escape_rate,
        a.escape_stderr,
        a.solver_survival
    );

    let p = (1.0 + 0.1) * critical_p(500, 3, 2).unwrap();
    let gamma = default_params(500, 3, 2, 0.1).unwrap().gamma;
    let upper = OffspringLaw::upper(500, 3, 2, p).unwrap();
    let lower = OffspringLaw::lower(500, 3, 2, p, gamma).unwrap();
    let mut stream = SeededStream::new(20_240_505, 999_999);
    let upper_est = survival_mc(&upper, 10_000, 10_000, &mut stream).unwrap();
    let lower_est = survival_mc(&lower, 10_000, 10_000, &mut stream).unwrap();
    let bfs = hyperphase::explorer::StopFrequency {
        escapes: (a.escape_rate * 2000.0).round() as u64,
        trials: 2000,
        estimate: a.escape_rate,
        stderr: a.escape_stderr,
    };
    assert!(
        bracket_holds(&lower_est, &upper_est, &bfs),
        "escape {:.4} outside [{:.4}, {:.4}] bracket",
        a.escape_rate,
        lower_est.estimate,
        upper_est.estimate
    );
    println!(
        "ACCEPTANCE 5 stop frequency: escape {:.4}+-{:.4} vs solver {:.4}, bracket [{:.4}, {:.4}] => PASS",
        a.escape_rate, a.escape_stderr, a.solver_survival, lower_est.estimate, upper_est.estimate
    );
}

/// Criterion 6 — Dual process: mean total progeny of the extinction-conditioned law
/// at eps=0.05 within 10% of 20 over 1e5 trials.
#[test]
fn acceptance_06_dual_progeny() {
    let law = OffspringLaw::dual(500, 3, 2, 0.05).unwrap();
    let mut stream = SeededStream::new(20_240_606, 0);
    let stats = mean_progeny_mc(&law, 100_000, &mut stream).unwrap();
    assert!(
        (stats.mean - 20.0).abs() / 20.0 <= 0.10,
        "dual mean progeny {} vs 20",
        stats.mean
    );
    println!(
        "ACCEPTANCE 6 dual progeny: mean {:.3} (+-{:.3}) vs 20 => PASS",
        stats.mean, stats.stderr
    );
}

/// Criterion 7 — Coupling domination: 100 coupled runs at k=3, j=2, n=300, eps=0.2 —
/// search generation sizes never exceed the paired branching sizes.
#[test]
fn acceptance_07_coupling_domination() {
    let p = (1.0 + 0.2) * critical_p(300, 3, 2).unwrap();
    let params = default_params(300, 3, 2, 0.2).unwrap().stop;
    let mut dominated = 0u32;
    for trial in 0..100u64 {
        let mut stream = SeededStream::new(20_240_707, trial);
        let run =
            coupled_domination_run_random_start(300, 3, 2, p, &params, &mut stream).unwrap();
        if run.dominated {
            dominated += 1;
        } else {
            panic!("trial {trial} broke domination: {run:?}");
        }
    }
    assert_eq!(dominated, 100);
    println!("ACCEPTANCE 7 coupling domination: 100/100 runs dominated => PASS");
}

/// Criterion 8 — Oracle equivalence: for n <= 8, k=3, j in {1,2}, 200 samples each —
/// the union-find census partition equals the brute-force walk-closure
/// partition exactly, and the full unstopped exploration recovers exactly
/// the census component of its start.
#[test]
fn acceptance_08_oracle_equivalence() {
    let probs = [0.02, 0.05, 0.1, 0.2, 0.4];
    let mut checked = 0u32;
    for n in 3..=8u32 {
        for j in 1..=2u8 {
            for sample in 0..200u64 {
                let p = probs[sample as usize % probs.len()];
                let mut stream = SeededStream::new(20_240_808 + n as u64, sample);
                let edges = sample_hypergraph(n, 3, p, &mut stream, 1e6).unwrap();
                let census = build_census(&edges, j).unwrap();
                let brute = common::brute_force_partition(&edges, j);
                let ours = common::census_partition(&census);
                assert_eq!(ours, brute, "partition mismatch at n={n}, j={j}, sample={sample}");

                // full exploration from a random start
                let space = binom_u64(n as u64, j as u64).unwrap();
                let start_rank = stream.random_range(0..space);
                let start = hyperphase::combinat::colex_unrank(start_rank, j, n).unwrap();
                let params = StopParams::new(
                    n,
                    j,
                    0.9,
                    0.15,
                    10.0,
                    ExploreMode::Exhaustive,
                )
                .unwrap();
                let mut oracle = EdgeOracle::presampled(&edges);
                let trace =
                    explore(&start, &mut oracle, &params, &ExploreOptions::default()).unwrap();
                let found = trace.discovered();
                match census.component_of(start_rank) {
                    Some(idx) => {
                        let members: std::collections::HashSet<u64> =
                            census.component_members(idx).into_iter().collect();
                        assert_eq!(found, members, "component mismatch at n={n}, j={j}");
                    }
                    None => {
                        assert_eq!(found.len(), 1, "uncovered start must stay alone");
                        assert!(found.contains(&start_rank));
                    }
                }
                checked += 1;
            }
        }
    }
    println!("ACCEPTANCE 8 oracle equivalence: {checked} samples, all partitions identical => PASS");
}

/// Criterion 9 — Size at the large stopping time: 500 explorations run to `T_large`
/// at the criterion-4 parameters — `|C(T_large)| <= 3 lambda n^j` in at
/// least 99% of runs, and generation-monotonicity violations (rounds
/// `i <= T` with `|G_i| >= n`) in under 1% of applicable rounds.
#[test]
fn acceptance_09_size_at_t_large() {
    let mut config = ExperimentConfig::new(500, 3, 2, 0.2, Regime::Super, 500, 20_240_909);
    config.mode = Some(ExploreMode::ToLargeStop);
    config.ledger = Some(false);
    let report = run_exploration_sweep(&config).unwrap();
    let a = &report.aggregate;
    assert!(
        a.tlarge_ok_fraction >= 0.99,
        "size bound held in only {:.3} of runs",
        a.tlarge_ok_fraction
    );
    let monotonicity_ok = a.monotonicity_applicable == 0
        || (a.monotonicity_violations as f64) < 0.01 * a.monotonicity_applicable as f64;
    assert!(monotonicity_ok, "monotonicity {}/{}", a.monotonicity_violations, a.monotonicity_applicable);
    println!(
        "ACCEPTANCE 9 size at T_large: bound held in {:.3} of 500 runs, monotonicity {}/{} => PASS",
        a.tlarge_ok_fraction, a.monotonicity_violations, a.monotonicity_applicable
    );
}

/// Criterion 10 — Ledger identity: in every recorded exploration, the jump and pivot
/// attributions sum to the generation degree for every touched pair, and
/// per-event contribution caps hold — zero tolerance, across several
/// uniformities and both oracle backends.
#[test]
fn acceptance_10_ledger_identity() {
    let mut audited = 0u64;
    let mut cells = 0u64;
    // lazy supercritical runs across uniformities
    for (n, k, j, trials) in [(60u32, 3u8, 2u8, 40u64), (40, 4, 2, 25), (40, 4, 3, 25), (30, 5, 3, 15)] {
        let p = 1.2 * critical_p(n, k, j).unwrap();
        let params = StopParams::new(n, j, 0.2, 0.15, 10.0, ExploreMode::ToStop).unwrap();
        for trial in 0..trials {
            let mut stream = SeededStream::new(20_241_010 + n as u64, trial);
            let space = binom_u64(n as u64, j as u64).unwrap();
            let start_rank = stream.random_range(0..space);
            let start = hyperphase::combinat::colex_unrank(start_rank, j, n).unwrap();
            let mut oracle = EdgeOracle::lazy(n, k, p, stream).unwrap();
            let trace = explore(&start, &mut oracle, &params, &ExploreOptions::default()).unwrap();
            let audit = verify_ledger(&trace).unwrap();
            assert!(audit.clean(), "n={n} k={k} j={j} trial={trial}: {audit:?}");
            assert!(trace.cap_violations.is_empty());
            audited += 1;
            cells += audit.checked_cells;
        }
    }
    // presampled exhaustive runs
    for trial in 0..50u64 {
        let mut stream = SeededStream::new(20_241_011, trial);
        let edges = sample_hypergraph(10, 4, 0.05, &mut stream, 1e6).unwrap();
        let space = binom_u64(10, 3).unwrap();
        let start_rank = stream.random_range(0..space);
        let start = hyperphase::combinat::colex_unrank(start_rank, 3, 10).unwrap();
        let params = StopParams::new(10, 3, 0.9, 0.15, 10.0, ExploreMode::Exhaustive).unwrap();
        let mut oracle = EdgeOracle::presampled(&edges);
        let trace = explore(&start, &mut oracle, &params, &ExploreOptions::default()).unwrap();
        let audit = verify_ledger(&trace).unwrap();
        assert!(audit.clean(), "presampled trial {trial}: {audit:?}");
        audited += 1;
        cells += audit.checked_cells;
    }
    println!(
        "ACCEPTANCE 10 ledger identity: {audited} explorations, {cells} attribution cells, zero violations => PASS"
    );
}
