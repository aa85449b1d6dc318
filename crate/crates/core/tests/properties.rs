//! Cross-module invariants: randomized round-trips, the exploration-vs-
//! census exactness sweep, and the statistical module examples that don't
//! belong to the acceptance gate.

mod common;

use proptest::prelude::*;

use hyperphase::branching::{survival_mc, OffspringLaw};
use hyperphase::census::build_census;
use hyperphase::combinat::{binom_u64, colex_rank_u64, colex_unrank, r_subsets};
use hyperphase::explorer::{
    check_generation_monotonicity, explore, multi_start_stop_frequency, ExploreMode, ExploreOptions, StopParams,
};
use hyperphase::randsrc::{sample_hypergraph, EdgeOracle, EdgeSet, SeededStream};
use hyperphase::theory::critical_p;
use rand::Rng;

proptest! {
    #[test]
    fn rank_unrank_bijection(n in 2u32..40, r in 1u8..8, salt in 0u64..u64::MAX) {
        let r = r.min(n as u8);
        let space = binom_u64(n as u64, r as u64).unwrap();
        let rank = salt % space;
        let set = colex_unrank(rank, r, n).unwrap();
        prop_assert!(set.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(*set.last().unwrap() < n);
        prop_assert_eq!(colex_rank_u64(&set).unwrap(), rank);
    }

    #[test]
    fn subsets_strictly_colex_increasing(picks in proptest::collection::btree_set(0u32..60, 2..8), r in 1usize..4) {
        let set: Vec<u32> = picks.into_iter().collect();
        let r = r.min(set.len());
        let subs = r_subsets(&set, r);
        prop_assert_eq!(subs.len() as u128, hyperphase::combinat::binom(set.len() as u64, r as u64).unwrap());
        let ranks: Vec<u64> = subs.iter().map(|s| colex_rank_u64(s).unwrap()).collect();
        prop_assert!(ranks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn edge_set_round_trip(seed in 0u64..1000, p in 0.0f64..0.5) {
        let mut stream = SeededStream::new(seed, 1);
        let edges = sample_hypergraph(9, 3, p, &mut stream, 1e6).unwrap();
        let mut buf = Vec::new();
        edges.write_text(&mut buf).unwrap();
        let back = EdgeSet::read_text(&buf[..]).unwrap();
        prop_assert_eq!(&edges, &back);
    }

    #[test]
    fn census_invariant_under_edge_order(seed in 0u64..500) {
        let mut stream = SeededStream::new(seed, 2);
        let edges = sample_hypergraph(11, 3, 0.1, &mut stream, 1e6).unwrap();
        let a = build_census(&edges, 2).unwrap();
        let mut reversed: Vec<u64> = edges.ranks().to_vec();
        reversed.reverse();
        let b = build_census(&EdgeSet::new(11, 3, reversed).unwrap(), 2).unwrap();
        prop_assert_eq!(common::census_partition(&a), common::census_partition(&b));
    }
}

/// Full exploration agrees with the census component exactly for every
/// uniformity k in {3,4}, every j, 100 samples each at n=10.
#[test]
fn exploration_matches_census_components() {
    for k in [3u8, 4] {
        for j in 1..k {
            for sample in 0..100u64 {
                let p = [0.02, 0.06, 0.15, 0.3][sample as usize % 4];
                let mut stream = SeededStream::new(31_000 + k as u64 * 100 + j as u64, sample);
                let edges = sample_hypergraph(10, k, p, &mut stream, 1e6).unwrap();
                let census = build_census(&edges, j).unwrap();
                let space = binom_u64(10, j as u64).unwrap();
                let start_rank = stream.random_range(0..space);
                let start = colex_unrank(start_rank, j, 10).unwrap();
                let params =
                    StopParams::new(10, j, 0.9, 0.15, 10.0, ExploreMode::Exhaustive).unwrap();
                let mut oracle = EdgeOracle::presampled(&edges);
                let trace =
                    explore(&start, &mut oracle, &params, &ExploreOptions::default()).unwrap();
                let found = trace.discovered();
                match census.component_of(start_rank) {
                    Some(idx) => {
                        let members: std::collections::HashSet<u64> =
                            census.component_members(idx).into_iter().collect();
                        assert_eq!(found, members, "k={k} j={j} sample={sample}");
                    }
                    None => assert_eq!(found.len(), 1),
                }
            }
        }
    }
}

/// Graph-case escape frequency matches the classical survival probability
/// (the lambda override keeps both size cutoffs meaningful at this n:
/// the partial-size cutoff 500 sits well under the giant ~1762 while the
/// generation cutoff 25 is out of reach for dying runs).
#[test]
fn multi_start_graph_case_matches_survival() {
    let n = 10_000u32;
    let p = 1.1 / n as f64;
    let params = StopParams::new(n, 1, 0.05, 0.15, 10.0, ExploreMode::ToStop).unwrap();
    let f = multi_start_stop_frequency(n, 2, 1, p, &params, 300, 424_242).unwrap();
    assert!(
        (f.estimate - 0.17615).abs() <= 3.0 * f.stderr,
        "estimate {} +- {}",
        f.estimate,
        f.stderr
    );
}

/// Upper-law survival agrees with the fixed point for the hypergraph case.
#[test]
fn upper_law_survival_matches_solver() {
    let p = 1.1 * critical_p(500, 3, 2).unwrap();
    let law = OffspringLaw::upper(500, 3, 2, p).unwrap();
    let mut stream = SeededStream::new(8_080, 0);
    let est = survival_mc(&law, 10_000, 10_000, &mut stream).unwrap();
    let solver = hyperphase::theory::extinction_fixed_point(500.0, p, 2, 0.0).unwrap().survival;
    assert!(
        (est.estimate - solver).abs() <= 3.0 * est.stderr,
        "mc {} vs solver {solver}",
        est.estimate
    );
}

/// Generation monotonicity holds before the stopping time when the
/// cutoffs are arranged so generations actually exceed n there: eps=0.4
/// and lambda=0.06 give an S3 cutoff of 900 >= n = 500 with strong growth.
#[test]
fn monotonicity_holds_where_generations_are_large() {
    let (n, k, j, eps) = (500u32, 3u8, 2u8, 0.4f64);
    let p = (1.0 + eps) * critical_p(n, k, j).unwrap();
    let params = StopParams::new(n, j, 0.06, 0.15, 10.0, ExploreMode::ToStop).unwrap();
    let space = binom_u64(n as u64, j as u64).unwrap();
    let mut applicable = 0u32;
    let mut violations = 0u32;
    for trial in 0..60u64 {
        let mut stream = SeededStream::new(515_151, trial);
        let start_rank = stream.random_range(0..space);
        let start = colex_unrank(start_rank, j, n).unwrap();
        let mut oracle = EdgeOracle::lazy(n, k, p, stream).unwrap();
        let trace = explore(&start, &mut oracle, &params, &ExploreOptions::fast()).unwrap();
        let report = check_generation_monotonicity(&trace, n);
        applicable += report.applicable;
        violations += report.violations.len() as u32;
    }
    assert!(applicable > 0, "test parameters no longer reach |G_i| >= n before T");
    assert!(
        (violations as f64) < 0.01 * applicable as f64 || violations == 0,
        "monotonicity {violations}/{applicable}"
    );
}

/// Subcritical exploration almost never escapes.
#[test]
fn subcritical_explorations_die() {
    let (n, k, j, eps) = (300u32, 3u8, 2u8, 0.2f64);
    let p = (1.0 - eps) * critical_p(n, k, j).unwrap();
    let params = hyperphase::theory::default_params(n, k, j, eps).unwrap().stop;
    let f = multi_start_stop_frequency(n, k, j, p, &params, 300, 616_161).unwrap();
    assert!(
        f.estimate <= 0.01,
        "subcritical escape rate {} unexpectedly high",
        f.estimate
    );
}
