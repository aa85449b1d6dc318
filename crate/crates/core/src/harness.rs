//! Experiment orchestration: seeded parameter sweeps over the subcritical
//! and supercritical regimes, aggregation of census/exploration/branching
//! statistics against the solver predictions, and CSV/JSON reporting.
//!
//! Determinism contract: a config fully determines every report byte.
//! Trials run concurrently (worker count via `HYPERPHASE_WORKERS`), each
//! on substream `seed ^ trial`, and aggregation folds the records in
//! trial-index order regardless of completion order.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branching::{
    default_progeny_cap, mean_progeny_mc, survival_mc, survival_mc_with_sensitivity,
    CapSensitivity, McEstimate, OffspringLaw, ProgenyStats,
};
use crate::census::build_census;
use crate::combinat::binom_u64;
use crate::explorer::{
    check_stopped_generation_degrees, check_size_at_t_large, check_generation_monotonicity, check_generation_degree_bounds, explore,
    verify_ledger, ExploreMode, ExploreOptions, StopFrequency, StopParams, StopReason,
};
use crate::randsrc::{sample_hypergraph, EdgeOracle, SeededStream};
use crate::theory::{
    build_constants, critical_p, default_params, giant_prediction, subcritical_bound,
    TheoryConstants, SUBCRITICAL_SIZE_MARGIN,
};
use crate::{Error, Result};

/// Which side of the critical probability a sweep samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Sub,
    Super,
}

/// Environment variable limiting the worker pool.
pub const WORKERS_ENV: &str = "HYPERPHASE_WORKERS";

fn worker_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        builder = builder.num_threads(w.max(1));
    }
    builder.build().expect("worker pool")
}

/// Full description of an experiment; serializable as TOML.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: u32,
    pub k: u8,
    pub j: u8,
    pub eps: f64,
    pub regime: Regime,
    pub trials: u32,
    pub seed: u64,
    /// Stopping-rule overrides; defaults come from the theory module.
    pub lambda: Option<f64>,
    pub delta: Option<f64>,
    pub xi: Option<f64>,
    pub gamma: Option<f64>,
    pub alpha: Option<f64>,
    /// Exploration horizon (default: run to `T`).
    pub mode: Option<ExploreMode>,
    /// Jump/pivot ledger and degree indexing (default: on).
    pub ledger: Option<bool>,
    /// Branching Monte Carlo trial count (default 10_000).
    pub mc_trials: Option<u64>,
    /// Total-progeny cap override for survival estimation.
    pub progeny_cap: Option<u64>,
    /// Sampler guard (default 2e7 expected edges).
    pub max_expected_edges: Option<f64>,
    /// Relative tolerance of the mean giant size vs the solver.
    pub giant_rel_tol: Option<f64>,
    /// Largest admissible second/largest ratio, and the minimum fraction
    /// of trials that must satisfy it.
    pub second_ratio: Option<f64>,
    pub second_ratio_min_fraction: Option<f64>,
}

impl ExperimentConfig {
    pub fn new(n: u32, k: u8, j: u8, eps: f64, regime: Regime, trials: u32, seed: u64) -> Self {
        ExperimentConfig {
            n,
            k,
            j,
            eps,
            regime,
            trials,
            seed,
            lambda: None,
            delta: None,
            xi: None,
            gamma: None,
            alpha: None,
            mode: None,
            ledger: None,
            mc_trials: None,
            progeny_cap: None,
            max_expected_edges: None,
            giant_rel_tol: None,
            second_ratio: None,
            second_ratio_min_fraction: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Edge probability of the configured regime.
    pub fn p(&self) -> Result<f64> {
        let p_hat = critical_p(self.n, self.k, self.j)?;
        Ok(match self.regime {
            Regime::Sub => (1.0 - self.eps) * p_hat,
            Regime::Super => (1.0 + self.eps) * p_hat,
        })
    }

    /// Stopping parameters with overrides applied.
    pub fn stop_params(&self) -> Result<StopParams> {
        let defaults = default_params(self.n, self.k, self.j, self.eps)?;
        let lambda = self.lambda.unwrap_or(defaults.stop.lambda);
        let delta = self.delta.unwrap_or(defaults.stop.delta);
        let xi = self.xi.unwrap_or(defaults.stop.xi);
        let mode = self.mode.unwrap_or(ExploreMode::ToStop);
        StopParams::new(self.n, self.j, lambda, delta, xi, mode)
    }

    pub fn gamma(&self) -> Result<f64> {
        match self.gamma {
            Some(g) => Ok(g),
            None => Ok(default_params(self.n, self.k, self.j, self.eps)?.gamma),
        }
    }

    pub fn constants(&self) -> Result<TheoryConstants> {
        build_constants(self.k, self.j, self.eps, self.alpha)
    }

    fn edge_cap(&self) -> f64 {
        self.max_expected_edges.unwrap_or(2e7)
    }

    fn stream(&self, trial: u32) -> SeededStream {
        SeededStream::new(self.seed, self.seed ^ trial as u64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 || self.j == 0 || self.j >= self.k {
            return Err(Error::Config(format!("need 1 <= j <= k-1, got j={}, k={}", self.j, self.k)));
        }
        if (self.n as u64) < self.k as u64 {
            return Err(Error::Config(format!("need n >= k, got n={}, k={}", self.n, self.k)));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Config(format!("need eps in (0,1), got {}", self.eps)));
        }
        if self.trials == 0 {
            return Err(Error::Config("need at least one trial".into()));
        }
        Ok(())
    }
}

/// 17 significant digits, locale-independent.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt_bool(v: Option<bool>) -> String {
    match v {
        None => String::new(),
        Some(true) => "1".into(),
        Some(false) => "0".into(),
    }
}

// ---------------------------------------------------------------------
// census sweep
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusTrial {
    pub trial: u32,
    pub stream_id: u64,
    pub edges: u64,
    pub components: u64,
    pub largest: u64,
    pub second_largest: u64,
    pub covered: u64,
    pub total_nullity: u64,
    pub max_nullity: u64,
    pub hypertrees: u64,
    /// component count per nullity value (CSV: `nu:count` pairs joined
    /// with `;`).
    pub nullity_histogram: std::collections::BTreeMap<u64, u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusAggregate {
    pub p: f64,
    pub solver_survival: f64,
    pub solver_size: f64,
    pub asymptotic_size: f64,
    pub mean_largest: f64,
    pub stderr_largest: f64,
    /// relative gap of the mean largest size vs the solver prediction.
    pub rel_gap: f64,
    pub max_second_ratio: f64,
    pub small_second_fraction: f64,
    pub sub_bound: f64,
    pub max_component: u64,
    pub bound_violations: u32,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusSweepReport {
    pub config: ExperimentConfig,
    pub trials: Vec<CensusTrial>,
    pub aggregate: CensusAggregate,
}

pub const CENSUS_CSV_HEADER: &str = "trial,stream_id,edges,components,largest,second_largest,covered,total_nullity,max_nullity,hypertrees,nullity_histogram";
pub const CENSUS_CSV_SCHEMA: &str = "census-trials-v1";

/// Samples `trials` hypergraphs at the regime's probability and reduces
/// each to its component census.
pub fn run_census_sweep(config: &ExperimentConfig) -> Result<CensusSweepReport> {
    config.validate()?;
    let p = config.p()?;
    let cap = config.edge_cap();
    let j = config.j;

    let trials: Vec<CensusTrial> = worker_pool().install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| -> Result<CensusTrial> {
                let mut stream = config.stream(t);
                let edges = sample_hypergraph(config.n, config.k, p, &mut stream, cap)?;
                let census = build_census(&edges, j)?;
                let (largest, second) = census.largest_two();
                Ok(CensusTrial {
                    trial: t,
                    stream_id: stream.stream_id(),
                    edges: edges.len() as u64,
                    components: census.components.len() as u64,
                    largest,
                    second_largest: second,
                    covered: census.covered_jsets,
                    total_nullity: census.total_nullity(),
                    max_nullity: census.components.iter().map(|c| c.nullity).max().unwrap_or(0),
                    hypertrees: census.hypertree_count(),
                    nullity_histogram: census.nullity_histogram(),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let giant = giant_prediction(config.n, config.k, config.j, config.eps)?;
    let sizes: Vec<f64> = trials.iter().map(|t| t.largest as f64).collect();
    let (mean_largest, stderr_largest) = crate::stats::mean_and_stderr(&sizes);
    let rel_gap = if giant.solver_size > 0.0 {
        (mean_largest - giant.solver_size).abs() / giant.solver_size
    } else {
        f64::NAN
    };
    let ratios: Vec<f64> = trials
        .iter()
        .map(|t| if t.largest > 0 { t.second_largest as f64 / t.largest as f64 } else { 0.0 })
        .collect();
    let max_second_ratio = ratios.iter().cloned().fold(0.0, f64::max);
    let second_tol = config.second_ratio.unwrap_or(0.10);
    let small_second_fraction =
        ratios.iter().filter(|&&r| r <= second_tol).count() as f64 / trials.len() as f64;

    let sub_bound = subcritical_bound(config.n, config.j, config.eps, SUBCRITICAL_SIZE_MARGIN);
    let max_component = trials.iter().map(|t| t.largest).max().unwrap_or(0);
    let bound_violations =
        trials.iter().filter(|t| t.largest as f64 > sub_bound).count() as u32;

    let pass = match config.regime {
        Regime::Super => {
            rel_gap <= config.giant_rel_tol.unwrap_or(0.15)
                && small_second_fraction >= config.second_ratio_min_fraction.unwrap_or(0.9)
        }
        Regime::Sub => bound_violations == 0,
    };

    Ok(CensusSweepReport {
        config: config.clone(),
        trials,
        aggregate: CensusAggregate {
            p,
            solver_survival: giant.survival,
            solver_size: giant.solver_size,
            asymptotic_size: giant.asymptotic_size,
            mean_largest,
            stderr_largest,
            rel_gap,
            max_second_ratio,
            small_second_fraction,
            sub_bound,
            max_component,
            bound_violations,
            pass,
        },
    })
}

pub fn write_census_csv<W: Write>(report: &CensusSweepReport, mut w: W) -> Result<()> {
    writeln!(w, "{CENSUS_CSV_HEADER}")?;
    for t in &report.trials {
        let hist = t
            .nullity_histogram
            .iter()
            .map(|(nu, count)| format!("{nu}:{count}"))
            .collect::<Vec<_>>()
            .join(";");
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            t.trial,
            t.stream_id,
            t.edges,
            t.components,
            t.largest,
            t.second_largest,
            t.covered,
            t.total_nullity,
            t.max_nullity,
            t.hypertrees,
            hist
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------
// exploration sweep
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExploreTrial {
    pub trial: u32,
    pub stream_id: u64,
    pub start_rank: u64,
    pub stop_reason: StopReason,
    pub t: u32,
    pub t_large: Option<u32>,
    pub component_size: u64,
    pub max_gen: u64,
    pub queries: u64,
    pub edges: u64,
    pub degree_violations: u64,
    pub monotonicity_violations: u32,
    pub monotonicity_applicable: u32,
    pub stopped_degree_pass: Option<bool>,
    pub tlarge_bound_ok: Option<bool>,
    pub ledger_clean: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExploreAggregate {
    pub p: f64,
    pub solver_survival: f64,
    pub escape_rate: f64,
    pub escape_stderr: f64,
    pub escape_within_3se: bool,
    pub degree_violations_total: u64,
    pub monotonicity_violations: u32,
    pub monotonicity_applicable: u32,
    pub monotonicity_rate_ok: bool,
    pub tlarge_ok_fraction: f64,
    pub stopped_degree_pass_fraction: f64,
    pub ledger_all_clean: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExploreSweepReport {
    pub config: ExperimentConfig,
    pub trials: Vec<ExploreTrial>,
    pub aggregate: ExploreAggregate,
}

pub const EXPLORE_CSV_HEADER: &str = "trial,stream_id,start_rank,stop_reason,t,t_large,component_size,max_gen,queries,edges,degree_violations,monotonicity_violations,monotonicity_applicable,stopped_degree_pass,tlarge_bound_ok,ledger_clean";
pub const EXPLORE_CSV_SCHEMA: &str = "explore-trials-v1";

/// Runs `trials` explorations from uniformly random starts against fresh
/// lazy oracles and applies every degree/size checker to each trace.
pub fn run_exploration_sweep(config: &ExperimentConfig) -> Result<ExploreSweepReport> {
    config.validate()?;
    let p = config.p()?;
    let params = config.stop_params()?;
    let constants = config.constants()?;
    let with_ledger = config.ledger.unwrap_or(true);
    let opts = ExploreOptions {
        degree_index: with_ledger,
        ledger: with_ledger,
        max_component: None,
    };
    let space = binom_u64(config.n as u64, config.j as u64)?;
    let kappas: Vec<f64> = (1..config.j).map(|l| constants.big_c(l)).collect();

    let trials: Vec<ExploreTrial> = worker_pool().install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| -> Result<ExploreTrial> {
                let mut stream = config.stream(t);
                use rand::Rng;
                let start_rank = stream.random_range(0..space);
                let start = crate::combinat::colex_unrank(start_rank, config.j, config.n)?;
                let mut oracle = EdgeOracle::lazy(config.n, config.k, p, stream)?;
                let trace = explore(&start, &mut oracle, &params, &opts)?;

                let degree_violations = if with_ledger {
                    check_generation_degree_bounds(&trace, &constants, params.delta)?.len() as u64
                } else {
                    0
                };
                let monotonicity = check_generation_monotonicity(&trace, config.n);
                let stopped_degree = if with_ledger && trace.escaped() {
                    Some(check_stopped_generation_degrees(&trace, params.xi, &kappas)?)
                } else {
                    None
                };
                let tlarge_ok = if trace.t_large.is_some() {
                    Some(check_size_at_t_large(&trace, params.lambda, config.n, config.j)?)
                } else {
                    None
                };
                let ledger_clean =
                    if with_ledger { Some(verify_ledger(&trace)?.clean()) } else { None };

                Ok(ExploreTrial {
                    trial: t,
                    stream_id: config.seed ^ t as u64,
                    start_rank,
                    stop_reason: trace.stop_reason,
                    t: trace.t,
                    t_large: trace.t_large,
                    component_size: trace.component_size(),
                    max_gen: trace.generations.iter().map(|g| g.size()).max().unwrap_or(0),
                    queries: trace.total_queries,
                    edges: trace.total_edges,
                    degree_violations,
                    monotonicity_violations: monotonicity.violations.len() as u32,
                    monotonicity_applicable: monotonicity.applicable,
                    stopped_degree_pass: stopped_degree,
                    tlarge_bound_ok: tlarge_ok,
                    ledger_clean,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let solver_survival = match config.regime {
        Regime::Super => giant_prediction(config.n, config.k, config.j, config.eps)?.survival,
        Regime::Sub => 0.0,
    };
    let escapes = trials.iter().filter(|t| matches!(t.stop_reason, StopReason::S2 | StopReason::S3)).count() as u64;
    let (escape_rate, escape_stderr) =
        crate::stats::binomial_proportion(escapes, trials.len() as u64);
    // The gate uses an Agresti-Coull-adjusted error so a handful of trials
    // with zero escapes is inconclusive rather than a refutation; at
    // realistic trial counts it coincides with the plain standard error.
    let adj_p = (escapes as f64 + 2.0) / (trials.len() as f64 + 4.0);
    let adj_se = (adj_p * (1.0 - adj_p) / (trials.len() as f64 + 4.0)).sqrt();
    let escape_within_3se = (escape_rate - solver_survival).abs() <= 3.0 * adj_se;

    let degree_violations_total: u64 = trials.iter().map(|t| t.degree_violations).sum();
    let monotonicity_violations: u32 = trials.iter().map(|t| t.monotonicity_violations).sum();
    let monotonicity_applicable: u32 = trials.iter().map(|t| t.monotonicity_applicable).sum();
    let monotonicity_rate_ok = monotonicity_applicable == 0
        || (monotonicity_violations as f64) < 0.01 * monotonicity_applicable as f64;

    let tlarge_checked = trials.iter().filter(|t| t.tlarge_bound_ok.is_some()).count();
    let tlarge_ok = trials.iter().filter(|t| t.tlarge_bound_ok == Some(true)).count();
    let tlarge_ok_fraction =
        if tlarge_checked > 0 { tlarge_ok as f64 / tlarge_checked as f64 } else { f64::NAN };

    let stopped_degree_checked = trials.iter().filter(|t| t.stopped_degree_pass.is_some()).count();
    let stopped_degree_ok = trials.iter().filter(|t| t.stopped_degree_pass == Some(true)).count();
    let stopped_degree_pass_fraction =
        if stopped_degree_checked > 0 { stopped_degree_ok as f64 / stopped_degree_checked as f64 } else { f64::NAN };

    let ledger_all_clean = trials.iter().all(|t| t.ledger_clean != Some(false));

    let pass = degree_violations_total == 0
        && monotonicity_rate_ok
        && escape_within_3se
        && ledger_all_clean
        && (tlarge_ok_fraction.is_nan() || tlarge_ok_fraction >= 0.99)
        && (stopped_degree_pass_fraction.is_nan() || stopped_degree_pass_fraction >= 0.99);

    Ok(ExploreSweepReport {
        config: config.clone(),
        trials,
        aggregate: ExploreAggregate {
            p,
            solver_survival,
            escape_rate,
            escape_stderr,
            escape_within_3se,
            degree_violations_total,
            monotonicity_violations,
            monotonicity_applicable,
            monotonicity_rate_ok,
            tlarge_ok_fraction,
            stopped_degree_pass_fraction,
            ledger_all_clean,
            pass,
        },
    })
}

pub fn write_explore_csv<W: Write>(report: &ExploreSweepReport, mut w: W) -> Result<()> {
    writeln!(w, "{EXPLORE_CSV_HEADER}")?;
    for t in &report.trials {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            t.trial,
            t.stream_id,
            t.start_rank,
            t.stop_reason,
            t.t,
            t.t_large.map_or_else(String::new, |v| v.to_string()),
            t.component_size,
            t.max_gen,
            t.queries,
            t.edges,
            t.degree_violations,
            t.monotonicity_violations,
            t.monotonicity_applicable,
            fmt_opt_bool(t.stopped_degree_pass),
            fmt_opt_bool(t.tlarge_bound_ok),
            fmt_opt_bool(t.ledger_clean),
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------
// branching suite
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchingReport {
    pub config: ExperimentConfig,
    pub p: f64,
    pub gamma: f64,
    pub progeny_cap: u64,
    pub solver_survival: f64,
    pub upper: McEstimate,
    pub upper_sensitivity_ok: bool,
    pub lower: McEstimate,
    /// survival of the pivot law at `ell = 1`; absent for `j = 1`.
    pub pivot: Option<McEstimate>,
    pub dual_mean: ProgenyStats,
    pub dual_target: f64,
    pub upper_within_3se: bool,
    pub dual_within_10pct: bool,
    pub pivot_dead: bool,
    pub pass: bool,
}

/// Monte Carlo suite over the four offspring laws at the configured
/// parameters: upper/lower survival against the solver, dual-law mean
/// progeny against `1/eps`, pivot-law subcriticality, and cap sensitivity.
pub fn run_branching_suite(config: &ExperimentConfig) -> Result<BranchingReport> {
    config.validate()?;
    let p_hat = critical_p(config.n, config.k, config.j)?;
    let p = (1.0 + config.eps) * p_hat; // branching laws live at the supercritical point
    let gamma = config.gamma()?;
    let cap = config.progeny_cap.unwrap_or_else(|| default_progeny_cap(config.eps));
    let mc_trials = config.mc_trials.unwrap_or(10_000);

    let upper = OffspringLaw::upper(config.n, config.k, config.j, p)?;
    let lower = OffspringLaw::lower(config.n, config.k, config.j, p, gamma)?;
    let dual = OffspringLaw::dual(config.n, config.k, config.j, config.eps)?;

    let mut stream = SeededStream::new(config.seed, config.seed ^ 0xb7a9c4);
    let upper_sens = survival_mc_with_sensitivity(&upper, cap, mc_trials, &mut stream)?;
    let lower_est = survival_mc(&lower, cap, mc_trials, &mut stream)?;
    let pivot_est = if config.j >= 2 {
        let law = OffspringLaw::pivot(config.n, config.k, config.j, 1, p)?;
        if law.mean() < 1.0 {
            Some(survival_mc(&law, cap, mc_trials, &mut stream)?)
        } else {
            return Err(Error::BadParameter(format!(
                "pivot law unexpectedly supercritical (mean {})",
                law.mean()
            )));
        }
    } else {
        None
    };
    let dual_mean = mean_progeny_mc(&dual, mc_trials.max(10_000), &mut stream)?;

    let solver_survival =
        giant_prediction(config.n, config.k, config.j, config.eps)?.survival;
    let CapSensitivity { at_cap: upper_est, consistent: upper_sensitivity_ok, .. } = upper_sens;

    let upper_within_3se =
        (upper_est.estimate - solver_survival).abs() <= 3.0 * upper_est.stderr;
    let dual_target = 1.0 / config.eps;
    let dual_within_10pct = (dual_mean.mean - dual_target).abs() / dual_target <= 0.10;
    let pivot_dead = pivot_est
        .as_ref()
        .is_none_or(|e| e.estimate <= 3.0 * e.stderr.max(1.0 / mc_trials as f64));

    let pass = upper_within_3se && dual_within_10pct && pivot_dead && upper_sensitivity_ok;

    Ok(BranchingReport {
        config: config.clone(),
        p,
        gamma,
        progeny_cap: cap,
        solver_survival,
        upper: upper_est,
        upper_sensitivity_ok,
        lower: lower_est,
        pivot: pivot_est,
        dual_mean,
        dual_target,
        upper_within_3se,
        dual_within_10pct,
        pivot_dead,
        pass,
    })
}

/// Escape-frequency bracket: the lower- and upper-law survivals should
/// straddle the observed exploration escape rate within joint error bars.
pub fn bracket_holds(lower: &McEstimate, upper: &McEstimate, bfs: &StopFrequency) -> bool {
    let lo_joint = 3.0 * (lower.stderr.powi(2) + bfs.stderr.powi(2)).sqrt();
    let hi_joint = 3.0 * (upper.stderr.powi(2) + bfs.stderr.powi(2)).sqrt();
    lower.estimate - lo_joint <= bfs.estimate && bfs.estimate <= upper.estimate + hi_joint
}

// ---------------------------------------------------------------------
// combined sweep
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub census: CensusSweepReport,
    pub exploration: ExploreSweepReport,
    pub branching: BranchingReport,
    pub bracket_ok: bool,
    pub pass: bool,
}

/// Runs all three suites on one config and cross-checks the escape-rate
/// bracket between the exploration sweep and the branching laws.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepReport> {
    let census = run_census_sweep(config)?;
    let exploration = run_exploration_sweep(config)?;
    let branching = run_branching_suite(config)?;
    let bfs = StopFrequency {
        escapes: 0,
        trials: exploration.trials.len() as u64,
        estimate: exploration.aggregate.escape_rate,
        stderr: exploration.aggregate.escape_stderr,
    };
    let bracket_ok = match config.regime {
        Regime::Super => bracket_holds(&branching.lower, &branching.upper, &bfs),
        Regime::Sub => true,
    };
    let pass =
        census.aggregate.pass && exploration.aggregate.pass && branching.pass && bracket_ok;
    Ok(SweepReport { census, exploration, branching, bracket_ok, pass })
}
