//! Galton-Watson machinery around the exploration process: the upper,
//! lower, pivot and dual offspring laws, Monte Carlo survival and total
//! progeny estimation, and a coupled run that checks generation-by-
//! generation domination of the search by its upper branching process.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::{binom_u64, ChooseTable, CombIter};
use crate::explorer::{StopParams, StopReason};
use crate::randsrc::{binomial_draw, SeededStream};
use crate::stats;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LawKind {
    /// every queryable `k`-set succeeds independently: dominates the search.
    Upper,
    /// query budget shrunk by `1 - gamma`: dominated by the early search.
    Lower,
    /// search restricted to `j`-sets through a fixed `ell`-set; subcritical.
    Pivot,
    /// the supercritical process conditioned on extinction; mean `1 - eps`.
    Dual,
}

/// Offspring distribution `multiplier * Binomial(trials, p)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OffspringLaw {
    pub kind: LawKind,
    pub trials: u64,
    pub p: f64,
    pub multiplier: u64,
}

impl OffspringLaw {
    pub fn upper(n: u32, k: u8, j: u8, p: f64) -> Result<Self> {
        check_prob(p)?;
        check_kj(k, j)?;
        Ok(OffspringLaw {
            kind: LawKind::Upper,
            trials: binom_u64(n as u64, (k - j) as u64)?,
            p,
            multiplier: binom_u64(k as u64, j as u64)? - 1,
        })
    }

    pub fn lower(n: u32, k: u8, j: u8, p: f64, gamma: f64) -> Result<Self> {
        check_prob(p)?;
        check_kj(k, j)?;
        if !(0.0..1.0).contains(&gamma) || gamma <= 0.0 {
            return Err(Error::BadParameter(format!("need gamma in (0,1), got {gamma}")));
        }
        let full = binom_u64(n as u64, (k - j) as u64)? as f64;
        Ok(OffspringLaw {
            kind: LawKind::Lower,
            trials: ((1.0 - gamma) * full).ceil() as u64,
            p,
            multiplier: binom_u64(k as u64, j as u64)? - 1,
        })
    }

    pub fn pivot(n: u32, k: u8, j: u8, ell: u8, p: f64) -> Result<Self> {
        check_prob(p)?;
        check_kj(k, j)?;
        if ell == 0 || ell >= j {
            return Err(Error::BadParameter(format!(
                "pivot law needs 1 <= ell <= j-1, got ell={ell}, j={j}"
            )));
        }
        Ok(OffspringLaw {
            kind: LawKind::Pivot,
            trials: binom_u64(n as u64, (k - j) as u64)?,
            p,
            multiplier: binom_u64((k - ell) as u64, (j - ell) as u64)? - 1,
        })
    }

    /// Upper law with `p` replaced by `(1 - eps) / (c * C(n, k-j))`, the
    /// stated mean of the process conditioned on dying out.
    pub fn dual(n: u32, k: u8, j: u8, eps: f64) -> Result<Self> {
        check_kj(k, j)?;
        if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
            return Err(Error::BadParameter(format!("need eps in (0,1), got {eps}")));
        }
        let c = binom_u64(k as u64, j as u64)? - 1;
        let trials = binom_u64(n as u64, (k - j) as u64)?;
        Ok(OffspringLaw {
            kind: LawKind::Dual,
            trials,
            p: (1.0 - eps) / (c as f64 * trials as f64),
            multiplier: c,
        })
    }

    /// Mean offspring `multiplier * trials * p`.
    pub fn mean(&self) -> f64 {
        self.multiplier as f64 * self.trials as f64 * self.p
    }

    /// One offspring draw.
    pub fn sample(&self, stream: &mut SeededStream) -> Result<u64> {
        self.sample_for(1, stream)
    }

    /// Combined offspring of `count` independent individuals, drawn as one
    /// binomial over the pooled trials (identical in distribution).
    pub fn sample_for(&self, count: u64, stream: &mut SeededStream) -> Result<u64> {
        let mut successes = 0u64;
        let mut remaining = count;
        let per_chunk = u64::MAX.checked_div(self.trials).unwrap_or(u64::MAX);
        while remaining > 0 {
            let chunk = remaining.min(per_chunk.max(1));
            successes = successes
                .checked_add(binomial_draw(stream, chunk * self.trials, self.p)?)
                .ok_or(Error::BadParameter("offspring count overflow".into()))?;
            remaining -= chunk;
        }
        successes
            .checked_mul(self.multiplier)
            .ok_or(Error::BadParameter("offspring count overflow".into()))
    }
}

fn check_prob(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::BadProbability(p));
    }
    Ok(())
}

fn check_kj(k: u8, j: u8) -> Result<()> {
    if k < 2 || j == 0 || j >= k {
        return Err(Error::BadParameter(format!("need 1 <= j <= k-1, got j={j}, k={k}")));
    }
    Ok(())
}

/// Outcome of one branching-process realization.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GwOutcome {
    pub total_progeny: u64,
    pub generations: u32,
    /// population still alive when the progeny cap was reached: the finite
    /// surrogate for indefinite survival.
    pub survived_to_cap: bool,
}

/// Breadth-first realization of the branching process, stopping at
/// extinction or at `progeny_cap` total individuals.
pub fn gw_run(law: &OffspringLaw, progeny_cap: u64, stream: &mut SeededStream) -> Result<GwOutcome> {
    if progeny_cap == 0 {
        return Err(Error::BadParameter("need progeny_cap >= 1".into()));
    }
    let mut current = 1u64;
    let mut total = 1u64;
    let mut generations = 1u32;
    loop {
        if total >= progeny_cap {
            return Ok(GwOutcome { total_progeny: total, generations, survived_to_cap: true });
        }
        let children = law.sample_for(current, stream)?;
        if children == 0 {
            return Ok(GwOutcome { total_progeny: total, generations, survived_to_cap: false });
        }
        total = total.saturating_add(children);
        generations += 1;
        current = children;
    }
}

/// Monte Carlo estimate with a binomial standard error.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
}

/// Fraction of runs that reach the progeny cap alive.
pub fn survival_mc(
    law: &OffspringLaw,
    progeny_cap: u64,
    trials: u64,
    stream: &mut SeededStream,
) -> Result<McEstimate> {
    if trials < 100 {
        return Err(Error::BadParameter("survival estimation needs >= 100 trials".into()));
    }
    let mut survived = 0u64;
    for _ in 0..trials {
        if gw_run(law, progeny_cap, stream)?.survived_to_cap {
            survived += 1;
        }
    }
    let (estimate, stderr) = stats::binomial_proportion(survived, trials);
    Ok(McEstimate { estimate, stderr, trials })
}

/// Survival estimates at the cap and at four times the cap; they must
/// agree within two combined standard errors for the cap to be trusted.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CapSensitivity {
    pub at_cap: McEstimate,
    pub at_quad_cap: McEstimate,
    pub consistent: bool,
}

pub fn survival_mc_with_sensitivity(
    law: &OffspringLaw,
    progeny_cap: u64,
    trials: u64,
    stream: &mut SeededStream,
) -> Result<CapSensitivity> {
    let at_cap = survival_mc(law, progeny_cap, trials, stream)?;
    let at_quad_cap = survival_mc(law, progeny_cap.saturating_mul(4), trials, stream)?;
    let joint = (at_cap.stderr.powi(2) + at_quad_cap.stderr.powi(2)).sqrt();
    let consistent = (at_cap.estimate - at_quad_cap.estimate).abs() <= 2.0 * joint;
    Ok(CapSensitivity { at_cap, at_quad_cap, consistent })
}

/// Default progeny cap: near-critical excursions die by size `O(eps^-2)`.
pub fn default_progeny_cap(eps: f64) -> u64 {
    10_000u64.max((10.0 / (eps * eps)).ceil() as u64)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProgenyStats {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
}

const PROGENY_SAFETY_CAP: u64 = 100_000_000;

/// Empirical mean total progeny of a subcritical law.
pub fn mean_progeny_mc(
    law: &OffspringLaw,
    trials: u64,
    stream: &mut SeededStream,
) -> Result<ProgenyStats> {
    if law.mean() >= 1.0 {
        return Err(Error::BadParameter(format!(
            "law mean {} >= 1: total progeny need not be finite",
            law.mean()
        )));
    }
    if trials == 0 {
        return Err(Error::BadParameter("need at least one trial".into()));
    }
    let mut totals = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        let run = gw_run(law, PROGENY_SAFETY_CAP, stream)?;
        if run.survived_to_cap {
            return Err(Error::ProgenyGuard(PROGENY_SAFETY_CAP));
        }
        totals.push(run.total_progeny as f64);
    }
    let (mean, stderr) = stats::mean_and_stderr(&totals);
    Ok(ProgenyStats { mean, stderr, trials })
}

/// Record of one coupled search/branching run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoupledRun {
    pub bfs_gen_sizes: Vec<u64>,
    pub bp_gen_sizes: Vec<u64>,
    /// `|G_i^search| <= |G_i^branching|` for every recorded round.
    pub dominated: bool,
    pub stop_reason: StopReason,
}

/// Runs the search process and its upper branching process on one shared
/// Bernoulli stream.
///
/// Each search member consumes one shared draw per fresh query; its paired
/// branching vertex consumes the same outcomes and is padded with fresh
/// draws up to the full `C(n, k-j)` query budget. Surplus branching
/// vertices draw entire fresh budgets. Every success spawns exactly
/// `C(k,j) - 1` children on the branching side, while the search promotes
/// at most that many new `j`-sets per edge — so domination holds by
/// construction and any violation is an implementation fault.
pub fn coupled_domination_run(
    start: &[u32],
    n: u32,
    k: u8,
    p: f64,
    params: &StopParams,
    stream: &mut SeededStream,
) -> Result<CoupledRun> {
    check_prob(p)?;
    let j = start.len();
    if j == 0 || j >= k as usize {
        return Err(Error::BadParameter(format!("need 1 <= j < k, got j={j}, k={k}")));
    }
    if start.windows(2).any(|w| w[0] >= w[1]) || start[j - 1] >= n {
        return Err(Error::InvalidSet("start j-set must be sorted within [0, n)".into()));
    }
    let table = ChooseTable::new(n, k)?;
    let c = binom_u64(k as u64, j as u64)? - 1;
    let budget = binom_u64(n as u64, k as u64 - j as u64)?;
    let jsub_masks: Vec<Vec<usize>> = {
        let mut out = Vec::new();
        let mut it = CombIter::new(k as usize, j);
        while let Some(idx) = it.step() {
            out.push(idx.to_vec());
        }
        out
    };

    let njf = (n as f64).powi(j as i32);
    let s2_cut = params.lambda * njf;
    let s3_cut = params.lambda * params.lambda * njf;

    let start_rank = table.rank(start);
    let mut discovered: HashSet<u64> = HashSet::from([start_rank]);
    let mut queried: HashSet<u64> = HashSet::new();
    let mut bfs_gen: Vec<u64> = vec![start_rank];
    let mut bp_gen: u64 = 1;
    let mut bfs_sizes = vec![1u64];
    let mut bp_sizes = vec![1u64];
    let mut partial = 1u64;
    let mut dominated = true;

    let mut jbuf = Vec::with_capacity(j);
    let mut kbuf = Vec::with_capacity(k as usize);
    let mut complement = Vec::with_capacity(n as usize);

    let stop_reason;
    loop {
        let gsize = bfs_gen.len() as u64;
        if gsize == 0 {
            stop_reason = StopReason::S1;
            break;
        }
        if partial as f64 >= s2_cut {
            stop_reason = StopReason::S2;
            break;
        }
        if gsize as f64 >= s3_cut {
            stop_reason = StopReason::S3;
            break;
        }

        let mut next: Vec<u64> = Vec::new();
        let mut shared_successes = 0u64;
        let mut pad_budget = 0u64;
        for &jrank in &bfs_gen {
            table.unrank_into(jrank, j as u8, &mut jbuf);
            complement.clear();
            let mut pos = 0usize;
            for v in 0..n {
                if pos < j && jbuf[pos] == v {
                    pos += 1;
                } else {
                    complement.push(v);
                }
            }
            let mut fresh = 0u64;
            let mut combos = CombIter::new(complement.len(), k as usize - j);
            while let Some(idx) = combos.step() {
                kbuf.clear();
                kbuf.extend_from_slice(&jbuf);
                for &i in idx {
                    kbuf.push(complement[i]);
                }
                kbuf.sort_unstable();
                let krank = table.rank(&kbuf);
                if !queried.insert(krank) {
                    continue;
                }
                fresh += 1;
                if stream.random_bool(p) {
                    shared_successes += 1;
                    for mask in &jsub_masks {
                        let mut rank = 0u64;
                        for (t, &i) in mask.iter().enumerate() {
                            rank += table.choose(kbuf[i], t as u8 + 1);
                        }
                        if discovered.insert(rank) {
                            next.push(rank);
                        }
                    }
                }
            }
            pad_budget += budget - fresh;
        }
        // Paired vertices fill up to the full budget; surplus branching
        // vertices draw entire fresh budgets.
        let surplus = bp_gen.saturating_sub(gsize);
        if bp_gen < gsize {
            dominated = false;
        }
        let pad_successes = binomial_draw(stream, pad_budget, p)?;
        let surplus_trials = surplus
            .checked_mul(budget)
            .ok_or(Error::BadParameter("branching budget overflow".into()))?;
        let surplus_successes = binomial_draw(stream, surplus_trials, p)?;
        let bp_next = c
            .checked_mul(shared_successes + pad_successes + surplus_successes)
            .ok_or(Error::BadParameter("branching generation overflow".into()))?;

        next.sort_unstable();
        if (next.len() as u64) > bp_next {
            dominated = false;
        }
        partial += next.len() as u64;
        bfs_sizes.push(next.len() as u64);
        bp_sizes.push(bp_next);
        bfs_gen = next;
        bp_gen = bp_next;
    }

    Ok(CoupledRun { bfs_gen_sizes: bfs_sizes, bp_gen_sizes: bp_sizes, dominated, stop_reason })
}

/// Convenience: coupled run with a uniformly random start.
pub fn coupled_domination_run_random_start(
    n: u32,
    k: u8,
    j: u8,
    p: f64,
    params: &StopParams,
    stream: &mut SeededStream,
) -> Result<CoupledRun> {
    let space = binom_u64(n as u64, j as u64)?;
    let rank = stream.random_range(0..space);
    let start = crate::combinat::colex_unrank(rank, j, n)?;
    coupled_domination_run(&start, n, k, p, params, stream)
}
