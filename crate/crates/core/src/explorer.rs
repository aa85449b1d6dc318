//! Breadth-first exploration of a `j`-component.
//!
//! Starting from one active `j`-set, each round processes the current
//! generation in colex order: every member queries its not-yet-queried
//! `k`-supersets in colex order, and every edge found promotes the neutral
//! `j`-sets inside it to the next generation. Exploration runs until, at
//! the beginning of a round,
//!
//! * S1 — the current generation is empty (component exhausted), or
//! * S2 — the partial component has reached `lambda * n^j` members, or
//! * S3 — the current generation has reached `lambda^2 * n^j` members.
//!
//! The first round where any rule holds is the stopping time `T`; the
//! first where S1 or S2 holds is `T_large >= T`. Along the way the process
//! can maintain, per generation and per `ell < j`, the number of members
//! containing each `ell`-set, and a ledger splitting those degrees into
//! jump events (edge found from a `j`-set not containing the `ell`-set)
//! and pivot events (edge found from one containing it).

use std::collections::{HashMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::{binom_u64, ChooseTable, CombIter};
use crate::randsrc::{EdgeOracle, SeededStream};
use crate::stats;
use crate::theory::TheoryConstants;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    S1,
    S2,
    S3,
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StopReason::S1 => write!(f, "S1"),
            StopReason::S2 => write!(f, "S2"),
            StopReason::S3 => write!(f, "S3"),
        }
    }
}

/// How far to run the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExploreMode {
    /// Stop at `T` (first of S1/S2/S3).
    ToStop,
    /// Stop at `T_large` (first of S1/S2), ignoring S3.
    ToLargeStop,
    /// Run until the component is exhausted (S1), ignoring S2/S3.
    Exhaustive,
}

/// Stopping-rule parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct StopParams {
    pub lambda: f64,
    pub delta: f64,
    pub xi: f64,
    pub mode: ExploreMode,
}

impl StopParams {
    pub fn new(n: u32, j: u8, lambda: f64, delta: f64, xi: f64, mode: ExploreMode) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0 / 6.0) {
            return Err(Error::BadParameter(format!("need 0 < delta < 1/6, got {delta}")));
        }
        if lambda.is_nan() || lambda <= 0.0 {
            return Err(Error::BadParameter(format!("need lambda > 0, got {lambda}")));
        }
        let njf = (n as f64).powi(j as i32);
        if lambda * njf < 1.0 {
            return Err(Error::BadParameter(format!(
                "lambda * n^j = {} < 1; the size cutoff is vacuous",
                lambda * njf
            )));
        }
        if xi.is_nan() || xi <= 0.0 {
            return Err(Error::BadParameter(format!("need xi > 0, got {xi}")));
        }
        Ok(StopParams { lambda, delta, xi, mode })
    }

    pub fn with_mode(mut self, mode: ExploreMode) -> Self {
        self.mode = mode;
        self
    }
}

/// Split of one `ell`-set's degree growth at one step into event classes.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq)]
pub struct LedgerCell {
    /// members of this generation containing the `ell`-set that were
    /// discovered by jumps / by pivots; `jumps + pivots = d_L`.
    pub jumps: u64,
    pub pivots: u64,
    /// queries of the producing round that would have been jumps to /
    /// pivots at this `ell`-set had they found an edge.
    pub jump_queries: u64,
    pub pivot_queries: u64,
}

/// A per-event contribution over its cap (never expected; zero tolerance).
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct CapViolation {
    pub step: u32,
    pub ell: u8,
    pub lset_rank: u64,
    pub contribution: u64,
    pub cap: u64,
    pub pivot: bool,
}

/// One generation of the process plus its optional degree structures.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GenerationRecord {
    /// member `j`-set ranks, sorted (the processing order of the round).
    pub members: Vec<u64>,
    /// fresh queries made by the round that produced this generation.
    pub queries: u64,
    pub edges_found: u64,
    /// per `ell in 1..j`: map from `ell`-set rank to its degree here.
    pub degree_index: Option<Vec<HashMap<u64, u32>>>,
    /// per `ell in 1..j`: jump/pivot attribution for this generation.
    pub ledger: Option<Vec<HashMap<u64, LedgerCell>>>,
}

impl GenerationRecord {
    pub fn size(&self) -> u64 {
        self.members.len() as u64
    }

    /// `Delta_ell` of this generation; `ell = 0` is the generation size.
    pub fn max_degree(&self, ell: u8) -> Option<u64> {
        if ell == 0 {
            return Some(self.size());
        }
        self.degree_index
            .as_ref()
            .map(|di| di[ell as usize - 1].values().map(|&d| d as u64).max().unwrap_or(0))
    }
}

/// Full record of one exploration run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExplorationTrace {
    pub n: u32,
    pub k: u8,
    pub j: u8,
    pub start_rank: u64,
    pub params: StopParams,
    /// generations `G_1, G_2, ...` up to the mode's horizon.
    pub generations: Vec<GenerationRecord>,
    /// reason the primary stopping time `T` fired.
    pub stop_reason: StopReason,
    pub t: u32,
    pub t_large: Option<u32>,
    pub t_large_reason: Option<StopReason>,
    pub total_queries: u64,
    pub total_edges: u64,
    pub discovered_count: u64,
    pub cap_violations: Vec<CapViolation>,
}

/// Version tag of the trace text export schema.
pub const TRACE_SCHEMA_VERSION: u32 = 1;

impl ExplorationTrace {
    pub fn gen_size(&self, i: u32) -> u64 {
        self.generations[i as usize - 1].size()
    }

    /// `|C(i)|`: members discovered through generation `i`.
    pub fn partial_size(&self, i: u32) -> u64 {
        self.generations[..i as usize].iter().map(|g| g.size()).sum()
    }

    pub fn component_size(&self) -> u64 {
        self.partial_size(self.generations.len() as u32)
    }

    /// All discovered `j`-set ranks.
    pub fn discovered(&self) -> HashSet<u64> {
        self.generations.iter().flat_map(|g| g.members.iter().copied()).collect()
    }

    /// Whether `T` fired on S2 or S3 (the escape event).
    pub fn escaped(&self) -> bool {
        matches!(self.stop_reason, StopReason::S2 | StopReason::S3)
    }

    /// Text export: `#`-prefixed metadata lines, then one CSV row per
    /// round `(i, gen_size, partial_size, max_degree, queries, edges)`.
    pub fn write_rows<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# trace schema v{TRACE_SCHEMA_VERSION}")?;
        writeln!(
            w,
            "# n={} k={} j={} start={} lambda={:.17e} delta={:.17e} xi={:.17e} mode={:?}",
            self.n, self.k, self.j, self.start_rank, self.params.lambda, self.params.delta,
            self.params.xi, self.params.mode
        )?;
        writeln!(w, "round,gen_size,partial_size,max_degree,queries,edges")?;
        let mut partial = 0u64;
        for (idx, g) in self.generations.iter().enumerate() {
            partial += g.size();
            let max_deg = (1..self.j).filter_map(|l| g.max_degree(l)).max().unwrap_or(0);
            writeln!(w, "{},{},{},{},{},{}", idx + 1, g.size(), partial, max_deg, g.queries, g.edges_found)?;
        }
        writeln!(
            w,
            "# stop_reason={} t={} t_large={} total_queries={} total_edges={}",
            self.stop_reason,
            self.t,
            self.t_large.map_or_else(|| "-".into(), |v| v.to_string()),
            self.total_queries,
            self.total_edges
        )?;
        Ok(())
    }
}

/// Feature switches for a run. The ledger needs the degree index for its
/// own audit, so enabling it implies the index.
#[derive(Debug, Clone, Copy)]
pub struct ExploreOptions {
    pub degree_index: bool,
    pub ledger: bool,
    /// Abort if the discovered component exceeds this many `j`-sets.
    pub max_component: Option<u64>,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { degree_index: true, ledger: true, max_component: None }
    }
}

impl ExploreOptions {
    pub fn fast() -> Self {
        ExploreOptions { degree_index: false, ledger: false, max_component: None }
    }
}

// Bitmask helpers over positions of a k-set buffer (k <= 7).
fn subset_masks(k: usize, r: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut it = CombIter::new(k, r);
    while let Some(idx) = it.step() {
        out.push(idx.iter().fold(0u32, |m, &i| m | (1 << i)));
    }
    out
}

#[inline]
fn rank_masked(table: &ChooseTable, buf: &[u32], mask: u32) -> u64 {
    let mut rank = 0u64;
    let mut t = 0u8;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        t += 1;
        rank += table.choose(buf[i], t);
        m &= m - 1;
    }
    rank
}

/// Runs the exploration from `start` against `oracle`.
pub fn explore(
    start: &[u32],
    oracle: &mut EdgeOracle,
    params: &StopParams,
    opts: &ExploreOptions,
) -> Result<ExplorationTrace> {
    let n = oracle.n();
    let k = oracle.k() as usize;
    let j = start.len();
    if j == 0 || j >= k {
        return Err(Error::BadParameter(format!("need 1 <= j < k, got j={j}, k={k}")));
    }
    if start.windows(2).any(|w| w[0] >= w[1]) || start[j - 1] >= n {
        return Err(Error::InvalidSet("start j-set must be sorted within [0, n)".into()));
    }
    let table = ChooseTable::new(n, k as u8)?;
    let with_index = opts.degree_index || opts.ledger;
    let with_ledger = opts.ledger;

    let njf = (n as f64).powi(j as i32);
    let s2_cut = params.lambda * njf;
    let s3_cut = params.lambda * params.lambda * njf;

    // Precomputed position masks over a k-buffer.
    let jsub_masks = subset_masks(k, j);
    let ell_masks: Vec<Vec<u32>> = (1..j).map(|l| subset_masks(k, l)).collect();
    let jell_masks: Vec<Vec<u32>> = (1..j).map(|l| subset_masks(j, l)).collect();
    // contribution caps: jump <= C(k-l, j-l), pivot <= C(k-l, j-l) - 1
    let jump_caps: Vec<u64> =
        (1..j).map(|l| binom_u64((k - l) as u64, (j - l) as u64).unwrap()).collect();

    let start_rank = table.rank(start);
    let mut discovered: HashSet<u64> = HashSet::new();
    discovered.insert(start_rank);

    let build_index = |members: &[u64]| -> Option<Vec<HashMap<u64, u32>>> {
        if !with_index {
            return None;
        }
        let mut maps: Vec<HashMap<u64, u32>> = (1..j).map(|_| HashMap::new()).collect();
        let mut buf = Vec::with_capacity(j);
        for &rank in members {
            table.unrank_into(rank, j as u8, &mut buf);
            for (l, masks) in jell_masks.iter().enumerate() {
                for &m in masks {
                    *maps[l].entry(rank_masked(&table, &buf, m)).or_insert(0) += 1;
                }
            }
        }
        Some(maps)
    };

    let mut generations: Vec<GenerationRecord> = vec![GenerationRecord {
        members: vec![start_rank],
        queries: 0,
        edges_found: 0,
        degree_index: build_index(&[start_rank]),
        ledger: if with_ledger { Some((1..j).map(|_| HashMap::new()).collect()) } else { None },
    }];
    let mut partial: u64 = 1;
    let mut t: Option<(u32, StopReason)> = None;
    let mut t_large: Option<(u32, StopReason)> = None;
    let mut total_queries = 0u64;
    let mut total_edges = 0u64;
    let mut cap_violations: Vec<CapViolation> = Vec::new();

    let mut jbuf: Vec<u32> = Vec::with_capacity(j);
    let mut kbuf: Vec<u32> = Vec::with_capacity(k);
    let mut complement: Vec<u32> = Vec::with_capacity(n as usize);
    let mut new_masks: Vec<u32> = Vec::with_capacity(jsub_masks.len());

    let mut i: u32 = 1;
    loop {
        let gsize = generations[i as usize - 1].size();
        let s1 = gsize == 0;
        let s2 = (partial as f64) >= s2_cut;
        let s3 = (gsize as f64) >= s3_cut;
        if t.is_none() && (s1 || s2 || s3) {
            let reason = if s1 {
                StopReason::S1
            } else if s2 {
                StopReason::S2
            } else {
                StopReason::S3
            };
            t = Some((i, reason));
        }
        if t_large.is_none() && (s1 || s2) {
            t_large = Some((i, if s1 { StopReason::S1 } else { StopReason::S2 }));
        }
        let done = match params.mode {
            ExploreMode::ToStop => t.is_some(),
            ExploreMode::ToLargeStop => t_large.is_some(),
            ExploreMode::Exhaustive => s1,
        };
        if done {
            break;
        }
        if let Some(cap) = opts.max_component {
            if partial > cap {
                return Err(Error::BadParameter(format!(
                    "component exceeded the configured guard of {cap} j-sets"
                )));
            }
        }

        // Process round i: members of G_i in colex order query their
        // unqueried k-supersets in colex order.
        let members = generations[i as usize - 1].members.clone();
        let mut next: Vec<u64> = Vec::new();
        let mut round_queries = 0u64;
        let mut round_edges = 0u64;
        let mut ledger: Option<Vec<HashMap<u64, LedgerCell>>> =
            if with_ledger { Some((1..j).map(|_| HashMap::new()).collect()) } else { None };

        for &jrank in &members {
            table.unrank_into(jrank, j as u8, &mut jbuf);
            complement.clear();
            {
                let mut pos = 0usize;
                for v in 0..n {
                    if pos < j && jbuf[pos] == v {
                        pos += 1;
                    } else {
                        complement.push(v);
                    }
                }
            }
            let mut fresh_from_this = 0u64;
            let mut combos = CombIter::new(complement.len(), k - j);
            while let Some(idx) = combos.step() {
                // Merge jbuf with the added outside vertices; remember
                // which positions of the k-buffer belong to the j-set.
                kbuf.clear();
                let mut jmask = 0u32;
                {
                    let (mut a, mut b) = (0usize, 0usize);
                    while a < j || b < idx.len() {
                        let take_j =
                            b >= idx.len() || (a < j && jbuf[a] < complement[idx[b]]);
                        if take_j {
                            jmask |= 1 << kbuf.len();
                            kbuf.push(jbuf[a]);
                            a += 1;
                        } else {
                            kbuf.push(complement[idx[b]]);
                            b += 1;
                        }
                    }
                }
                let krank = table.rank(&kbuf);
                let Some(is_edge) = oracle.query_fresh(krank) else {
                    continue;
                };
                fresh_from_this += 1;
                if let Some(led) = ledger.as_mut() {
                    for (l, masks) in ell_masks.iter().enumerate() {
                        for &m in masks {
                            if m & !jmask != 0 {
                                led[l]
                                    .entry(rank_masked(&table, &kbuf, m))
                                    .or_default()
                                    .jump_queries += 1;
                            }
                        }
                    }
                }
                if !is_edge {
                    continue;
                }
                round_edges += 1;
                new_masks.clear();
                for &m in &jsub_masks {
                    let srank = rank_masked(&table, &kbuf, m);
                    if discovered.insert(srank) {
                        next.push(srank);
                        new_masks.push(m);
                    }
                }
                if let Some(led) = ledger.as_mut() {
                    for (l, masks) in ell_masks.iter().enumerate() {
                        for &m in masks {
                            let contribution =
                                new_masks.iter().filter(|&&nm| m & !nm == 0).count() as u64;
                            let is_pivot = m & !jmask == 0;
                            if contribution == 0 && !is_pivot {
                                continue;
                            }
                            let lrank = rank_masked(&table, &kbuf, m);
                            let cell = led[l].entry(lrank).or_default();
                            let cap = if is_pivot { jump_caps[l] - 1 } else { jump_caps[l] };
                            if is_pivot {
                                cell.pivots += contribution;
                            } else {
                                cell.jumps += contribution;
                            }
                            if contribution > cap {
                                cap_violations.push(CapViolation {
                                    step: i + 1,
                                    ell: l as u8 + 1,
                                    lset_rank: lrank,
                                    contribution,
                                    cap,
                                    pivot: is_pivot,
                                });
                            }
                        }
                    }
                }
            }
            round_queries += fresh_from_this;
            if let Some(led) = ledger.as_mut() {
                for (l, masks) in jell_masks.iter().enumerate() {
                    for &m in masks {
                        led[l]
                            .entry(rank_masked(&table, &jbuf, m))
                            .or_default()
                            .pivot_queries += fresh_from_this;
                    }
                }
            }
        }

        next.sort_unstable();
        total_queries += round_queries;
        total_edges += round_edges;
        partial += next.len() as u64;
        let degree_index = build_index(&next);
        generations.push(GenerationRecord {
            members: next,
            queries: round_queries,
            edges_found: round_edges,
            degree_index,
            ledger,
        });
        i += 1;
    }

    let (t, stop_reason) = t.expect("loop exits only after T is set");
    Ok(ExplorationTrace {
        n,
        k: k as u8,
        j: j as u8,
        start_rank,
        params: *params,
        generations,
        stop_reason,
        t,
        t_large: t_large.map(|x| x.0),
        t_large_reason: t_large.map(|x| x.1),
        total_queries,
        total_edges,
        discovered_count: discovered.len() as u64,
        cap_violations,
    })
}

/// One degree-bound breach found by [`check_generation_degree_bounds`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DegreeViolation {
    pub round: u32,
    pub ell: u8,
    pub lset_rank: u64,
    pub degree: u64,
    pub bound: f64,
}

/// Checks the per-generation degree bound
/// `Delta_ell(G_i) <= C_ell (|G_i| / n^ell + n^delta)` for all `i <= T`.
///
/// The `ell = 0` case holds identically (`Delta_0 = |G_i|` and `C_0 = 1`),
/// so only `ell >= 1` can produce violations.
pub fn check_generation_degree_bounds(
    trace: &ExplorationTrace,
    constants: &TheoryConstants,
    delta: f64,
) -> Result<Vec<DegreeViolation>> {
    let n_delta = (trace.n as f64).powf(delta);
    let mut out = Vec::new();
    for i in 1..=trace.t {
        let g = &trace.generations[i as usize - 1];
        let Some(index) = g.degree_index.as_ref() else {
            return Err(Error::BadTrace("degree indexing disabled for this run".into()));
        };
        for ell in 1..trace.j {
            let bound = constants.big_c(ell)
                * (g.size() as f64 / (trace.n as f64).powi(ell as i32) + n_delta);
            for (&lrank, &d) in &index[ell as usize - 1] {
                if d as f64 > bound {
                    out.push(DegreeViolation {
                        round: i,
                        ell,
                        lset_rank: lrank,
                        degree: d as u64,
                        bound,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Checks the stopped-generation degree bound
/// `d_L(G_T) <= kappa_ell (|G_T| n^-ell + xi)` for every `ell`-set.
///
/// Only meaningful conditional on escape; an S1-stopped trace is an error.
pub fn check_stopped_generation_degrees(trace: &ExplorationTrace, xi: f64, kappas: &[f64]) -> Result<bool> {
    if trace.stop_reason == StopReason::S1 {
        return Err(Error::BadTrace("stopped-generation bound is conditional on S2/S3".into()));
    }
    if kappas.len() + 1 != trace.j as usize {
        return Err(Error::BadParameter(format!(
            "need {} kappa constants for j={}, got {}",
            trace.j - 1,
            trace.j,
            kappas.len()
        )));
    }
    let g = &trace.generations[trace.t as usize - 1];
    let Some(index) = g.degree_index.as_ref() else {
        return Err(Error::BadTrace("degree indexing disabled for this run".into()));
    };
    for ell in 1..trace.j {
        let bound = kappas[ell as usize - 1]
            * (g.size() as f64 * (trace.n as f64).powi(-(ell as i32)) + xi);
        for &d in index[ell as usize - 1].values() {
            if d as f64 > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Generation-monotonicity report: rounds up to `T` with `|G_i| >= n`
/// should not shrink at the next step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonotonicityReport {
    /// rounds `i <= T` with `|G_i| >= n` and `|G_{i+1}| < |G_i|`.
    pub violations: Vec<u32>,
    /// rounds `i <= T` with `|G_i| >= n` and a recorded successor.
    pub applicable: u32,
}

/// Checks `|G_{i+1}| >= |G_i|` whenever `i <= T` and `|G_i| >= n`.
///
/// The claim is specific to the pre-stopping phase: past `T` (runs that
/// continue toward `T_large`) growth stalls as the neighborhood of the
/// component gets queried out, and no monotonicity is promised there.
pub fn check_generation_monotonicity(trace: &ExplorationTrace, n: u32) -> MonotonicityReport {
    let mut violations = Vec::new();
    let mut applicable = 0u32;
    let horizon = (trace.t as usize).min(trace.generations.len().saturating_sub(1));
    for i in 1..=horizon {
        let cur = trace.generations[i - 1].size();
        if cur >= n as u64 {
            applicable += 1;
            if trace.generations[i].size() < cur {
                violations.push(i as u32);
            }
        }
    }
    MonotonicityReport { violations, applicable }
}

/// Checks `|C(T_large)| <= 3 lambda n^j`; requires a run that reached
/// `T_large`.
pub fn check_size_at_t_large(trace: &ExplorationTrace, lambda: f64, n: u32, j: u8) -> Result<bool> {
    let Some(tl) = trace.t_large else {
        return Err(Error::BadTrace("run did not reach T_large (wrong mode)".into()));
    };
    let size = trace.partial_size(tl);
    Ok((size as f64) <= 3.0 * lambda * (n as f64).powi(j as i32))
}

/// Outcome of the ledger audit: every touched `(ell-set, step)` must have
/// `jumps + pivots = d_L(G_i)`, every indexed degree must be attributed,
/// and no per-event contribution may exceed its cap.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LedgerAudit {
    pub checked_cells: u64,
    pub identity_violations: Vec<(u32, u8, u64)>,
    pub cap_violation_count: u64,
}

impl LedgerAudit {
    pub fn clean(&self) -> bool {
        self.identity_violations.is_empty() && self.cap_violation_count == 0
    }
}

pub fn verify_ledger(trace: &ExplorationTrace) -> Result<LedgerAudit> {
    let mut audit = LedgerAudit {
        checked_cells: 0,
        identity_violations: Vec::new(),
        cap_violation_count: trace.cap_violations.len() as u64,
    };
    for (idx, g) in trace.generations.iter().enumerate() {
        let step = idx as u32 + 1;
        let (Some(led), Some(index)) = (g.ledger.as_ref(), g.degree_index.as_ref()) else {
            return Err(Error::BadTrace("ledger or degree index disabled for this run".into()));
        };
        if step == 1 {
            // the root generation is not produced by edges
            if led.iter().any(|m| !m.is_empty()) {
                audit.identity_violations.push((1, 0, trace.start_rank));
            }
            continue;
        }
        for (l, cells) in led.iter().enumerate() {
            let ell = l as u8 + 1;
            for (&lrank, cell) in cells {
                audit.checked_cells += 1;
                let d = index[l].get(&lrank).copied().unwrap_or(0) as u64;
                if cell.jumps + cell.pivots != d {
                    audit.identity_violations.push((step, ell, lrank));
                }
            }
            // completeness: every positive degree has an attribution cell
            for (&lrank, &d) in &index[l] {
                if d > 0 && !cells.contains_key(&lrank) {
                    audit.identity_violations.push((step, ell, lrank));
                }
            }
        }
    }
    Ok(audit)
}

/// Escape-frequency estimate over repeated explorations, each from a fresh
/// lazy oracle and a uniformly random start.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StopFrequency {
    pub escapes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub stderr: f64,
}

pub fn multi_start_stop_frequency(
    n: u32,
    k: u8,
    j: u8,
    p: f64,
    params: &StopParams,
    trials: u64,
    seed: u64,
) -> Result<StopFrequency> {
    if trials == 0 {
        return Err(Error::BadParameter("need at least one trial".into()));
    }
    let space = binom_u64(n as u64, j as u64)?;
    let params = params.with_mode(ExploreMode::ToStop);
    let opts = ExploreOptions::fast();
    let mut escapes = 0u64;
    for trial in 0..trials {
        let mut stream = SeededStream::new(seed, seed ^ trial);
        let start_rank = stream.random_range(0..space);
        let start = crate::combinat::colex_unrank(start_rank, j, n)?;
        let mut oracle = EdgeOracle::lazy(n, k, p, stream)?;
        let trace = explore(&start, &mut oracle, &params, &opts)?;
        if trace.escaped() {
            escapes += 1;
        }
    }
    let (estimate, stderr) = stats::binomial_proportion(escapes, trials);
    Ok(StopFrequency { escapes, trials, estimate, stderr })
}
