//! Deterministic seeded randomness, exact binomial sampling, whole-graph
//! sampling of the random hypergraph, and the memoized edge oracle used by
//! the exploration process.
//!
//! Randomness is counter-based: a 64-bit seed plus a 64-bit stream id give
//! an independent substream per trial, reproducible bit-for-bit.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::combinat::{binom, binom_u64, ChooseTable};
use crate::{Error, Result};

/// Seeded substream of randomness. Identical `(seed, stream_id)` pairs
/// reproduce identical draw sequences; distinct stream ids are independent.
#[derive(Debug, Clone)]
pub struct SeededStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl SeededStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        SeededStream { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

impl RngCore for SeededStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

/// Exact-in-distribution draw from Binomial(n, p).
///
/// Delegates to an inversion sampler for small means and an exact
/// accept-reject sampler (BTPE) for large ones; there is no silent normal
/// approximation at any size.
pub fn binomial_draw(stream: &mut SeededStream, n: u64, p: f64) -> Result<u64> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::BadProbability(p));
    }
    if p == 0.0 || n == 0 {
        return Ok(0);
    }
    if p == 1.0 {
        return Ok(n);
    }
    let dist = Binomial::new(n, p).map_err(|e| Error::BadParameter(e.to_string()))?;
    Ok(dist.sample(&mut stream.rng))
}

/// Materialized edge set of a sampled hypergraph: sorted colex ranks of
/// the `k`-sets that are edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    pub n: u32,
    pub k: u8,
    edges: Vec<u64>,
}

impl EdgeSet {
    pub fn new(n: u32, k: u8, mut edges: Vec<u64>) -> Result<Self> {
        let space = binom_u64(n as u64, k as u64)?;
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidSet(format!("duplicate edge rank {}", w[0])));
            }
        }
        if let Some(&last) = edges.last() {
            if last >= space {
                return Err(Error::RankOutOfRange { rank: last, n, r: k });
            }
        }
        Ok(EdgeSet { n, k, edges })
    }

    pub fn ranks(&self) -> &[u64] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, rank: u64) -> bool {
        self.edges.binary_search(&rank).is_ok()
    }

    /// Writes the text form: a `n k m` header, then one edge per line as
    /// space-separated sorted vertex labels. Round-trips bit-exactly.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {} {}", self.n, self.k, self.edges.len())?;
        let table = ChooseTable::new(self.n, self.k)?;
        let mut buf = Vec::new();
        for &rank in &self.edges {
            table.unrank_into(rank, self.k, &mut buf);
            let line: Vec<String> = buf.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    /// Parses the text form produced by [`EdgeSet::write_text`].
    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge file".into()))??;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("bad header `{header}`; want `n k m`")));
        }
        let n: u32 = fields[0].parse().map_err(|_| Error::Parse("bad n".into()))?;
        let k: u8 = fields[1].parse().map_err(|_| Error::Parse("bad k".into()))?;
        let m: usize = fields[2].parse().map_err(|_| Error::Parse("bad m".into()))?;
        let table = ChooseTable::new(n, k)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut verts = Vec::with_capacity(k as usize);
            for tok in line.split_whitespace() {
                verts.push(tok.parse::<u32>().map_err(|_| Error::Parse(format!("bad label in `{line}`")))?);
            }
            if verts.len() != k as usize {
                return Err(Error::Parse(format!("edge `{line}` has {} labels, want {k}", verts.len())));
            }
            if verts.windows(2).any(|w| w[0] >= w[1]) || verts[k as usize - 1] >= n {
                return Err(Error::Parse(format!("edge `{line}` not sorted within [0, {n})")));
            }
            edges.push(table.rank(&verts));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header promised {m} edges, found {}", edges.len())));
        }
        EdgeSet::new(n, k, edges)
    }
}

/// Samples the random hypergraph with edge probability `p`: the edge count
/// is drawn as Binomial(C(n,k), p), then that many distinct ranks are
/// picked uniformly (rejecting collisions, which stays exact).
pub fn sample_hypergraph(
    n: u32,
    k: u8,
    p: f64,
    stream: &mut SeededStream,
    max_expected_edges: f64,
) -> Result<EdgeSet> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::BadProbability(p));
    }
    let total = binom(n as u64, k as u64)?;
    let expected = total as f64 * p;
    if expected > max_expected_edges {
        return Err(Error::EdgeBudget { expected, cap: max_expected_edges, n, k });
    }
    let total_u64 = u64::try_from(total).map_err(|_| Error::RankSpaceTooLarge { n: n as u64, r: k })?;
    let m = binomial_draw(stream, total_u64, p)?;
    let mut chosen: HashSet<u64> = HashSet::with_capacity(m as usize);
    while (chosen.len() as u64) < m {
        let rank = stream.rng.random_range(0..total_u64);
        chosen.insert(rank);
    }
    let mut edges: Vec<u64> = chosen.into_iter().collect();
    edges.sort_unstable();
    Ok(EdgeSet { n, k, edges })
}

// one long-lived oracle per run; the variant size gap is irrelevant
#[allow(clippy::large_enum_variant)]
#[derive(Debug)]
enum Backend {
    /// Membership test against a materialized edge set.
    Presampled { edges: HashSet<u64> },
    /// Each status is a fresh Bernoulli(p) draw at first reveal.
    Lazy { p: f64, stream: SeededStream },
}

/// Memoized query interface over the random hypergraph's edge statuses.
///
/// Each `k`-set's status is revealed at most once and is immutable after
/// that; repeat queries replay the memo without consuming randomness.
#[derive(Debug)]
pub struct EdgeOracle {
    n: u32,
    k: u8,
    backend: Backend,
    revealed: HashSet<u64>,
    /// Ranks revealed as edges (lazy backend memo; mirror for presampled).
    found: HashSet<u64>,
    query_count: u64,
}

impl EdgeOracle {
    pub fn presampled(edges: &EdgeSet) -> Self {
        EdgeOracle {
            n: edges.n,
            k: edges.k,
            backend: Backend::Presampled { edges: edges.ranks().iter().copied().collect() },
            revealed: HashSet::new(),
            found: HashSet::new(),
            query_count: 0,
        }
    }

    pub fn lazy(n: u32, k: u8, p: f64, stream: SeededStream) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::BadProbability(p));
        }
        Ok(EdgeOracle {
            n,
            k,
            backend: Backend::Lazy { p, stream },
            revealed: HashSet::new(),
            found: HashSet::new(),
            query_count: 0,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// Number of distinct reveals made so far.
    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    pub fn is_revealed(&self, rank: u64) -> bool {
        self.revealed.contains(&rank)
    }

    /// Reveals the status of a `k`-set if it has not been queried before;
    /// returns `None` for repeat queries (the process skips those).
    pub fn query_fresh(&mut self, rank: u64) -> Option<bool> {
        if !self.revealed.insert(rank) {
            return None;
        }
        self.query_count += 1;
        let is_edge = match &mut self.backend {
            Backend::Presampled { edges } => edges.contains(&rank),
            Backend::Lazy { p, stream } => stream.rng.random_bool(*p),
        };
        if is_edge {
            self.found.insert(rank);
        }
        Some(is_edge)
    }

    /// Memoized query: first call reveals, later calls replay the memo.
    pub fn query(&mut self, rank: u64) -> bool {
        match self.query_fresh(rank) {
            Some(v) => v,
            None => self.found.contains(&rank),
        }
    }
}
