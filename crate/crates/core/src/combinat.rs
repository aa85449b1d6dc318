//! Exact combinatorial primitives: binomial coefficients, colexicographic
//! ranking/unranking of vertex sets, and subset/superset enumeration.
//!
//! Every `j`-set and `k`-set in the system is identified by its colex rank,
//! which gives a stable integer key and a deterministic total order. The
//! colex rank of a sorted set `{s_0 < s_1 < ... < s_{r-1}}` is
//! `sum_i C(s_i, i+1)` and does not depend on the universe size.

use crate::{Error, Result};

/// Exact binomial coefficient in 128-bit arithmetic.
///
/// Returns 0 when `r > n`; fails loudly instead of wrapping on overflow.
pub fn binom(n: u64, r: u64) -> Result<u128> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 1..=r {
        // acc * (n-r+i) / i is exact at every step; cancel the divisor
        // first so intermediates never exceed the running value C(n-r+i, i).
        let mut num = (n - r + i) as u128;
        let mut den = i as u128;
        let g = gcd_u128(num, den);
        num /= g;
        den /= g;
        // gcd(num, den) = 1 and the quotient is integral, so den | acc.
        acc = (acc / den)
            .checked_mul(num)
            .ok_or(Error::BinomOverflow { n, r })?;
    }
    Ok(acc)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `binom` narrowed to `u64`, for rank-space arithmetic.
pub fn binom_u64(n: u64, r: u64) -> Result<u64> {
    let v = binom(n, r)?;
    u64::try_from(v).map_err(|_| Error::RankSpaceTooLarge { n, r: r.min(255) as u8 })
}

/// Binomial coefficient as `f64`: exact value when it fits 128 bits,
/// log-gamma evaluation beyond that (theory-scale predictions only).
pub fn binom_f64(n: u64, r: u64) -> f64 {
    if r > n {
        return 0.0;
    }
    match binom(n, r) {
        Ok(v) => v as f64,
        Err(_) => {
            use statrs::function::gamma::ln_gamma;
            let (nf, rf) = (n as f64, r as f64);
            (ln_gamma(nf + 1.0) - ln_gamma(rf + 1.0) - ln_gamma(nf - rf + 1.0)).exp()
        }
    }
}

/// A sorted set of distinct vertex labels in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    verts: Vec<u32>,
}

impl VertexSet {
    /// Validates sortedness, distinctness and the label range.
    pub fn new(verts: Vec<u32>, n: u32) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::InvalidSet("empty vertex set".into()));
        }
        for w in verts.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidSet(format!(
                    "labels not strictly increasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if *verts.last().unwrap() >= n {
            return Err(Error::InvalidSet(format!(
                "label {} outside universe [0, {n})",
                verts.last().unwrap()
            )));
        }
        Ok(Self { verts })
    }

    /// Sorts and validates an arbitrarily ordered list of labels.
    pub fn from_unsorted(mut verts: Vec<u32>, n: u32) -> Result<Self> {
        verts.sort_unstable();
        Self::new(verts, n)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Colex rank of this set within a universe of `n` vertices.
    pub fn rank(&self, n: u32) -> Result<SetRank> {
        let rank = colex_rank_u64(&self.verts)?;
        Ok(SetRank { rank, arity: self.verts.len() as u8, universe: n })
    }
}

impl std::ops::Deref for VertexSet {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.verts
    }
}

/// Canonical integer identity of an `r`-set: its colex rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetRank {
    pub rank: u64,
    pub arity: u8,
    pub universe: u32,
}

impl SetRank {
    pub fn unrank(&self) -> Result<VertexSet> {
        let verts = colex_unrank(self.rank, self.arity, self.universe)?;
        Ok(VertexSet { verts })
    }
}

/// Colex rank of a sorted slice, universe-independent.
pub fn colex_rank_u64(set: &[u32]) -> Result<u64> {
    let mut rank: u64 = 0;
    for (i, &v) in set.iter().enumerate() {
        let term = binom_u64(v as u64, i as u64 + 1)?;
        rank = rank
            .checked_add(term)
            .ok_or(Error::RankSpaceTooLarge { n: v as u64, r: set.len() as u8 })?;
    }
    Ok(rank)
}

/// Inverse of `colex_rank_u64` for arity `r` in universe `[0, n)`.
pub fn colex_unrank(mut rank: u64, r: u8, n: u32) -> Result<Vec<u32>> {
    let space = binom_u64(n as u64, r as u64)?;
    if rank >= space {
        return Err(Error::RankOutOfRange { rank, n, r });
    }
    let mut out = vec![0u32; r as usize];
    let mut hi = n as u64; // exclusive upper bound for the candidate label
    for pos in (0..r as usize).rev() {
        let t = pos as u64 + 1;
        // Largest v < hi with C(v, t) <= rank; v >= pos is guaranteed.
        let (mut lo, mut up) = (pos as u64, hi);
        while up - lo > 1 {
            let mid = (lo + up) / 2;
            if binom_u64(mid, t)? <= rank {
                lo = mid;
            } else {
                up = mid;
            }
        }
        rank -= binom_u64(lo, t)?;
        out[pos] = lo as u32;
        hi = lo;
    }
    Ok(out)
}

/// Size of the intersection of two sorted slices (linear merge).
pub fn intersection_size(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Iterator over `r`-element index combinations of `[0, m)` in colex order.
///
/// Colex order on index sets is order-isomorphic to colex order on the
/// selected values whenever the underlying slice is sorted, so this single
/// iterator drives both subset and superset enumeration.
#[derive(Debug, Clone)]
pub struct CombIter {
    m: usize,
    idx: Vec<usize>,
    state: CombState,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum CombState {
    Fresh,
    Running,
    Done,
}

impl CombIter {
    pub fn new(m: usize, r: usize) -> Self {
        let state = if r > m { CombState::Done } else { CombState::Fresh };
        CombIter { m, idx: (0..r).collect(), state }
    }

    /// Advances to the next combination; returns the index slice or `None`.
    pub fn step(&mut self) -> Option<&[usize]> {
        match self.state {
            CombState::Done => return None,
            CombState::Fresh => {
                self.state = CombState::Running;
                return Some(&self.idx);
            }
            CombState::Running => {}
        }
        let r = self.idx.len();
        if r == 0 {
            self.state = CombState::Done;
            return None;
        }
        // Smallest position that can move right gets incremented; all
        // positions below it reset to the least prefix.
        let mut moved = None;
        for i in 0..r {
            let bound = if i + 1 < r { self.idx[i + 1] } else { self.m };
            if self.idx[i] + 1 < bound {
                self.idx[i] += 1;
                moved = Some(i);
                break;
            }
        }
        match moved {
            Some(i) => {
                for t in 0..i {
                    self.idx[t] = t;
                }
                Some(&self.idx)
            }
            None => {
                self.state = CombState::Done;
                None
            }
        }
    }
}

/// All `r`-subsets of a sorted set, in colex order.
pub fn r_subsets(set: &[u32], r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut it = CombIter::new(set.len(), r);
    while let Some(idx) = it.step() {
        out.push(idx.iter().map(|&i| set[i]).collect());
    }
    out
}

/// All `k`-sets containing `jset`, in colex order (equivalently, colex
/// order of the added outside vertices).
pub fn k_supersets(jset: &[u32], n: u32, k: usize) -> Result<Vec<Vec<u32>>> {
    let j = jset.len();
    if j >= k || k > n as usize {
        return Err(Error::BadParameter(format!(
            "need |jset| < k <= n, got {j}, {k}, {n}"
        )));
    }
    let complement: Vec<u32> = (0..n).filter(|v| !jset.contains(v)).collect();
    let mut out = Vec::new();
    let mut it = CombIter::new(complement.len(), k - j);
    let mut buf = Vec::with_capacity(k);
    while let Some(idx) = it.step() {
        buf.clear();
        buf.extend_from_slice(jset);
        for &i in idx {
            buf.push(complement[i]);
        }
        buf.sort_unstable();
        out.push(buf.clone());
    }
    Ok(out)
}

/// Precomputed table of `C(x, t)` for `x <= n`, `t <= r_max`, used on the
/// hot paths of ranking and unranking. Construction fails if any entry in
/// range would exceed `u64`, i.e. if the rank space is unaddressable.
#[derive(Debug, Clone)]
pub struct ChooseTable {
    n: u32,
    r_max: u8,
    // rows[t] holds C(x, t) for x in 0..=n
    rows: Vec<Vec<u64>>,
}

impl ChooseTable {
    pub fn new(n: u32, r_max: u8) -> Result<Self> {
        // Largest entry is C(n, min(r_max, n/2)); verify it fits before
        // filling the table with plain u64 additions.
        let t_worst = (r_max as u64).min(n as u64 / 2);
        binom_u64(n as u64, t_worst)?;
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(r_max as usize + 1);
        rows.push(vec![1u64; n as usize + 1]);
        for t in 1..=r_max as usize {
            let prev = &rows[t - 1];
            let mut row = vec![0u64; n as usize + 1];
            for x in t..=n as usize {
                row[x] = row[x - 1] + prev[x - 1];
            }
            rows.push(row);
        }
        Ok(ChooseTable { n, r_max, rows })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn choose(&self, x: u32, t: u8) -> u64 {
        debug_assert!(x <= self.n && t <= self.r_max);
        self.rows[t as usize][x as usize]
    }

    /// Colex rank of a sorted slice.
    #[inline]
    pub fn rank(&self, set: &[u32]) -> u64 {
        let mut rank = 0u64;
        for (i, &v) in set.iter().enumerate() {
            rank += self.choose(v, i as u8 + 1);
        }
        rank
    }

    /// Unranks into a caller-provided buffer (cleared first).
    pub fn unrank_into(&self, mut rank: u64, r: u8, out: &mut Vec<u32>) {
        out.clear();
        out.resize(r as usize, 0);
        let mut hi = self.n as u64;
        for pos in (0..r as usize).rev() {
            let t = pos as u8 + 1;
            let (mut lo, mut up) = (pos as u64, hi);
            while up - lo > 1 {
                let mid = (lo + up) / 2;
                if self.choose(mid as u32, t) <= rank {
                    lo = mid;
                } else {
                    up = mid;
                }
            }
            rank -= self.choose(lo as u32, t);
            out[pos] = lo as u32;
            hi = lo;
        }
    }

    pub fn unrank(&self, rank: u64, r: u8) -> Vec<u32> {
        let mut out = Vec::new();
        self.unrank_into(rank, r, &mut out);
        out
    }
}
