//! Exact `j`-component decomposition of a sampled hypergraph.
//!
//! Every edge's `C(k,j)` `j`-subsets are united in a sparse union-find
//! structure keyed by colex rank. Two edges sharing at least `j` vertices
//! share a `j`-subset, so the resulting partition is exactly the
//! walk-based component relation. `j`-sets covered by no edge are counted
//! analytically and never materialized.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::combinat::{binom, binom_u64, ChooseTable, CombIter};
use crate::randsrc::EdgeSet;
use crate::{Error, Result};

/// Union-find over dense indices with path halving and union by size.
#[derive(Debug)]
struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind { parent: Vec::new(), size: Vec::new() }
    }

    fn push(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.size.push(1);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Per-component statistics.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComponentStats {
    /// number of `j`-sets in the component.
    pub size: u64,
    pub edge_count: u64,
    /// `1 + c * edge_count - size` with `c = C(k,j) - 1`; zero means the
    /// component is a hypertree.
    pub nullity: u64,
}

impl ComponentStats {
    pub fn is_hypertree(&self) -> bool {
        self.nullity == 0
    }
}

/// Partition of the covered `j`-sets of a hypergraph into components.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentCensus {
    pub n: u32,
    pub k: u8,
    pub j: u8,
    /// components in decreasing size order.
    pub components: Vec<ComponentStats>,
    pub covered_jsets: u64,
    /// `C(n,j) - covered`: `j`-sets in no edge, counted analytically.
    pub singleton_count: u128,
    /// covered `j`-set rank -> index into `components`.
    membership: HashMap<u64, u32>,
}

/// Builds the census of `edges` at level `j`.
pub fn build_census(edges: &EdgeSet, j: u8) -> Result<ComponentCensus> {
    let (n, k) = (edges.n, edges.k);
    if j == 0 || j >= k {
        return Err(Error::BadParameter(format!("need 1 <= j <= k-1, got j={j}, k={k}")));
    }
    let table = ChooseTable::new(n, k)?;
    let c = binom_u64(k as u64, j as u64)? - 1;
    // covered j-sets are indexed by u32 union-find nodes
    if (c + 1).saturating_mul(edges.len() as u64) > u32::MAX as u64 {
        return Err(Error::BadParameter(format!(
            "{} edges cover too many j-sets to index; census capacity is {} covered j-sets",
            edges.len(),
            u32::MAX
        )));
    }

    let mut uf = UnionFind::new();
    let mut node_of: HashMap<u64, u32> = HashMap::new();
    let mut kbuf = Vec::with_capacity(k as usize);
    let mut first_nodes = Vec::with_capacity(edges.len());

    for &erank in edges.ranks() {
        table.unrank_into(erank, k, &mut kbuf);
        let mut first: Option<u32> = None;
        let mut combos = CombIter::new(k as usize, j as usize);
        while let Some(idx) = combos.step() {
            let mut rank = 0u64;
            for (t, &i) in idx.iter().enumerate() {
                rank += table.choose(kbuf[i], t as u8 + 1);
            }
            let node = *node_of.entry(rank).or_insert_with(|| uf.push());
            match first {
                None => first = Some(node),
                Some(f) => uf.union(f, node),
            }
        }
        first_nodes.push(first.expect("every edge has j-subsets"));
    }

    // Attribute edges to the component of their j-subsets (all in one
    // component by construction).
    let mut edge_counts: HashMap<u32, u64> = HashMap::new();
    for &node in &first_nodes {
        *edge_counts.entry(uf.find(node)).or_insert(0) += 1;
    }

    // Group covered j-sets by root.
    let mut root_index: HashMap<u32, u32> = HashMap::new();
    let mut sizes: Vec<u64> = Vec::new();
    let ranks_nodes: Vec<(u64, u32)> = node_of.iter().map(|(&r, &n)| (r, n)).collect();
    let mut membership: HashMap<u64, u32> = HashMap::with_capacity(node_of.len());
    for (rank, node) in ranks_nodes {
        let root = uf.find(node);
        let idx = *root_index.entry(root).or_insert_with(|| {
            sizes.push(0);
            (sizes.len() - 1) as u32
        });
        sizes[idx as usize] += 1;
        membership.insert(rank, idx);
    }

    let mut components: Vec<ComponentStats> = Vec::with_capacity(sizes.len());
    for (root, &idx) in &root_index {
        let size = sizes[idx as usize];
        let edge_count = edge_counts.get(root).copied().unwrap_or(0);
        let nullity_signed = 1i128 + c as i128 * edge_count as i128 - size as i128;
        assert!(
            nullity_signed >= 0,
            "nullity must be nonnegative (size {size}, edges {edge_count})"
        );
        components.push(ComponentStats { size, edge_count, nullity: nullity_signed as u64 });
    }

    // Decreasing size order, with a stable tiebreak so reports are
    // deterministic; membership indices are remapped accordingly.
    let mut order: Vec<u32> = (0..components.len() as u32).collect();
    order.sort_by_key(|&i| {
        let comp = &components[i as usize];
        (std::cmp::Reverse(comp.size), std::cmp::Reverse(comp.edge_count), i)
    });
    let mut remap = vec![0u32; components.len()];
    for (new_idx, &old_idx) in order.iter().enumerate() {
        remap[old_idx as usize] = new_idx as u32;
    }
    let mut sorted: Vec<ComponentStats> = components.clone();
    for (old_idx, comp) in components.into_iter().enumerate() {
        sorted[remap[old_idx] as usize] = comp;
    }
    for idx in membership.values_mut() {
        *idx = remap[*idx as usize];
    }

    let covered = node_of.len() as u64;
    let total_jsets = binom(n as u64, j as u64)?;
    Ok(ComponentCensus {
        n,
        k,
        j,
        components: sorted,
        covered_jsets: covered,
        singleton_count: total_jsets - covered as u128,
        membership,
    })
}

impl ComponentCensus {
    /// Sizes of the two largest components (0 when absent).
    pub fn largest_two(&self) -> (u64, u64) {
        let first = self.components.first().map_or(0, |c| c.size);
        let second = self.components.get(1).map_or(0, |c| c.size);
        (first, second)
    }

    /// Component index of a covered `j`-set, `None` for singletons.
    pub fn component_of(&self, jset_rank: u64) -> Option<u32> {
        self.membership.get(&jset_rank).copied()
    }

    /// Ranks of the `j`-sets in one component.
    pub fn component_members(&self, idx: u32) -> Vec<u64> {
        let mut out: Vec<u64> =
            self.membership.iter().filter(|(_, &i)| i == idx).map(|(&r, _)| r).collect();
        out.sort_unstable();
        out
    }

    /// Sum of per-component nullities (singletons contribute zero).
    pub fn total_nullity(&self) -> u64 {
        self.components.iter().map(|c| c.nullity).sum()
    }

    pub fn hypertree_count(&self) -> u64 {
        self.components.iter().filter(|c| c.is_hypertree()).count() as u64
    }

    pub fn size_histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for c in &self.components {
            *h.entry(c.size).or_insert(0) += 1;
        }
        h
    }

    pub fn nullity_histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for c in &self.components {
            *h.entry(c.nullity).or_insert(0) += 1;
        }
        h
    }

    /// Serializable summary view.
    pub fn report(&self) -> CensusReport {
        let (largest, second_largest) = self.largest_two();
        CensusReport {
            n: self.n,
            k: self.k,
            j: self.j,
            component_count: self.components.len() as u64,
            covered_jsets: self.covered_jsets,
            singleton_count: self.singleton_count.to_string(),
            largest,
            second_largest,
            total_nullity: self.total_nullity(),
            hypertrees: self.hypertree_count(),
            size_histogram: self.size_histogram(),
            nullity_histogram: self.nullity_histogram(),
        }
    }
}

/// JSON-facing census summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: u32,
    pub k: u8,
    pub j: u8,
    pub component_count: u64,
    pub covered_jsets: u64,
    /// decimal string: can exceed 64 bits for large universes.
    pub singleton_count: String,
    pub largest: u64,
    pub second_largest: u64,
    pub total_nullity: u64,
    pub hypertrees: u64,
    pub size_histogram: BTreeMap<u64, u64>,
    pub nullity_histogram: BTreeMap<u64, u64>,
}
