//! Brute-force oracles shared by the integration suites. These re-derive
//! the component structure straight from the walk definition, staying
//! independent of the union-find implementation they check.
#![allow(dead_code)] // each test target uses a subset of the helpers

use std::collections::BTreeSet;

use hyperphase::combinat::{colex_rank_u64, intersection_size, r_subsets, ChooseTable};
use hyperphase::randsrc::EdgeSet;

/// Component partition of the covered `j`-sets by transitive closure over
/// the edge-intersection graph: edges are adjacent when they share at
/// least `j` vertices, and a component's `j`-sets are the `j`-subsets of
/// its edge class.
pub fn brute_force_partition(edges: &EdgeSet, j: u8) -> Vec<BTreeSet<u64>> {
    let table = ChooseTable::new(edges.n, edges.k).unwrap();
    let sets: Vec<Vec<u32>> = edges
        .ranks()
        .iter()
        .map(|&r| table.unrank(r, edges.k))
        .collect();
    let m = sets.len();
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for root in 0..m {
        if seen[root] {
            continue;
        }
        let mut stack = vec![root];
        seen[root] = true;
        let mut class = Vec::new();
        while let Some(e) = stack.pop() {
            class.push(e);
            for other in 0..m {
                if !seen[other] && intersection_size(&sets[e], &sets[other]) >= j as usize {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        let mut jsets = BTreeSet::new();
        for &e in &class {
            for sub in r_subsets(&sets[e], j as usize) {
                jsets.insert(colex_rank_u64(&sub).unwrap());
            }
        }
        out.push(jsets);
    }
    // canonical order for comparison
    out.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
    out
}

/// Canonical form of a census partition for comparison against the brute
/// force: one sorted rank set per component, ordered by least member.
pub fn census_partition(census: &hyperphase::census::ComponentCensus) -> Vec<BTreeSet<u64>> {
    let mut out: Vec<BTreeSet<u64>> = (0..census.components.len() as u32)
        .map(|idx| census.component_members(idx).into_iter().collect())
        .collect();
    out.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
    out
}
