//! Graph isomorphism by backtracking with degree-sequence and
//! neighbor-degree-multiset pruning. Deterministic: vertices of the first
//! graph are mapped in id order and candidates tried in id order, so the
//! returned witness is the first one in canonical search order.

use crate::graph::{SimplicialGraph, VertexId};

#[derive(Clone)]
struct Search<'a> {
    g1: &'a SimplicialGraph,
    g2: &'a SimplicialGraph,
    keys1: Vec<(usize, Vec<usize>)>,
    keys2: Vec<(usize, Vec<usize>)>,
}

/// (degree, sorted multiset of neighbor degrees) — preserved by isomorphism.
fn refinement_keys(g: &SimplicialGraph) -> Vec<(usize, Vec<usize>)> {
    g.vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.neighbors(w).len()).collect();
            nd.sort_unstable();
            (g.neighbors(v).len(), nd)
        })
        .collect()
}

impl<'a> Search<'a> {
    fn new(g1: &'a SimplicialGraph, g2: &'a SimplicialGraph) -> Self {
        Search { g1, g2, keys1: refinement_keys(g1), keys2: refinement_keys(g2) }
    }

    fn consistent(&self, mapping: &[Option<VertexId>], v: VertexId, w: VertexId) -> bool {
        if self.keys1[v] != self.keys2[w] {
            return false;
        }
        for u in 0..mapping.len() {
            if let Some(x) = mapping[u] {
                if self.g1.adjacent(u, v) != self.g2.adjacent(x, w) {
                    return false;
                }
            }
        }
        true
    }

    /// Extends `mapping` over vertices `v..n`; `on_found` returns true to stop.
    fn extend(
        &self,
        mapping: &mut Vec<Option<VertexId>>,
        used: &mut Vec<bool>,
        v: VertexId,
        on_found: &mut dyn FnMut(&[Option<VertexId>]) -> bool,
    ) -> bool {
        if v == mapping.len() {
            return on_found(mapping);
        }
        if mapping[v].is_some() {
            return self.extend(mapping, used, v + 1, on_found);
        }
        for w in self.g2.vertices() {
            if used[w] || !self.consistent(mapping, v, w) {
                continue;
            }
            mapping[v] = Some(w);
            used[w] = true;
            if self.extend(mapping, used, v + 1, on_found) {
                return true;
            }
            mapping[v] = None;
            used[w] = false;
        }
        false
    }
}

fn degree_sequences_match(g1: &SimplicialGraph, g2: &SimplicialGraph) -> bool {
    let mut d1: Vec<usize> = g1.vertices().map(|v| g1.neighbors(v).len()).collect();
    let mut d2: Vec<usize> = g2.vertices().map(|v| g2.neighbors(v).len()).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    d1 == d2
}

/// First isomorphism g1 → g2 in canonical search order, or None.
pub fn isomorphism(g1: &SimplicialGraph, g2: &SimplicialGraph) -> Option<Vec<VertexId>> {
    isomorphism_with_pins(g1, g2, &[])
}

/// Isomorphism search with a forced partial mapping (`pins` are (v in g1,
/// w in g2) pairs). Used for boundary-fixing isomorphisms.
pub fn isomorphism_with_pins(
    g1: &SimplicialGraph,
    g2: &SimplicialGraph,
    pins: &[(VertexId, VertexId)],
) -> Option<Vec<VertexId>> {
    if g1.vertex_count() != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
        || !degree_sequences_match(g1, g2)
    {
        return None;
    }
    let search = Search::new(g1, g2);
    let mut mapping: Vec<Option<VertexId>> = vec![None; g1.vertex_count()];
    let mut used = vec![false; g2.vertex_count()];
    for &(v, w) in pins {
        if used[w] || mapping[v].is_some() || !search.consistent(&mapping, v, w) {
            return None;
        }
        mapping[v] = Some(w);
        used[w] = true;
    }
    let mut witness = None;
    search.extend(&mut mapping, &mut used, 0, &mut |m| {
        witness = Some(m.iter().map(|x| x.expect("complete mapping")).collect());
        true
    });
    witness
}

pub fn are_isomorphic(g1: &SimplicialGraph, g2: &SimplicialGraph) -> bool {
    isomorphism(g1, g2).is_some()
}

/// Number of graph automorphisms (isomorphisms onto itself).
pub fn automorphism_count(g: &SimplicialGraph) -> usize {
    let search = Search::new(g, g);
    let mut mapping: Vec<Option<VertexId>> = vec![None; g.vertex_count()];
    let mut used = vec![false; g.vertex_count()];
    let mut count = 0usize;
    search.extend(&mut mapping, &mut used, 0, &mut |_| {
        count += 1;
        false
    });
    count
}

/// Verifies that `mapping` is a bijection preserving adjacency and
/// non-adjacency — the checkable side of a "yes" certificate.
pub fn verify_isomorphism(
    g1: &SimplicialGraph,
    g2: &SimplicialGraph,
    mapping: &[VertexId],
) -> bool {
    if mapping.len() != g1.vertex_count() || g1.vertex_count() != g2.vertex_count() {
        return false;
    }
    let mut seen = vec![false; mapping.len()];
    for &w in mapping {
        if w >= seen.len() || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    for a in g1.vertices() {
        for b in g1.vertices() {
            if a < b && g1.adjacent(a, b) != g2.adjacent(mapping[a], mapping[b]) {
                return false;
            }
        }
    }
    true
}
