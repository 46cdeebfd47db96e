//! Generators of the outer automorphism group read off the defining graph:
//! inversions, graph automorphisms, transvections and partial conjugations.
//! Only the latter two gate the downstream classifications; inversions and
//! automorphisms are reported as counts.

use serde::Serialize;

use crate::graph::{SimplicialGraph, VertexSet};
use crate::iso;

/// A dominated/dominating vertex pair (w, v) with link(w) ⊆ star(v).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransvectionRecord {
    pub dominated: String,
    pub dominating: String,
    pub adjacent: bool,
}

/// A pivot vertex whose closed-star removal disconnects the graph, together
/// with one of the resulting components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialConjugationRecord {
    pub pivot: String,
    pub component: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OutReport {
    pub inversion_count: usize,
    pub graph_automorphism_count: usize,
    pub transvections: Vec<TransvectionRecord>,
    pub partial_conjugations: Vec<PartialConjugationRecord>,
    pub out_finite: bool,
}

/// All ordered pairs (w, v) with v ≠ w and link(w) ⊆ star(v), in canonical
/// order, tagged adjacent or non-adjacent.
pub fn transvections(g: &SimplicialGraph) -> Vec<TransvectionRecord> {
    let mut records = Vec::new();
    for w in g.vertices() {
        for v in g.vertices() {
            if v == w {
                continue;
            }
            let star_v = g.star(v);
            if g.link(w).is_subset(&star_v) {
                records.push(TransvectionRecord {
                    dominated: g.label(w).to_string(),
                    dominating: g.label(v).to_string(),
                    adjacent: g.adjacent(v, w),
                });
            }
        }
    }
    records
}

/// One record per component of graph ∖ star(v), for every pivot v where the
/// removal leaves at least two components. A pivot with k components yields
/// k records even though the product of all k is inner.
pub fn partial_conjugations(g: &SimplicialGraph) -> Vec<PartialConjugationRecord> {
    let mut records = Vec::new();
    for v in g.vertices() {
        let components = g.components_minus(&g.star(v)).expect("star is a subset");
        if components.len() >= 2 {
            for component in components {
                records.push(PartialConjugationRecord {
                    pivot: g.label(v).to_string(),
                    component: g.labels_of(&component),
                });
            }
        }
    }
    records
}

pub fn has_nonadjacent_transvection(g: &SimplicialGraph) -> bool {
    transvections(g).iter().any(|t| !t.adjacent)
}

pub fn out_is_finite(g: &SimplicialGraph) -> bool {
    transvections(g).is_empty() && partial_conjugations(g).is_empty()
}

pub fn out_report(g: &SimplicialGraph) -> OutReport {
    let transvections = transvections(g);
    let partial_conjugations = partial_conjugations(g);
    let out_finite = transvections.is_empty() && partial_conjugations.is_empty();
    OutReport {
        inversion_count: g.vertex_count(),
        graph_automorphism_count: iso::automorphism_count(g),
        transvections,
        partial_conjugations,
        out_finite,
    }
}

/// Pivots that occur in some partial conjugation, as a vertex set.
pub fn partial_conjugation_pivots(g: &SimplicialGraph) -> VertexSet {
    partial_conjugations(g)
        .iter()
        .map(|r| g.vertex(&r.pivot).expect("pivot label came from this graph"))
        .collect()
}
