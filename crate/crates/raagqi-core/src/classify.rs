//! The graph classes driving the decision procedures: separating closed
//! stars, weak type II, type II, weak type I, and the minimal stable subgraph
//! helper.
//!
//! Weak type I is computed through both of its equivalent formulations (no
//! separating star + no covering star pair at distance two, versus weak type
//! II + no separating star) and the agreement is asserted on every call.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};

/// Classification of one defining graph, with witnesses for false predicates.
#[derive(Debug, Clone, Serialize)]
pub struct TypeReport {
    pub connected: bool,
    pub separating_star_vertices: Vec<String>,
    pub weak_type_ii: bool,
    pub type_ii: bool,
    pub weak_type_i: bool,
    pub star_cover_pairs: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
}

/// Witnessing data for each false predicate; `None` fields mean the
/// predicate holds.
#[derive(Debug, Clone, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disconnected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_type_ii_pair: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_ii_pair: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_type_i_reason: Option<String>,
}

/// Vertices whose closed star separates the graph. Empty and one-component
/// remainders do not count as separated.
pub fn separating_stars(g: &SimplicialGraph) -> VertexSet {
    g.vertices()
        .filter(|&v| {
            g.components_minus(&g.star(v))
                .expect("star is a subset")
                .len()
                >= 2
        })
        .collect()
}

fn link_intersection(g: &SimplicialGraph, v: VertexId, w: VertexId) -> VertexSet {
    g.link(v).intersection(&g.link(w)).copied().collect()
}

fn separates(g: &SimplicialGraph, removed: &VertexSet) -> bool {
    g.components_minus(removed).expect("subset") .len() >= 2
}

/// First pair (v, w) at distance exactly 2 whose link intersection separates.
pub fn weak_type_ii_witness(g: &SimplicialGraph) -> Option<(VertexId, VertexId)> {
    let dist = g.distances();
    for v in g.vertices() {
        for w in g.vertices() {
            if v < w && dist[v][w] == 2 && separates(g, &link_intersection(g, v, w)) {
                return Some((v, w));
            }
        }
    }
    None
}

/// First pair of distinct vertices whose link intersection separates.
pub fn type_ii_witness(g: &SimplicialGraph) -> Option<(VertexId, VertexId)> {
    for v in g.vertices() {
        for w in g.vertices() {
            if v < w && separates(g, &link_intersection(g, v, w)) {
                return Some((v, w));
            }
        }
    }
    None
}

pub fn is_weak_type_ii(g: &SimplicialGraph) -> bool {
    g.is_connected() && weak_type_ii_witness(g).is_none()
}

pub fn is_type_ii(g: &SimplicialGraph) -> bool {
    g.is_connected() && type_ii_witness(g).is_none()
}

/// True iff the union of the two full star subgraphs is the whole graph:
/// the vertex sets cover, and every edge has both endpoints inside one star.
fn stars_cover(g: &SimplicialGraph, v: VertexId, w: VertexId) -> bool {
    let sv = g.star(v);
    let sw = g.star(w);
    let covered_vertices = g.vertices().all(|x| sv.contains(&x) || sw.contains(&x));
    covered_vertices
        && g.edge_list().into_iter().all(|(a, b)| {
            (sv.contains(&a) && sv.contains(&b)) || (sw.contains(&a) && sw.contains(&b))
        })
}

/// Pairs at distance exactly 2 whose full star subgraphs cover the graph.
pub fn star_cover_pairs(g: &SimplicialGraph) -> Vec<(VertexId, VertexId)> {
    let dist = g.distances();
    let mut pairs = Vec::new();
    for v in g.vertices() {
        for w in g.vertices() {
            if v < w && dist[v][w] == 2 && stars_cover(g, v, w) {
                pairs.push((v, w));
            }
        }
    }
    pairs
}

/// Weak type I through both formulations; errors if they disagree, which
/// would indicate an implementation bug.
pub fn is_weak_type_i(g: &SimplicialGraph) -> Result<bool> {
    let no_separating_star = separating_stars(g).is_empty();
    let by_cover = g.is_connected() && no_separating_star && star_cover_pairs(g).is_empty();
    let by_weak_ii = is_weak_type_ii(g) && no_separating_star;
    if by_cover != by_weak_ii {
        return Err(Error::Internal(format!(
            "weak type I formulations disagree: star-cover form {by_cover}, weak-type-II form {by_weak_ii}"
        )));
    }
    Ok(by_cover)
}

/// Full classification with optional witnesses for the false predicates.
pub fn type_report(g: &SimplicialGraph, explain: bool) -> Result<TypeReport> {
    let connected = g.is_connected();
    let stars = separating_stars(g);
    let weak_ii_pair = weak_type_ii_witness(g);
    let type_ii_pair = type_ii_witness(g);
    let weak_type_ii = connected && weak_ii_pair.is_none();
    let type_ii = connected && type_ii_pair.is_none();
    let weak_type_i = is_weak_type_i(g)?;
    let cover_pairs = star_cover_pairs(g);
    let witnesses = explain.then(|| {
        let name_pair =
            |p: (VertexId, VertexId)| (g.label(p.0).to_string(), g.label(p.1).to_string());
        let weak_i_reason = if weak_type_i {
            None
        } else if !connected {
            Some("disconnected".to_string())
        } else if let Some(&v) = stars.first() {
            Some(format!("separating closed star at '{}'", g.label(v)))
        } else if let Some(&(v, w)) = cover_pairs.first() {
            Some(format!(
                "stars of '{}' and '{}' cover the graph",
                g.label(v),
                g.label(w)
            ))
        } else {
            weak_ii_pair.map(|p| {
                let (a, b) = name_pair(p);
                format!("link intersection of '{a}' and '{b}' separates")
            })
        };
        Witnesses {
            disconnected: (!connected).then_some(true),
            weak_type_ii_pair: (connected && !weak_type_ii).then(|| name_pair(weak_ii_pair.unwrap())),
            type_ii_pair: (connected && !type_ii).then(|| name_pair(type_ii_pair.unwrap())),
            weak_type_i_reason: weak_i_reason,
        }
    });
    Ok(TypeReport {
        connected,
        separating_star_vertices: g.labels_of(&stars),
        weak_type_ii,
        type_ii,
        weak_type_i,
        star_cover_pairs: cover_pairs
            .into_iter()
            .map(|(v, w)| (g.label(v).to_string(), g.label(w).to_string()))
            .collect(),
        witnesses,
    })
}

/// Intersection of the vertex sets of all maximal cliques containing `w`.
/// Only asserted (and only allowed) for weak type I graphs.
pub fn minimal_stable_subgraph(g: &SimplicialGraph, w: VertexId) -> Result<VertexSet> {
    if !is_weak_type_i(g)? {
        return Err(Error::NotWeakTypeI);
    }
    let cliques = g.maximal_cliques_containing(w);
    let mut intersection = cliques.first().cloned().unwrap_or_default();
    for clique in &cliques[1..] {
        intersection = intersection.intersection(clique).copied().collect();
    }
    Ok(intersection)
}
