//! Per-vertex branch data, the swap-indistinguishability relation on
//! branches, and the balanced prime partition it induces.
//!
//! Two branches at a vertex count as indistinguishable when their boundaries
//! coincide and the closed pieces (component plus boundary, as full
//! subgraphs) are isomorphic by an isomorphism fixing the boundary
//! pointwise. That witnessing isomorphism is exactly what assembles the
//! elementary swap of the two branches, so the criterion is sufficient;
//! whether it is complete is an open question, and the criterion name is
//! exposed in the record so a stricter oracle can be swapped in.

use serde::Serialize;

use crate::classify;
use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};
use crate::iso;

pub const QII_CRITERION: &str = "boundary-fixing-isomorphism";

/// One component of graph ∖ star(v) together with its boundary (the
/// outside vertices adjacent to it; always a subset of link(v)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchDatum {
    pub component: VertexSet,
    pub boundary: VertexSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct QiiClass {
    pub members: Vec<BranchDatum>,
    pub shared_boundary: VertexSet,
}

/// The balanced partition of branches at one vertex: class sizes
/// (n_1..n_k), their gcd d, and d factors receiving n_i/d members of
/// class i each.
#[derive(Debug, Clone, Serialize)]
pub struct PrimePartitionRecord {
    pub vertex: VertexId,
    pub classes: Vec<QiiClass>,
    pub tuple: Vec<usize>,
    pub d: usize,
    pub factors: Vec<Vec<BranchDatum>>,
    pub criterion: &'static str,
}

impl PrimePartitionRecord {
    /// gcd of the empty tuple is 1, so vertices adjacent to everything are
    /// prime.
    pub fn is_prime(&self) -> bool {
        self.d == 1
    }
}

/// Which member goes to which factor; `Reversed` exists to test that the
/// final prime graph does not depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FactorAssignment {
    #[default]
    Canonical,
    Reversed,
}

/// One datum per component of graph ∖ star(v), in canonical order.
pub fn branch_data(g: &SimplicialGraph, v: VertexId) -> Result<Vec<BranchDatum>> {
    if v >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    let star = g.star(v);
    let components = g.components_minus(&star)?;
    Ok(components
        .into_iter()
        .map(|component| {
            let mut boundary = VertexSet::new();
            for &c in &component {
                for &u in g.neighbors(c) {
                    if !component.contains(&u) {
                        boundary.insert(u);
                    }
                }
            }
            debug_assert!(boundary.is_subset(&g.link(v)));
            BranchDatum { component, boundary }
        })
        .collect())
}

/// Boundary-fixing isomorphism test between two branches at the same vertex.
pub fn qii_equivalent(
    g: &SimplicialGraph,
    v: VertexId,
    d1: &BranchDatum,
    d2: &BranchDatum,
) -> Result<bool> {
    let data = branch_data(g, v)?;
    if !data.contains(d1) || !data.contains(d2) {
        return Err(Error::ForeignBranch { vertex: g.label(v).to_string() });
    }
    Ok(qii_equivalent_unchecked(g, d1, d2))
}

fn qii_equivalent_unchecked(g: &SimplicialGraph, d1: &BranchDatum, d2: &BranchDatum) -> bool {
    if d1.boundary != d2.boundary || d1.component.len() != d2.component.len() {
        return false;
    }
    let closed1: VertexSet = d1.component.union(&d1.boundary).copied().collect();
    let closed2: VertexSet = d2.component.union(&d2.boundary).copied().collect();
    let g1 = g.induced_subgraph(&closed1).expect("subset");
    let g2 = g.induced_subgraph(&closed2).expect("subset");
    let pins: Vec<(VertexId, VertexId)> = d1
        .boundary
        .iter()
        .map(|&b| {
            let label = g.label(b);
            (
                g1.vertex(label).expect("boundary in closed piece"),
                g2.vertex(label).expect("shared boundary"),
            )
        })
        .collect();
    iso::isomorphism_with_pins(&g1, &g2, &pins).is_some()
}

/// Iso-invariant sort key for a class: (member count, component size,
/// component edge count, sorted closed-piece degree sequence).
fn class_key(g: &SimplicialGraph, class: &QiiClass) -> (usize, usize, usize, Vec<usize>) {
    let rep = &class.members[0];
    let closed: VertexSet = rep.component.union(&rep.boundary).copied().collect();
    let sub = g.induced_subgraph(&closed).expect("subset");
    let mut degrees: Vec<usize> = sub.vertices().map(|v| sub.neighbors(v).len()).collect();
    degrees.sort_unstable();
    (
        class.members.len(),
        rep.component.len(),
        g.induced_subgraph(&rep.component).expect("subset").edge_count(),
        degrees,
    )
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn prime_partition(g: &SimplicialGraph, v: VertexId) -> Result<PrimePartitionRecord> {
    prime_partition_with(g, v, FactorAssignment::Canonical)
}

pub fn prime_partition_with(
    g: &SimplicialGraph,
    v: VertexId,
    assignment: FactorAssignment,
) -> Result<PrimePartitionRecord> {
    let data = branch_data(g, v)?;
    let mut classes: Vec<QiiClass> = Vec::new();
    for datum in data {
        match classes
            .iter_mut()
            .find(|c| qii_equivalent_unchecked(g, &c.members[0], &datum))
        {
            Some(class) => class.members.push(datum),
            None => classes.push(QiiClass {
                shared_boundary: datum.boundary.clone(),
                members: vec![datum],
            }),
        }
    }
    classes.sort_by(|a, b| {
        class_key(g, a)
            .cmp(&class_key(g, b))
            .then_with(|| a.members[0].component.cmp(&b.members[0].component))
    });
    let tuple: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
    let d = tuple.iter().fold(0, |acc, &n| gcd(acc, n)).max(1);
    let mut factors: Vec<Vec<BranchDatum>> = vec![Vec::new(); d];
    for class in &classes {
        let per_factor = class.members.len() / d;
        let mut members = class.members.clone();
        if assignment == FactorAssignment::Reversed {
            members.reverse();
        }
        for (j, member) in members.into_iter().enumerate() {
            factors[j / per_factor].push(member);
        }
    }
    Ok(PrimePartitionRecord { vertex: v, classes, tuple, d, factors, criterion: QII_CRITERION })
}

/// Prime means type II with every vertex prime.
pub fn is_prime_raag(g: &SimplicialGraph) -> bool {
    classify::is_type_ii(g)
        && g.vertices().all(|v| {
            prime_partition(g, v)
                .expect("vertex ids are in range")
                .is_prime()
        })
}
