//! The finite halfspace pocset induced by the prime partitions of a type II
//! graph, and ultrafilter enumeration over it.
//!
//! A vertex with d prime factors contributes d-1 walls; the wall at cut m
//! has a low halfspace (star plus factors 1..=m) and a high halfspace (star
//! plus factors m+1..=d). Halfspace identity is (base, cut, side) — equal
//! extents at different bases are distinct elements. The partial order is
//! strict extent inclusion between distinct elements whose bases are not
//! adjacent; compatibility is adjacency of bases or an extent intersection
//! not swallowed by the first base's star.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::classify;
use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};
use crate::prime::{self, FactorAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Side {
    Low,
    High,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Halfspace {
    pub base: VertexId,
    /// Cut position, 1..=d-1.
    pub cut: usize,
    pub side: Side,
    pub extent: VertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Wall {
    pub base: VertexId,
    pub cut: usize,
}

#[derive(Debug, Clone)]
pub struct Pocset {
    /// Walls in (base, cut) order; halfspace 2w is Low, 2w+1 is High.
    pub walls: Vec<Wall>,
    pub halfspaces: Vec<Halfspace>,
    pub vertex_count: usize,
    distances: Vec<Vec<u32>>,
    stars: Vec<VertexSet>,
    /// Per non-prime base: (component, 1-based factor index).
    components: BTreeMap<VertexId, Vec<(VertexSet, usize)>>,
    nonprime: Vec<VertexId>,
}

/// One halfspace chosen per wall; `sides[w]` is the choice at wall `w`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Ultrafilter {
    pub sides: Vec<Side>,
}

impl Ultrafilter {
    pub fn halfspace_ids(&self) -> Vec<usize> {
        self.sides
            .iter()
            .enumerate()
            .map(|(w, side)| 2 * w + usize::from(*side == Side::High))
            .collect()
    }
}

impl Pocset {
    pub fn wall_count(&self) -> usize {
        self.walls.len()
    }

    pub fn complement(&self, h: usize) -> usize {
        h ^ 1
    }

    pub fn wall_of(&self, h: usize) -> usize {
        h / 2
    }

    fn base_distance(&self, h1: usize, h2: usize) -> u32 {
        self.distances[self.halfspaces[h1].base][self.halfspaces[h2].base]
    }

    pub fn bases_adjacent(&self, h1: usize, h2: usize) -> bool {
        self.base_distance(h1, h2) == 1
    }

    /// Strict extent inclusion between distinct elements, reflexive on equal
    /// ones; only comparable when the bases are not adjacent.
    pub fn le(&self, h1: usize, h2: usize) -> bool {
        if h1 == h2 {
            return true;
        }
        if self.base_distance(h1, h2) == 1 {
            return false;
        }
        let (e1, e2) = (&self.halfspaces[h1].extent, &self.halfspaces[h2].extent);
        e1.is_subset(e2) && e1 != e2
    }

    pub fn compatible(&self, h1: usize, h2: usize) -> bool {
        if self.base_distance(h1, h2) == 1 {
            return true;
        }
        let meet: VertexSet = self.halfspaces[h1]
            .extent
            .intersection(&self.halfspaces[h2].extent)
            .copied()
            .collect();
        !meet.is_subset(&self.stars[self.halfspaces[h1].base])
    }

    /// Transverse walls are exactly those with adjacent bases.
    pub fn transverse(&self, w1: usize, w2: usize) -> bool {
        w1 != w2
            && self.distances[self.walls[w1].base][self.walls[w2].base] == 1
    }

    /// Pocset axioms plus the compatibility/order equivalence. Any failure
    /// is an internal bug.
    pub fn validate(&self) -> Result<()> {
        let n = self.halfspaces.len();
        let fail = |msg: String| Err(Error::Internal(msg));
        for i in 0..n {
            let c = self.complement(i);
            if self.le(i, c) || self.le(c, i) {
                return fail(format!("halfspace {i} comparable with its complement"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.compatible(i, j) != self.compatible(j, i) {
                    return fail(format!("compatibility not symmetric on ({i},{j})"));
                }
                if self.le(i, j) && self.le(j, i) && i != j {
                    return fail(format!("antisymmetry violated on ({i},{j})"));
                }
                if self.le(i, j) && !self.le(self.complement(j), self.complement(i)) {
                    return fail(format!("involution not order-reversing on ({i},{j})"));
                }
                let incompatible = !self.compatible(i, j);
                let by_order =
                    self.base_distance(i, j) != 1 && self.le(i, self.complement(j));
                if incompatible != by_order {
                    return fail(format!(
                        "compatibility/order equivalence violated on ({i},{j})"
                    ));
                }
                for k in 0..n {
                    if self.le(i, j) && self.le(j, k) && !self.le(i, k) {
                        return fail(format!("transitivity violated on ({i},{j},{k})"));
                    }
                }
            }
        }
        // Same-base halfspaces with the same side are totally ordered by cut.
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&self.halfspaces[i], &self.halfspaces[j]);
                if a.base == b.base && a.side == b.side && !(self.le(i, j) || self.le(j, i)) {
                    return fail(format!("same-base same-side pair ({i},{j}) incomparable"));
                }
            }
        }
        Ok(())
    }

    /// Diagnostic/override constructor: builds the pocset for a supplied
    /// per-vertex factor partition instead of the built-in
    /// indistinguishability criterion (the swap-in point for a stricter
    /// branch-equivalence oracle).
    pub fn from_factors(
        g: &SimplicialGraph,
        factors_per_base: Vec<(VertexId, Vec<VertexSet>)>,
    ) -> Pocset {
        let mut walls = Vec::new();
        let mut halfspaces = Vec::new();
        let mut components = BTreeMap::new();
        let mut nonprime = Vec::new();
        for (base, factors) in &factors_per_base {
            let base = *base;
            nonprime.push(base);
            let star = g.star(base);
            let d = factors.len();
            components.insert(
                base,
                factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (f.clone(), i + 1))
                    .collect(),
            );
            for cut in 1..d {
                walls.push(Wall { base, cut });
                let union_of = |range: std::ops::Range<usize>| -> VertexSet {
                    let mut extent = star.clone();
                    for f in &factors[range] {
                        extent.extend(f.iter().copied());
                    }
                    extent
                };
                halfspaces.push(Halfspace {
                    base,
                    cut,
                    side: Side::Low,
                    extent: union_of(0..cut),
                });
                halfspaces.push(Halfspace {
                    base,
                    cut,
                    side: Side::High,
                    extent: union_of(cut..d),
                });
            }
        }
        Pocset {
            walls,
            halfspaces,
            vertex_count: g.vertex_count(),
            distances: g.distances(),
            stars: g.vertices().map(|v| g.star(v)).collect(),
            components,
            nonprime,
        }
    }
}

pub fn build_pocset(g: &SimplicialGraph) -> Result<Pocset> {
    build_pocset_with(g, FactorAssignment::Canonical)
}

/// Builds the pocset from the prime partitions of `g`. Rejected unless `g`
/// is of type II, where the construction's guarantees hold.
pub fn build_pocset_with(g: &SimplicialGraph, assignment: FactorAssignment) -> Result<Pocset> {
    if !classify::is_type_ii(g) {
        let witness = classify::type_ii_witness(g)
            .map(|(v, w)| (g.label(v).to_string(), g.label(w).to_string()));
        return Err(Error::NotTypeII { witness });
    }
    let mut factors_per_base = Vec::new();
    for v in g.vertices() {
        let record = prime::prime_partition_with(g, v, assignment)?;
        if record.d >= 2 {
            let factors: Vec<VertexSet> = record
                .factors
                .iter()
                .map(|members| {
                    members
                        .iter()
                        .flat_map(|m| m.component.iter().copied())
                        .collect()
                })
                .collect();
            factors_per_base.push((v, factors));
        }
    }
    let pocset = Pocset::from_factors(g, factors_per_base);
    pocset.validate()?;
    Ok(pocset)
}

/// Greedy tight filtration of the non-prime vertices; the next element is
/// always minimal for "star of the candidate separates an already-placed
/// vertex from another candidate".
fn tight_order(p: &Pocset) -> Result<Vec<VertexId>> {
    let mut order: Vec<VertexId> = Vec::new();
    let mut remaining: BTreeSet<VertexId> = p.nonprime.iter().copied().collect();
    let component_of = |base: VertexId, x: VertexId| -> Option<usize> {
        p.components[&base]
            .iter()
            .position(|(set, _)| set.contains(&x))
    };
    let separates = |cand: VertexId, k: VertexId, other: VertexId| -> bool {
        match (component_of(cand, k), component_of(cand, other)) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        }
    };
    while !remaining.is_empty() {
        let pick = remaining.iter().copied().find(|&cand| {
            remaining.iter().all(|&other| {
                other == cand || !order.iter().any(|&k| separates(other, k, cand))
            })
        });
        let next = pick.ok_or_else(|| {
            Error::Internal("tight filtration has no minimal element".to_string())
        })?;
        order.push(next);
        remaining.remove(&next);
    }
    Ok(order)
}

/// Seed ultrafilter: walk the tight filtration and, at each base, choose the
/// side containing the component that holds the previously placed vertices
/// (the first component when none survive star removal).
fn seed_ultrafilter(p: &Pocset) -> Result<Ultrafilter> {
    let order = tight_order(p)?;
    let mut factor_choice: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, &base) in order.iter().enumerate() {
        let previous: Vec<VertexId> = order[..i]
            .iter()
            .copied()
            .filter(|&k| !p.stars[base].contains(&k))
            .collect();
        let comps = &p.components[&base];
        let chosen_factor = if previous.is_empty() {
            comps[0].1
        } else {
            let hits: BTreeSet<usize> = previous
                .iter()
                .map(|&k| {
                    comps
                        .iter()
                        .find(|(set, _)| set.contains(&k))
                        .map(|&(_, f)| f)
                        .ok_or_else(|| {
                            Error::Internal(format!(
                                "vertex {k} not in any component at base {base}"
                            ))
                        })
                })
                .collect::<Result<_>>()?;
            if hits.len() != 1 {
                return Err(Error::Internal(format!(
                    "tight filtration spread over factors {hits:?} at base {base}"
                )));
            }
            *hits.first().expect("nonempty")
        };
        factor_choice.insert(base, chosen_factor);
    }
    let sides = p
        .walls
        .iter()
        .map(|wall| {
            if factor_choice[&wall.base] <= wall.cut {
                Side::Low
            } else {
                Side::High
            }
        })
        .collect();
    let seed = Ultrafilter { sides };
    if !is_ultrafilter(p, &seed) {
        return Err(Error::Internal("seed ultrafilter is not compatible".to_string()));
    }
    Ok(seed)
}

/// One halfspace per wall and pairwise compatible — equivalently, upward
/// closed.
pub fn is_ultrafilter(p: &Pocset, u: &Ultrafilter) -> bool {
    let ids = u.halfspace_ids();
    ids.iter()
        .all(|&a| ids.iter().all(|&b| p.compatible(a, b)))
}

pub fn is_upward_closed(p: &Pocset, u: &Ultrafilter) -> bool {
    let ids: BTreeSet<usize> = u.halfspace_ids().into_iter().collect();
    ids.iter().all(|&a| {
        (0..p.halfspaces.len()).all(|b| !p.le(a, b) || ids.contains(&b))
    })
}

/// Halfspaces of `u` minimal with respect to the pocset order; flipping one
/// produces an adjacent ultrafilter.
pub fn minimal_walls(p: &Pocset, u: &Ultrafilter) -> Vec<usize> {
    let ids = u.halfspace_ids();
    (0..p.walls.len())
        .filter(|&w| {
            let h = ids[w];
            ids.iter().all(|&other| other == h || !p.le(other, h))
        })
        .collect()
}

fn flip(u: &Ultrafilter, wall: usize) -> Ultrafilter {
    let mut sides = u.sides.clone();
    sides[wall] = match sides[wall] {
        Side::Low => Side::High,
        Side::High => Side::Low,
    };
    Ultrafilter { sides }
}

/// The complete finite set of ultrafilters, found by seeded breadth-first
/// search over minimal-element flips; canonically ordered.
pub fn ultrafilters(p: &Pocset) -> Result<Vec<Ultrafilter>> {
    let seed = seed_ultrafilter(p)?;
    let mut seen: BTreeSet<Ultrafilter> = BTreeSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed]);
    while let Some(u) = queue.pop_front() {
        for wall in minimal_walls(p, &u) {
            let next = flip(&u, wall);
            if !is_ultrafilter(p, &next) {
                return Err(Error::Internal(
                    "minimal flip left the ultrafilter set".to_string(),
                ));
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
