//! Dual cube complex of the halfspace pocset: vertices are ultrafilters,
//! edges are minimal-element flips, squares witness transverse walls. The
//! intersection of a vertex's halfspace extents cuts out the prime graph,
//! and the vertex count is the commensurability index.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexSet, INFINITE};
use crate::classify;
use crate::iso;
use crate::pocset::{self, Pocset, Ultrafilter};
use crate::prime::{self, FactorAssignment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeEdge {
    pub a: usize,
    pub b: usize,
    pub wall: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    pub corners: [usize; 4],
    pub walls: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct CubeComplex {
    pub ultrafilters: Vec<Ultrafilter>,
    pub edges: Vec<CubeEdge>,
    pub squares: Vec<Square>,
    /// Per vertex: intersection of the chosen halfspace extents.
    pub phi: Vec<VertexSet>,
}

#[derive(Debug, Clone)]
pub struct PrimeGraphResult {
    pub prime_graph: SimplicialGraph,
    pub index: usize,
    pub phi_table: Vec<Vec<String>>,
}

fn phi_of(p: &Pocset, u: &Ultrafilter) -> VertexSet {
    let mut out: VertexSet = (0..p.vertex_count).collect();
    for h in u.halfspace_ids() {
        out = out
            .intersection(&p.halfspaces[h].extent)
            .copied()
            .collect();
    }
    out
}

fn skeleton_distances(n: usize, edges: &[CubeEdge]) -> Vec<Vec<u32>> {
    let mut adjacency = vec![Vec::new(); n];
    for e in edges {
        adjacency[e.a].push(e.b);
        adjacency[e.b].push(e.a);
    }
    let mut table = vec![vec![INFINITE; n]; n];
    for start in 0..n {
        table[start][start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if table[start][w] == INFINITE {
                    table[start][w] = table[start][v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    table
}

/// Every vertex triple must have exactly one median: a point on geodesics
/// between all three pairs.
fn check_median(dist: &[Vec<u32>]) -> Result<()> {
    let n = dist.len();
    let between = |a: usize, b: usize, x: usize| dist[a][x] + dist[x][b] == dist[a][b];
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let medians = (0..n)
                    .filter(|&x| between(a, b, x) && between(b, c, x) && between(a, c, x))
                    .count();
                if medians != 1 {
                    return Err(Error::Internal(format!(
                        "triple ({a},{b},{c}) has {medians} medians"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Builds the dual complex and asserts its structural invariants; any
/// failure is fatal and indicates an upstream bug.
pub fn dual_complex(p: &Pocset) -> Result<CubeComplex> {
    let ultrafilters = pocset::ultrafilters(p)?;
    let index_of = |u: &Ultrafilter| -> Result<usize> {
        ultrafilters
            .binary_search(u)
            .map_err(|_| Error::Internal("flip left the ultrafilter set".to_string()))
    };
    let mut edges = Vec::new();
    let mut squares: BTreeSet<([usize; 4], (usize, usize))> = BTreeSet::new();
    for (i, u) in ultrafilters.iter().enumerate() {
        let minimal = pocset::minimal_walls(p, u);
        for &w in &minimal {
            let j = index_of(&flip(u, w))?;
            if i < j {
                edges.push(CubeEdge { a: i, b: j, wall: w });
            }
        }
        for &w1 in &minimal {
            for &w2 in &minimal {
                if w1 < w2 && p.transverse(w1, w2) {
                    let c1 = index_of(&flip(u, w1))?;
                    let c2 = index_of(&flip(u, w2))?;
                    let c12 = index_of(&flip(&flip(u, w1), w2))?;
                    let mut corners = [i, c1, c2, c12];
                    corners.sort_unstable();
                    squares.insert((corners, (w1, w2)));
                }
            }
        }
    }
    let phi: Vec<VertexSet> = ultrafilters.iter().map(|u| phi_of(p, u)).collect();

    if p.vertex_count > 0 {
        if let Some(i) = phi.iter().position(VertexSet::is_empty) {
            return Err(Error::Internal(format!("empty halfspace intersection at vertex {i}")));
        }
    }
    let covered: VertexSet = phi.iter().flatten().copied().collect();
    if covered.len() != p.vertex_count {
        return Err(Error::Internal(
            "halfspace intersections do not cover the graph".to_string(),
        ));
    }
    let dist = skeleton_distances(ultrafilters.len(), &edges);
    if dist.iter().flatten().any(|&d| d == INFINITE) {
        return Err(Error::Internal("dual complex is disconnected".to_string()));
    }
    check_median(&dist)?;
    // Crossing walls have adjacent bases, and walls with adjacent bases
    // cross in some square.
    for (_, (w1, w2)) in &squares {
        if !p.transverse(*w1, *w2) {
            return Err(Error::Internal(format!(
                "square on non-transverse walls ({w1},{w2})"
            )));
        }
    }
    for w1 in 0..p.wall_count() {
        for w2 in w1 + 1..p.wall_count() {
            if p.transverse(w1, w2)
                && !squares.iter().any(|(_, walls)| *walls == (w1, w2))
            {
                return Err(Error::Internal(format!(
                    "transverse walls ({w1},{w2}) never cross in a square"
                )));
            }
        }
    }
    Ok(CubeComplex {
        ultrafilters,
        edges,
        squares: squares
            .into_iter()
            .map(|(corners, walls)| Square { corners, walls })
            .collect(),
        phi,
    })
}

fn flip(u: &Ultrafilter, wall: usize) -> Ultrafilter {
    let mut sides = u.sides.clone();
    sides[wall] = match sides[wall] {
        pocset::Side::Low => pocset::Side::High,
        pocset::Side::High => pocset::Side::Low,
    };
    Ultrafilter { sides }
}

pub fn prime_graph(g: &SimplicialGraph) -> Result<PrimeGraphResult> {
    prime_graph_with(g, FactorAssignment::Canonical)
}

/// Prime graph and commensurability index of a type II graph: the induced
/// graph on the first vertex's halfspace intersection, with all other
/// intersections asserted isomorphic, and primality of the result asserted.
pub fn prime_graph_with(
    g: &SimplicialGraph,
    assignment: FactorAssignment,
) -> Result<PrimeGraphResult> {
    let p = pocset::build_pocset_with(g, assignment)?;
    let complex = dual_complex(&p)?;
    prime_graph_from_complex(g, &complex)
}

pub fn prime_graph_from_complex(
    g: &SimplicialGraph,
    complex: &CubeComplex,
) -> Result<PrimeGraphResult> {
    let first = complex
        .phi
        .first()
        .ok_or_else(|| Error::Internal("dual complex has no vertices".to_string()))?;
    let prime_graph = g.induced_subgraph(first)?;
    for set in &complex.phi[1..] {
        let other = g.induced_subgraph(set)?;
        if !iso::are_isomorphic(&prime_graph, &other) {
            return Err(Error::Internal(
                "halfspace intersections are not pairwise isomorphic".to_string(),
            ));
        }
    }
    if !classify::is_type_ii(&prime_graph) {
        return Err(Error::Internal("prime graph is not of type II".to_string()));
    }
    if !prime::is_prime_raag(&prime_graph) {
        return Err(Error::Internal("prime graph is not prime".to_string()));
    }
    Ok(PrimeGraphResult {
        prime_graph,
        index: complex.ultrafilters.len(),
        phi_table: complex.phi.iter().map(|s| g.labels_of(s)).collect(),
    })
}
