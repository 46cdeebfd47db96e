//! Fixture graphs shared by the CLI and the test suites, built from gluing
//! primitives, plus expected values with their provenance.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;

/// Where an expected value comes from: a published example, an independent
/// hand/brute-force computation, or a direct consequence of a definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Reference,
    Derived,
    Trivial,
}

#[derive(Debug, Clone)]
pub struct Check<T> {
    pub value: T,
    pub provenance: Provenance,
    pub note: &'static str,
}

impl<T> Check<T> {
    fn new(value: T, provenance: Provenance, note: &'static str) -> Option<Self> {
        Some(Check { value, provenance, note })
    }
}

impl<T: std::fmt::Debug> std::fmt::Display for Check<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} [{:?}: {}]", self.value, self.provenance, self.note)
    }
}

/// Partial expected classification/cubulation results for one fixture.
#[derive(Debug, Clone, Default)]
pub struct Expected {
    pub type_ii: Option<Check<bool>>,
    pub weak_type_ii: Option<Check<bool>>,
    pub weak_type_i: Option<Check<bool>>,
    pub prime: Option<Check<bool>>,
    pub separating_stars: Option<Check<Vec<&'static str>>>,
    /// Vertex whose closed star was glued along, when the fixture has one.
    pub glue_vertex: Option<&'static str>,
    pub glue_tuple: Option<Check<Vec<usize>>>,
    pub wall_count: Option<Check<usize>>,
    pub ultrafilter_count: Option<Check<usize>>,
    /// Name of the registry fixture the prime graph is isomorphic to.
    pub prime_graph_of: Option<Check<&'static str>>,
    pub index: Option<Check<usize>>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: SimplicialGraph,
    pub expected: Expected,
}

pub fn cycle(n: usize, prefix: &str) -> SimplicialGraph {
    let labels: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    let edges = (0..n)
        .map(|i| (labels[i].clone(), labels[(i + 1) % n].clone()))
        .collect();
    SimplicialGraph::from_parts(labels, edges).expect("cycle is simplicial")
}

pub fn path(n: usize, prefix: &str) -> SimplicialGraph {
    let labels: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    let edges = (0..n.saturating_sub(1))
        .map(|i| (labels[i].clone(), labels[i + 1].clone()))
        .collect();
    SimplicialGraph::from_parts(labels, edges).expect("path is simplicial")
}

pub fn complete(n: usize, prefix: &str) -> SimplicialGraph {
    let labels: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((labels[i].clone(), labels[j].clone()));
        }
    }
    SimplicialGraph::from_parts(labels, edges).expect("complete graph is simplicial")
}

/// n isolated vertices labelled a, b, c, ... (defining graph of a free group).
pub fn free(n: usize) -> SimplicialGraph {
    assert!(n <= 26);
    let labels: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    SimplicialGraph::from_parts(labels, vec![]).expect("edgeless graph is simplicial")
}

/// Union of two graphs on overlapping label sets; shared edges merge.
pub fn union_graphs(a: &SimplicialGraph, b: &SimplicialGraph) -> SimplicialGraph {
    let mut vertices: Vec<String> = a.vertices().map(|v| a.label(v).to_string()).collect();
    vertices.extend(b.vertices().map(|v| b.label(v).to_string()));
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut push = |g: &SimplicialGraph, (x, y): (usize, usize)| {
        let (mut la, mut lb) = (g.label(x).to_string(), g.label(y).to_string());
        if la > lb {
            std::mem::swap(&mut la, &mut lb);
        }
        if !edges.contains(&(la.clone(), lb.clone())) {
            edges.push((la, lb));
        }
    };
    for e in a.edge_list() {
        push(a, e);
    }
    for e in b.edge_list() {
        push(b, e);
    }
    SimplicialGraph::from_parts(vertices, edges).expect("union of simplicial graphs")
}

/// Join: disjoint labels required; every cross pair becomes an edge.
pub fn join_graphs(a: &SimplicialGraph, b: &SimplicialGraph) -> SimplicialGraph {
    let mut g = union_graphs(a, b);
    let mut edges: Vec<(String, String)> = g
        .edge_list()
        .into_iter()
        .map(|(x, y)| (g.label(x).to_string(), g.label(y).to_string()))
        .collect();
    for x in a.vertices() {
        for y in b.vertices() {
            edges.push((a.label(x).to_string(), b.label(y).to_string()));
        }
    }
    let vertices: Vec<String> = g.vertices().map(|v| g.label(v).to_string()).collect();
    g = SimplicialGraph::from_parts(vertices, edges).expect("join of disjoint graphs");
    g
}

/// Identifies the closed star of `vb` in `b` with the closed star of `va` in
/// `a`: centers are identified, links are matched in label order. Link sizes
/// must agree and the rest of `b`'s labels must not collide with `a`'s.
pub fn glue_along_closed_star(
    a: &SimplicialGraph,
    va: &str,
    b: &SimplicialGraph,
    vb: &str,
) -> Result<SimplicialGraph> {
    let ia = a.vertex(va)?;
    let ib = b.vertex(vb)?;
    let link_a: Vec<String> = a.link(ia).iter().map(|&v| a.label(v).to_string()).collect();
    let link_b: Vec<String> = b.link(ib).iter().map(|&v| b.label(v).to_string()).collect();
    if link_a.len() != link_b.len() {
        return Err(Error::Internal(format!(
            "cannot glue stars: link sizes {} vs {}",
            link_a.len(),
            link_b.len()
        )));
    }
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    rename.insert(vb.to_string(), va.to_string());
    for (lb, la) in link_b.iter().zip(&link_a) {
        rename.insert(lb.clone(), la.clone());
    }
    let renamed = b.relabeled(&|l| rename.get(l).cloned().unwrap_or_else(|| l.to_string()));
    for v in renamed.vertices() {
        let label = renamed.label(v);
        if a.vertex(label).is_ok() && !a.star(ia).iter().any(|&s| a.label(s) == label) {
            return Err(Error::Internal(format!("label collision outside the glued star: {label}")));
        }
    }
    Ok(union_graphs(a, &renamed))
}

/// Identifies the edge (b1, b2) of `b` with the edge (a1, a2) of `a`.
pub fn glue_along_edge(
    a: &SimplicialGraph,
    (a1, a2): (&str, &str),
    b: &SimplicialGraph,
    (b1, b2): (&str, &str),
) -> Result<SimplicialGraph> {
    for (g, x, y) in [(a, a1, a2), (b, b1, b2)] {
        if !g.adjacent(g.vertex(x)?, g.vertex(y)?) {
            return Err(Error::Internal(format!("({x}, {y}) is not an edge")));
        }
    }
    let mut rename = BTreeMap::new();
    rename.insert(b1.to_string(), a1.to_string());
    rename.insert(b2.to_string(), a2.to_string());
    let renamed = b.relabeled(&|l| rename.get(l).cloned().unwrap_or_else(|| l.to_string()));
    Ok(union_graphs(a, &renamed))
}

/// Two hexagons glued along one closed vertex star; glue vertex "a1".
pub fn hex2() -> SimplicialGraph {
    glue_along_closed_star(&cycle(6, "a"), "a1", &cycle(6, "b"), "b1").expect("hex2")
}

/// Three hexagons glued along one closed vertex star; glue vertex "a1".
pub fn hex3() -> SimplicialGraph {
    glue_along_closed_star(&hex2(), "a1", &cycle(6, "c"), "c1").expect("hex3")
}

/// Pentagon and hexagon glued along a closed vertex star; glue vertex "p1".
pub fn ph() -> SimplicialGraph {
    glue_along_closed_star(&cycle(5, "p"), "p1", &cycle(6, "h"), "h1").expect("ph")
}

/// Pentagon and two hexagons glued along one closed vertex star.
pub fn ex819b() -> SimplicialGraph {
    glue_along_closed_star(&ph(), "p1", &cycle(6, "k"), "k1").expect("ex819b")
}

/// Pentagon and triangle glued along one edge.
pub fn pent3() -> SimplicialGraph {
    glue_along_edge(&cycle(5, "p"), ("p1", "p2"), &cycle(3, "t"), ("t1", "t2")).expect("pent3")
}

fn cycle_on(labels: [&str; 6]) -> SimplicialGraph {
    let edges = (0..6)
        .map(|i| (labels[i].to_string(), labels[(i + 1) % 6].to_string()))
        .collect();
    SimplicialGraph::from_parts(labels.iter().map(|s| s.to_string()).collect(), edges)
        .expect("hexagon")
}

/// Four hexagons pairwise sharing the edge s1-s2 and one arm each; the two
/// adjacent vertices s1, s2 each carry a swap symmetry of their two branches.
pub fn square14() -> SimplicialGraph {
    let x1 = cycle_on(["s1", "s2", "a3", "a4", "a5", "a6"]);
    let x2 = cycle_on(["s1", "s2", "b3", "b4", "b5", "a6"]);
    let x3 = cycle_on(["s1", "s2", "a3", "c4", "c5", "c6"]);
    let x4 = cycle_on(["s1", "s2", "b3", "d4", "d5", "c6"]);
    union_graphs(&union_graphs(&x1, &x2), &union_graphs(&x3, &x4))
}

pub fn petersen() -> SimplicialGraph {
    let mut edges = Vec::new();
    for i in 0..5usize {
        edges.push((format!("o{}", i + 1), format!("o{}", (i + 1) % 5 + 1)));
        edges.push((format!("i{}", i + 1), format!("i{}", (i + 2) % 5 + 1)));
        edges.push((format!("o{}", i + 1), format!("i{}", i + 1)));
    }
    let labels = (1..=5)
        .flat_map(|i| [format!("o{i}"), format!("i{i}")])
        .collect();
    SimplicialGraph::from_parts(labels, edges).expect("petersen")
}

pub fn p3() -> SimplicialGraph {
    SimplicialGraph::parse_edge_list("a b\nb c").expect("p3")
}

pub fn k13() -> SimplicialGraph {
    SimplicialGraph::parse_edge_list("c l1\nc l2\nc l3").expect("k13")
}

pub fn k2() -> SimplicialGraph {
    SimplicialGraph::parse_edge_list("a b").expect("k2")
}

/// The fixture registry shared by the CLI and the test suites.
pub fn registry() -> Vec<Fixture> {
    use Provenance::*;
    vec![
        Fixture {
            name: "k2",
            graph: k2(),
            expected: Expected {
                type_ii: Check::new(true, Trivial, "no vertex pairs at distance two"),
                prime: Check::new(true, Trivial, "star removal leaves nothing"),
                wall_count: Check::new(0, Trivial, "no non-prime vertices"),
                index: Check::new(1, Trivial, "empty pocset has one ultrafilter"),
                prime_graph_of: Check::new("k2", Trivial, "prime graphs are fixed points"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "k3",
            graph: complete(3, "k"),
            expected: Expected {
                type_ii: Check::new(true, Trivial, "no vertex pairs at distance two"),
                weak_type_ii: Check::new(true, Trivial, "vacuous quantifier"),
                prime: Check::new(true, Trivial, "star removal leaves nothing"),
                index: Check::new(1, Trivial, "empty pocset"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "p3",
            graph: p3(),
            expected: Expected {
                type_ii: Check::new(false, Derived, "middle vertex link separates the ends"),
                weak_type_ii: Check::new(false, Derived, "ends are at distance two"),
                weak_type_i: Check::new(false, Derived, "fails weak type II"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "c4",
            graph: cycle(4, "v"),
            expected: Expected {
                weak_type_ii: Check::new(false, Derived, "opposite links coincide and separate"),
                type_ii: Check::new(false, Derived, "same pair"),
                weak_type_i: Check::new(false, Derived, "fails weak type II"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "c5",
            graph: cycle(5, "v"),
            expected: Expected {
                weak_type_i: Check::new(
                    true,
                    Derived,
                    "both formulations checked by hand; star unions never cover all edges",
                ),
                type_ii: Check::new(true, Derived, "single-vertex link intersections never separate"),
                prime: Check::new(true, Derived, "star removal leaves one path"),
                index: Check::new(1, Trivial, "empty pocset"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "c6",
            graph: cycle(6, "v"),
            expected: Expected {
                weak_type_i: Check::new(true, Derived, "hand check as for c5"),
                type_ii: Check::new(true, Derived, "hand check as for c5"),
                prime: Check::new(true, Derived, "star removal leaves one path"),
                index: Check::new(1, Trivial, "empty pocset"),
                prime_graph_of: Check::new("c6", Trivial, "prime graphs are fixed points"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "f2",
            graph: free(2),
            expected: Expected {
                weak_type_ii: Check::new(false, Trivial, "disconnected"),
                type_ii: Check::new(false, Trivial, "disconnected"),
                weak_type_i: Check::new(false, Trivial, "disconnected"),
                ..Expected::default()
            },
        },
        Fixture { name: "f3", graph: free(3), expected: Expected::default() },
        Fixture {
            name: "k13",
            graph: k13(),
            expected: Expected {
                type_ii: Check::new(false, Derived, "the center separates the leaves"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "pent3",
            graph: pent3(),
            expected: Expected {
                weak_type_i: Check::new(
                    true,
                    Reference,
                    "published model example of a pentagon and triangle glued along an edge",
                ),
                ..Expected::default()
            },
        },
        Fixture {
            name: "ph",
            graph: ph(),
            expected: Expected {
                type_ii: Check::new(
                    true,
                    Reference,
                    "published model example of a pentagon and hexagon glued along a star",
                ),
                weak_type_i: Check::new(false, Derived, "the glue star separates"),
                prime: Check::new(true, Reference, "published primality claim"),
                glue_vertex: Some("p1"),
                glue_tuple: Check::new(vec![1, 1], Reference, "published two-tuple"),
                wall_count: Check::new(0, Derived, "all vertices prime"),
                ultrafilter_count: Check::new(1, Trivial, "empty pocset"),
                prime_graph_of: Check::new("ph", Reference, "prime graphs are fixed points"),
                index: Check::new(1, Reference, "prime graphs are fixed points"),
                separating_stars: Check::new(vec!["p1"], Derived, "hand enumeration"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "ex819b",
            graph: ex819b(),
            expected: Expected {
                prime: Check::new(true, Reference, "published two-tuple (1,2) has gcd one"),
                glue_vertex: Some("p1"),
                glue_tuple: Check::new(vec![1, 2], Reference, "published two-tuple"),
                index: Check::new(1, Derived, "prime graphs are fixed points"),
                prime_graph_of: Check::new("ex819b", Derived, "prime graphs are fixed points"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "hex2",
            graph: hex2(),
            expected: Expected {
                type_ii: Check::new(true, Derived, "exhaustive pair check on 9 vertices"),
                weak_type_i: Check::new(false, Derived, "glue star separates"),
                separating_stars: Check::new(vec!["a1"], Derived, "component enumeration"),
                prime: Check::new(false, Derived, "glue vertex tuple (2) has gcd two"),
                glue_vertex: Some("a1"),
                glue_tuple: Check::new(vec![2], Derived, "two swap-isomorphic three-paths"),
                wall_count: Check::new(1, Derived, "one non-prime vertex with two factors"),
                ultrafilter_count: Check::new(2, Derived, "exhaustive enumeration over one wall"),
                prime_graph_of: Check::new("c6", Derived, "each halfspace extent is one hexagon"),
                index: Check::new(2, Derived, "two ultrafilters"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "hex3",
            graph: hex3(),
            expected: Expected {
                type_ii: Check::new(true, Derived, "exhaustive pair check on 12 vertices"),
                prime: Check::new(false, Derived, "glue vertex tuple (3)"),
                glue_vertex: Some("a1"),
                glue_tuple: Check::new(vec![3], Derived, "three swap-isomorphic three-paths"),
                wall_count: Check::new(2, Derived, "three factors give two nested walls"),
                ultrafilter_count: Check::new(3, Derived, "nested walls forbid the crossed choice"),
                prime_graph_of: Check::new("c6", Derived, "each extent is one hexagon"),
                index: Check::new(3, Derived, "three ultrafilters"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "square14",
            graph: square14(),
            expected: Expected {
                type_ii: Check::new(true, Derived, "exhaustive pair check on 14 vertices"),
                prime: Check::new(false, Derived, "s1 and s2 each have two swapped five-paths"),
                wall_count: Check::new(2, Derived, "two non-prime vertices with one wall each"),
                ultrafilter_count: Check::new(
                    4,
                    Derived,
                    "adjacent bases make all side choices compatible",
                ),
                prime_graph_of: Check::new("c6", Derived, "each double extent meets in one hexagon"),
                index: Check::new(4, Derived, "four ultrafilters"),
                ..Expected::default()
            },
        },
        Fixture {
            name: "petersen",
            graph: petersen(),
            expected: Expected {
                type_ii: Check::new(true, Derived, "link intersections have at most one vertex"),
                weak_type_i: Check::new(true, Derived, "no separating stars, no covering star pair"),
                prime: Check::new(true, Derived, "closed star removal leaves a six-cycle"),
                index: Check::new(1, Trivial, "empty pocset"),
                ..Expected::default()
            },
        },
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    registry().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shapes() {
        assert_eq!(hex2().vertex_count(), 9);
        assert_eq!(hex2().edge_count(), 10);
        assert_eq!(hex3().vertex_count(), 12);
        assert_eq!(ph().vertex_count(), 8);
        assert_eq!(ph().edge_count(), 9);
        assert_eq!(ex819b().vertex_count(), 11);
        assert_eq!(pent3().vertex_count(), 6);
        assert_eq!(pent3().edge_count(), 7);
        assert_eq!(square14().vertex_count(), 14);
        assert_eq!(square14().edge_count(), 17);
        assert_eq!(petersen().vertex_count(), 10);
        assert_eq!(petersen().edge_count(), 15);
    }

    #[test]
    fn glue_along_star_identifies_links_in_label_order() {
        let g = ph();
        let p1 = g.vertex("p1").unwrap();
        let link: Vec<&str> = g.link(p1).iter().map(|&v| g.label(v)).collect();
        assert_eq!(link, vec!["p2", "p5"]);
        // Hexagon arm attaches to the same link vertices.
        assert!(g.adjacent(g.vertex("h3").unwrap(), g.vertex("p2").unwrap()));
        assert!(g.adjacent(g.vertex("h5").unwrap(), g.vertex("p5").unwrap()));
    }

    #[test]
    fn registry_names_unique_and_parseable() {
        let names: Vec<_> = registry().iter().map(|f| f.name).collect();
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(names.len(), dedup.len());
        for f in registry() {
            let round = SimplicialGraph::parse_json(&f.graph.to_json()).unwrap();
            assert_eq!(round, f.graph, "{} round trip", f.name);
        }
    }
}
