//! Finite simple graphs with named vertices, plus the separation, clique and
//! join primitives everything else consumes.
//!
//! Vertices are addressed by `VertexId` (index into the label table). Labels
//! are kept in sorted order, which is the canonical order all downstream
//! tie-breaking refers to.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type VertexSet = BTreeSet<VertexId>;

pub const INFINITE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    labels: Vec<String>,
    adjacency: Vec<VertexSet>,
}

/// De Rham join decomposition: the clique factor (vertices adjacent to all
/// others) and the irreducible join factors (components of the complement
/// graph on the rest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub clique_factor: VertexSet,
    pub irreducible_factors: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl SimplicialGraph {
    /// Builds a canonicalized graph. Labels are deduplicated and sorted;
    /// edges are validated (no self-loops, no duplicates, endpoints known).
    pub fn from_parts<S: Into<String>>(
        vertices: Vec<S>,
        edges: Vec<(S, S)>,
    ) -> Result<SimplicialGraph> {
        let mut labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        labels.dedup();
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut adjacency = vec![VertexSet::new(); labels.len()];
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (n, (a, b)) in edges.into_iter().enumerate() {
            let (a, b) = (a.into(), b.into());
            let ia = *index
                .get(a.as_str())
                .ok_or(Error::UndeclaredEndpoint { index: n, vertex: a.clone() })?;
            let ib = *index
                .get(b.as_str())
                .ok_or(Error::UndeclaredEndpoint { index: n, vertex: b.clone() })?;
            if ia == ib {
                return Err(Error::SelfLoop { line: n + 1, vertex: a });
            }
            let key = (ia.min(ib), ia.max(ib));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge { line: n + 1, a, b });
            }
            adjacency[ia].insert(ib);
            adjacency[ib].insert(ia);
        }
        Ok(SimplicialGraph { labels, adjacency })
    }

    /// Parses the edge-list format: one edge per line ("a b"), lines starting
    /// with '#' ignored, isolated vertices declared as "v <label>".
    pub fn parse_edge_list(text: &str) -> Result<SimplicialGraph> {
        let mut vertices: Vec<String> = Vec::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        let mut edge_lines: Vec<usize> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            match tokens.as_slice() {
                ["v", label] => vertices.push((*label).to_string()),
                [a, b] => {
                    if a == b {
                        return Err(Error::SelfLoop { line, vertex: (*a).to_string() });
                    }
                    vertices.push((*a).to_string());
                    vertices.push((*b).to_string());
                    edges.push(((*a).to_string(), (*b).to_string()));
                    edge_lines.push(line);
                }
                _ => {
                    return Err(Error::Malformed {
                        line,
                        msg: format!("expected 'a b' or 'v label', got '{trimmed}'"),
                    })
                }
            }
        }
        let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
        for ((a, b), line) in edges.iter().zip(&edge_lines) {
            let key = (a.clone().min(b.clone()), a.clone().max(b.clone()));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge { line: *line, a: a.clone(), b: b.clone() });
            }
        }
        SimplicialGraph::from_parts(vertices, edges)
    }

    /// Parses the JSON format `{"vertices": [...], "edges": [[a, b], ...]}`.
    pub fn parse_json(text: &str) -> Result<SimplicialGraph> {
        let parsed: GraphJson = serde_json::from_str(text).map_err(|e| Error::Malformed {
            line: e.line(),
            msg: e.to_string(),
        })?;
        let index: BTreeSet<&str> = parsed.vertices.iter().map(String::as_str).collect();
        for (n, (a, b)) in parsed.edges.iter().enumerate() {
            for endpoint in [a, b] {
                if !index.contains(endpoint.as_str()) {
                    return Err(Error::UndeclaredEndpoint { index: n, vertex: endpoint.clone() });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { line: n + 1, vertex: a.clone() });
            }
        }
        SimplicialGraph::from_parts(parsed.vertices, parsed.edges)
    }

    /// Auto-detects the format: JSON if the first non-space byte is '{'.
    pub fn parse(text: &str) -> Result<SimplicialGraph> {
        if text.trim_start().starts_with('{') {
            SimplicialGraph::parse_json(text)
        } else {
            SimplicialGraph::parse_edge_list(text)
        }
    }

    /// Serializes to the JSON format in canonical order.
    pub fn to_json(&self) -> String {
        let json = GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edge_list()
                .into_iter()
                .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        };
        serde_json::to_string(&json).expect("graph serialization cannot fail")
    }

    /// Serializes to the edge-list format in canonical order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            if self.adjacency[v].is_empty() {
                out.push_str(&format!("v {}\n", self.labels[v]));
            }
        }
        for (a, b) in self.edge_list() {
            out.push_str(&format!("{} {}\n", self.labels[a], self.labels[b]));
        }
        out
    }

    /// Graphviz output (undirected, plain subset).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph raagqi {\n");
        for v in self.vertices() {
            if self.adjacency[v].is_empty() {
                out.push_str(&format!("  \"{}\";\n", self.labels[v]));
            }
        }
        for (a, b) in self.edge_list() {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", self.labels[a], self.labels[b]));
        }
        out.push_str("}\n");
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.labels.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::UnknownVertex(label.to_string()))
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn neighbors(&self, v: VertexId) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        let mut edges = Vec::new();
        for a in self.vertices() {
            for &b in &self.adjacency[a] {
                if a < b {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Neighbor set of `v` (the vertex set of its link); `v` itself excluded.
    pub fn link(&self, v: VertexId) -> VertexSet {
        self.adjacency[v].clone()
    }

    /// Closed star: `v` together with its neighbors.
    pub fn star(&self, v: VertexId) -> VertexSet {
        let mut s = self.adjacency[v].clone();
        s.insert(v);
        s
    }

    fn check_subset(&self, set: &VertexSet) -> Result<()> {
        if set.iter().all(|&v| v < self.labels.len()) {
            Ok(())
        } else {
            Err(Error::NotSubset)
        }
    }

    /// Full subgraph on `set`: keeps every edge of `self` internal to `set`.
    /// Labels are preserved, so vertex ids are renumbered canonically.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<SimplicialGraph> {
        self.check_subset(set)?;
        let vertices: Vec<String> = set.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for &a in set {
            for &b in &self.adjacency[a] {
                if a < b && set.contains(&b) {
                    edges.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        SimplicialGraph::from_parts(vertices, edges)
    }

    /// Connected components of the full subgraph on `vertices ∖ removed`,
    /// ordered by least vertex id.
    pub fn components_minus(&self, removed: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_subset(removed)?;
        let mut components = Vec::new();
        let mut seen = vec![false; self.labels.len()];
        for start in self.vertices() {
            if seen[start] || removed.contains(&start) {
                continue;
            }
            let mut component = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                component.insert(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] && !removed.contains(&w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            components.push(component);
        }
        Ok(components)
    }

    /// A graph with zero or one vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components_minus(&VertexSet::new())
            .expect("empty removal set")
            .len()
            <= 1
    }

    /// All-pairs graph distances (edge lengths 1); `INFINITE` when unreachable.
    pub fn distances(&self) -> Vec<Vec<u32>> {
        let n = self.labels.len();
        let mut table = vec![vec![INFINITE; n]; n];
        for start in 0..n {
            table[start][start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if table[start][w] == INFINITE {
                        table[start][w] = table[start][v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        table
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|&a| set.iter().all(|&b| a == b || self.adjacent(a, b)))
    }

    /// All inclusion-maximal cliques, canonically ordered. Isolated vertices
    /// yield singleton cliques, so the union covers every vertex.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut cliques = Vec::new();
        let mut r = VertexSet::new();
        let p = self.vertex_set();
        let x = VertexSet::new();
        self.bron_kerbosch(&mut r, p, x, &mut cliques);
        cliques.sort();
        cliques
    }

    fn bron_kerbosch(
        &self,
        r: &mut VertexSet,
        mut p: VertexSet,
        mut x: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| self.adjacency[u].intersection(&p).count())
            .expect("p or x nonempty");
        let candidates: Vec<VertexId> = p
            .iter()
            .copied()
            .filter(|v| !self.adjacency[pivot].contains(v))
            .collect();
        for v in candidates {
            r.insert(v);
            let p_next: VertexSet = p.intersection(&self.adjacency[v]).copied().collect();
            let x_next: VertexSet = x.intersection(&self.adjacency[v]).copied().collect();
            self.bron_kerbosch(r, p_next, x_next, out);
            r.remove(&v);
            p.remove(&v);
            x.insert(v);
        }
    }

    /// Maximal cliques whose vertex set contains `w`.
    pub fn maximal_cliques_containing(&self, w: VertexId) -> Vec<VertexSet> {
        self.maximal_cliques()
            .into_iter()
            .filter(|c| c.contains(&w))
            .collect()
    }

    pub fn max_clique_size(&self) -> usize {
        self.maximal_cliques()
            .iter()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
    }

    /// De Rham join decomposition.
    pub fn join_decomposition(&self) -> JoinDecomposition {
        let n = self.labels.len();
        let clique_factor: VertexSet = self
            .vertices()
            .filter(|&v| self.adjacency[v].len() == n - 1)
            .collect();
        let rest: VertexSet = self
            .vertices()
            .filter(|v| !clique_factor.contains(v))
            .collect();
        // Components of the complement graph restricted to `rest`.
        let mut factors = Vec::new();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        for &start in &rest {
            if seen.contains(&start) {
                continue;
            }
            let mut factor = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                factor.insert(v);
                for &w in &rest {
                    if !seen.contains(&w) && v != w && !self.adjacent(v, w) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            factors.push(factor);
        }
        JoinDecomposition { clique_factor, irreducible_factors: factors }
    }

    /// Renames every vertex through `rename`; the result is re-canonicalized.
    pub fn relabeled(&self, rename: &dyn Fn(&str) -> String) -> SimplicialGraph {
        let vertices: Vec<String> = self.labels.iter().map(|l| rename(l)).collect();
        let edges = self
            .edge_list()
            .into_iter()
            .map(|(a, b)| (rename(&self.labels[a]), rename(&self.labels[b])))
            .collect();
        SimplicialGraph::from_parts(vertices, edges).expect("relabeling preserves validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_edge_list_path() {
        let g = SimplicialGraph::parse_edge_list("a b\nb c").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.adjacent(g.vertex("a").unwrap(), g.vertex("b").unwrap()));
        assert!(!g.adjacent(g.vertex("a").unwrap(), g.vertex("c").unwrap()));
    }

    #[test]
    fn parse_json_single_vertex() {
        let g = SimplicialGraph::parse_json(r#"{"vertices":["x"],"edges":[]}"#).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_self_loop() {
        assert!(matches!(
            SimplicialGraph::parse_edge_list("a a"),
            Err(Error::SelfLoop { line: 1, .. })
        ));
    }

    #[test]
    fn parse_rejects_duplicate_edge() {
        assert!(matches!(
            SimplicialGraph::parse_edge_list("a b\nb a"),
            Err(Error::DuplicateEdge { line: 2, .. })
        ));
        assert!(matches!(
            SimplicialGraph::parse_json(r#"{"vertices":["a","b"],"edges":[["a","b"],["a","b"]]}"#),
            Err(Error::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn parse_rejects_undeclared_endpoint() {
        assert!(matches!(
            SimplicialGraph::parse_json(r#"{"vertices":["a"],"edges":[["a","b"]]}"#),
            Err(Error::UndeclaredEndpoint { index: 0, .. })
        ));
    }

    #[test]
    fn parse_rejects_malformed_line() {
        assert!(matches!(
            SimplicialGraph::parse_edge_list("a b c"),
            Err(Error::Malformed { line: 1, .. })
        ));
    }

    #[test]
    fn parse_handles_comments_and_isolated_vertices() {
        let g = SimplicialGraph::parse_edge_list("# comment\nv z\na b\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        let z = g.vertex("z").unwrap();
        assert!(g.neighbors(z).is_empty());
    }

    #[test]
    fn serialize_round_trip() {
        let g = fixtures::hex2();
        assert_eq!(SimplicialGraph::parse_json(&g.to_json()).unwrap(), g);
        assert_eq!(SimplicialGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        let empty = SimplicialGraph::from_parts::<String>(vec![], vec![]).unwrap();
        assert_eq!(SimplicialGraph::parse(&empty.to_json()).unwrap(), empty);
    }

    #[test]
    fn link_and_star() {
        let c5 = fixtures::cycle(5, "v");
        let v1 = c5.vertex("v1").unwrap();
        let expected: VertexSet =
            [c5.vertex("v2").unwrap(), c5.vertex("v5").unwrap()].into_iter().collect();
        assert_eq!(c5.link(v1), expected);
        let mut star = expected;
        star.insert(v1);
        assert_eq!(c5.star(v1), star);

        let k3 = fixtures::complete(3, "k");
        let a = k3.vertex("k1").unwrap();
        assert_eq!(k3.link(a).len(), 2);
        assert_eq!(k3.star(a).len(), 3);

        let single = SimplicialGraph::from_parts(vec!["x"], vec![]).unwrap();
        assert!(single.link(0).is_empty());
        assert_eq!(single.star(0), [0].into_iter().collect());
    }

    #[test]
    fn unknown_vertex_lookup_errors() {
        let g = fixtures::cycle(5, "v");
        assert!(matches!(g.vertex("nope"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn induced_subgraph_full_semantics() {
        let c5 = fixtures::cycle(5, "v");
        let s: VertexSet = ["v1", "v2", "v3"].iter().map(|l| c5.vertex(l).unwrap()).collect();
        let sub = c5.induced_subgraph(&s).unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 2);

        let s2: VertexSet = ["v1", "v3"].iter().map(|l| c5.vertex(l).unwrap()).collect();
        let sub2 = c5.induced_subgraph(&s2).unwrap();
        assert_eq!(sub2.edge_count(), 0);

        assert_eq!(c5.induced_subgraph(&c5.vertex_set()).unwrap(), c5);
        assert!(matches!(
            c5.induced_subgraph(&[99].into_iter().collect()),
            Err(Error::NotSubset)
        ));
    }

    #[test]
    fn components_minus_star() {
        let c5 = fixtures::cycle(5, "v");
        let v1 = c5.vertex("v1").unwrap();
        let comps = c5.components_minus(&c5.star(v1)).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 2);

        let hex2 = fixtures::hex2();
        let glue = hex2.vertex("a1").unwrap();
        let comps = hex2.components_minus(&hex2.star(glue)).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 3));

        assert!(c5.is_connected());
        assert_eq!(c5.components_minus(&VertexSet::new()).unwrap().len(), 1);
    }

    #[test]
    fn maximal_cliques_examples() {
        let p3 = SimplicialGraph::parse_edge_list("a b\nb c").unwrap();
        let cliques = p3.maximal_cliques();
        assert_eq!(cliques.len(), 2);
        assert!(cliques.iter().all(|c| c.len() == 2));

        let k3 = fixtures::complete(3, "k");
        assert_eq!(k3.maximal_cliques(), vec![k3.vertex_set()]);

        let c5 = fixtures::cycle(5, "v");
        let cliques = c5.maximal_cliques();
        assert_eq!(cliques.len(), 5);
        assert!(cliques.iter().all(|c| c.len() == 2));

        for c in fixtures::hex2().maximal_cliques() {
            let g = fixtures::hex2();
            assert!(g.is_clique(&c));
            for v in g.vertices().filter(|v| !c.contains(v)) {
                let mut bigger = c.clone();
                bigger.insert(v);
                assert!(!g.is_clique(&bigger));
            }
        }
    }

    #[test]
    fn join_decomposition_examples() {
        let k3 = fixtures::complete(3, "k");
        let d = k3.join_decomposition();
        assert_eq!(d.clique_factor.len(), 3);
        assert!(d.irreducible_factors.is_empty());

        let c4 = fixtures::cycle(4, "v");
        let d = c4.join_decomposition();
        assert!(d.clique_factor.is_empty());
        assert_eq!(d.irreducible_factors.len(), 2);
        assert!(d.irreducible_factors.iter().all(|f| f.len() == 2));

        let c5 = fixtures::cycle(5, "v");
        let d = c5.join_decomposition();
        assert!(d.clique_factor.is_empty());
        assert_eq!(d.irreducible_factors.len(), 1);
    }

    #[test]
    fn distances_on_cycle() {
        let c6 = fixtures::cycle(6, "v");
        let d = c6.distances();
        let v1 = c6.vertex("v1").unwrap();
        let v4 = c6.vertex("v4").unwrap();
        assert_eq!(d[v1][v4], 3);
        let f2 = fixtures::free(2);
        assert_eq!(f2.distances()[0][1], INFINITE);
    }
}
