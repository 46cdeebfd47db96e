//! Desk-scale geometry of the group and its cube complex: Cayley balls,
//! combinatorial convexity, parallelism classes of standard geodesics over a
//! convex domain, and the special-subgroup construction — the independent
//! oracle for the cubulation's prime graph and index.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};
use crate::words::{self, Letter, NormalForm};

pub const DEFAULT_BALL_CAP: usize = 250_000;

/// Elements of word length ≤ r with their Cayley adjacency.
#[derive(Debug, Clone)]
pub struct Ball {
    pub elements: Vec<NormalForm>,
    pub edges: Vec<(usize, usize)>,
}

/// A finite interval-closed set of vertices of the cube complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexDomain {
    elements: Vec<NormalForm>,
}

/// A parallelism class of standard geodesics meeting the domain: the least
/// domain element on the class and the generator label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeodesicClass {
    pub basepoint: NormalForm,
    pub label: VertexId,
}

#[derive(Debug, Clone)]
pub struct SpecialSubgroupResult {
    /// Per class: the conjugated generator and the power it is raised to.
    pub generators: Vec<(NormalForm, usize)>,
    pub classes: Vec<GeodesicClass>,
    pub defining_graph: SimplicialGraph,
    pub index: usize,
}

/// Breadth-first ball of radius `r` around the identity.
pub fn ball(g: &SimplicialGraph, r: usize, cap: usize) -> Result<Ball> {
    let letters: Vec<Letter> = g
        .vertices()
        .flat_map(|v| [Letter::new(v), Letter::new(v).inverted()])
        .collect();
    let mut known: BTreeMap<NormalForm, usize> = BTreeMap::new();
    known.insert(NormalForm::identity(), 0);
    let mut frontier = vec![NormalForm::identity()];
    for depth in 1..=r {
        let mut next = Vec::new();
        for element in &frontier {
            for &l in &letters {
                let neighbor = words::push_letter(g, element, l);
                if neighbor.len() == depth && !known.contains_key(&neighbor) {
                    if known.len() >= cap {
                        return Err(Error::BallCapExceeded { cap });
                    }
                    known.insert(neighbor.clone(), 0);
                    next.push(neighbor);
                }
            }
        }
        frontier = next;
    }
    let elements: Vec<NormalForm> = known.keys().cloned().collect();
    let index: BTreeMap<&NormalForm, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut edges = Vec::new();
    for (i, element) in elements.iter().enumerate() {
        for &l in &letters {
            let neighbor = words::push_letter(g, element, l);
            if let Some(&j) = index.get(&neighbor) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    Ok(Ball { elements, edges })
}

/// Interval closure: every element on a geodesic between two members is a
/// member.
pub fn is_convex(g: &SimplicialGraph, set: &[NormalForm], cap: usize) -> Result<bool> {
    let members: BTreeSet<&NormalForm> = set.iter().collect();
    for a in set {
        for b in set {
            let d = words::distance(g, a, b);
            if d <= 1 {
                continue;
            }
            // x between a and b iff x = a·z with |z| + d(x, b) = d.
            let around = ball(g, d, cap)?;
            for z in &around.elements {
                let x = words::multiply(g, a, z);
                if z.len() + words::distance(g, &x, b) == d && !members.contains(&x) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Smallest interval-closed superset, or `None` once it grows past
/// `max_size`.
pub fn convex_hull(
    g: &SimplicialGraph,
    set: &[NormalForm],
    cap: usize,
    max_size: usize,
) -> Result<Option<Vec<NormalForm>>> {
    let mut hull: BTreeSet<NormalForm> = set.iter().cloned().collect();
    loop {
        let mut added = Vec::new();
        let members: Vec<NormalForm> = hull.iter().cloned().collect();
        for a in &members {
            for b in &members {
                let d = words::distance(g, a, b);
                if d <= 1 {
                    continue;
                }
                let around = ball(g, d, cap)?;
                for z in &around.elements {
                    let x = words::multiply(g, a, z);
                    if z.len() + words::distance(g, &x, b) == d && !hull.contains(&x) {
                        added.push(x);
                    }
                }
            }
        }
        if added.is_empty() {
            return Ok(Some(hull.into_iter().collect()));
        }
        hull.extend(added);
        if hull.len() > max_size {
            return Ok(None);
        }
    }
}

impl ConvexDomain {
    /// Validates interval closure; duplicates are merged.
    pub fn new(g: &SimplicialGraph, elements: Vec<NormalForm>, cap: usize) -> Result<ConvexDomain> {
        if elements.is_empty() {
            return Err(Error::NotConvex);
        }
        let sorted: BTreeSet<NormalForm> = elements.into_iter().collect();
        let elements: Vec<NormalForm> = sorted.into_iter().collect();
        if !is_convex(g, &elements, cap)? {
            return Err(Error::NotConvex);
        }
        Ok(ConvexDomain { elements })
    }

    pub fn elements(&self) -> &[NormalForm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn support_in(word: &NormalForm, allowed: &VertexSet) -> bool {
    word.support().is_subset(allowed)
}

/// Standard geodesics through domain vertices, one canonical representative
/// per parallelism class: (x1, v) ~ (x2, v) iff x1⁻¹x2 is supported in the
/// closed star of v.
pub fn geodesic_classes(g: &SimplicialGraph, domain: &ConvexDomain) -> Vec<GeodesicClass> {
    let mut classes: Vec<GeodesicClass> = Vec::new();
    for label in g.vertices() {
        let star = g.star(label);
        let mut reps: Vec<NormalForm> = Vec::new();
        for x in domain.elements() {
            let parallel = reps.iter().any(|rep| {
                let diff = words::multiply(g, &words::inverse(g, rep), x);
                support_in(&diff, &star)
            });
            if !parallel {
                reps.push(x.clone());
            }
        }
        classes.extend(reps.into_iter().map(|basepoint| GeodesicClass { basepoint, label }));
    }
    classes.sort();
    classes
}

/// Bounded double-coset membership: w ∈ ⟨star(v1)⟩·⟨star(v2)⟩, witnessed by
/// some h supported in star(v1) with |h| ≤ |w| + slack.
pub fn in_star_double_coset(
    g: &SimplicialGraph,
    w: &NormalForm,
    v1: VertexId,
    v2: VertexId,
    slack: usize,
) -> Result<bool> {
    let star1 = g.star(v1);
    let star2 = g.star(v2);
    if support_in(w, &star2) {
        return Ok(true);
    }
    let sub = g.induced_subgraph(&star1)?;
    let to_ambient: Vec<VertexId> = star1.iter().copied().collect();
    let sub_ball = ball(&sub, w.len() + slack, DEFAULT_BALL_CAP)?;
    for h_sub in &sub_ball.elements {
        let letters: Vec<Letter> = h_sub
            .letters()
            .iter()
            .map(|l| Letter { vertex: to_ambient[l.vertex], inverse: l.inverse })
            .collect();
        let h = words::normal_form(g, &letters)?;
        let rest = words::multiply(g, &words::inverse(g, &h), w);
        if support_in(&rest, &star2) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The special subgroup over a compact convex domain: one powered generator
/// per geodesic class, the defining graph on the classes, and index equal to
/// the number of domain vertices.
pub fn special_subgroup(
    g: &SimplicialGraph,
    domain: &ConvexDomain,
) -> Result<SpecialSubgroupResult> {
    if domain.is_empty() {
        return Err(Error::NotConvex);
    }
    let classes = geodesic_classes(g, domain);
    let mut generators = Vec::new();
    for class in &classes {
        let x = &class.basepoint;
        let v = words::normal_form(g, &[Letter::new(class.label)])?;
        let translation =
            words::multiply(g, &words::multiply(g, x, &v), &words::inverse(g, x));
        let on_line = domain
            .elements()
            .iter()
            .filter(|y| {
                let diff = words::multiply(g, &words::inverse(g, x), y);
                diff.support().is_subset(&[class.label].into_iter().collect())
            })
            .count();
        generators.push((translation, on_line));
    }
    let labels: Vec<String> = classes
        .iter()
        .map(|c| format!("{}@{}", c.basepoint.display(g), g.label(c.label)))
        .collect();
    let mut edges = Vec::new();
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            if i < j && g.adjacent(ci.label, cj.label) {
                let w = words::multiply(
                    g,
                    &words::inverse(g, &ci.basepoint),
                    &cj.basepoint,
                );
                if in_star_double_coset(g, &w, ci.label, cj.label, 0)? {
                    edges.push((labels[i].clone(), labels[j].clone()));
                }
            }
        }
    }
    let defining_graph = SimplicialGraph::from_parts(labels, edges)?;
    Ok(SpecialSubgroupResult { generators, classes, defining_graph, index: domain.len() })
}

/// Fundamental-domain spot check: translates of the domain under short
/// products of the powered generators are pairwise disjoint, and they cover
/// the radius-1 ball.
pub fn tiling_check(
    g: &SimplicialGraph,
    domain: &ConvexDomain,
    result: &SpecialSubgroupResult,
) -> Result<()> {
    let mut powered: Vec<NormalForm> = vec![NormalForm::identity()];
    for (gen, n) in &result.generators {
        let mut power = NormalForm::identity();
        for _ in 0..*n {
            power = words::multiply(g, &power, gen);
        }
        powered.push(power.clone());
        powered.push(words::inverse(g, &power));
    }
    let mut group_elements: BTreeSet<NormalForm> = powered.iter().cloned().collect();
    for a in &powered {
        for b in &powered {
            group_elements.insert(words::multiply(g, a, b));
        }
    }
    let translates: Vec<BTreeSet<NormalForm>> = group_elements
        .iter()
        .map(|ge| {
            domain
                .elements()
                .iter()
                .map(|x| words::multiply(g, ge, x))
                .collect()
        })
        .collect();
    for (i, t1) in translates.iter().enumerate() {
        for t2 in &translates[i + 1..] {
            if !t1.is_disjoint(t2) {
                return Err(Error::Internal("domain translates overlap".to_string()));
            }
        }
    }
    let covered: BTreeSet<&NormalForm> = translates.iter().flatten().collect();
    for element in &ball(g, 1, DEFAULT_BALL_CAP)?.elements {
        if !covered.contains(element) {
            return Err(Error::Internal(format!(
                "ball element {} not covered by short translates",
                element.display(g)
            )));
        }
    }
    Ok(())
}
