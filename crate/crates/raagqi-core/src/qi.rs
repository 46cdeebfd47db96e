//! Top-level quasi-isometry / commensurability decisions.
//!
//! Routing: a weak-type-I pair is decided by graph isomorphism; a type-II
//! pair by isomorphism of prime graphs (carrying the common prime graph and
//! both indices when yes); isomorphic graphs are always yes; a weak-type-II
//! mismatch or a cheap coarse-invariant mismatch is no; everything else is
//! an honest unknown.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::classify;
use crate::cube;
use crate::error::{Error, Result};
use crate::geom::{self, ConvexDomain, DEFAULT_BALL_CAP};
use crate::graph::SimplicialGraph;
use crate::iso;
use crate::prime;
use crate::words::{self, NormalForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    #[serde(rename = "typeII-prime-graph")]
    TypeIiPrimeGraph,
    #[serde(rename = "weakI-isomorphism")]
    WeakIIsomorphism,
    #[serde(rename = "isomorphism")]
    Isomorphism,
    #[serde(rename = "invariant-mismatch")]
    InvariantMismatch,
    #[serde(rename = "special-subgroup-search")]
    SpecialSubgroupSearch,
    #[serde(rename = "undecided")]
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    #[serde(rename = "isomorphism")]
    Isomorphism { mapping: Vec<(String, String)> },
    #[serde(rename = "common-prime-graph")]
    CommonPrimeGraph {
        prime_vertices: Vec<String>,
        prime_edges: Vec<(String, String)>,
        index1: usize,
        index2: usize,
    },
    #[serde(rename = "invariant-mismatch")]
    InvariantMismatch {
        invariant: String,
        value1: String,
        value2: String,
    },
    /// A convex domain whose special subgroup realizes the other graph; the
    /// ambient side is named, the domain listed as displayed words.
    #[serde(rename = "special-subgroup-domain")]
    SpecialSubgroupDomain { ambient: String, domain: Vec<String> },
}

/// Cheap coarse data for one graph: dimension (max clique size), the two De
/// Rham counts, and the per-vertex class-size tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub dimension: usize,
    pub derham_clique_factor: usize,
    pub irreducible_factor_count: usize,
    pub per_vertex_tuples: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QIDecision {
    pub verdict: Verdict,
    pub route: Route,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub invariants_report: (InvariantsReport, InvariantsReport),
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(ConvexDomain),
    NotFoundWithinBudget,
}

pub fn invariants_report(g: &SimplicialGraph) -> Result<InvariantsReport> {
    let decomposition = g.join_decomposition();
    let mut per_vertex_tuples = BTreeMap::new();
    for v in g.vertices() {
        per_vertex_tuples.insert(
            g.label(v).to_string(),
            prime::prime_partition(g, v)?.tuple,
        );
    }
    Ok(InvariantsReport {
        dimension: g.max_clique_size(),
        derham_clique_factor: decomposition.clique_factor.len(),
        irreducible_factor_count: decomposition.irreducible_factors.len(),
        per_vertex_tuples,
    })
}

fn isomorphism_certificate(
    g1: &SimplicialGraph,
    g2: &SimplicialGraph,
) -> Option<Certificate> {
    iso::isomorphism(g1, g2).map(|mapping| Certificate::Isomorphism {
        mapping: mapping
            .iter()
            .enumerate()
            .map(|(v, &w)| (g1.label(v).to_string(), g2.label(w).to_string()))
            .collect(),
    })
}

pub fn qi_equivalent(g1: &SimplicialGraph, g2: &SimplicialGraph) -> Result<QIDecision> {
    let invariants = (invariants_report(g1)?, invariants_report(g2)?);
    let decide = |verdict, route, certificate| QIDecision {
        verdict,
        route,
        certificate,
        invariants_report: invariants.clone(),
    };

    let weak_i = (classify::is_weak_type_i(g1)?, classify::is_weak_type_i(g2)?);
    if weak_i.0 && weak_i.1 {
        return Ok(match isomorphism_certificate(g1, g2) {
            Some(cert) => decide(Verdict::Yes, Route::WeakIIsomorphism, Some(cert)),
            None => decide(Verdict::No, Route::WeakIIsomorphism, None),
        });
    }

    let type_ii = (classify::is_type_ii(g1), classify::is_type_ii(g2));
    if type_ii.0 && type_ii.1 {
        let p1 = cube::prime_graph(g1)?;
        let p2 = cube::prime_graph(g2)?;
        return Ok(if iso::are_isomorphic(&p1.prime_graph, &p2.prime_graph) {
            let cert = Certificate::CommonPrimeGraph {
                prime_vertices: p1
                    .prime_graph
                    .vertices()
                    .map(|v| p1.prime_graph.label(v).to_string())
                    .collect(),
                prime_edges: p1
                    .prime_graph
                    .edge_list()
                    .into_iter()
                    .map(|(a, b)| {
                        (
                            p1.prime_graph.label(a).to_string(),
                            p1.prime_graph.label(b).to_string(),
                        )
                    })
                    .collect(),
                index1: p1.index,
                index2: p2.index,
            };
            decide(Verdict::Yes, Route::TypeIiPrimeGraph, Some(cert))
        } else {
            decide(Verdict::No, Route::TypeIiPrimeGraph, None)
        });
    }

    if let Some(cert) = isomorphism_certificate(g1, g2) {
        return Ok(decide(Verdict::Yes, Route::Isomorphism, Some(cert)));
    }

    let weak_ii = (classify::is_weak_type_ii(g1), classify::is_weak_type_ii(g2));
    if weak_ii.0 != weak_ii.1 {
        let cert = Certificate::InvariantMismatch {
            invariant: "weak_type_II".to_string(),
            value1: weak_ii.0.to_string(),
            value2: weak_ii.1.to_string(),
        };
        return Ok(decide(Verdict::No, Route::InvariantMismatch, Some(cert)));
    }

    let checks = [
        ("dimension", invariants.0.dimension, invariants.1.dimension),
        (
            "derham_clique_factor",
            invariants.0.derham_clique_factor,
            invariants.1.derham_clique_factor,
        ),
        (
            "irreducible_factor_count",
            invariants.0.irreducible_factor_count,
            invariants.1.irreducible_factor_count,
        ),
    ];
    for (name, a, b) in checks {
        if a != b {
            let cert = Certificate::InvariantMismatch {
                invariant: name.to_string(),
                value1: a.to_string(),
                value2: b.to_string(),
            };
            return Ok(decide(Verdict::No, Route::InvariantMismatch, Some(cert)));
        }
    }

    Ok(decide(Verdict::Unknown, Route::Undecided, None))
}

/// `qi_equivalent`, then on an unknown verdict a budgeted special-subgroup
/// search in both directions; a find is a sound upgrade to yes.
pub fn qi_equivalent_with_search(
    g1: &SimplicialGraph,
    g2: &SimplicialGraph,
    budget: Option<usize>,
) -> Result<QIDecision> {
    let mut decision = qi_equivalent(g1, g2)?;
    let Some(budget) = budget.filter(|&b| b > 0) else {
        return Ok(decision);
    };
    if decision.verdict != Verdict::Unknown {
        return Ok(decision);
    }
    for (ambient, target, name) in [(g1, g2, "graph1"), (g2, g1, "graph2")] {
        if let SearchOutcome::Found(domain) = qi_search_special(ambient, target, budget)? {
            decision.verdict = Verdict::Yes;
            decision.route = Route::SpecialSubgroupSearch;
            decision.certificate = Some(Certificate::SpecialSubgroupDomain {
                ambient: name.to_string(),
                domain: domain
                    .elements()
                    .iter()
                    .map(|x| x.display(ambient))
                    .collect(),
            });
            return Ok(decision);
        }
    }
    Ok(decision)
}

/// Common prime graph with both indices, for a type II pair; `None` when the
/// prime graphs are not isomorphic.
pub fn commensuration_certificate(
    g1: &SimplicialGraph,
    g2: &SimplicialGraph,
) -> Result<Option<(SimplicialGraph, usize, usize)>> {
    for g in [g1, g2] {
        if !classify::is_type_ii(g) {
            let witness = classify::type_ii_witness(g)
                .map(|(v, w)| (g.label(v).to_string(), g.label(w).to_string()));
            return Err(Error::NotTypeII { witness });
        }
    }
    let p1 = cube::prime_graph(g1)?;
    let p2 = cube::prime_graph(g2)?;
    Ok(iso::are_isomorphic(&p1.prime_graph, &p2.prime_graph)
        .then_some((p1.prime_graph, p1.index, p2.index)))
}

/// Semi-decision: enumerate convex domains of at most `budget` vertices
/// (from the identity outward, up to translation) and test whether some
/// special subgroup has defining graph isomorphic to `g2`. A find implies
/// quasi-isometry for any input; only on weak type I inputs is the special
/// subgroup criterion also complete, so elsewhere not-found says nothing.
pub fn qi_search_special(
    g1: &SimplicialGraph,
    g2: &SimplicialGraph,
    budget: usize,
) -> Result<SearchOutcome> {
    let mut seen: std::collections::BTreeSet<Vec<NormalForm>> = Default::default();
    let mut queue = std::collections::VecDeque::new();
    let identity = vec![NormalForm::identity()];
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(elements) = queue.pop_front() {
        let domain = ConvexDomain::new(g1, elements.clone(), DEFAULT_BALL_CAP)?;
        let result = geom::special_subgroup(g1, &domain)?;
        if iso::are_isomorphic(&result.defining_graph, g2) {
            return Ok(SearchOutcome::Found(domain));
        }
        if elements.len() >= budget {
            continue;
        }
        let letters: Vec<_> = g1
            .vertices()
            .flat_map(|v| {
                [
                    crate::words::Letter::new(v),
                    crate::words::Letter::new(v).inverted(),
                ]
            })
            .collect();
        for x in &elements {
            for &l in &letters {
                let y = words::push_letter(g1, x, l);
                if elements.contains(&y) {
                    continue;
                }
                let mut grown = elements.clone();
                grown.push(y);
                let Some(hull) = geom::convex_hull(g1, &grown, DEFAULT_BALL_CAP, budget)? else {
                    continue;
                };
                let normalized = normalize_domain(g1, hull);
                if seen.insert(normalized.clone()) {
                    queue.push_back(normalized);
                }
            }
        }
    }
    Ok(SearchOutcome::NotFoundWithinBudget)
}

/// Translate so the least element is the identity; domains differing by a
/// translation give isomorphic special subgroups.
fn normalize_domain(g: &SimplicialGraph, mut elements: Vec<NormalForm>) -> Vec<NormalForm> {
    elements.sort();
    let base = words::inverse(g, &elements[0]);
    let mut translated: Vec<NormalForm> = elements
        .iter()
        .map(|x| words::multiply(g, &base, x))
        .collect();
    translated.sort();
    translated
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hex2_vs_c6_commensurable() {
        let decision = qi_equivalent(&fixtures::hex2(), &fixtures::cycle(6, "v")).unwrap();
        assert_eq!(decision.verdict, Verdict::Yes);
        assert_eq!(decision.route, Route::TypeIiPrimeGraph);
        match decision.certificate.unwrap() {
            Certificate::CommonPrimeGraph { index1, index2, .. } => {
                assert_eq!((index1, index2), (2, 1));
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn published_prime_pair_not_qi() {
        let decision = qi_equivalent(&fixtures::ph(), &fixtures::ex819b()).unwrap();
        assert_eq!(decision.verdict, Verdict::No);
        assert_eq!(decision.route, Route::TypeIiPrimeGraph);
    }

    #[test]
    fn c5_relabeled_is_weak_i_route() {
        let c5 = fixtures::cycle(5, "v");
        let relabeled = c5.relabeled(&|l| format!("w{l}"));
        let decision = qi_equivalent(&c5, &relabeled).unwrap();
        assert_eq!(decision.verdict, Verdict::Yes);
        assert_eq!(decision.route, Route::WeakIIsomorphism);
        assert!(decision.certificate.is_some());
    }

    #[test]
    fn weak_ii_mismatch_is_no() {
        let decision = qi_equivalent(&fixtures::p3(), &fixtures::cycle(5, "v")).unwrap();
        assert_eq!(decision.verdict, Verdict::No);
        assert_eq!(decision.route, Route::InvariantMismatch);
    }

    #[test]
    fn dimension_mismatch_is_no() {
        // Neither path-4 nor the free pair is weak type II; dimensions 2 vs 1.
        let decision = qi_equivalent(&fixtures::path(4, "q"), &fixtures::free(2)).unwrap();
        assert_eq!(decision.verdict, Verdict::No);
        match decision.certificate.unwrap() {
            Certificate::InvariantMismatch { invariant, .. } => {
                assert_eq!(invariant, "dimension");
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn honest_unknown_for_trees() {
        let decision = qi_equivalent(&fixtures::path(4, "q"), &fixtures::path(5, "r")).unwrap();
        assert_eq!(decision.verdict, Verdict::Unknown);
        assert_eq!(decision.route, Route::Undecided);
    }

    #[test]
    fn reflexivity_on_every_fixture() {
        for f in fixtures::registry() {
            let decision = qi_equivalent(&f.graph, &f.graph).unwrap();
            assert_eq!(decision.verdict, Verdict::Yes, "{} not reflexive", f.name);
            assert!(decision.certificate.is_some(), "{} missing certificate", f.name);
        }
    }

    #[test]
    fn commensuration_certificates() {
        let (common, i1, i2) =
            commensuration_certificate(&fixtures::hex2(), &fixtures::hex3())
                .unwrap()
                .expect("hex2 and hex3 share a prime graph");
        assert!(crate::iso::are_isomorphic(&common, &fixtures::cycle(6, "v")));
        assert_eq!((i1, i2), (2, 3));

        let same = commensuration_certificate(
            &fixtures::ph(),
            &fixtures::ph().relabeled(&|l| format!("x{l}")),
        )
        .unwrap()
        .expect("relabeled pair");
        assert_eq!((same.1, same.2), (1, 1));

        assert!(commensuration_certificate(&fixtures::ph(), &fixtures::hex2())
            .unwrap()
            .is_none());

        assert!(matches!(
            commensuration_certificate(&fixtures::p3(), &fixtures::hex2()),
            Err(Error::NotTypeII { .. })
        ));
    }

    #[test]
    fn search_special_finds_f3_and_hex2() {
        let f2 = fixtures::free(2);
        match qi_search_special(&f2, &fixtures::free(3), 2).unwrap() {
            SearchOutcome::Found(domain) => assert_eq!(domain.len(), 2),
            SearchOutcome::NotFoundWithinBudget => panic!("edge domain not found"),
        }

        let c6 = fixtures::cycle(6, "v");
        assert!(matches!(
            qi_search_special(&c6, &fixtures::hex2(), 2).unwrap(),
            SearchOutcome::Found(_)
        ));

        let c5 = fixtures::cycle(5, "v");
        assert!(matches!(
            qi_search_special(&c5, &fixtures::cycle(6, "w"), 3).unwrap(),
            SearchOutcome::NotFoundWithinBudget
        ));
    }

    #[test]
    fn search_consistent_with_decision() {
        let f2 = fixtures::free(2);
        let f3 = fixtures::free(3);
        if let SearchOutcome::Found(_) = qi_search_special(&f2, &f3, 2).unwrap() {
            let decision = qi_equivalent(&f2, &f3).unwrap();
            assert_ne!(decision.verdict, Verdict::No);
        }
    }

    #[test]
    fn symmetry_of_verdicts_on_fixture_pairs() {
        let names = ["c5", "c6", "hex2", "hex3", "ph", "ex819b", "p3", "f2"];
        for a in names {
            for b in names {
                let ga = fixtures::by_name(a).unwrap().graph;
                let gb = fixtures::by_name(b).unwrap().graph;
                let ab = qi_equivalent(&ga, &gb).unwrap().verdict;
                let ba = qi_equivalent(&gb, &ga).unwrap().verdict;
                assert_eq!(ab, ba, "asymmetry on ({a},{b})");
            }
        }
    }
}
