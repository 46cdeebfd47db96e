//! Schema-versioned JSON views of the analysis results, shared by the CLI
//! and its tests. serde_json objects are key-sorted, so output is
//! byte-stable for identical inputs.

use serde_json::{json, Value};

use crate::cube::{CubeComplex, PrimeGraphResult};
use crate::error::Result;
use crate::geom::{Ball, SpecialSubgroupResult};
use crate::graph::SimplicialGraph;
use crate::pocset::{Pocset, Side};
use crate::prime::PrimePartitionRecord;
use crate::words::NormalForm;
use crate::{classify, cube, out_gens, pocset, prime, qi};

pub const SCHEMA: &str = "raagqi/1";

fn word_json(g: &SimplicialGraph, word: &NormalForm) -> Value {
    Value::Array(
        word.letters()
            .iter()
            .map(|l| json!([g.label(l.vertex), if l.inverse { -1 } else { 1 }]))
            .collect(),
    )
}

pub fn graph_json(g: &SimplicialGraph) -> Value {
    serde_json::from_str(&g.to_json()).expect("graph json is valid")
}

pub fn classify_json(g: &SimplicialGraph, explain: bool) -> Result<Value> {
    let report = classify::type_report(g, explain)?;
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["schema"] = json!(SCHEMA);
    Ok(value)
}

pub fn out_json(g: &SimplicialGraph) -> Value {
    let mut value = serde_json::to_value(out_gens::out_report(g)).expect("report serializes");
    value["schema"] = json!(SCHEMA);
    value
}

fn partition_json(g: &SimplicialGraph, record: &PrimePartitionRecord) -> Value {
    json!({
        "vertex": g.label(record.vertex),
        "classes": record.classes.iter().map(|class| json!({
            "members": class.members.iter().map(|m| json!({
                "component": g.labels_of(&m.component),
                "boundary": g.labels_of(&m.boundary),
            })).collect::<Vec<_>>(),
            "shared_boundary": g.labels_of(&class.shared_boundary),
        })).collect::<Vec<_>>(),
        "tuple": record.tuple,
        "d": record.d,
        "prime": record.is_prime(),
        "factors": record.factors.iter().map(|factor| {
            factor.iter().map(|m| g.labels_of(&m.component)).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "criterion": record.criterion,
    })
}

pub fn prime_json(g: &SimplicialGraph) -> Result<Value> {
    let mut vertices = Vec::new();
    for v in g.vertices() {
        vertices.push(partition_json(g, &prime::prime_partition(g, v)?));
    }
    Ok(json!({
        "schema": SCHEMA,
        "prime": prime::is_prime_raag(g),
        "vertices": vertices,
    }))
}

pub struct PrimeGraphBundle {
    pub pocset: Pocset,
    pub complex: CubeComplex,
    pub result: PrimeGraphResult,
}

pub fn prime_graph_bundle(g: &SimplicialGraph) -> Result<PrimeGraphBundle> {
    let p = pocset::build_pocset(g)?;
    let complex = cube::dual_complex(&p)?;
    let result = cube::prime_graph_from_complex(g, &complex)?;
    Ok(PrimeGraphBundle { pocset: p, complex, result })
}

pub fn prime_graph_json(bundle: &PrimeGraphBundle) -> Value {
    json!({
        "schema": SCHEMA,
        "prime_graph": graph_json(&bundle.result.prime_graph),
        "index": bundle.result.index,
        "walls": bundle.pocset.wall_count(),
        "phi": bundle.result.phi_table,
    })
}

pub fn complex_json(g: &SimplicialGraph, bundle: &PrimeGraphBundle) -> Value {
    let pocset = &bundle.pocset;
    let complex = &bundle.complex;
    json!({
        "schema": SCHEMA,
        "halfspaces": pocset.halfspaces.iter().enumerate().map(|(id, h)| json!({
            "id": id,
            "base": g.label(h.base),
            "cut": h.cut,
            "side": if h.side == Side::Low { "low" } else { "high" },
            "extent": g.labels_of(&h.extent),
        })).collect::<Vec<_>>(),
        "walls": pocset.walls.iter().map(|w| json!({
            "base": g.label(w.base),
            "cut": w.cut,
        })).collect::<Vec<_>>(),
        "ultrafilters": complex.ultrafilters.iter()
            .map(|u| u.halfspace_ids())
            .collect::<Vec<_>>(),
        "edges": complex.edges.iter().map(|e| json!({
            "a": e.a,
            "b": e.b,
            "wall": e.wall,
        })).collect::<Vec<_>>(),
        "squares": complex.squares.iter().map(|s| json!({
            "corners": s.corners,
            "walls": [s.walls.0, s.walls.1],
        })).collect::<Vec<_>>(),
        "phi": bundle.result.phi_table,
    })
}

pub fn qi_json(decision: &qi::QIDecision) -> Value {
    let mut value = serde_json::to_value(decision).expect("decision serializes");
    value["schema"] = json!(SCHEMA);
    value
}

pub fn special_json(g: &SimplicialGraph, result: &SpecialSubgroupResult) -> Value {
    json!({
        "schema": SCHEMA,
        "index": result.index,
        "classes": result.classes.iter().map(|c| json!({
            "basepoint": c.basepoint.display(g),
            "label": g.label(c.label),
        })).collect::<Vec<_>>(),
        "generators": result.generators.iter().map(|(word, n)| json!({
            "generator": word_json(g, word),
            "power": n,
        })).collect::<Vec<_>>(),
        "defining_graph": graph_json(&result.defining_graph),
    })
}

pub fn ball_json(g: &SimplicialGraph, radius: usize, ball: &Ball) -> Value {
    json!({
        "schema": SCHEMA,
        "radius": radius,
        "count": ball.elements.len(),
        "elements": ball.elements.iter().map(|e| word_json(g, e)).collect::<Vec<_>>(),
        "edges": ball.edges,
    })
}
