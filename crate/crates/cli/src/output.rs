//! Shared text/JSON formatting helpers.

use num_bigint::BigInt;
use serde_json::{json, Value};

use orbsplice_core::graphs::DecoratedGraph;
use orbsplice_core::reps::QmodZVector;
use orbsplice_core::splice::{SpliceEquation, SpliceEquationSet};
use orbsplice_core::{AbelianGroupPresentation, GroupElement};

pub fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn check_json(ok: bool, witnesses: &[String]) -> Value {
    json!({ "pass": ok, "witnesses": witnesses })
}

pub fn join_bigints(xs: &[BigInt]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// `Z/2 + Z/4 + Z` style description; "trivial" for the zero group.
pub fn factors_text(g: &AbelianGroupPresentation) -> String {
    let mut parts: Vec<String> = g
        .invariant_factors()
        .iter()
        .map(|d| format!("Z/{d}"))
        .collect();
    parts.extend(std::iter::repeat("Z".to_string()).take(g.free_rank()));
    if parts.is_empty() {
        "trivial".to_string()
    } else {
        parts.join(" + ")
    }
}

pub fn group_json(g: &AbelianGroupPresentation) -> Value {
    json!({
        "invariant_factors": g
            .invariant_factors()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>(),
        "free_rank": g.free_rank(),
        "order": g.order().map(|o| o.to_string()),
    })
}

pub fn element_json(e: &GroupElement) -> Value {
    Value::Array(
        e.coords
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

pub fn qmodz_json(v: &QmodZVector) -> Value {
    Value::Array(
        v.entries()
            .iter()
            .map(|r| Value::String(r.to_string()))
            .collect(),
    )
}

pub fn graph_json(d: &DecoratedGraph) -> Value {
    let g = d.graph();
    let vertices: Vec<Value> = g
        .vertex_ids()
        .iter()
        .map(|id| {
            json!({
                "id": id,
                "euler": g.euler(id).unwrap().to_string(),
                "weight": d.weight(id).to_string(),
            })
        })
        .collect();
    let edges: Vec<Value> = g.edges().map(|(a, b)| json!([a, b])).collect();
    json!({ "vertices": vertices, "edges": edges })
}

pub fn equation_text(set: &SpliceEquationSet, eq: &SpliceEquation) -> String {
    let one = SpliceEquationSet {
        variable_prefix: set.variable_prefix.clone(),
        equations: vec![eq.clone()],
    };
    one.to_text().trim_end().to_string()
}

pub fn equations_json(set: &SpliceEquationSet) -> Value {
    Value::Array(
        set.equations
            .iter()
            .map(|eq| {
                json!({
                    "node": eq.node,
                    "text": equation_text(set, eq),
                    "terms": eq
                        .terms
                        .iter()
                        .map(|(c, m)| {
                            json!({
                                "coefficient": c.to_string(),
                                "exponents": m
                                    .iter()
                                    .map(|(w, e)| (w.clone(), *e))
                                    .collect::<std::collections::BTreeMap<_, _>>(),
                            })
                        })
                        .collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}
