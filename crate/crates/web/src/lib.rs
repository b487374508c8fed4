//! Browser bindings: every export returns a JSON string or throws a message.

use orbitgraph::constructors::{catalog_entry, catalog_names, frobenius_pair_entry};
use orbitgraph::error::Error;
use orbitgraph::input::resolve_group_name;
use orbitgraph::iso::DEFAULT_BUDGET;
use orbitgraph::verifier::{analyze, analyze_entry, refute_by_aut_clique, Analysis};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn to_js(r: Result<Value, Error>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

fn analysis_json(a: &Analysis) -> Value {
    json!({
        "report": a.report,
        "graph": a.graph,
        "dot": a.graph.export_dot(),
        "shape": a.report.shape.to_string(),
        "passed": a.report.passed(),
        "failures": a.report.failures(),
    })
}

pub fn catalog_value() -> Result<Value, Error> {
    let mut out = Vec::new();
    for name in catalog_names() {
        let e = catalog_entry(name)?;
        out.push(json!({
            "name": e.name,
            "order": e.group.order(),
            "description": e.description,
            "actions": e.action_names(),
        }));
    }
    Ok(Value::Array(out))
}

pub fn analyze_value(group: &str, action: &str) -> Result<Value, Error> {
    let loaded = resolve_group_name(group.trim())?;
    let analysis = match &loaded.entry {
        Some(entry) if entry.action(action).is_some() => analyze_entry(entry, action)?,
        _ => analyze(&loaded.group, &loaded.named_action(action, DEFAULT_BUDGET)?)?,
    };
    Ok(analysis_json(&analysis))
}

pub fn frobenius_pair_value(p: u16, n: u8, q: u16, m: u8) -> Result<Value, Error> {
    let entry = frobenius_pair_entry(p, n, q, m)?;
    let name = entry.action_names()[0].to_string();
    Ok(analysis_json(&analyze_entry(&entry, &name)?))
}

pub fn refute_value(group: &str) -> Result<Value, Error> {
    let loaded = resolve_group_name(group.trim())?;
    let witness = refute_by_aut_clique(&loaded.group, DEFAULT_BUDGET)?;
    Ok(json!({ "group": loaded.group.name(), "order": loaded.group.order(), "witness": witness }))
}

/// Catalog entries with their orders and action names.
#[wasm_bindgen]
pub fn catalog() -> Result<String, JsError> {
    to_js(catalog_value())
}

/// Report, graph and DOT text for a named group and action.
#[wasm_bindgen(js_name = analyzeGroup)]
pub fn analyze_group(group: &str, action: &str) -> Result<String, JsError> {
    to_js(analyze_value(group, action))
}

/// `GF(p^n)+ x GF(q^m)+` under multiplication by primitive elements of both fields.
#[wasm_bindgen(js_name = frobeniusPair)]
pub fn frobenius_pair(p: u16, n: u8, q: u16, m: u8) -> Result<String, JsError> {
    to_js(frobenius_pair_value(p, n, q, m))
}

/// Four pairwise commuting elements in distinct `Aut(G)`-orbits, or null.
#[wasm_bindgen]
pub fn refute(group: &str) -> Result<String, JsError> {
    to_js(refute_value(group))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_lists_every_entry() {
        let v = catalog_value().unwrap();
        assert_eq!(v.as_array().unwrap().len(), catalog_names().len());
    }

    #[test]
    fn analysis_carries_graph_and_dot() {
        let v = analyze_value("e2-sl25", "full_aut").unwrap();
        assert!(v["dot"].as_str().unwrap().starts_with("graph G {"));
        assert_eq!(v["graph"]["vertices"].as_array().unwrap().len(), v["report"]["vertices"].as_u64().unwrap() as usize);
        assert_eq!(v["passed"], true);
    }

    #[test]
    fn frobenius_pair_is_a_triangle() {
        let v = frobenius_pair_value(3, 1, 5, 1).unwrap();
        assert_eq!(v["report"]["vertices"], 3);
        assert_eq!(v["report"]["edges"], 3);
    }

    #[test]
    fn refute_finds_witness_for_sl27() {
        let v = refute_value("sl2(7)").unwrap();
        assert_eq!(v["witness"]["orders"].as_array().unwrap().len(), 4);
        assert!(analyze_value("sl2(7)", "no_such_action").is_err());
    }
}
