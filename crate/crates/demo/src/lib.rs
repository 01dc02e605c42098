//! Browser bindings for three lab operations. Each takes the plain-text
//! formats of the `mixhelly` CLI and returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use mixhelly::certificates::{certificate_by_search, CertifyOptions};
use mixhelly::io::{parse_points, parse_system};
use mixhelly::lab::{helly_independent, radon_partition};
use mixhelly::numeric::{fmt_point, Point};
use mixhelly::spaces::GroundSet;

fn points_json(points: &[Point]) -> Value {
    points.iter().map(|p| Value::from(format!("({})", fmt_point(p)))).collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// First Radon partition of the point set, or `partitioned: false`.
pub fn radon(text: &str) -> Result<String, String> {
    let (space, points) = parse_points(text).map_err(err)?;
    let r = radon_partition(&points, &GroundSet::from(space.clone())).map_err(err)?;
    let verified = r.verify(&space.into());
    Ok(json!({
        "partitioned": r.is_partitioned(),
        "b": points_json(&r.b),
        "c": points_json(&r.c),
        "point": r.witness.as_ref().map(|w| format!("({})", fmt_point(&w.point))),
        "verified": verified,
    })
    .to_string())
}

/// Whether every point is needed: the hulls of the punctured sets share no
/// point of the space.
pub fn helly(text: &str) -> Result<String, String> {
    let (space, points) = parse_points(text).map_err(err)?;
    if points.len() > 12 {
        return Err("at most 12 points".into());
    }
    let independent = helly_independent(&points, &space.clone().into()).map_err(err)?;
    Ok(json!({
        "space": space.to_string(),
        "size": points.len(),
        "independent": independent,
    })
    .to_string())
}

/// Smallest infeasible subsystem of a two-dimensional system, within the
/// space's budget.
pub fn certificate(text: &str) -> Result<String, String> {
    let system = parse_system(text).map_err(err)?;
    if system.dim() != 2 {
        return Err(format!("expected a two-dimensional space, found dimension {}", system.dim()));
    }
    let budget = system
        .space
        .helly_budget()
        .value()
        .ok_or("the space has no finite budget")? as usize;
    let opts = CertifyOptions {
        node_cap: 50_000,
        ..CertifyOptions::default()
    };
    let c = certificate_by_search(&system, budget, &opts).map_err(err)?;
    Ok(json!({
        "budget": budget,
        "indices": c.indices,
        "verified": c.verify(&system),
        "checks": c.checks.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
    })
    .to_string())
}

#[wasm_bindgen(js_name = radonPartition)]
pub fn radon_partition_js(text: &str) -> Result<String, JsValue> {
    radon(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = hellyCheck)]
pub fn helly_check_js(text: &str) -> Result<String, JsValue> {
    helly(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = certificate2d)]
pub fn certificate_2d_js(text: &str) -> Result<String, JsValue> {
    certificate(text).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_has_a_partition_over_the_reals() {
        let out: Value = serde_json::from_str(&radon("space: R^2\n0 0\n1 1\n0 1\n1 0\n").unwrap()).unwrap();
        assert_eq!(out["partitioned"], true);
        assert_eq!(out["verified"], true);
    }

    #[test]
    fn square_is_independent_in_the_lattice() {
        let out: Value = serde_json::from_str(&helly("space: Z^2\n0 0\n1 1\n0 1\n1 0\n").unwrap()).unwrap();
        assert_eq!(out["independent"], true);
    }

    #[test]
    fn certificate_for_a_lattice_gap() {
        let text = "space: R x Z\n0 2 -1\n0 -2 1\n1 0 0\n";
        let out: Value = serde_json::from_str(&certificate(text).unwrap()).unwrap();
        assert_eq!(out["indices"], json!([0, 1]));
        assert_eq!(out["verified"], true);
    }

    #[test]
    fn errors_are_strings() {
        assert!(certificate("space: Z\n1 0\n").unwrap_err().contains("two-dimensional"));
        assert!(radon("space: Z^2\n1 1//2\n").is_err());
    }
}
