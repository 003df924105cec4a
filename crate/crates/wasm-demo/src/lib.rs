//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes DSL text and returns a JSON string; errors come
//! back as a thrown string. The JSON builders are plain Rust so they can be
//! tested off the browser.

use regelem::trace::event_to_json;
use regelem::{
    annihilator, default_fuel, find_regular_element, is_prime, maximal_orthogonal_ideals,
    parse_and_make_ring, parse_element, parse_generators, Element, Error, Ring,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Rings above this size are refused; the page draws an n-by-n grid.
pub const DEMO_LIMIT: usize = 256;

fn lits(xs: impl IntoIterator<Item = Element>) -> Vec<String> {
    xs.into_iter().map(|e| e.to_string()).collect()
}

fn demo_ring(text: &str) -> Result<Ring, String> {
    let r = parse_and_make_ring(text).map_err(|e| e.to_string())?;
    if r.cardinality() > DEMO_LIMIT {
        return Err(format!(
            "ring has {} elements; the demo draws at most {DEMO_LIMIT}",
            r.cardinality()
        ));
    }
    Ok(r)
}

/// Elements in order plus a row-major string of `0`/`1` flags for `x*y = 0`.
fn zero_product_grid(r: &Ring) -> Value {
    let elems: Vec<Element> = r.elements().collect();
    let grid: String = elems
        .iter()
        .flat_map(|x| {
            elems
                .iter()
                .map(move |y| if r.mul(x, y).unwrap().is_zero() { '1' } else { '0' })
        })
        .collect();
    json!({ "elements": lits(elems), "zero_products": grid })
}

pub fn annihilator_report(ring: &str, elem: &str) -> Result<Value, String> {
    let r = demo_ring(ring)?;
    let v = parse_element(elem, &r).map_err(|e| e.to_string())?;
    let ann = annihilator(&r, &v).map_err(|e| e.to_string())?;
    Ok(json!({
        "ring": r.to_string(),
        "element": v.to_string(),
        "index": v.index(),
        "annihilator": lits(ann.elements()),
        "indices": ann.elements().map(|e| e.index()).collect::<Vec<_>>(),
        "grid": zero_product_grid(&r),
    }))
}

pub fn maximal_orthogonal_report(ring: &str) -> Result<Value, String> {
    let r = demo_ring(ring)?;
    let ideals: Vec<Value> = maximal_orthogonal_ideals(&r)
        .iter()
        .map(|a| {
            json!({
                "representative": a.source().to_string(),
                "elements": lits(a.elements()),
                "indices": a.elements().map(|e| e.index()).collect::<Vec<_>>(),
                "prime": is_prime(a),
            })
        })
        .collect();
    Ok(json!({
        "ring": r.to_string(),
        "cardinality": r.cardinality(),
        "ideals": ideals,
        "grid": zero_product_grid(&r),
    }))
}

pub fn find_regular_report(ring: &str, ideal: &str) -> Result<Value, String> {
    let r = demo_ring(ring)?;
    let gens = parse_generators(ideal, &r).map_err(|e| e.to_string())?;
    match find_regular_element(&r, &gens, default_fuel(&r)) {
        Ok(run) => {
            let events: Vec<Value> = run
                .trace
                .iter()
                .map(|e| serde_json::from_str(&event_to_json(e)).expect("trace lines are JSON"))
                .collect();
            Ok(json!({
                "ring": r.to_string(),
                "regular": true,
                "element": run.element.to_string(),
                "iterations": run.iterations,
                "trace": events,
            }))
        }
        Err(Error::IdealNotRegular { witness }) => Ok(json!({
            "ring": r.to_string(),
            "regular": false,
            "witness": witness.to_string(),
        })),
        Err(e) => Err(e.to_string()),
    }
}

fn to_js(result: Result<Value, String>) -> Result<String, JsValue> {
    result
        .map(|v| v.to_string())
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = annihilator)]
pub fn annihilator_js(ring: &str, elem: &str) -> Result<String, JsValue> {
    to_js(annihilator_report(ring, elem))
}

#[wasm_bindgen(js_name = maximalOrthogonal)]
pub fn maximal_orthogonal_js(ring: &str) -> Result<String, JsValue> {
    to_js(maximal_orthogonal_report(ring))
}

#[wasm_bindgen(js_name = findRegular)]
pub fn find_regular_js(ring: &str, ideal: &str) -> Result<String, JsValue> {
    to_js(find_regular_report(ring, ideal))
}
