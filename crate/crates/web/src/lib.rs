//! Browser demo bindings. Each export returns a JSON string; the plain Rust
//! functions underneath return `serde_json::Value` and are tested natively.

use serde_json::{json, Value};
use slicekit::diagram::{parse_record, seifert_matrix, Diagram};
use slicekit::fixtures::{figure_records, lookup, pd_records};
use slicekit::forms::{find_metabolizer, largest_cone_subgroup, LinkingForm};
use slicekit::polynomials::base4_realization;
use slicekit::signatures::{alexander_from_seifert, murasugi_signature, tristram_levine_function};
use wasm_bindgen::prelude::*;

/// Largest group drawn as a grid.
pub const GRID_LIMIT: u64 = 10_000;

fn knot(spec: &str) -> Result<Diagram, String> {
    let spec = spec.trim();
    if spec.contains(':') {
        return parse_record(spec)
            .map(|d| d.with_name(spec))
            .map_err(|e| e.to_string());
    }
    lookup(spec).ok_or_else(|| format!("unknown knot {spec:?}"))
}

/// Names of the bundled table knots.
pub fn knot_names() -> Vec<String> {
    pd_records()
        .into_iter()
        .chain(figure_records())
        .map(|r| r.name)
        .collect()
}

/// Tristram-Levine signature σ_ξ on the upper unit semicircle, as arcs between
/// roots of Δ with angles in degrees.
pub fn signature_plot(spec: &str) -> Result<Value, String> {
    let d = knot(spec)?;
    let v = seifert_matrix(&d).map_err(|e| e.to_string())?;
    let delta = alexander_from_seifert(&v).map_err(|e| e.to_string())?;
    let sigma = murasugi_signature(&v).map_err(|e| e.to_string())?;
    let f = tristram_levine_function(&v, &delta).map_err(|e| e.to_string())?;
    let arcs: Vec<Value> = f
        .plateaus
        .iter()
        .map(|p| {
            let (from, to) = p.angles();
            json!({
                "from_deg": from,
                "to_deg": to,
                "z_lo": p.z_lo.to_string(),
                "z_hi": p.z_hi.to_string(),
                "value": p.value,
            })
        })
        .collect();
    let jumps: Vec<Value> = f
        .jump_angles
        .iter()
        .map(|r| {
            let (lo, hi) = r.angle_degrees();
            json!({ "deg_lo": lo, "deg_hi": hi, "multiplicity": r.multiplicity })
        })
        .collect();
    Ok(json!({
        "name": d.name(),
        "crossings": d.crossing_count(),
        "alexander": delta,
        "signature": sigma,
        "arcs": arcs,
        "jumps": jumps,
    }))
}

/// Values λ(x, x) over a group of rank at most 2, laid out as a grid, with the
/// isotropic cone marked.
pub fn cone_grid(literal: &str) -> Result<Value, String> {
    let f: LinkingForm = literal.parse().map_err(|e| format!("{e}"))?;
    if f.rank() > 2 {
        return Err("the grid view needs a group with at most two cyclic factors".into());
    }
    let order = f.order().ok_or("group order overflows")?;
    if order > GRID_LIMIT {
        return Err(format!(
            "group of order {order} exceeds the grid limit {GRID_LIMIT}"
        ));
    }
    let dims: Vec<u64> = (0..2)
        .map(|i| f.orders().get(i).copied().unwrap_or(1))
        .collect();
    let e = f.exponent();
    let mut cells = Vec::with_capacity(dims[0] as usize);
    let mut cone_size = 0u64;
    for i in 0..dims[0] {
        let mut row = Vec::with_capacity(dims[1] as usize);
        for j in 0..dims[1] {
            let x: Vec<u64> = [i, j][..f.rank()].to_vec();
            let q = f.q(&x);
            cone_size += u64::from(q == 0);
            row.push(json!({ "q": q, "in_cone": q == 0 }));
        }
        cells.push(Value::Array(row));
    }
    let largest = largest_cone_subgroup(&f, GRID_LIMIT).map_err(|e| e.to_string())?;
    let metabolizer = if f.is_nondegenerate() {
        find_metabolizer(&f, GRID_LIMIT).map_err(|e| e.to_string())?
    } else {
        None
    };
    let subgroup = largest.witness.elements(&f);
    Ok(json!({
        "form": f,
        "rows": dims[0],
        "cols": dims[1],
        "exponent": e,
        "cells": cells,
        "cone_size": cone_size,
        "largest_subgroup": subgroup,
        "theorem1_case": largest.case,
        "metabolizer": metabolizer,
    }))
}

/// Alexander polynomial with determinant d from the base-4 digits of d.
pub fn base4(d: u64) -> Result<Value, String> {
    let r = base4_realization(d).map_err(|e| e.to_string())?;
    Ok(json!({
        "d": r.d,
        "conway": r.conway,
        "alexander": r.alexander,
        "at_one": r.alexander.eval_int(1).to_string(),
        "at_minus_one": r.alexander.eval_int(-1).to_string(),
        "has_unit_circle_roots": r.has_unit_circle_roots,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = knotNames)]
pub fn knot_names_js() -> String {
    json!(knot_names()).to_string()
}

#[wasm_bindgen(js_name = signaturePlot)]
pub fn signature_plot_js(spec: &str) -> Result<String, JsValue> {
    to_js(signature_plot(spec))
}

#[wasm_bindgen(js_name = coneGrid)]
pub fn cone_grid_js(literal: &str) -> Result<String, JsValue> {
    to_js(cone_grid(literal))
}

#[wasm_bindgen(js_name = base4)]
pub fn base4_js(d: f64) -> Result<String, JsValue> {
    if !(d.is_finite() && d >= 1.0 && d.fract() == 0.0 && d <= 9.0e15) {
        return Err(JsValue::from_str("d must be a positive integer"));
    }
    to_js(base4(d as u64))
}
