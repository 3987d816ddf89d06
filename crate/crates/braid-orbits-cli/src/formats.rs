//! Exact JSON data formats.
//!
//! Rationals travel as `"p/q"` strings (never floats), cyclotomic numbers as
//! an `(order, coefficient list)` pair over the power basis of Q(ζ_order),
//! matrices as row-major entry lists, and signatures as maps from cell names
//! (`theta_3`, `sigma_1,3`) to affine angle expressions. Every document
//! carries a `schema` field; export followed by import reproduces an
//! identical value.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use braid_orbits::affine::parse_affine;
use braid_orbits::angle::parse_rational;
use braid_orbits::cells::canonical_cell;
use braid_orbits::cyclo::CycloField;
use braid_orbits::{
    CellId, CycloNumber, MonodromyTuple, OrbitReport, ParamSignature, Rational, UnimodularMatrix,
};

pub const TUPLE_SCHEMA: &str = "braid-orbits/tuple/1";
pub const SIGNATURE_SCHEMA: &str = "braid-orbits/signature/1";
pub const ORBIT_REPORT_SCHEMA: &str = "braid-orbits/orbit-report/1";
pub const VERIFY_REPORT_SCHEMA: &str = "braid-orbits/verify-report/1";
pub const CLASSIFY_REPORT_SCHEMA: &str = "braid-orbits/classify-report/1";
pub const TABLE_SCHEMA: &str = "braid-orbits/table/1";

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational, String> {
    let s = v.as_str().ok_or_else(|| format!("expected a rational string, got {v}"))?;
    parse_rational(s)
}

pub fn cyclo_to_json(c: &CycloNumber) -> Value {
    json!({
        "order": c.order(),
        "coeffs": c.coefficients().iter().map(rational_to_json).collect::<Vec<_>>(),
    })
}

pub fn cyclo_from_json(v: &Value) -> Result<CycloNumber, String> {
    let obj = v.as_object().ok_or("cyclotomic number must be an object")?;
    let order = obj
        .get("order")
        .and_then(Value::as_u64)
        .ok_or("cyclotomic number needs an integer 'order'")?;
    if order == 0 || order > 10_000 {
        return Err(format!("unsupported cyclotomic order {order}"));
    }
    let field = CycloField::new(order as u32);
    let coeffs_json = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or("cyclotomic number needs a 'coeffs' array")?;
    if coeffs_json.len() != field.degree() {
        return Err(format!(
            "Q(ζ_{order}) has degree {}, got {} coefficients",
            field.degree(),
            coeffs_json.len()
        ));
    }
    let coeffs: Vec<Rational> = coeffs_json
        .iter()
        .map(rational_from_json)
        .collect::<Result<_, _>>()?;
    Ok(CycloNumber::from_coefficients(&field, &coeffs))
}

pub fn matrix_to_json(m: &UnimodularMatrix) -> Value {
    Value::Array(m.entries().iter().map(cyclo_to_json).collect())
}

pub fn matrix_from_json(v: &Value, field: &Arc<CycloField>) -> Result<UnimodularMatrix, String> {
    let arr = v.as_array().ok_or("matrix must be a 4-entry array")?;
    if arr.len() != 4 {
        return Err(format!("matrix must have 4 row-major entries, got {}", arr.len()));
    }
    let entries: Vec<CycloNumber> = arr
        .iter()
        .map(|e| cyclo_from_json(e).map(|c| c.embed(field)))
        .collect::<Result<_, _>>()?;
    UnimodularMatrix::new([
        entries[0].clone(),
        entries[1].clone(),
        entries[2].clone(),
        entries[3].clone(),
    ])
}

pub fn tuple_to_json(t: &MonodromyTuple) -> Value {
    json!({
        "schema": TUPLE_SCHEMA,
        "order": t.field().order(),
        "matrices": t.matrices().iter().map(matrix_to_json).collect::<Vec<_>>(),
        "labels": t.labels(),
    })
}

pub fn tuple_from_json(v: &Value) -> Result<MonodromyTuple, String> {
    let obj = v.as_object().ok_or("tuple document must be an object")?;
    check_schema(obj, TUPLE_SCHEMA)?;
    let order = obj
        .get("order")
        .and_then(Value::as_u64)
        .ok_or("tuple document needs an integer 'order'")?;
    if order == 0 || order > 10_000 {
        return Err(format!("unsupported cyclotomic order {order}"));
    }
    let field = CycloField::new(order as u32);
    let mats_json = obj
        .get("matrices")
        .and_then(Value::as_array)
        .ok_or("tuple document needs a 'matrices' array")?;
    let matrices: Vec<UnimodularMatrix> = mats_json
        .iter()
        .map(|m| matrix_from_json(m, &field))
        .collect::<Result<_, _>>()?;
    let tuple = match obj.get("labels") {
        None | Some(Value::Null) => MonodromyTuple::new(matrices)?,
        Some(l) => {
            let labels: Vec<u8> = l
                .as_array()
                .ok_or("'labels' must be an array")?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|x| u8::try_from(x).ok())
                        .ok_or_else(|| format!("bad label {x}"))
                })
                .collect::<Result<_, _>>()?;
            MonodromyTuple::with_labels(matrices, labels)?
        }
    };
    tuple.verify()?;
    Ok(tuple)
}

/// Parse a cell name such as `theta_3` or `sigma_1,3` back into a cell id.
pub fn parse_cell_name(name: &str, n: usize) -> Result<CellId, String> {
    let indices = name
        .strip_prefix("theta_")
        .or_else(|| name.strip_prefix("sigma_"))
        .ok_or_else(|| format!("cell name '{name}' must start with theta_ or sigma_"))?;
    let indices: Vec<u8> = indices
        .split(',')
        .map(|x| x.parse::<u8>().map_err(|e| format!("cell name '{name}': {e}")))
        .collect::<Result<_, _>>()?;
    let cell = canonical_cell(&indices, n)?;
    if cell.is_theta() != name.starts_with("theta_") {
        return Err(format!("cell name '{name}' has the wrong kind prefix"));
    }
    Ok(cell)
}

pub fn signature_to_json(s: &ParamSignature) -> Value {
    let cells: Map<String, Value> = s
        .cells()
        .map(|(cell, v)| (cell.to_string(), Value::String(v.to_string())))
        .collect();
    json!({
        "schema": SIGNATURE_SCHEMA,
        "n": s.n(),
        "cells": cells,
    })
}

pub fn signature_from_json(v: &Value) -> Result<ParamSignature, String> {
    let obj = v.as_object().ok_or("signature document must be an object")?;
    check_schema(obj, SIGNATURE_SCHEMA)?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or("signature document needs an integer 'n'")? as usize;
    if !(3..=16).contains(&n) {
        return Err(format!("unsupported tuple size n = {n}"));
    }
    let cells = obj
        .get("cells")
        .and_then(Value::as_object)
        .ok_or("signature document needs a 'cells' object")?;
    let mut sig = ParamSignature::new(n);
    for (name, expr) in cells {
        let cell = parse_cell_name(name, n)?;
        let expr = expr
            .as_str()
            .ok_or_else(|| format!("cell '{name}' value must be a string"))?;
        sig.insert(cell, parse_affine(expr)?);
    }
    Ok(sig)
}

pub fn orbit_report_to_json(input_kind: &str, r: &OrbitReport) -> Value {
    json!({
        "schema": ORBIT_REPORT_SCHEMA,
        "input": input_kind,
        "finite": r.finite,
        "length": r.length,
        "total_states": r.total_states,
        "generator_closure_checked": r.generator_closure_checked,
    })
}

pub fn orbit_report_from_json(v: &Value) -> Result<OrbitReport, String> {
    let obj = v.as_object().ok_or("orbit report must be an object")?;
    check_schema(obj, ORBIT_REPORT_SCHEMA)?;
    let get_bool = |k: &str| {
        obj.get(k)
            .and_then(Value::as_bool)
            .ok_or_else(|| format!("orbit report needs boolean '{k}'"))
    };
    let get_u64 = |k: &str| {
        obj.get(k)
            .and_then(Value::as_u64)
            .ok_or_else(|| format!("orbit report needs integer '{k}'"))
    };
    Ok(OrbitReport {
        finite: get_bool("finite")?,
        length: get_u64("length")?,
        total_states: get_u64("total_states")?,
        generator_closure_checked: get_bool("generator_closure_checked")?,
    })
}

fn check_schema(obj: &Map<String, Value>, expected: &str) -> Result<(), String> {
    match obj.get("schema").and_then(Value::as_str) {
        Some(s) if s == expected => Ok(()),
        Some(s) => Err(format!("expected schema '{expected}', got '{s}'")),
        None => Err(format!("document is missing the 'schema' field ('{expected}')")),
    }
}

/// The published column order for a table of n-tuple signatures: the orbit
/// length, the θ cells, then the σ cells in the order σ₁₂ σ₂₃ … σ_{n,1}
/// followed by the skip-one pairs σ₁₃ σ₂₄.
pub fn table_columns(n: usize) -> Result<Vec<String>, String> {
    let pairs: &[[u8; 2]] = match n {
        4 => &[[1, 2], [2, 3], [1, 3], [2, 4]],
        5 => &[[1, 2], [2, 3], [3, 4], [4, 5], [5, 1], [1, 3], [2, 4]],
        _ => return Err(format!("no published column layout for n = {n}")),
    };
    let mut out = vec!["length".to_string()];
    out.extend((1..=n as u8).map(|x| CellId::theta(x, n).to_string()));
    for p in pairs {
        out.push(canonical_cell(p, n).map(|c| c.to_string())?);
    }
    Ok(out)
}

/// Render one signature row in the published column order. Undefined cells
/// and an absent length render as "-".
pub fn table_row_values(
    length: Option<u64>,
    s: &ParamSignature,
) -> Result<Vec<String>, String> {
    let columns = table_columns(s.n())?;
    let mut out = vec![length.map_or_else(|| "-".to_string(), |l| l.to_string())];
    for name in &columns[1..] {
        let cell = parse_cell_name(name, s.n())?;
        out.push(s.get(&cell).map_or_else(|| "-".to_string(), |v| v.to_string()));
    }
    Ok(out)
}

/// Substitute concrete sample values and check the signature is fully
/// numeric, as required for reconstruction-based commands.
pub fn concrete_signature(
    s: &ParamSignature,
    samples: &BTreeMap<String, Rational>,
) -> Result<braid_orbits::Signature, String> {
    s.evaluate(samples).map_err(|e| {
        format!("signature is parametric; provide sample values for every parameter ({e})")
    })
}
