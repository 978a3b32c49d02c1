//! Bundle files: UTF-8 JSON with sparse tensors given as arrays of
//! `[index, ..., value]` entries (0-based indices, values as `"p/q"` strings
//! or `{order, coeffs}` records).

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::cyclo::serial::{scalar_from_json, scalar_to_json};
use crate::cyclo::{CycNum, ExactMatrix, Field, SparseVec};

use super::{BundleData, HopfBundle, HopfError, Rep};

fn perr(msg: impl Into<String>) -> HopfError {
    HopfError::Parse(msg.into())
}

fn entries<'a>(v: &'a Value, key: &str, arity: usize) -> Result<Vec<(Vec<usize>, &'a Value)>, HopfError> {
    let arr = v.as_array().ok_or_else(|| perr(format!("{key}: expected an array of entries")))?;
    arr.iter()
        .map(|e| {
            let a = e
                .as_array()
                .filter(|a| a.len() == arity + 1)
                .ok_or_else(|| perr(format!("{key}: entry {e} must have {arity} indices and a value")))?;
            let idx = a[..arity]
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("{key}: bad index in {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((idx, &a[arity]))
        })
        .collect()
}

fn scalar(v: &Value, field: &Field, key: &str) -> Result<CycNum, HopfError> {
    scalar_from_json(v, field).map_err(|e| perr(format!("{key}: {e}")))
}

fn vec1(v: &Value, field: &Field, key: &str) -> Result<SparseVec, HopfError> {
    entries(v, key, 1)?
        .into_iter()
        .map(|(i, x)| Ok((i[0], scalar(x, field, key)?)))
        .collect()
}

fn vec2(v: &Value, field: &Field, key: &str) -> Result<Vec<(usize, usize, CycNum)>, HopfError> {
    entries(v, key, 2)?
        .into_iter()
        .map(|(i, x)| Ok((i[0], i[1], scalar(x, field, key)?)))
        .collect()
}

fn vec3(v: &Value, field: &Field, key: &str) -> Result<Vec<(usize, usize, usize, CycNum)>, HopfError> {
    entries(v, key, 3)?
        .into_iter()
        .map(|(i, x)| Ok((i[0], i[1], i[2], scalar(x, field, key)?)))
        .collect()
}

/// `{"name", "dim", "action": [[[row, col, value], ...] per basis element]}`.
pub fn rep_from_json(v: &Value, field: &Field) -> Result<Rep, HopfError> {
    let name = v
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| perr("module: missing name"))?;
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| perr(format!("module {name:?}: missing dim")))? as usize;
    let action = v
        .get("action")
        .and_then(Value::as_array)
        .ok_or_else(|| perr(format!("module {name:?}: missing action")))?;
    let key = format!("module {name:?}");
    let mats = action
        .iter()
        .map(|m| {
            let mut out = ExactMatrix::zeros(field, dim, dim);
            for (r, c, x) in vec2(m, field, &key)? {
                if r >= dim || c >= dim {
                    return Err(HopfError::Structure(format!("{key}: entry ({r},{c}) out of range")));
                }
                out.set(r, c, &out.get(r, c) + &x);
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Rep::new(name, field, dim, mats)
}

pub fn rep_to_json(m: &Rep) -> Value {
    let action: Vec<Value> = m
        .actions()
        .iter()
        .map(|a| {
            let e: Vec<Value> = a
                .rows()
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().map(move |(j, x)| json!([i, j, scalar_to_json(x)])))
                .collect();
            Value::Array(e)
        })
        .collect();
    json!({"name": m.name(), "dim": m.dim(), "action": action})
}

pub fn bundle_from_json(v: &Value) -> Result<HopfBundle, HopfError> {
    let obj = v.as_object().ok_or_else(|| perr("bundle must be a JSON object"))?;
    let get = |k: &str| obj.get(k).ok_or_else(|| perr(format!("missing key {k:?}")));
    let name = get("name")?.as_str().ok_or_else(|| perr("name must be a string"))?.to_string();
    let order = get("cyclotomic_order")?
        .as_u64()
        .filter(|&n| n >= 1 && n <= u32::MAX as u64)
        .ok_or_else(|| perr("cyclotomic_order must be a positive integer"))?;
    let field = Field::cyclotomic(order as u32);
    let dim = get("dim")?.as_u64().ok_or_else(|| perr("dim must be a non-negative integer"))? as usize;
    let opt = |k: &str| obj.get(k).filter(|x| !x.is_null());
    let modules = match opt("modules") {
        None => Vec::new(),
        Some(ms) => ms
            .as_array()
            .ok_or_else(|| perr("modules must be an array"))?
            .iter()
            .map(|m| rep_from_json(m, &field))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let simples = match opt("simples") {
        None => Vec::new(),
        Some(s) => s
            .as_array()
            .ok_or_else(|| perr("simples must be an array of module names"))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| perr("simples must be strings")))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let basis_labels = opt("basis")
        .map(|b| {
            b.as_array()
                .ok_or_else(|| perr("basis must be an array of labels"))?
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| perr("basis labels must be strings")))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let data = BundleData {
        name,
        dim,
        basis_labels,
        unit: vec1(get("unit")?, &field, "unit")?,
        mult: vec3(get("mult")?, &field, "mult")?,
        comult: vec3(get("comult")?, &field, "comult")?,
        counit: vec1(get("counit")?, &field, "counit")?,
        antipode: vec2(get("antipode")?, &field, "antipode")?,
        r: opt("R").map(|x| vec2(x, &field, "R")).transpose()?,
        r_inv: opt("R_inv").map(|x| vec2(x, &field, "R_inv")).transpose()?,
        ribbon: opt("ribbon").map(|x| vec1(x, &field, "ribbon")).transpose()?,
        pivotal: vec1(get("pivotal")?, &field, "pivotal")?,
        modules,
        simples,
        metadata: opt("metadata").and_then(Value::as_object).cloned().unwrap_or_default(),
        field,
    };
    HopfBundle::new(data)
}

pub fn bundle_to_json(b: &HopfBundle) -> Value {
    let d = b.to_data();
    let v1 = |v: &SparseVec| v.iter().map(|(i, x)| json!([i, scalar_to_json(x)])).collect::<Vec<_>>();
    let v2 = |v: &[(usize, usize, CycNum)]| v.iter().map(|(i, j, x)| json!([i, j, scalar_to_json(x)])).collect::<Vec<_>>();
    let v3 = |v: &[(usize, usize, usize, CycNum)]| {
        v.iter().map(|(i, j, k, x)| json!([i, j, k, scalar_to_json(x)])).collect::<Vec<_>>()
    };
    let mut o = Map::new();
    o.insert("name".into(), json!(d.name));
    o.insert("cyclotomic_order".into(), json!(d.field.order()));
    o.insert("dim".into(), json!(d.dim));
    o.insert("basis".into(), json!(d.basis_labels));
    o.insert("unit".into(), json!(v1(&d.unit)));
    o.insert("mult".into(), json!(v3(&d.mult)));
    o.insert("comult".into(), json!(v3(&d.comult)));
    o.insert("counit".into(), json!(v1(&d.counit)));
    o.insert("antipode".into(), json!(v2(&d.antipode)));
    if let Some(r) = &d.r {
        o.insert("R".into(), json!(v2(r)));
    }
    if let Some(r) = &d.r_inv {
        o.insert("R_inv".into(), json!(v2(r)));
    }
    if let Some(v) = &d.ribbon {
        o.insert("ribbon".into(), json!(v1(v)));
    }
    o.insert("pivotal".into(), json!(v1(&d.pivotal)));
    o.insert("modules".into(), Value::Array(d.modules.iter().map(rep_to_json).collect()));
    o.insert("simples".into(), json!(d.simples));
    if !d.metadata.is_empty() {
        o.insert("metadata".into(), Value::Object(d.metadata));
    }
    Value::Object(o)
}

/// Read and parse a bundle file. I/O and JSON syntax problems are reported as
/// parse errors.
pub fn load_bundle(path: &Path) -> Result<HopfBundle, HopfError> {
    let text = std::fs::read_to_string(path).map_err(|e| perr(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| perr(format!("{}: {e}", path.display())))?;
    bundle_from_json(&v)
}
