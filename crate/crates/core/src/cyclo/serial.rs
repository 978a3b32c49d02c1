//! JSON encodings: rationals as `"p/q"` strings, other field elements as
//! `{"order": N, "coeffs": ["p/q", ...]}` in the power basis.

use serde_json::{json, Value};

use super::{format_rational, CycError, CycNum, ExactMatrix, Field};

pub fn scalar_to_json(x: &CycNum) -> Value {
    match x.to_rational() {
        Some(q) => Value::String(format_rational(&q)),
        None => json!({
            "order": x.order(),
            "coeffs": x.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
        }),
    }
}

/// Always the record form, regardless of whether `x` is rational.
pub fn scalar_to_record(x: &CycNum) -> Value {
    json!({
        "order": x.order(),
        "coeffs": x.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

pub fn scalar_from_json(v: &Value, field: &Field) -> Result<CycNum, CycError> {
    match v {
        Value::String(s) => Ok(CycNum::from_rational(field, &CycNum::parse_rational(s)?)),
        Value::Number(n) => {
            let q = CycNum::parse_rational(&n.to_string())?;
            Ok(CycNum::from_rational(field, &q))
        }
        Value::Object(map) => {
            let order = map
                .get("order")
                .and_then(Value::as_u64)
                .filter(|&o| o >= 1 && o <= u32::MAX as u64)
                .ok_or_else(|| CycError::Parse("cyclotomic record needs a positive \"order\"".into()))?;
            let coeffs = map
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| CycError::Parse("cyclotomic record needs \"coeffs\"".into()))?;
            let src = Field::cyclotomic(order as u32);
            let rats = coeffs
                .iter()
                .map(|c| match c {
                    Value::String(s) => CycNum::parse_rational(s),
                    Value::Number(n) => CycNum::parse_rational(&n.to_string()),
                    _ => Err(CycError::Parse(format!("bad coefficient {c}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            CycNum::from_power_coeffs(&src, &rats).embed(field)
        }
        other => Err(CycError::Parse(format!("not a field element: {other}"))),
    }
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    let entries: Vec<Value> = m
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().map(move |(j, v)| json!([i, j, scalar_to_json(v)])))
        .collect();
    json!({"rows": m.nrows(), "cols": m.ncols(), "entries": entries})
}

pub fn matrix_from_json(v: &Value, field: &Field) -> Result<ExactMatrix, CycError> {
    let bad = |msg: &str| CycError::Parse(format!("matrix: {msg}"));
    let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| bad("missing rows"))? as usize;
    let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| bad("missing cols"))? as usize;
    let mut m = ExactMatrix::zeros(field, rows, cols);
    for e in v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing entries"))?
    {
        let arr = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("entry must be [i, j, value]"))?;
        let i = arr[0].as_u64().ok_or_else(|| bad("row index"))? as usize;
        let j = arr[1].as_u64().ok_or_else(|| bad("column index"))? as usize;
        if i >= rows || j >= cols {
            return Err(bad("index out of range"));
        }
        let x = scalar_from_json(&arr[2], field)?;
        m.set(i, j, &m.get(i, j) + &x);
    }
    Ok(m)
}

/// Decimal rendering, non-authoritative.
pub fn scalar_to_float_string(x: &CycNum) -> String {
    let (re, im) = x.to_complex();
    if im.abs() < 1e-12 {
        format!("{re:.12}")
    } else {
        format!("{re:.12}{:+.12}i", im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_roundtrip() {
        let k = Field::cyclotomic(8);
        let x = CycNum::zeta_pow(&k, 3) + CycNum::from_ratio(&k, -5, 3);
        let v = scalar_to_json(&x);
        assert_eq!(scalar_from_json(&v, &k).unwrap(), x);
        let r = CycNum::from_ratio(&k, 7, 2);
        assert_eq!(scalar_to_json(&r), Value::String("7/2".into()));
    }

    #[test]
    fn record_from_smaller_field_embeds() {
        let k = Field::cyclotomic(8);
        let v = json!({"order": 4, "coeffs": ["0", "1"]});
        assert_eq!(scalar_from_json(&v, &k).unwrap(), CycNum::zeta_pow(&k, 2));
        let bad = json!({"order": 3, "coeffs": ["0", "1"]});
        assert!(scalar_from_json(&bad, &k).is_err());
    }
}
