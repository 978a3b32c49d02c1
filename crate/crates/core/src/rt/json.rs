//! Diagram files:
//! `{"bundle_ref", "bottom": [[module, "+"|"-"], ...], "top", "slices": [[gen, ...], ...]}`
//! with generators such as `{"gen": "Braid", "left": ["M", "+"], "right": ["N", "-"]}`
//! or `{"gen": "Coupon", "domain": [...], "codomain": [...], "basis_index": 0}`.

use serde_json::{json, Value};

use crate::cyclo::serial::{matrix_from_json, matrix_to_json, scalar_from_json};
use crate::cyclo::ExactMatrix;
use crate::hopf::{trivial_rep, HopfBundle, Rep};

use super::{boundary_module, Diagram, Gen, Obj, Orientation, RtError};

fn perr(slice: Option<usize>, msg: impl Into<String>) -> RtError {
    match slice {
        Some(s) => RtError::Typing { slice: s, msg: msg.into() },
        None => RtError::Boundary(msg.into()),
    }
}

fn module(b: &HopfBundle, name: &str, slice: Option<usize>) -> Result<Rep, RtError> {
    match b.module(name) {
        Some(m) => Ok(m.clone()),
        None if name == "1" => Ok(trivial_rep(b)),
        None => Err(perr(slice, format!("unknown module {name:?}"))),
    }
}

fn obj(b: &HopfBundle, v: &Value, slice: Option<usize>) -> Result<Obj, RtError> {
    let a = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| perr(slice, format!("object must be [module, orientation], got {v}")))?;
    let name = a[0].as_str().ok_or_else(|| perr(slice, "module name must be a string"))?;
    let orient = match a[1].as_str() {
        Some("+") => Orientation::Plus,
        Some("-") => Orientation::Minus,
        _ => return Err(perr(slice, format!("orientation must be \"+\" or \"-\", got {}", a[1]))),
    };
    Ok(Obj {
        rep: module(b, name, slice)?,
        orient,
    })
}

fn objs(b: &HopfBundle, v: Option<&Value>, slice: Option<usize>, what: &str) -> Result<Vec<Obj>, RtError> {
    match v {
        None => Ok(Vec::new()),
        Some(v) => v
            .as_array()
            .ok_or_else(|| perr(slice, format!("{what} must be an array of objects")))?
            .iter()
            .map(|o| obj(b, o, slice))
            .collect(),
    }
}

fn gen(b: &HopfBundle, v: &Value, s: usize) -> Result<Gen, RtError> {
    let kind = v.get("gen").and_then(Value::as_str).ok_or_else(|| perr(Some(s), "generator needs a \"gen\" name"))?;
    let one = |key: &str| -> Result<Obj, RtError> {
        obj(b, v.get(key).ok_or_else(|| perr(Some(s), format!("{kind} needs {key:?}")))?, Some(s))
    };
    let m = || -> Result<Rep, RtError> {
        let name = v.get("module").and_then(Value::as_str).ok_or_else(|| perr(Some(s), format!("{kind} needs \"module\"")))?;
        module(b, name, Some(s))
    };
    Ok(match kind {
        "Id" => Gen::Id(one("obj")?),
        "Ev" => Gen::Ev(m()?),
        "Coev" => Gen::Coev(m()?),
        "EvPiv" => Gen::EvPiv(m()?),
        "CoevPiv" => Gen::CoevPiv(m()?),
        "Braid" => Gen::Braid(one("left")?, one("right")?),
        "BraidInv" => Gen::BraidInv(one("left")?, one("right")?),
        "Twist" => Gen::Twist(one("obj")?),
        "TwistInv" => Gen::TwistInv(one("obj")?),
        "Coupon" => {
            let domain = objs(b, v.get("domain"), Some(s), "domain")?;
            let codomain = objs(b, v.get("codomain"), Some(s), "codomain")?;
            let map = if let Some(mv) = v.get("matrix") {
                matrix_from_json(mv, b.field()).map_err(|e| perr(Some(s), e.to_string()))?
            } else {
                let basis = crate::hopf::hom_space(b, &boundary_module(b, &domain), &boundary_module(b, &codomain));
                let rows: usize = codomain.iter().map(|o| o.rep.dim()).product();
                let cols: usize = domain.iter().map(|o| o.rep.dim()).product();
                let mut f = ExactMatrix::zeros(b.field(), rows, cols);
                if let Some(cs) = v.get("coeffs").and_then(Value::as_array) {
                    if cs.len() != basis.len() {
                        return Err(perr(Some(s), format!("{} coefficients for a {}-dimensional hom space", cs.len(), basis.len())));
                    }
                    for (c, bm) in cs.iter().zip(&basis) {
                        let c = scalar_from_json(c, b.field()).map_err(|e| perr(Some(s), e.to_string()))?;
                        f = f.axpy(&c, bm);
                    }
                } else {
                    let k = v
                        .get("basis_index")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| perr(Some(s), "coupon needs \"matrix\", \"coeffs\" or \"basis_index\""))? as usize;
                    f = basis
                        .get(k)
                        .cloned()
                        .ok_or_else(|| perr(Some(s), format!("hom space has dimension {}, no basis element {k}", basis.len())))?;
                }
                f
            };
            Gen::Coupon { map, domain, codomain }
        }
        other => return Err(perr(Some(s), format!("unknown generator {other:?}"))),
    })
}

pub fn diagram_from_json(b: &HopfBundle, v: &Value) -> Result<Diagram, RtError> {
    let bottom = objs(b, v.get("bottom"), None, "bottom")?;
    let top = objs(b, v.get("top"), None, "top")?;
    let slices = match v.get("slices") {
        None => Vec::new(),
        Some(sv) => sv
            .as_array()
            .ok_or_else(|| perr(None, "slices must be an array"))?
            .iter()
            .enumerate()
            .map(|(s, slice)| {
                slice
                    .as_array()
                    .ok_or_else(|| perr(Some(s), "slice must be an array of generators"))?
                    .iter()
                    .map(|g| gen(b, g, s))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(Diagram {
        bottom,
        top,
        slices,
        admissible: v.get("admissible").and_then(Value::as_bool).unwrap_or(false),
    })
}

fn obj_json(o: &Obj) -> Value {
    json!([o.rep.name(), o.orient.symbol()])
}

pub fn diagram_to_json(bundle_ref: &str, d: &Diagram) -> Value {
    let gen_json = |g: &Gen| -> Value {
        match g {
            Gen::Id(x) | Gen::Twist(x) | Gen::TwistInv(x) => json!({"gen": g.name(), "obj": obj_json(x)}),
            Gen::Ev(m) | Gen::Coev(m) | Gen::EvPiv(m) | Gen::CoevPiv(m) => json!({"gen": g.name(), "module": m.name()}),
            Gen::Braid(x, y) | Gen::BraidInv(x, y) => json!({"gen": g.name(), "left": obj_json(x), "right": obj_json(y)}),
            Gen::Coupon { map, domain, codomain } => json!({
                "gen": "Coupon",
                "domain": domain.iter().map(obj_json).collect::<Vec<_>>(),
                "codomain": codomain.iter().map(obj_json).collect::<Vec<_>>(),
                "matrix": matrix_to_json(map),
            }),
        }
    };
    json!({
        "bundle_ref": bundle_ref,
        "bottom": d.bottom.iter().map(obj_json).collect::<Vec<_>>(),
        "top": d.top.iter().map(obj_json).collect::<Vec<_>>(),
        "admissible": d.admissible,
        "slices": d.slices.iter().map(|s| s.iter().map(gen_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}
