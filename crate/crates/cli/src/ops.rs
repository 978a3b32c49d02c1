//! Command bodies. Cacheable operations produce a canonical JSON document;
//! every output format is rendered from that document.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use modskein::coend::{self, CoendError};
use modskein::cyclo::serial::{matrix_from_json, matrix_to_json, scalar_to_float_string, scalar_to_json};
use modskein::cyclo::{CycNum, ExactMatrix, SparseVec};
use modskein::hopf::{self, bundles, HopfBundle, HopfError, Rep};
use modskein::rt::{self, RtError};
use modskein::surface::{self, AlgebraPresentation, SurfaceError};

use crate::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Parse, I/O and usage problems; exit 2.
    #[error("{0:#}")]
    Input(anyhow::Error),
    /// A check or computation rejected its input; exit 1.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Input(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.into())
    }
}

impl From<HopfError> for CliError {
    fn from(e: HopfError) -> Self {
        match e {
            HopfError::Parse(_) | HopfError::Structure(_) | HopfError::Cyc(_) => CliError::Input(e.into()),
            HopfError::Capability(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<RtError> for CliError {
    fn from(e: RtError) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<CoendError> for CliError {
    fn from(e: CoendError) -> Self {
        match e {
            CoendError::Hopf(h) => h.into(),
            CoendError::Shape(_) => CliError::Input(e.into()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::Hopf(h) => h.into(),
            SurfaceError::Coend(c) => c.into(),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

pub const BUILTINS: &[&str] = &["trivial", "z2", "z3", "sweedler", "uqsl2-p2", "uqsl2-p3", "uqsl2-odd3"];

fn builtin(name: &str) -> Option<HopfBundle> {
    Some(match name {
        "trivial" => bundles::trivial(),
        "z2" => bundles::z2(),
        "z3" => bundles::z3_braided(),
        "sweedler" => bundles::sweedler(),
        "uqsl2-p2" => bundles::restricted_quantum_sl2(2, false),
        "uqsl2-p3" => bundles::restricted_quantum_sl2(3, false),
        "uqsl2-odd3" => bundles::small_quantum_sl2_odd(3),
        _ => return None,
    })
}

pub struct Loaded {
    pub bundle: HopfBundle,
    /// Bytes hashed for the cache key.
    pub bytes: Vec<u8>,
    /// How the bundle was named on the command line, for cache verification.
    pub source: String,
}

/// Load `builtin:NAME` or a bundle file.
pub fn load(arg: &str) -> Result<Loaded, CliError> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        let bundle = builtin(name)
            .ok_or_else(|| CliError::Input(anyhow::anyhow!("unknown builtin bundle {name:?}; known: {}", BUILTINS.join(", "))))?;
        let bytes = serde_json::to_vec(&hopf::bundle_to_json(&bundle))?;
        return Ok(Loaded { bundle, bytes, source: arg.into() });
    }
    let path = Path::new(arg);
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(anyhow::anyhow!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_slice(&bytes).map_err(|e| CliError::Input(anyhow::anyhow!("{}: {e}", path.display())))?;
    let bundle = hopf::bundle_from_json(&v)?;
    let source = std::fs::canonicalize(path).map(|p| p.display().to_string()).unwrap_or_else(|_| arg.into());
    Ok(Loaded { bundle, bytes, source })
}

fn form_json(b: &HopfBundle, f: &[(usize, CycNum)], float: bool) -> Value {
    let labels = b.basis_labels();
    let mut coeffs = Map::new();
    let mut floats = Map::new();
    for (i, c) in f {
        coeffs.insert(format!("{}*", labels[*i]), scalar_to_json(c));
        floats.insert(format!("{}*", labels[*i]), Value::String(scalar_to_float_string(c)));
    }
    let mut v = json!({"coeffs": coeffs});
    if float {
        v["float"] = Value::Object(floats);
    }
    v
}

fn matrix_doc(m: &ExactMatrix, float: bool) -> Value {
    let mut v = json!({"matrix": matrix_to_json(m)});
    if float {
        let rows: Vec<Vec<String>> = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| scalar_to_float_string(&m.get(i, j))).collect())
            .collect();
        v["float"] = json!(rows);
    }
    v
}

fn module(b: &HopfBundle, name: &str) -> Result<Rep, CliError> {
    if name == "1" {
        return Ok(hopf::trivial_rep(b));
    }
    if name == "H" {
        return Ok(hopf::regular_rep(b));
    }
    b.module(name)
        .cloned()
        .ok_or_else(|| CliError::Input(anyhow::anyhow!("bundle {} has no module {name:?}", b.name())))
}

/// Compute the document for a cacheable operation. `params` is
/// `{"args": {...}, "float": bool}`.
pub fn compute(op: &str, params: &Value, loaded: &Loaded) -> Result<(Value, i32), CliError> {
    let b = &loaded.bundle;
    let args = &params["args"];
    let float = params["float"].as_bool().unwrap_or(false);
    match op {
        "validate" => {
            let report = hopf::validate_bundle(b);
            let mut doc = report.to_json();
            doc["bundle"] = json!(b.name());
            Ok((doc, if report.is_valid() { 0 } else { 1 }))
        }
        "slf" => {
            let basis = coend::slf_basis(b);
            let twisted = coend::slf_basis_via_invariants(b);
            let forms: Vec<Value> = basis.iter().map(|f| form_json(b, f, float)).collect();
            let doc = json!({
                "bundle": b.name(),
                "dim": basis.len(),
                "dim_via_invariants": twisted.len(),
                "basis": forms,
            });
            let exit = if basis.len() == twisted.len() { 0 } else { 1 };
            Ok((doc, exit))
        }
        "qchar" => {
            let name = args["module"].as_str().unwrap_or_default();
            let m = module(b, name)?;
            let f: SparseVec = coend::qchar(b, &m);
            let mut doc = json!({
                "bundle": b.name(),
                "module": name,
                "symmetric": coend::is_slf(b, &f),
                "form": form_json(b, &f, float),
            });
            if let Ok(inv) = coend::qchar_invariant(b, &m) {
                doc["invariant_form"] = form_json(b, &inv, float);
            }
            Ok((doc, 0))
        }
        "skalg" => {
            let g = args["g"].as_u64().unwrap_or(0) as usize;
            let n = args["n"].as_u64().unwrap_or(0) as usize;
            let alg = surface::skalg(b, g, n)?;
            let (rank, report) = if alg.copies == 1 && alg.g == 0 {
                let r = surface::char_map(b, &alg)?;
                (Some(r.rank), Some(r))
            } else {
                (None, None)
            };
            let failures = report.as_ref().map(|r| r.failures.clone()).unwrap_or_default();
            let assoc = alg.associativity_failures();
            let doc = json!({
                "presentation": presentation_json(&alg, float),
                "summary": {
                    "bundle": alg.bundle,
                    "g": g,
                    "n": n,
                    "dim": alg.dim(),
                    "image_rank": rank,
                    "associative": assoc.is_empty(),
                    "unital": alg.unit_holds(),
                    "commutative": alg.is_commutative(),
                    "multiplicativity_failures": failures,
                },
                "csv": alg.csv_row(rank),
            });
            let ok = assoc.is_empty() && alg.unit_holds() && failures.is_empty();
            Ok((doc, if ok { 0 } else { 1 }))
        }
        "char-map" => {
            let alg = surface::skalg(b, 0, 2)?;
            let report = surface::char_map(b, &alg)?;
            let mut doc = report.to_json();
            doc["bundle"] = json!(b.name());
            doc["annulus_dim"] = json!(alg.dim());
            doc["surjective"] = json!(report.rank == alg.dim());
            doc["csv"] = json!(alg.csv_row(Some(report.rank)));
            if float {
                doc["float"] = json!(report
                    .images
                    .iter()
                    .map(|(name, c)| json!({"module": name, "coords": c.iter().map(scalar_to_float_string).collect::<Vec<_>>()}))
                    .collect::<Vec<_>>());
            }
            Ok((doc, if report.failures.is_empty() { 0 } else { 1 }))
        }
        other => Err(CliError::Input(anyhow::anyhow!("unknown cached operation {other:?}"))),
    }
}

fn presentation_json(alg: &AlgebraPresentation, float: bool) -> Value {
    let mut v = alg.to_json();
    if float {
        v["float_structure_constants"] = json!(alg
            .structure
            .iter()
            .map(|(i, j, k, c)| json!([i, j, k, scalar_to_float_string(c)]))
            .collect::<Vec<_>>());
    }
    v
}

pub fn gen_uqsl2(p: u32, out: &Path, with_r: bool) -> Result<(Value, i32), CliError> {
    let b = bundles::restricted_quantum_sl2(p as usize, with_r);
    let text = serde_json::to_string_pretty(&hopf::bundle_to_json(&b))?;
    std::fs::write(out, text + "\n").map_err(|e| CliError::Input(anyhow::anyhow!("{}: {e}", out.display())))?;
    let report = hopf::validate_bundle(&b);
    let doc = json!({
        "bundle": b.name(),
        "out": out.display().to_string(),
        "dim": b.dim(),
        "simples": b.simple_names(),
        "has_braiding": b.has_braiding(),
        "has_ribbon": b.has_ribbon(),
        "braiding": b.metadata().get("braiding").cloned().unwrap_or(Value::Null),
        "validation": report.to_json(),
    });
    Ok((doc, if report.is_valid() { 0 } else { 1 }))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(anyhow::anyhow!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(anyhow::anyhow!("{}: {e}", path.display())))
}

pub fn rt_eval(loaded: &Loaded, path: &Path, float: bool) -> Result<(Value, i32), CliError> {
    let b = &loaded.bundle;
    let v = read_json(path)?;
    let d = rt::diagram_from_json(b, &v)?;
    let m = rt::evaluate(b, &d)?;
    let mut doc = matrix_doc(&m, float);
    doc["bundle"] = json!(b.name());
    Ok((doc, 0))
}

pub fn red_to_blue(loaded: &Loaded, path: &Path, float: bool) -> Result<(Value, i32), CliError> {
    let b = &loaded.bundle;
    let v = read_json(path)?;
    let field = |k: &str| v.get(k).ok_or_else(|| CliError::Input(anyhow::anyhow!("input needs {k:?}")));
    let p = module(b, field("P")?.as_str().unwrap_or_default())?;
    let x = module(b, field("X")?.as_str().unwrap_or_default())?;
    let k = field("k")?
        .as_u64()
        .ok_or_else(|| CliError::Input(anyhow::anyhow!("k must be a non-negative integer")))? as usize;
    let f = matrix_from_json(field("f")?, b.field()).map_err(|e| CliError::Input(e.into()))?;
    let terms = coend::red_to_blue(b, &f, &p, k, &x)?;
    // roundtrip: reassembling the lift recovers f
    let reassemble = coend::reassemble_map(b, k, &x);
    let mut total = ExactMatrix::zeros(b.field(), f.nrows(), f.ncols());
    for (c, m) in &terms {
        total = total.add(&reassemble.mul(m).scale(c));
    }
    let roundtrip = total == f;
    let doc = json!({
        "bundle": b.name(),
        "P": p.name(),
        "X": x.name(),
        "k": k,
        "terms": terms
            .iter()
            .map(|(c, m)| {
                let mut t = matrix_doc(m, float);
                t["coeff"] = scalar_to_json(c);
                t
            })
            .collect::<Vec<_>>(),
        "roundtrip": roundtrip,
    });
    Ok((doc, if roundtrip { 0 } else { 1 }))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn form_text(out: &mut String, form: &Value) {
    let coeffs = form["coeffs"].as_object().cloned().unwrap_or_default();
    let terms: Vec<String> = coeffs.iter().map(|(k, c)| format!("({}) {k}", scalar_text(c))).collect();
    let _ = write!(out, "{}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    if let Some(fl) = form["float"].as_object() {
        let terms: Vec<String> = fl.iter().map(|(k, c)| format!("{} {k}", scalar_text(c))).collect();
        let _ = write!(out, "  [float, non-authoritative: {}]", terms.join(" + "));
    }
    out.push('\n');
}

fn matrix_text(out: &mut String, doc: &Value) {
    let m = &doc["matrix"];
    let (r, c) = (m["rows"].as_u64().unwrap_or(0) as usize, m["cols"].as_u64().unwrap_or(0) as usize);
    let mut cells = vec![vec!["0".to_string(); c]; r];
    for e in m["entries"].as_array().into_iter().flatten() {
        let (i, j) = (e[0].as_u64().unwrap_or(0) as usize, e[1].as_u64().unwrap_or(0) as usize);
        cells[i][j] = scalar_text(&e[2]);
    }
    let _ = writeln!(out, "{r}x{c}");
    for row in cells {
        let _ = writeln!(out, "{}", row.join("\t"));
    }
    if let Some(fl) = doc["float"].as_array() {
        let _ = writeln!(out, "float, non-authoritative:");
        for row in fl {
            let cells: Vec<String> = row.as_array().into_iter().flatten().map(scalar_text).collect();
            let _ = writeln!(out, "{}", cells.join("\t"));
        }
    }
}

fn matrix_csv(out: &mut String, doc: &Value, prefix: &str) {
    let floats = doc["float"].as_array();
    for e in doc["matrix"]["entries"].as_array().into_iter().flatten() {
        let (i, j) = (e[0].as_u64().unwrap_or(0), e[1].as_u64().unwrap_or(0));
        let _ = write!(out, "{prefix}{i},{j},{}", csv_cell(&scalar_text(&e[2])));
        if let Some(fl) = floats {
            let _ = write!(out, ",{}", scalar_text(&fl[i as usize][j as usize]));
        }
        out.push('\n');
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Render a document in the requested format.
pub fn render(op: &str, doc: &Value, format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        let v = match op {
            "skalg-summary" => &doc["summary"],
            _ => doc,
        };
        let mut v = v.clone();
        if let Some(o) = v.as_object_mut() {
            o.remove("csv");
        }
        return Ok(serde_json::to_string_pretty(&v)? + "\n");
    }
    let text = format == Format::Text;
    let mut out = String::new();
    match op {
        "validate" => {
            if text {
                if doc["valid"] == true {
                    let _ = writeln!(out, "{}: valid", scalar_text(&doc["bundle"]));
                }
                for f in doc["failures"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "FAIL {}: {}", scalar_text(&f["axiom"]), scalar_text(&f["detail"]));
                }
            } else {
                out.push_str("axiom,detail\n");
                for f in doc["failures"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "{},{}", csv_cell(&scalar_text(&f["axiom"])), csv_cell(&scalar_text(&f["detail"])));
                }
            }
        }
        "gen-uqsl2" => {
            if text {
                let _ = writeln!(out, "wrote {} to {}", scalar_text(&doc["bundle"]), scalar_text(&doc["out"]));
                let _ = writeln!(out, "dim {}", doc["dim"]);
                let simples: Vec<String> = doc["simples"].as_array().into_iter().flatten().map(scalar_text).collect();
                let _ = writeln!(out, "simples {}", simples.join(" "));
                let _ = writeln!(out, "braiding {}", doc["braiding"]);
                let _ = writeln!(out, "valid {}", doc["validation"]["valid"]);
            } else {
                out.push_str("bundle,dim,simples,has_braiding,valid\n");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    scalar_text(&doc["bundle"]),
                    doc["dim"],
                    doc["simples"].as_array().map_or(0, Vec::len),
                    doc["has_braiding"],
                    doc["validation"]["valid"]
                );
            }
        }
        "slf" => {
            if text {
                let _ = writeln!(out, "dim {} (via invariants {})", doc["dim"], doc["dim_via_invariants"]);
                for (i, f) in doc["basis"].as_array().into_iter().flatten().enumerate() {
                    let _ = write!(out, "f{i} = ");
                    form_text(&mut out, f);
                }
            } else {
                out.push_str("form,coordinate,value\n");
                for (i, f) in doc["basis"].as_array().into_iter().flatten().enumerate() {
                    for (k, c) in f["coeffs"].as_object().into_iter().flatten() {
                        let _ = writeln!(out, "{i},{},{}", csv_cell(k), csv_cell(&scalar_text(c)));
                    }
                }
            }
        }
        "qchar" => {
            if text {
                let _ = write!(out, "qchar({}) = ", scalar_text(&doc["module"]));
                form_text(&mut out, &doc["form"]);
            } else {
                out.push_str("coordinate,value\n");
                for (k, c) in doc["form"]["coeffs"].as_object().into_iter().flatten() {
                    let _ = writeln!(out, "{},{}", csv_cell(k), csv_cell(&scalar_text(c)));
                }
            }
        }
        "skalg" | "skalg-summary" => {
            let s = &doc["summary"];
            if text {
                let _ = writeln!(out, "{} g={} n={}", scalar_text(&s["bundle"]), s["g"], s["n"]);
                let _ = writeln!(out, "dim {}", s["dim"]);
                if !s["image_rank"].is_null() {
                    let _ = writeln!(out, "image rank {}", s["image_rank"]);
                }
                let _ = writeln!(out, "associative {} unital {} commutative {}", s["associative"], s["unital"], s["commutative"]);
                for f in s["multiplicativity_failures"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "FAIL multiplicativity: {}", scalar_text(f));
                }
                if op == "skalg" {
                    let p = &doc["presentation"];
                    for sc in p["structure_constants"].as_array().into_iter().flatten() {
                        let _ = writeln!(out, "e{} e{} -> ({}) e{}", sc[0], sc[1], scalar_text(&sc[3]), sc[2]);
                    }
                }
            } else {
                let _ = writeln!(out, "{}", AlgebraPresentation::CSV_HEADER);
                let _ = writeln!(out, "{}", scalar_text(&doc["csv"]));
            }
        }
        "char-map" => {
            if text {
                let _ = writeln!(out, "annulus dim {}, image rank {}", doc["annulus_dim"], doc["rank"]);
                for im in doc["images"].as_array().into_iter().flatten() {
                    let coords: Vec<String> = im["coords"].as_array().into_iter().flatten().map(scalar_text).collect();
                    let _ = writeln!(out, "{} -> [{}]", scalar_text(&im["module"]), coords.join(", "));
                }
                let m = &doc["multiplicativity"];
                let _ = writeln!(out, "multiplicativity: {} pairs checked, {} skipped", m["pairs_checked"], m["pairs_skipped"]);
                for f in m["failures"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "FAIL multiplicativity: {}", scalar_text(f));
                }
            } else {
                let _ = writeln!(out, "{}", AlgebraPresentation::CSV_HEADER);
                let _ = writeln!(out, "{}", scalar_text(&doc["csv"]));
            }
        }
        "rt-eval" => {
            if text {
                matrix_text(&mut out, doc);
            } else {
                out.push_str(if doc["float"].is_null() { "row,col,value\n" } else { "row,col,value,float_non_authoritative\n" });
                matrix_csv(&mut out, doc, "");
            }
        }
        "red-to-blue" => {
            if text {
                let _ = writeln!(out, "roundtrip {}", doc["roundtrip"]);
                for (i, t) in doc["terms"].as_array().into_iter().flatten().enumerate() {
                    let _ = writeln!(out, "term {i}, coefficient {}", scalar_text(&t["coeff"]));
                    matrix_text(&mut out, t);
                }
            } else {
                out.push_str("term,row,col,value\n");
                for (i, t) in doc["terms"].as_array().into_iter().flatten().enumerate() {
                    let mut t = t.clone();
                    t["float"] = Value::Null;
                    matrix_csv(&mut out, &t, &format!("{i},"));
                }
            }
        }
        "cache-verify" => {
            if text {
                for e in doc["entries"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "{} {} {}", scalar_text(&e["status"]), scalar_text(&e["operation"]), scalar_text(&e["entry"]));
                }
                let _ = writeln!(out, "{} mismatches", doc["mismatches"]);
            } else {
                out.push_str("entry,operation,status\n");
                for e in doc["entries"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "{},{},{}", scalar_text(&e["entry"]), scalar_text(&e["operation"]), scalar_text(&e["status"]));
                }
            }
        }
        other => return Err(CliError::Input(anyhow::anyhow!("no renderer for {other}"))),
    }
    Ok(out)
}
