use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use modskein::coend::dinat;
use modskein::cyclo::serial::{matrix_from_json, matrix_to_json};
use modskein::hopf::{bundles, dual_rep, hom_space, regular_rep, tensor_rep, HopfBundle};
use modskein::rt::{diagram_to_json, moves, Obj};
use serde_json::{json, Value};

fn bundle_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/bundles").join(name)
}

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modskein"))
        .env("MODSKEIN_CACHE_DIR", cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_json(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.display().to_string()
}

fn eval_matrix(b: &HopfBundle, out: &Output) -> modskein::cyclo::ExactMatrix {
    assert_eq!(out.status.code(), Some(0), "{}", stderr(out));
    let v: Value = serde_json::from_str(&stdout(out)).unwrap();
    matrix_from_json(&v["matrix"], b.field()).unwrap()
}

#[test]
fn validate_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let sweedler = bundle_file("sweedler.json");
    let ok = run(tmp.path(), &["validate", sweedler.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("\"valid\": true"));

    // flip the sign of S(x)
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&sweedler).unwrap()).unwrap();
    v["antipode"][2][2] = json!("1");
    let bad = write_json(tmp.path(), "bad.json", &v);
    let out = run(tmp.path(), &["--format", "text", "validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL antipode"), "{}", stdout(&out));

    let missing = run(tmp.path(), &["validate", "/nonexistent/bundle.json"]);
    assert_eq!(missing.status.code(), Some(2));
    std::fs::write(tmp.path().join("junk.json"), "{ not json").unwrap();
    let junk = run(tmp.path(), &["validate", tmp.path().join("junk.json").to_str().unwrap()]);
    assert_eq!(junk.status.code(), Some(2));
    let unknown = run(tmp.path(), &["validate", "builtin:nope"]);
    assert_eq!(unknown.status.code(), Some(2));
    let csv = run(tmp.path(), &["--format", "csv", "validate", "builtin:z2"]);
    assert_eq!(stdout(&csv), "axiom,detail\n");
}

#[test]
fn usage_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run(tmp.path(), &["--threads", "0", "slf", "builtin:z2"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["gen-uqsl2", "--p", "1", "--out", "x.json"]).status.code(), Some(2));
    let threads = run(tmp.path(), &["--threads", "4", "--format", "text", "slf", "builtin:z2"]);
    assert_eq!(threads.status.code(), Some(0));
    assert!(stdout(&threads).starts_with("dim 2"));
}

#[test]
fn generated_quantum_group() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("u2.json");
    let gen = run(tmp.path(), &["gen-uqsl2", "--p", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(gen.status.code(), Some(0), "{}", stderr(&gen));
    let report: Value = serde_json::from_str(&stdout(&gen)).unwrap();
    assert_eq!(report["dim"], 16);
    assert_eq!(report["simples"].as_array().unwrap().len(), 4);
    assert_eq!(report["validation"]["valid"], true);
    let check = run(tmp.path(), &["validate", out.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn annulus_summary_and_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let args = ["--format", "csv", "skalg", "builtin:uqsl2-p2", "--g", "0", "--n", "2"];
    let first = run(&cache, &args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    assert_eq!(stdout(&first), "bundle,g,n,dim,image_rank\nuqsl2_p2,0,2,5,4\n");
    let entries = || std::fs::read_dir(&cache).unwrap().filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "json")).count();
    assert_eq!(entries(), 1);
    let second = run(&cache, &args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(entries(), 1);

    let mut verify_args = args.to_vec();
    verify_args.push("--verify");
    assert_eq!(run(&cache, &verify_args).status.code(), Some(0));
    assert_eq!(run(&cache, &["cache", "verify"]).status.code(), Some(0));

    // the presentation file is written separately from the summary
    let pres = tmp.path().join("annulus.json");
    let with_out = run(&cache, &["skalg", "builtin:uqsl2-p2", "--g", "0", "--n", "2", "--out", pres.to_str().unwrap()]);
    let summary: Value = serde_json::from_str(&stdout(&with_out)).unwrap();
    assert_eq!(summary["dim"], 5);
    let p: Value = serde_json::from_str(&std::fs::read_to_string(&pres).unwrap()).unwrap();
    assert_eq!(p["dim"], 5);
    assert_eq!(p["basis_labels"].as_array().unwrap().len(), 5);

    // tampering with a stored payload is detected
    let entry = std::fs::read_dir(&cache)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|x| x == "json"))
        .unwrap();
    let mut stored: Value = serde_json::from_str(&std::fs::read_to_string(&entry).unwrap()).unwrap();
    stored["payload"] = json!(stored["payload"].as_str().unwrap().replace("uqsl2_p2", "tampered"));
    std::fs::write(&entry, serde_json::to_string(&stored).unwrap()).unwrap();
    let verify = run(&cache, &["--format", "text", "cache", "verify"]);
    assert_eq!(verify.status.code(), Some(1));
    assert!(stdout(&verify).contains("mismatch"));
}

#[test]
fn cache_key_separates_formats_and_bundles() {
    let tmp = tempfile::tempdir().unwrap();
    let json_out = run(tmp.path(), &["char-map", "builtin:z2"]);
    let float_out = run(tmp.path(), &["--float", "char-map", "builtin:z2"]);
    assert_ne!(json_out.stdout, float_out.stdout);
    assert!(stdout(&float_out).contains("\"float\""));
    let file = bundle_file("z2.json");
    let from_file = run(tmp.path(), &["char-map", file.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["surjective"], true);
    let n = std::fs::read_dir(tmp.path()).unwrap().count();
    assert_eq!(n, 3);
    assert_eq!(run(tmp.path(), &["cache", "verify"]).status.code(), Some(0));
}

#[test]
fn unsupported_surface_is_reported() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["--no-cache", "skalg", "builtin:uqsl2-p2", "--g", "1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("braided operations are unavailable"), "{}", stderr(&out));
    let out = run(tmp.path(), &["--no-cache", "skalg", "builtin:sweedler", "--g", "1", "--n", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unsupported"));
}

#[test]
fn rt_eval_moves() {
    let tmp = tempfile::tempdir().unwrap();
    let b = bundles::sweedler();
    let p = b.module("P+").unwrap().clone();
    for (i, (zz, straight)) in moves::zigzags(&p).into_iter().enumerate() {
        let path = write_json(tmp.path(), &format!("zz{i}.json"), &diagram_to_json("builtin:sweedler", &zz));
        let m = eval_matrix(&b, &run(tmp.path(), &["rt-eval", "builtin:sweedler", &path]));
        assert!(m.is_identity());
        let path = write_json(tmp.path(), "straight.json", &diagram_to_json("builtin:sweedler", &straight));
        assert_eq!(eval_matrix(&b, &run(tmp.path(), &["rt-eval", "builtin:sweedler", &path])), m);
    }

    let x = Obj::plus(&p);
    let y = Obj::minus(b.module("sign").unwrap());
    let z = Obj::plus(b.module("P-").unwrap());
    let (lhs, rhs) = moves::reidemeister3(&x, &y, &z);
    let l = write_json(tmp.path(), "r3l.json", &diagram_to_json("builtin:sweedler", &lhs));
    let r = write_json(tmp.path(), "r3r.json", &diagram_to_json("builtin:sweedler", &rhs));
    let out_l = tmp.path().join("l.out");
    let out_r = tmp.path().join("r.out");
    assert_eq!(run(tmp.path(), &["rt-eval", "builtin:sweedler", &l, "--out", out_l.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(tmp.path(), &["rt-eval", "builtin:sweedler", &r, "--out", out_r.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(std::fs::read(&out_l).unwrap(), std::fs::read(&out_r).unwrap());

    let gv = b.mul(b.pivotal(), b.ribbon_inv().unwrap());
    for m in b.modules() {
        let path = write_json(tmp.path(), "loop.json", &diagram_to_json("builtin:sweedler", &moves::twisted_loop(m)));
        let v = eval_matrix(&b, &run(tmp.path(), &["rt-eval", "builtin:sweedler", &path]));
        assert_eq!(v.get(0, 0), m.act(&gv).trace(), "{}", m.name());
    }

    let bad = json!({"bottom": [["P+", "+"]], "top": [["P+", "+"]], "slices": [[{"gen": "Id", "obj": ["P+", "+"]}], [{"gen": "Nope"}]]});
    let path = write_json(tmp.path(), "bad.json", &bad);
    let out = run(tmp.path(), &["rt-eval", "builtin:sweedler", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("slice 1"), "{}", stderr(&out));
}

#[test]
fn red_to_blue_command() {
    let tmp = tempfile::tempdir().unwrap();
    let b = bundles::sweedler();
    let h = regular_rep(&b);
    let hh = tensor_rep(&b, &h, &dual_rep(&b, &h));
    let p = b.module("P+").unwrap();
    let g = hom_space(&b, p, &hh).remove(0);
    let f = dinat(&b, &h).mul(&g);
    let input = write_json(tmp.path(), "in.json", &json!({"P": "P+", "X": "1", "k": 1, "f": matrix_to_json(&f)}));
    let out = run(tmp.path(), &["red-to-blue", "builtin:sweedler", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["roundtrip"], true);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);

    let eps = json!({"rows": 4, "cols": 1, "entries": [[0, 0, "1"], [1, 0, "1"]]});
    let input = write_json(tmp.path(), "np.json", &json!({"P": "1", "X": "1", "k": 1, "f": eps}));
    let out = run(tmp.path(), &["red-to-blue", "builtin:sweedler", &input]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("inadmissible"));
}
