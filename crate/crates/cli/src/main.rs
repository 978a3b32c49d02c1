mod cache;
mod ops;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cache::{Cache, Key};
use ops::{CliError, Loaded};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// Exact computations for admissible skein theory of finite-dimensional
/// ribbon Hopf algebras.
///
/// BUNDLE arguments are paths to bundle JSON files, or `builtin:NAME` with NAME
/// one of trivial, z2, z3, sweedler, uqsl2-p2, uqsl2-p3, uqsl2-odd3.
#[derive(Parser, Debug)]
#[command(name = "modskein", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Result cache location; overrides MODSKEIN_CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Skip the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads. The engine computes sequentially; values other than 1
    /// are accepted and have no effect.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    /// Add non-authoritative decimal renderings next to exact values.
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the bundle axioms; exit 1 if any fail.
    Validate { bundle: String },
    /// Generate the restricted quantum group of sl2 at q = exp(iπ/p).
    GenUqsl2 {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        p: u32,
        #[arg(long)]
        out: PathBuf,
        /// Search for R-matrix and ribbon data and keep them if they validate.
        #[arg(long)]
        with_r: bool,
    },
    /// Basis of symmetric linear forms.
    Slf { bundle: String },
    /// Character of a module as a symmetric linear form.
    Qchar { bundle: String, module: String },
    /// Skein algebra of the genus-g surface with n boundary components.
    Skalg {
        bundle: String,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// Write the algebra presentation here; only the summary goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Recompute even on a cache hit and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Characters of simple modules in the annulus algebra.
    CharMap {
        bundle: String,
        #[arg(long)]
        verify: bool,
    },
    /// Evaluate a diagram file.
    RtEval {
        bundle: String,
        diagram: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift an intertwiner P → L^k ⊗ X through the regular representation.
    /// The input file holds {"P", "X", "k", "f"} with f a matrix.
    RedToBlue { bundle: String, input: PathBuf },
    /// Result cache maintenance.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCmd {
    /// Recompute every cached entry and compare bytes.
    Verify,
}

fn cache_dir(cli: &Cli) -> PathBuf {
    if let Some(d) = &cli.cache_dir {
        return d.clone();
    }
    if let Some(d) = std::env::var_os("MODSKEIN_CACHE_DIR") {
        return PathBuf::from(d);
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("modskein"),
        None => std::env::temp_dir().join("modskein-cache"),
    }
}

/// Run a cacheable operation; the cached payload is the canonical JSON
/// document, rendered per format afterwards.
fn cached(cli: &Cli, loaded: &Loaded, op: &str, params: serde_json::Value, verify: bool) -> Result<(serde_json::Value, i32), CliError> {
    let params = json!({"args": params, "float": cli.float});
    if cli.no_cache {
        return ops::compute(op, &params, loaded);
    }
    let cache = Cache::open(&cache_dir(cli))?;
    let key = Key::new(&loaded.bytes, &loaded.source, op, params.clone());
    if let Some((payload, exit)) = cache.get(&key) {
        let doc: serde_json::Value = serde_json::from_str(&payload).map_err(|e| CliError::Input(e.into()))?;
        if verify {
            let (fresh, _) = ops::compute(op, &params, loaded)?;
            if serde_json::to_string(&fresh).map_err(|e| CliError::Input(e.into()))? != payload {
                return Err(CliError::Failed(format!("cache entry {} differs from a fresh computation", key.hash)));
            }
        }
        return Ok((doc, exit));
    }
    let (doc, exit) = ops::compute(op, &params, loaded)?;
    let payload = serde_json::to_string(&doc).map_err(|e| CliError::Input(e.into()))?;
    cache.put(&key, &payload, exit)?;
    Ok((doc, exit))
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let f = cli.format;
    let emit = |op: &str, doc: &serde_json::Value| -> Result<(), CliError> {
        print!("{}", ops::render(op, doc, f)?);
        Ok(())
    };
    match &cli.cmd {
        Cmd::Validate { bundle } => {
            let loaded = ops::load(bundle)?;
            let (doc, exit) = ops::compute("validate", &json!({"args": {}, "float": cli.float}), &loaded)?;
            emit("validate", &doc)?;
            Ok(exit)
        }
        Cmd::GenUqsl2 { p, out, with_r } => {
            let (doc, exit) = ops::gen_uqsl2(*p, out, *with_r)?;
            emit("gen-uqsl2", &doc)?;
            Ok(exit)
        }
        Cmd::Slf { bundle } => {
            let loaded = ops::load(bundle)?;
            let (doc, exit) = cached(cli, &loaded, "slf", json!({}), false)?;
            emit("slf", &doc)?;
            Ok(exit)
        }
        Cmd::Qchar { bundle, module } => {
            let loaded = ops::load(bundle)?;
            let (doc, exit) = cached(cli, &loaded, "qchar", json!({"module": module}), false)?;
            emit("qchar", &doc)?;
            Ok(exit)
        }
        Cmd::Skalg { bundle, g, n, out, verify } => {
            let loaded = ops::load(bundle)?;
            let (doc, exit) = cached(cli, &loaded, "skalg", json!({"g": g, "n": n}), *verify)?;
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&doc["presentation"]).map_err(|e| CliError::Input(e.into()))?;
                std::fs::write(path, text + "\n").map_err(|e| CliError::Input(e.into()))?;
                emit("skalg-summary", &doc)?;
            } else {
                emit("skalg", &doc)?;
            }
            Ok(exit)
        }
        Cmd::CharMap { bundle, verify } => {
            let loaded = ops::load(bundle)?;
            let (doc, exit) = cached(cli, &loaded, "char-map", json!({}), *verify)?;
            emit("char-map", &doc)?;
            Ok(exit)
        }
        Cmd::RtEval { bundle, diagram, out } => {
            let loaded = ops::load(bundle)?;
            let (doc, exit) = ops::rt_eval(&loaded, diagram, cli.float)?;
            match out {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&doc["matrix"]).map_err(|e| CliError::Input(e.into()))?;
                    std::fs::write(path, text + "\n").map_err(|e| CliError::Input(e.into()))?;
                }
                None => emit("rt-eval", &doc)?,
            }
            Ok(exit)
        }
        Cmd::RedToBlue { bundle, input } => {
            let loaded = ops::load(bundle)?;
            let (doc, exit) = ops::red_to_blue(&loaded, input, cli.float)?;
            emit("red-to-blue", &doc)?;
            Ok(exit)
        }
        Cmd::Cache { action: CacheCmd::Verify } => {
            let cache = Cache::open(&cache_dir(cli))?;
            let mut results = Vec::new();
            let mut bad = 0;
            for entry in cache.entries()? {
                let status = match ops::load(&entry.key.bundle_source) {
                    Ok(loaded) if cache::Key::new(&loaded.bytes, "", "", json!(null)).bundle_sha == entry.key.bundle_sha => {
                        match ops::compute(&entry.key.operation, &entry.key.params, &loaded) {
                            Ok((doc, exit)) => {
                                let fresh = serde_json::to_string(&doc).map_err(|e| CliError::Input(e.into()))?;
                                if fresh == entry.payload && exit == entry.exit {
                                    "match"
                                } else {
                                    "mismatch"
                                }
                            }
                            Err(_) => "error",
                        }
                    }
                    Ok(_) => "stale-source",
                    Err(_) => "missing-source",
                };
                if status != "match" {
                    bad += 1;
                }
                results.push(json!({"entry": entry.key.hash, "operation": entry.key.operation, "status": status}));
            }
            let doc = json!({"entries": results, "mismatches": bad});
            emit("cache-verify", &doc)?;
            Ok(if bad == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
