use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use filiform::audit::{audit_partition, AuditConfig, AuditReport};
use filiform::tables::{classification_list, render_csv, render_json, render_text};
use filiform::{
    build_table_first_class, canonical_representative, classify, deltas, is_isomorphic, rho_apply_with, stratum_invariants,
    AdaptedPair, ParamVector, Registry, Scalar, ThetaForm,
};
use serde_json::json;

/// Classification of first-class complex filiform Leibniz algebras of dimensions 5 to 8.
///
/// Algebras are read as JSON {"n": 4, "alpha": ["1", "0"], "theta": "1"}, which is L(1, 0, 1) of dimension 5.
/// Set FILIFORM_REGISTRY to a registry file to replace the bundled one.
///
/// Exit status: 0 success, 1 negative verdict or findings, 2 usage or input error.
#[derive(Parser)]
#[command(name = "filiform", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stratum, invariants and canonical representative.
    Classify { algebra: PathBuf },
    /// Decide whether two algebras are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// Apply the adapted basis change (A, B).
    Act {
        algebra: PathBuf,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        /// θ' variant; `scaled` is kept for diagnostics only.
        #[arg(long, value_enum, default_value_t = Form::Standard, hide = true)]
        theta_form: Form,
    },
    /// Δ/Θ values and the stratum invariants.
    Invariants { algebra: PathBuf },
    /// Classification list of one dimension.
    Table {
        #[arg(long)]
        dim: usize,
        /// Value for a family parameter, as k=v (repeatable).
        #[arg(long = "lambda", value_parser = parse_lambda)]
        lambdas: Vec<(usize, Scalar)>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Random audit of the stratum predicates.
    Audit {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Leibniz identity and filiformity of the multiplication table.
    Verify { algebra: PathBuf },
    /// Print the registry, optionally one dimension.
    DumpRegistry {
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Standard,
    Scaled,
}

fn parse_lambda(s: &str) -> std::result::Result<(usize, Scalar), String> {
    let (k, v) = s.split_once('=').ok_or("expected k=v")?;
    let k: usize = k.trim().trim_start_matches('l').parse().map_err(|_| format!("bad index {k:?}"))?;
    if k == 0 {
        return Err("indices start at 1".into());
    }
    let v = Scalar::parse(v.trim()).map_err(|e| e.to_string())?;
    Ok((k, v))
}

fn read_algebra(path: &Path) -> Result<ParamVector> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn registry_text() -> Result<Option<String>> {
    match std::env::var_os("FILIFORM_REGISTRY") {
        Some(p) => Ok(Some(std::fs::read_to_string(&p).with_context(|| format!("reading registry {}", Path::new(&p).display()))?)),
        None => Ok(None),
    }
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn list(v: &[Scalar]) -> String {
    format!("[{}]", strings(v).join(", "))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn audit_text(r: &AuditReport) -> String {
    let mut out = format!("dim {}  samples {}  seed {}  registry v{}\n", r.dim, r.samples, r.seed, r.registry_version);
    let mut ids: Vec<&String> = r.counts.keys().collect();
    ids.sort_by_key(|id| id.trim_start_matches("U_").parse::<usize>().unwrap_or(usize::MAX));
    for id in ids {
        out.push_str(&format!("  {id:<5} {:>8}\n", r.counts[id]));
    }
    out.push_str(&format!("  gaps  {:>8}\n", r.gaps.count));
    for p in &r.gaps.examples {
        out.push_str(&format!("    {p}\n"));
    }
    for o in &r.overlaps {
        out.push_str(&format!("  overlap {} x{} resolved to {}\n", o.strata.join("/"), o.count, o.resolved_to));
    }
    for (id, f) in &r.undefined_invariants {
        out.push_str(&format!("  undefined invariants in {id} x{}\n", f.count));
    }
    let verdict = match r.theta_arbitration.verdict {
        Some(f) => format!("{f:?}"),
        None => "none".into(),
    };
    out.push_str(&format!("  theta form satisfying the group laws: {verdict}\n"));
    out
}

fn run(cli: Cli) -> Result<u8> {
    let custom = registry_text()?;
    let owned = custom.as_deref().map(Registry::from_json).transpose()?;
    let reg = owned.as_ref().unwrap_or_else(|| Registry::bundled());
    match cli.command {
        Command::Classify { algebra } => {
            let p = read_algebra(&algebra)?;
            let s = classify(reg, &p)?;
            let inv = stratum_invariants(s, &p)?;
            let canonical = canonical_representative(reg, &p);
            if cli.json {
                print_json(&json!({
                    "stratum": s.id,
                    "invariants": strings(&inv),
                    "canonical": canonical.as_ref().ok(),
                    "error": canonical.as_ref().err().map(|e| e.to_string()),
                }));
            } else {
                println!("stratum: {}", s.id);
                println!("invariants: {}", list(&inv));
                match &canonical {
                    Ok(c) => println!("canonical: {c}"),
                    Err(e) => println!("canonical: none ({e})"),
                }
            }
            Ok(if canonical.is_ok() { 0 } else { 1 })
        }
        Command::Iso { a, b } => {
            let p = read_algebra(&a)?;
            let q = read_algebra(&b)?;
            if p.dim() != q.dim() {
                println!("not isomorphic: dimensions {} and {}", p.dim(), q.dim());
                return Ok(1);
            }
            let sp = classify(reg, &p)?;
            let sq = classify(reg, &q)?;
            let ip = stratum_invariants(sp, &p)?;
            let iq = stratum_invariants(sq, &q)?;
            let iso = is_isomorphic(reg, &p, &q)?;
            if cli.json {
                print_json(&json!({
                    "isomorphic": iso,
                    "strata": [sp.id, sq.id],
                    "invariants": [strings(&ip), strings(&iq)],
                }));
            } else if iso {
                println!("isomorphic: {}, invariants {}", sp.id, list(&ip));
            } else {
                println!("not isomorphic: {} {} vs {} {}", sp.id, list(&ip), sq.id, list(&iq));
            }
            Ok(if iso { 0 } else { 1 })
        }
        Command::Act { algebra, a, b, theta_form } => {
            let p = read_algebra(&algebra)?;
            let pair = AdaptedPair::new(Scalar::parse(&a)?, Scalar::parse(&b)?)?;
            let form = match theta_form {
                Form::Standard => ThetaForm::Standard,
                Form::Scaled => ThetaForm::ScaledCorrection,
            };
            let q = rho_apply_with(&pair, &p, form);
            println!("{}", serde_json::to_string(&q)?);
            Ok(0)
        }
        Command::Invariants { algebra } => {
            let p = read_algebra(&algebra)?;
            let dt = deltas(&p);
            let s = classify(reg, &p)?;
            let inv = stratum_invariants(s, &p)?;
            if cli.json {
                let d: BTreeMap<String, String> = dt.delta.iter().map(|(k, v)| (format!("D{k}"), v.to_string())).collect();
                let t: BTreeMap<String, String> = dt.theta.iter().map(|(k, v)| (format!("T{k}"), v.to_string())).collect();
                print_json(&json!({ "delta": d, "theta": t, "stratum": s.id, "invariants": strings(&inv) }));
            } else {
                for (k, v) in &dt.delta {
                    println!("Δ{k} = {v}");
                }
                for (k, v) in &dt.theta {
                    println!("Θ{k} = {v}");
                }
                println!("{}: {}", s.id, list(&inv));
            }
            Ok(0)
        }
        Command::Table { dim, lambdas, format } => {
            let lambdas: BTreeMap<usize, Scalar> = lambdas.into_iter().collect();
            let entries = classification_list(reg, dim, &lambdas)?;
            let out = match format {
                Format::Text => render_text(&entries),
                Format::Json => render_json(&entries) + "\n",
                Format::Csv => render_csv(&entries),
            };
            print!("{out}");
            Ok(0)
        }
        Command::Audit { dim, samples, seed } => {
            let cfg = AuditConfig { samples, seed, ..AuditConfig::default() };
            let r = audit_partition(reg, dim, &cfg)?;
            if cli.json {
                print_json(&serde_json::to_value(&r)?);
            } else {
                print!("{}", audit_text(&r));
            }
            Ok(if r.is_clean() { 0 } else { 1 })
        }
        Command::Verify { algebra } => {
            let p = read_algebra(&algebra)?;
            let t = build_table_first_class(&p);
            let violations = t.check_leibniz();
            let series = t.lower_central_series()?;
            let filiform = t.is_filiform();
            if cli.json {
                print_json(&json!({
                    "leibniz_violations": violations.len(),
                    "lower_central_series": series,
                    "filiform": filiform,
                }));
            } else {
                println!("leibniz violations: {}", violations.len());
                println!("lower central series: {series:?}");
                println!("filiform: {filiform}");
            }
            Ok(if violations.is_empty() && filiform { 0 } else { 1 })
        }
        Command::DumpRegistry { dim } => {
            let text = custom.as_deref().unwrap_or(Registry::bundled_json());
            let mut v: serde_json::Value = serde_json::from_str(text)?;
            if let Some(d) = dim {
                reg.strata(d)?;
                let dims = v["dimensions"].as_array().cloned().unwrap_or_default();
                match dims.into_iter().find(|x| x["dim"] == d) {
                    Some(x) => v = x,
                    None => bail!("dimension {d} missing from registry file"),
                }
            }
            print_json(&v);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
