//! Command-line front end. Every command produces one JSON envelope
//! `{command, config, result, duration_ms, pass}`; text and CSV output are
//! rendered from the same value.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{closure_generate, from_spanning_set, t0_basis};
use crate::context::TerwilligerContext;
use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::notation::{self, ex, Params};
use crate::scheme::{AxiomCheck, GroupSpec, SchemeDescriptor, TripleSpace};
use crate::structure::{self, classify_case, semisimple_closed_form, DecomposeOptions};
use crate::verify::{self, RunOptions, Suite, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Emit {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomMode {
    Full,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteArg {
    Identities,
    Predicates,
    All,
}

#[derive(Debug, Parser)]
#[command(
    name = "tforge",
    version,
    about = "Terwilliger algebras of Cayley-table schemes over GF(p)"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub emit: Emit,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Build the scheme of a group and print valencies and the intersection tensor.
    Scheme {
        /// `ea2:<m>` for the group of order 2^m, or `table:<path>`.
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value = "full")]
        check_axioms: AxiomMode,
    },
    /// Generate T by closure and report its dimensions.
    Algebra {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
        /// Write adjacency matrices, dual idempotents and the basis of T.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Run the identity and predicate registry.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long)]
        filter: Option<String>,
        /// Check transposed identities.
        #[arg(long)]
        transposed: bool,
    },
    /// Certify the radical and the Wedderburn blocks of T and its corners.
    Decompose {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
        /// Report only the corner at E_a.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=4))]
        corner: Option<u8>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Semisimplicity table for n = 4, 8, ..., nmax.
    Semisimple {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        nmax: usize,
        /// Also decompose every n up to this bound and compare.
        #[arg(long, default_value_t = 0)]
        certify_up_to: usize,
    },
    /// Decompose every grid point.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        ns: Vec<usize>,
        #[arg(long)]
        allow_large: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Scheme { .. } => "scheme",
            Command::Algebra { .. } => "algebra",
            Command::Verify { .. } => "verify",
            Command::Decompose { .. } => "decompose",
            Command::Semisimple { .. } => "semisimple",
            Command::Sweep { .. } => "sweep",
        }
    }
}

struct Outcome {
    result: Value,
    pass: bool,
    /// Rows for CSV output.
    table: Option<Vec<Value>>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the rendered output with the exit code: 0 on pass, 1 on a failed check,
/// 2 on an error.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    let start = Instant::now();
    let config = json!({ "command": cli.command, "emit": cli.emit, "seed": cli.seed });
    let outcome = dispatch(&cli);
    let duration_ms = start.elapsed().as_millis() as u64;
    let name = cli.command.name();
    match outcome {
        Ok(o) => {
            let envelope = json!({
                "command": name,
                "config": config,
                "result": o.result,
                "duration_ms": duration_ms,
                "pass": o.pass,
            });
            (
                render(cli.emit, &envelope, o.table.as_deref()),
                if o.pass { 0 } else { 1 },
            )
        }
        Err((stage, e)) => {
            let envelope = json!({
                "command": name,
                "config": config,
                "error": { "stage": stage, "message": e.to_string() },
                "duration_ms": duration_ms,
                "pass": false,
            });
            (render(cli.emit, &envelope, None), 2)
        }
    }
}

type Staged<T> = std::result::Result<T, (&'static str, Error)>;

fn stage<T>(name: &'static str, r: Result<T>) -> Staged<T> {
    r.map_err(|e| (name, e))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn dispatch(cli: &Cli) -> Staged<Outcome> {
    match &cli.command {
        Command::Scheme { group, check_axioms } => cmd_scheme(group, *check_axioms),
        Command::Algebra {
            p,
            n,
            basepoint,
            dump,
            allow_large,
        } => cmd_algebra(*p, *n, *basepoint, dump.as_ref(), *allow_large),
        Command::Verify {
            p,
            n,
            basepoint,
            suite,
            filter,
            transposed,
        } => {
            let ctx = stage("context", TerwilligerContext::elementary_abelian(*p, *n, *basepoint))?;
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Predicates => Suite::Predicates,
                SuiteArg::All => Suite::All,
            };
            let opts = RunOptions {
                suite,
                filter: filter.clone(),
                seed: cli.seed,
                transposed: *transposed,
            };
            let rep = verify::run(&ctx, &opts);
            Ok(Outcome {
                pass: rep.pass,
                result: to_value(&rep),
                table: None,
            })
        }
        Command::Decompose {
            p,
            n,
            basepoint,
            corner,
            allow_large,
        } => {
            let opts = DecomposeOptions {
                basepoint: *basepoint,
                allow_large: *allow_large,
            };
            let rep = stage("decompose", structure::decompose_with(*p, *n, opts))?;
            let result = match corner {
                Some(a) => to_value(&rep.corners[*a as usize]),
                None => to_value(&rep),
            };
            let pass = match corner {
                Some(a) => rep.corners[*a as usize].certificate.certified,
                None => rep.certified,
            };
            Ok(Outcome {
                result,
                pass,
                table: None,
            })
        }
        Command::Semisimple { p, nmax, certify_up_to } => cmd_semisimple(*p, *nmax, *certify_up_to),
        Command::Sweep {
            primes,
            ns,
            allow_large,
        } => cmd_sweep(primes, ns, *allow_large),
    }
}

fn parse_group(spec: &str) -> Result<GroupSpec> {
    match spec.split_once(':') {
        Some(("ea2", m)) => {
            let m: u32 = m
                .parse()
                .map_err(|_| Error::Format(format!("bad exponent in {spec}")))?;
            if !(1..=10).contains(&m) {
                return Err(Error::Unsupported(format!("exponent {m} out of range")));
            }
            Ok(GroupSpec::elementary_abelian(m))
        }
        Some(("table", path)) => GroupSpec::read_table(std::path::Path::new(path)),
        _ => Err(Error::Format(format!(
            "group must be ea2:<m> or table:<path>, got {spec}"
        ))),
    }
}

fn cmd_scheme(group: &str, mode: AxiomMode) -> Staged<Outcome> {
    let g = stage("group", parse_group(group))?;
    let ea2 = crate::scheme::is_elementary_abelian_2(&g);
    let ts = stage("triples", TripleSpace::build(g))?;
    let check = match mode {
        AxiomMode::Full => AxiomCheck::Full,
        AxiomMode::Sampled => AxiomCheck::sampled(),
    };
    let sd = stage("axioms", SchemeDescriptor::build(&ts, check))?;
    let closed = SchemeDescriptor::closed_form(ts.n());
    let agrees = closed.tensor == sd.tensor;
    let result = json!({
        "group": group,
        "n": ts.n(),
        "points": ts.len(),
        "elementary_abelian": ea2,
        "axiom_check": check,
        "valencies": sd.valencies,
        "symmetric": sd.is_symmetric(),
        "tensor": sd.tensor,
        "closed_form_agrees": agrees,
    });
    Ok(Outcome {
        result,
        pass: agrees || !ea2,
        table: None,
    })
}

fn cmd_algebra(p: u64, n: usize, basepoint: usize, dump: Option<&PathBuf>, allow_large: bool) -> Staged<Outcome> {
    let ctx = stage("context", TerwilligerContext::elementary_abelian(p, n, basepoint))?;
    let pr = stage("params", Params::new(p, n))?;
    let alg = if n <= 16 || allow_large {
        stage("closure", closure_generate(&ctx))?
    } else {
        stage("closure", from_spanning_set(&ctx, &notation::paper_basis(pr)))?
    };
    let dim_t0 = stage("t0", t0_basis(&ctx))?.rank();
    let mut corner_dims = Vec::new();
    for a in 0..=4 {
        let e = stage("corner", alg.coords_of_expr(&ctx, &ex(&format!("E{a}"))))?;
        corner_dims.push(stage("corner", alg.corner_subalgebra(&e))?.dim());
    }
    let listed = notation::paper_basis(pr);
    let span = stage("basis", structure::coord_span_of(&ctx, &alg, &listed))?;
    let basis_ok = span.rank() == alg.dim() && span.rank() == listed.len();
    if let Some(dir) = dump {
        stage("dump", dump_matrices(&ctx, &alg, dir))?;
    }
    let result = json!({
        "p": p,
        "n": n,
        "basepoint": basepoint,
        "dim_T": alg.dim(),
        "dim_T0": dim_t0,
        "corner_dims": corner_dims,
        "basis_ok": basis_ok,
        "basis_listed": listed.len(),
        "closure": alg.certificate(),
    });
    Ok(Outcome {
        result,
        pass: basis_ok,
        table: None,
    })
}

fn dump_matrices(ctx: &TerwilligerContext, alg: &crate::algebra::AlgebraHandle, dir: &PathBuf) -> Result<()> {
    fs::create_dir_all(dir)?;
    for i in 0..5 {
        fs::write(dir.join(format!("A{i}.txt")), ctx.adjacency_matrix(i).to_dump_string())?;
        fs::write(dir.join(format!("E{i}.txt")), ctx.dual_idempotent(i).to_dump_string())?;
    }
    for (k, m) in alg.span().rows().enumerate() {
        fs::write(dir.join(format!("T{k:02}.txt")), m.to_dump_string())?;
    }
    Ok(())
}

fn cmd_semisimple(p: u64, nmax: usize, certify_up_to: usize) -> Staged<Outcome> {
    stage("modulus", PrimeModulus::new(p))?;
    let mut rows = Vec::new();
    let mut pass = true;
    let mut n = 4;
    while n <= nmax {
        let case = stage("classify", classify_case(p, n))?;
        let closed = semisimple_closed_form(p, n);
        let mut row = json!({ "n": n, "case": case, "semisimple": closed });
        if n <= certify_up_to {
            let rep = stage("decompose", structure::decompose(p, n, 0))?;
            row["computed"] = json!(rep.semisimple);
            row["certified"] = json!(rep.certified);
            pass &= rep.certified && rep.semisimple == closed;
        }
        rows.push(row);
        n *= 2;
    }
    Ok(Outcome {
        result: json!({ "p": p, "rows": rows.clone() }),
        pass,
        table: Some(rows),
    })
}

fn cmd_sweep(primes: &[u64], ns: &[usize], allow_large: bool) -> Staged<Outcome> {
    let mut rows = Vec::new();
    let mut pass = true;
    for &n in ns {
        for &p in primes {
            let rep = stage(
                "decompose",
                structure::decompose_with(
                    p,
                    n,
                    DecomposeOptions {
                        basepoint: 0,
                        allow_large,
                    },
                ),
            )?;
            pass &= rep.certified && rep.semisimple == rep.semisimple_closed_form;
            rows.push(json!({
                "p": p,
                "n": n,
                "case": rep.case,
                "dim_T": rep.dim_t,
                "dim_rad": rep.dim_rad,
                "blocks": rep.blocks,
                "semisimple": rep.semisimple,
                "certified": rep.certified,
                "partial_certificate": rep.partial_certificate,
                "duration_ms": rep.duration_ms,
            }));
        }
    }
    Ok(Outcome {
        result: json!({ "rows": rows.clone() }),
        pass,
        table: Some(rows),
    })
}

fn render(emit: Emit, envelope: &Value, table: Option<&[Value]>) -> String {
    match emit {
        Emit::Json => serde_json::to_string_pretty(envelope).expect("json") + "\n",
        Emit::Text => {
            let mut s = String::new();
            text_lines(&mut s, envelope, 0);
            s
        }
        Emit::Csv => match table {
            Some(rows) => csv_rows(rows),
            None => {
                let mut flat = Vec::new();
                flatten("", envelope, &mut flat);
                let mut s = String::from("key,value\n");
                for (k, v) in flat {
                    let _ = writeln!(s, "{k},{}", csv_field(&v));
                }
                s
            }
        },
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn text_lines(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text_lines(out, x, depth + 1);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for i in items {
                            let _ = writeln!(out, "{pad}  -");
                            text_lines(out, i, depth + 2);
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar_text(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other));
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar_text(other))),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_rows(rows: &[Value]) -> String {
    let Some(Value::Object(first)) = rows.first() else {
        return String::new();
    };
    let keys: Vec<&String> = first.keys().collect();
    let mut s = keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(",") + "\n";
    for r in rows {
        let line: Vec<String> = keys.iter().map(|k| csv_field(&scalar_text(&r[k.as_str()]))).collect();
        s += &(line.join(",") + "\n");
    }
    s
}

/// Caps the worker pool at `TFORGE_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("TFORGE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_valencies() {
        let (out, code) = run(["tforge", "scheme", "--group", "ea2:2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["valencies"], json!([1, 3, 3, 3, 6]));
        assert_eq!(v["pass"], json!(true));
    }

    #[test]
    fn errors_carry_a_stage() {
        let (out, code) = run(["tforge", "algebra", "--p", "4", "--n", "4"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["stage"], json!("context"));
    }

    #[test]
    fn csv_quotes_lists() {
        let rows = vec![json!({"p": 2, "blocks": [5, 4, 1]})];
        assert_eq!(csv_rows(&rows), "blocks,p\n\"[5,4,1]\",2\n");
    }

    #[test]
    fn text_output_lists_fields() {
        let (out, code) = run(["tforge", "--emit", "text", "scheme", "--group", "ea2:2"]);
        assert_eq!(code, 0);
        assert!(out.contains("valencies: [1,3,3,3,6]"));
    }
}
