use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use twalg::closure::{algebra_span, expected_dim, llrr_generators, terwilliger_algebra_of};
use twalg::decomposition::{build_hwv_recursive, decompose, diff_against_reference, highest_weight_vectors, DecompositionReport};
use twalg::digraph::{TypeTriple, Vertex};
use twalg::lie::{build_operators, OperatorSet};
use twalg::linalg::ExactVector;
use twalg::report::{Check, Format, RunReport};
use twalg::suite::{adjudications, closure_suite, decomposition_suite, relations_suite, sym_suite, wedderburn_checks};
use twalg::sym_tensor::wedderburn_profile;
use twalg::{Error, Limits};

/// Exact verification of the Terwilliger algebra of the Hamming digraph H*(d,3).
#[derive(Parser, Debug)]
#[command(name = "twalg", version)]
struct Cli {
    /// Word length of the digraph.
    #[arg(long, global = true)]
    d: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Table)]
    format: OutFormat,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    max_threads: Option<usize>,

    /// Largest d for algebra closure (overrides TWALG_CAP).
    #[arg(long, global = true)]
    cap_closure: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Table,
    Json,
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Table => Format::Table,
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GeneratorSet {
    /// A, A^T and every E*.
    Full,
    /// L1, L2, R1, R2.
    Llrr,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every suite at one d.
    Verify,
    /// Operator identities and higher commutators.
    Relations {
        /// Same as --format json.
        #[arg(long)]
        json: bool,
    },
    /// Decompose the standard module into irreducibles.
    Decompose {
        /// Also build every irreducible basis and check their union has full rank.
        #[arg(long)]
        bases: bool,
    },
    /// Algebra dimension by multiplicative closure.
    Closure {
        #[arg(long, value_enum, default_value_t = GeneratorSet::Full)]
        generators: GeneratorSet,
    },
    /// Block sizes of the symmetric tensor algebra.
    Wedderburn,
    /// Symmetrization, lift and highest weight tensor checks.
    SymCheck,
    /// Decompositions for d = 1..5 against the published table.
    Example45,
    /// Highest weight vectors of one shell.
    Hwv {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
}

/// Failure that ends a command before a report exists.
enum Abort {
    Usage(String),
    Error(Error),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        Abort::Error(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format: Format = if matches!(cli.command, Command::Relations { json: true }) {
        Format::Json
    } else {
        cli.format.into()
    };
    if let Some(n) = cli.max_threads {
        if n == 0 {
            eprintln!("error: --max-threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool configured once");
    }
    let started = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            report.elapsed_ms = started.elapsed().as_millis();
            print!("{}", report.render(format));
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Abort::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Abort::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Resource { .. } => 3,
                Error::Domain(_) | Error::Parse(_) | Error::Precondition(_) => 2,
                _ => 1,
            })
        }
    }
}

fn limits(cli: &Cli) -> Result<Limits, Abort> {
    let mut l = Limits::from_env().map_err(|e| Abort::Usage(e.to_string()))?;
    if let Some(c) = cli.cap_closure {
        l.max_closure_d = c;
    }
    Ok(l)
}

fn need_d(cli: &Cli) -> Result<usize, Abort> {
    match cli.d {
        None => Err(Abort::Usage("this command needs --d <n>".into())),
        Some(0) => Err(Abort::Usage("--d must be at least 1".into())),
        Some(d) => Ok(d),
    }
}

fn operators(d: usize, limits: &Limits) -> Result<OperatorSet, Abort> {
    Ok(build_operators(d, limits)?)
}

fn run(cli: &Cli) -> Result<RunReport, Abort> {
    let limits = limits(cli)?;
    match &cli.command {
        Command::Verify => verify(need_d(cli)?, &limits),
        Command::Relations { .. } => {
            let d = need_d(cli)?;
            let ops = operators(d, &limits)?;
            let mut r = RunReport::new("relations", Some(d));
            r.checks = relations_suite(&ops);
            Ok(r)
        }
        Command::Decompose { bases } => {
            let d = need_d(cli)?;
            let ops = operators(d, &limits)?;
            let dec = decompose(&ops)?;
            let mut r = RunReport::new("decompose", Some(d));
            attach_decomposition(&mut r, &dec);
            r.checks = decomposition_suite(&ops, *bases);
            Ok(r)
        }
        Command::Closure { generators } => closure(need_d(cli)?, *generators, &limits),
        Command::Wedderburn => {
            let d = cli.d.ok_or_else(|| Abort::Usage("this command needs --d <n>".into()))?;
            let profile = wedderburn_profile(d)?;
            let mut r = RunReport::new("wedderburn", Some(d));
            r.body.push("l  m  block_dim".into());
            r.body
                .extend(profile.blocks.iter().map(|b| format!("{}  {}  {}", b.ell, b.m, b.block_dim)));
            r.body.push(format!("sum of squares {} = C({}, 8)", profile.total_dim, d + 8));
            r.data.insert("blocks".into(), json!(profile.blocks));
            r.data.insert("total_dim".into(), json!(profile.total_dim));
            r.checks = wedderburn_checks(d);
            Ok(r)
        }
        Command::SymCheck => {
            let d = need_d(cli)?;
            let ops = operators(d, &limits)?;
            let algebra = match limits.check_closure_d(d) {
                Ok(()) => Some(terwilliger_algebra_of(&ops, &limits)?),
                Err(_) => None,
            };
            let mut r = RunReport::new("sym-check", Some(d));
            r.checks = sym_suite(d, algebra.as_ref(), &limits);
            if algebra.is_none() {
                r.checks.push(Check::info(
                    format!("d={d} membership checks"),
                    format!("skipped above closure cap {}", limits.max_closure_d),
                ));
            }
            Ok(r)
        }
        Command::Example45 => {
            let mut r = RunReport::new("example45", None);
            let mut all = Vec::new();
            for d in 1..=5 {
                let ops = operators(d, &limits)?;
                let dec = decompose(&ops)?;
                r.body.push(format!("d = {d}: {}", table_line(&dec)));
                let diffs = diff_against_reference(&dec);
                r.checks.push(Check::new(
                    format!("d={d} reference table"),
                    diffs.is_empty(),
                    if diffs.is_empty() { "match".to_string() } else { diffs.join("; ") },
                ));
                all.push(decomposition_json(&dec));
            }
            r.data.insert("decompositions".into(), json!(all));
            Ok(r)
        }
        Command::Hwv { s, t } => hwv(need_d(cli)?, *s, *t, &limits),
    }
}

fn verify(d: usize, limits: &Limits) -> Result<RunReport, Abort> {
    let ops = operators(d, limits)?;
    let mut r = RunReport::new("verify", Some(d));
    r.checks.extend(relations_suite(&ops));
    r.checks.extend(decomposition_suite(&ops, d <= 7));
    r.checks.extend(adjudications(&ops).iter().map(|a| a.check(d)));
    let algebra = if limits.check_closure_d(d).is_ok() {
        let (checks, algebra) = closure_suite(&ops, limits);
        r.checks.extend(checks);
        algebra
    } else {
        r.checks.push(Check::info(
            format!("d={d} closure"),
            format!("skipped above closure cap {}", limits.max_closure_d),
        ));
        None
    };
    r.checks.extend(sym_suite(d, algebra.as_ref(), limits));
    if let Ok(dec) = decompose(&ops) {
        attach_decomposition(&mut r, &dec);
    }
    Ok(r)
}

fn closure(d: usize, generators: GeneratorSet, limits: &Limits) -> Result<RunReport, Abort> {
    limits.check_closure_d(d)?;
    let ops = operators(d, limits)?;
    let mut r = RunReport::new("closure", Some(d));
    let expected = expected_dim(d) as usize;
    match generators {
        GeneratorSet::Full => {
            let (checks, algebra) = closure_suite(&ops, limits);
            if let Some(a) = &algebra {
                r.body.push(format!("dim = {}, C(d+8,8) = {expected}", a.dim()));
                r.data.insert("dim".into(), json!(a.dim()));
            }
            r.checks = checks;
        }
        GeneratorSet::Llrr => {
            let a = algebra_span(&llrr_generators(&ops))?;
            r.body.push(format!("dim <L1,L2,R1,R2> = {}, C(d+8,8) = {expected}", a.dim()));
            r.data.insert("dim".into(), json!(a.dim()));
            r.checks.push(Check::new(
                format!("d={d} dim <L1,L2,R1,R2> = C(d+8,8)"),
                a.dim() == expected,
                format!("{} vs {expected}", a.dim()),
            ));
        }
    }
    r.data.insert("expected".into(), json!(expected));
    Ok(r)
}

fn hwv(d: usize, s: usize, t: usize, limits: &Limits) -> Result<RunReport, Abort> {
    let ops = operators(d, limits)?;
    let ty = TypeTriple::of_shell(d, s, t)?;
    let vectors = highest_weight_vectors(&ops, s, t)?;
    let mut r = RunReport::new("hwv", Some(d));
    r.body.push(format!("type {ty}: {} highest weight vectors", vectors.len()));
    r.body.extend(vectors.iter().map(|v| format!("  {}", render_vector(d, v))));
    r.data.insert("type".into(), json!([ty.r, ty.s, ty.t]));
    r.data.insert(
        "vectors".into(),
        json!(vectors.iter().map(|v| vector_json(d, v)).collect::<Vec<_>>()),
    );
    if ty.r >= ty.s && ty.s >= ty.t {
        let check = build_hwv_recursive(&ops, s, t).and_then(|v| {
            let inside = twalg::linalg::in_span(&v, &vectors)?;
            Ok(Check::new(format!("d={d} recursive hwv {ty} in span"), inside, render_vector(d, &v)))
        });
        r.checks.push(Check::from_result(format!("d={d} recursive hwv {ty} in span"), check));
    } else {
        r.checks.push(Check::new(
            format!("d={d} no hwv of type {ty}"),
            vectors.is_empty(),
            format!("{} found", vectors.len()),
        ));
    }
    Ok(r)
}

fn render_vector(d: usize, v: &ExactVector) -> String {
    v.iter()
        .map(|(i, c)| format!("{c}*{}", Vertex::from_index(d, i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn vector_json(d: usize, v: &ExactVector) -> serde_json::Value {
    json!(v
        .iter()
        .map(|(i, c)| json!([Vertex::from_index(d, i).to_string(), c.to_string()]))
        .collect::<Vec<_>>())
}

fn table_line(dec: &DecompositionReport) -> String {
    dec.blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
}

fn decomposition_json(dec: &DecompositionReport) -> serde_json::Value {
    json!({
        "d": dec.d,
        "blocks": dec.blocks.iter().map(|b| json!({
            "type": [b.hwv_type.r, b.hwv_type.s, b.hwv_type.t],
            "weight": [b.weight.m1, b.weight.m2],
            "dim": b.dim,
            "mult": b.multiplicity,
        })).collect::<Vec<_>>(),
        "total": dec.total,
    })
}

fn attach_decomposition(r: &mut RunReport, dec: &DecompositionReport) {
    r.body.extend(dec.blocks.iter().map(|b| b.to_string()));
    r.body.push(format!("total {}", dec.total));
    if let serde_json::Value::Object(map) = decomposition_json(dec) {
        for (k, v) in map {
            if k != "d" {
                r.data.insert(k, v);
            }
        }
    }
}
