use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gramcalc::output::TriangleJson;
use gramcalc::verify::{verify_cases, StandardOracles};
use gramcalc::{
    apply_operator, compute_case_triangle, find_case, find_cases, parse_polynomial, CaseSpec,
    CoefficientTriangle, Grammar, Method, OperatorExpr, Oracle, Strictness,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "gramcalc",
    version,
    about = "Grammatical calculus over integer polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply D or a prefixed operator such as xD to a seed word.
    Derive(DeriveArgs),
    /// Print the triangle derived from a registry case.
    Case(CaseArgs),
    /// Check registry cases against their oracles.
    Verify(VerifyArgs),
    /// Print an oracle triangle without the grammar engine.
    Triangle(TriangleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct DeriveArgs {
    /// Grammar text, e.g. "x -> x*y; y -> y".
    #[arg(
        long,
        required_unless_present = "grammar_file",
        conflicts_with = "grammar_file"
    )]
    grammar: Option<String>,
    /// File holding the grammar text.
    #[arg(long)]
    grammar_file: Option<PathBuf>,
    #[arg(long)]
    seed: String,
    /// `D` or a monomial prefix followed by `D`, e.g. `xD`.
    #[arg(long, default_value = "D")]
    op: String,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    /// Print every iterate, not just the last.
    #[arg(long)]
    trace: bool,
    /// Reject letters without a rule instead of treating them as constants.
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct CaseArgs {
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = 5)]
    rows: usize,
    /// Case parameter, e.g. r=2.
    #[arg(long, value_parser = parse_param)]
    param: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["all", "case"]))]
struct VerifyArgs {
    #[arg(long)]
    all: bool,
    #[arg(long)]
    case: Option<String>,
    #[arg(long, value_parser = parse_param, requires = "case")]
    param: Option<usize>,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct TriangleArgs {
    #[arg(long)]
    oracle: String,
    #[arg(long, default_value_t = 5)]
    rows: usize,
    /// enumeration, excedances, recurrence, explicit, bell or series.
    #[arg(long)]
    method: Option<String>,
    #[arg(long, value_parser = parse_param)]
    param: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

fn parse_param(s: &str) -> Result<usize, String> {
    let value = s
        .strip_prefix("r=")
        .ok_or_else(|| format!("expected r=N, got `{s}`"))?;
    value
        .parse()
        .map_err(|_| format!("`{value}` is not a non-negative integer"))
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn cmd_derive(args: DeriveArgs) -> CmdResult {
    let text = match (&args.grammar, &args.grammar_file) {
        (Some(g), _) => g.clone(),
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?
        }
        (None, None) => unreachable!("clap requires one grammar source"),
    };
    let grammar = Grammar::parse(&text).map_err(|e| format!("grammar: {e}"))?;
    let seed = parse_polynomial(&args.seed).map_err(|e| format!("seed: {e}"))?;
    let op: OperatorExpr = args.op.parse().map_err(|e| format!("operator: {e}"))?;
    let strictness = if args.strict {
        Strictness::Strict
    } else {
        Strictness::Lenient
    };
    let trace = apply_operator(&grammar, &op, &seed, args.steps, strictness)?;
    if !trace.warnings.is_empty() {
        let names: Vec<String> = trace.warnings.iter().map(ToString::to_string).collect();
        eprintln!(
            "warning: letters without a rule treated as constants: {}",
            names.join(", ")
        );
    }

    let shown: Vec<(usize, String)> = if args.trace {
        trace
            .iterates
            .iter()
            .enumerate()
            .map(|(i, p)| (i, p.to_string()))
            .collect()
    } else {
        vec![(args.steps, trace.last().to_string())]
    };
    match args.format {
        Format::Table if args.trace => shown.iter().for_each(|(i, p)| println!("{i}: {p}")),
        Format::Table => println!("{}", shown[0].1),
        Format::Csv => {
            println!("step,polynomial");
            shown.iter().for_each(|(i, p)| println!("{i},{p}"));
        }
        Format::Json => {
            let mut out = json!({
                "grammar": grammar.to_string(),
                "operator": op.to_string(),
                "seed": seed.to_string(),
                "steps": args.steps,
                "result": trace.last().to_string(),
                "warnings": trace.warnings.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            if args.trace {
                out["iterates"] = json!(shown.iter().map(|(_, p)| p).collect::<Vec<_>>());
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(())
}

fn print_triangle(t: &TriangleJson, format: Format) {
    match format {
        Format::Table => print!("{}", t.to_table()),
        Format::Json => println!("{}", t.to_json()),
        Format::Csv => print!("{}", t.to_csv()),
    }
}

fn cmd_case(args: CaseArgs) -> CmdResult {
    let case = find_case(&args.id, args.param)?;
    let tri = compute_case_triangle(case, args.rows)?;
    print_triangle(
        &TriangleJson::new(case.id, &tri).with_param("r", case.r),
        args.format,
    );
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let cases: Vec<CaseSpec> = match &args.case {
        Some(id) => {
            let found = find_cases(id, args.param);
            if found.is_empty() {
                let suffix = args.param.map(|r| format!(" with r={r}")).unwrap_or_default();
                return Err(Failure::Usage(format!("unknown case `{id}`{suffix}")));
            }
            found.into_iter().cloned().collect()
        }
        None => gramcalc::case_registry().to_vec(),
    };
    let report = verify_cases(&cases, args.max_n, &StandardOracles);
    match args.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Table => print!("{}", report.to_table()),
        Format::Csv => {
            println!("case,status,n,k,source,engine,oracle");
            for c in &report.cases {
                let d = c.first_divergence.as_ref();
                let field = |f: Option<String>| f.unwrap_or_default();
                println!(
                    "{},{},{},{},{},{},{}",
                    c.label(),
                    serde_json::to_value(c.status)?.as_str().unwrap_or_default(),
                    field(d.map(|d| d.n.to_string())),
                    field(d.and_then(|d| d.k).map(|k| k.to_string())),
                    field(d.map(|d| d.source.clone())),
                    field(d.and_then(|d| d.engine.clone())),
                    field(d.and_then(|d| d.oracle.clone())),
                );
            }
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_triangle(args: TriangleArgs) -> CmdResult {
    let oracle = Oracle::from_name(&args.oracle, args.param)?;
    let method = match &args.method {
        Some(m) => m.parse::<Method>()?,
        None => oracle.default_method(),
    };
    let cap = oracle
        .cap(method)
        .ok_or_else(|| format!("{oracle} does not support method {}", method.name()))?;
    if args.rows > cap {
        return Err(Failure::Usage(format!(
            "{oracle}/{} is capped at n = {cap}, asked for {} rows",
            method.name(),
            args.rows
        )));
    }
    let mut tri = CoefficientTriangle::new(oracle.k_origin());
    for n in oracle.min_n().max(1)..=args.rows {
        tri.insert(n, oracle.row(method, n)?);
    }
    let out = TriangleJson::new(oracle.name(), &tri)
        .with_method(method.name())
        .with_param("r", oracle.param());
    print_triangle(&out, args.format);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Derive(a) => cmd_derive(a),
        Command::Case(a) => cmd_case(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Triangle(a) => cmd_triangle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
