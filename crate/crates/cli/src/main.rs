//! `ggs`: enumerate triples, build matrices, and run verification sweeps.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ggs_core::bd::{enumerate_triples, BdTriple, TripleContext, TripleSpec};
use ggs_core::cg::{appendix_identity, cg_r, cg_s, make_cg, CgParams};
use ggs_core::chains::{resolve_conventions, Convention, DEFAULT_RESOLVER_MAX_N};
use ggs_core::exec::{configure_threads, Execution};
use ggs_core::s_solver::SElement;
use ggs_core::tensor::{build_classical, build_eps_direct, build_r_ggs, build_r_j, build_twist, ProductOrder, Tensor};
use ggs_core::verify::{s_samples, verify_triples, Check, SMode, VerifyConfig, VerifyReport};
use ggs_core::Error;

const EXIT_FAILED_CHECKS: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ggs",
    version,
    about = "Exact quantized r-matrices for Belavin-Drinfeld triples of gl(n)"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to RAYON_NUM_THREADS or the core count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run every sweep on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every triple for a dimension.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Build one matrix for one triple.
    Build(BuildArgs),
    /// Run checks over triples and write a report.
    Verify(VerifyArgs),
    /// Cremmer-Gervais data and the closed-form identity report.
    Cg {
        #[arg(long)]
        n: usize,
        /// Shift; every coprime shift when omitted.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Compare the chain-weight conventions against the twist product.
    ResolveConventions {
        #[arg(long, default_value_t = DEFAULT_RESOLVER_MAX_N)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Ggs,
    Ess,
    Cg,
    ClassicalR,
    Epsilon,
    #[value(name = "J", alias = "j")]
    J,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Cremmer-Gervais triple `(n, m)`.
    #[arg(long, num_args = 2, value_names = ["N", "M"], conflicts_with = "triple")]
    cg: Option<Vec<usize>>,
    /// JSON triple file.
    #[arg(long)]
    triple: Option<PathBuf>,
    /// `particular`, `cg`, or a JSON file holding `s`.
    #[arg(long)]
    s: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Every triple of this dimension.
    #[arg(long, conflicts_with = "triple")]
    n: Option<usize>,
    /// Every triple with `2 <= n <= max_n`.
    #[arg(long, conflicts_with_all = ["n", "triple"])]
    max_n: Option<usize>,
    /// JSON file with one triple or a list of triples.
    #[arg(long)]
    triple: Option<PathBuf>,
    /// Comma-separated check names, or `all`.
    #[arg(long, value_delimiter = ',', required = true)]
    checks: Vec<String>,
    /// `particular`, `cg`, `random`, or a JSON file holding `s`.
    #[arg(long, default_value = "particular")]
    s: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Offsets drawn per triple with `--s random`.
    #[arg(long, default_value_t = 3)]
    offsets: usize,
}

/// Error raised by the runner, printed as JSON on stderr.
#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
    details: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let details = match e.violations() {
            [] => Value::Null,
            v => serde_json::to_value(v).unwrap_or(Value::Null),
        };
        Failure {
            kind: e.kind(),
            message: e.to_string(),
            details,
        }
    }
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        kind: "invalid-config",
        message: message.into(),
        details: Value::Null,
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        kind: "io",
        message: format!("{}: {e}", path.display()),
        details: Value::Null,
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((body, passed)) => match emit(&cli.output, &body) {
            Ok(()) if passed => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(EXIT_FAILED_CHECKS),
            Err(f) => report_failure(&f),
        },
        Err(f) => report_failure(&f),
    }
}

fn report_failure(f: &Failure) -> ExitCode {
    let mut err = json!({ "kind": f.kind, "message": f.message });
    if !f.details.is_null() {
        err["details"] = f.details.clone();
    }
    eprintln!("{}", json!({ "error": err }));
    ExitCode::from(EXIT_ERROR)
}

fn emit(path: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| io_error(p, e)),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| io_error(Path::new("<stdout>"), e)),
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(config_error("--threads must be positive"));
        }
        configure_threads(t)?;
    }
    let mode = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cli.command {
        Command::Enumerate { n } => enumerate(*n, cli.format),
        Command::Build(args) => build(args, cli.format),
        Command::Verify(args) => verify(args, cli.format, mode),
        Command::Cg { n, m } => cg(*n, *m, cli.format),
        Command::ResolveConventions { max_n } => resolve(*max_n, cli.format, mode),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn enumerate(n: usize, format: Format) -> Outcome {
    let triples = enumerate_triples(n)?;
    let body = match format {
        Format::Json => to_json(&triples),
        Format::Text => triples.iter().map(|t| format!("{t}\n")).collect(),
    };
    Ok((body, true))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

/// Reads one triple or a list of triples.
fn read_triples(path: &Path) -> Result<Vec<BdTriple>, Failure> {
    let text = read_file(path)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::from(Error::Parse(format!("{}: {e}", path.display()))))?;
    let specs: Vec<TripleSpec> = match value {
        Value::Array(_) => serde_json::from_value(value),
        _ => serde_json::from_value(value).map(|s| vec![s]),
    }
    .map_err(|e| Failure::from(Error::Parse(format!("{}: {e}", path.display()))))?;
    if specs.is_empty() {
        return Err(config_error(format!("{} holds no triples", path.display())));
    }
    Ok(specs.iter().map(BdTriple::from_spec).collect::<Result<_, _>>()?)
}

fn read_s(path: &Path) -> Result<SElement, Failure> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::from(Error::Parse(format!("{}: {e}", path.display()))))
}

fn s_mode(arg: &str, seed: u64, offsets: usize) -> Result<SMode, Failure> {
    Ok(match arg {
        "particular" => SMode::Particular,
        "cg" => SMode::Cg,
        "random" => SMode::RandomOffset { seed, count: offsets },
        path => SMode::Given(read_s(Path::new(path))?),
    })
}

fn cg_params(v: &[usize]) -> Result<CgParams, Failure> {
    match v {
        [n, m] => Ok(CgParams::new(*n, *m)?),
        _ => Err(config_error("--cg takes two values")),
    }
}

fn tensor_text(t: &Tensor) -> String {
    let mut out = format!("n = {}, legs = {}\n", t.n(), t.legs());
    for (idx, v) in t.entries() {
        let i: Vec<String> = idx[..2 * t.legs()].iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{}\t{v}\n", i.join(" ")));
    }
    out
}

fn build(args: &BuildArgs, format: Format) -> Outcome {
    let (triple, params) = match (&args.cg, &args.triple) {
        (Some(v), None) => {
            let p = cg_params(v)?;
            (make_cg(p)?, Some(p))
        }
        (None, Some(path)) => {
            let mut all = read_triples(path)?;
            if all.len() != 1 {
                return Err(config_error("build needs exactly one triple"));
            }
            (all.remove(0), None)
        }
        _ => return Err(config_error("build needs --cg N M or --triple FILE")),
    };
    let ctx = TripleContext::new(&triple);
    let s_arg = args
        .s
        .clone()
        .unwrap_or_else(|| if params.is_some() { "cg" } else { "particular" }.to_string());
    let s = || -> Result<SElement, Failure> {
        let mode = s_mode(&s_arg, 0, 0)?;
        Ok(s_samples(&triple, &mode)?.remove(0).1)
    };
    let tensor = match args.which {
        Which::Ggs => build_r_ggs(&ctx, &s()?)?,
        Which::Ess => build_r_j(&ctx, &s()?)?,
        Which::Cg => {
            let p = params.ok_or_else(|| config_error("--which cg needs --cg N M"))?;
            if s_arg != "cg" {
                return Err(config_error("--which cg uses the closed-form s; drop --s"));
            }
            cg_r(p)?
        }
        Which::ClassicalR => build_classical(&ctx, &s()?)?.r,
        Which::Epsilon => build_eps_direct(&ctx),
        Which::J => build_twist(&ctx, ProductOrder::default())?.j,
    };
    let body = match format {
        Format::Json => to_json(&tensor),
        Format::Text => tensor_text(&tensor),
    };
    Ok((body, true))
}

fn verify_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    for t in &report.triples {
        for c in &t.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}\t{}\t{}\n", t.triple, c.name));
            for w in &c.violations {
                out.push_str(&format!("\t{w}\n"));
            }
        }
    }
    let summary = if report.passed {
        "all checks passed"
    } else {
        "some checks failed"
    };
    out.push_str(&format!("{} triples, {summary}\n", report.triples.len()));
    out
}

fn verify(args: &VerifyArgs, format: Format, mode: Execution) -> Outcome {
    let names: Vec<&str> = args.checks.iter().map(|c| c.trim()).filter(|c| !c.is_empty()).collect();
    let checks = if names == ["all"] {
        Check::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|c| c.parse::<Check>())
            .collect::<Result<Vec<_>, _>>()?
    };
    if checks.is_empty() {
        return Err(config_error("--checks must name at least one check"));
    }
    let triples = match (args.n, args.max_n, &args.triple) {
        (Some(n), None, None) => enumerate_triples(n)?,
        (None, Some(max_n), None) => {
            let mut all = Vec::new();
            for n in 2..=max_n {
                all.extend(enumerate_triples(n)?);
            }
            all
        }
        (None, None, Some(path)) => read_triples(path)?,
        _ => return Err(config_error("verify needs one of --n, --max-n, --triple")),
    };
    let config = VerifyConfig {
        checks,
        s_mode: s_mode(&args.s, args.seed, args.offsets)?,
        convention: Convention::RESOLVED,
        mode,
    };
    let report = verify_triples(&triples, &config)?;
    let body = match format {
        Format::Json => to_json(&report),
        Format::Text => verify_text(&report),
    };
    Ok((body, report.passed))
}

fn cg(n: usize, m: Option<usize>, format: Format) -> Outcome {
    let all = match m {
        Some(m) => vec![CgParams::new(n, m)?],
        None => CgParams::all(n),
    };
    let mut entries = Vec::new();
    let mut passed = true;
    for p in all {
        let report = appendix_identity(p)?;
        passed &= report.passed();
        entries.push(json!({
            "n": p.n,
            "m": p.m,
            "triple": make_cg(p)?,
            "s": cg_s(p)?,
            "appendix": report,
        }));
    }
    let body = match format {
        Format::Json => to_json(&entries),
        Format::Text => entries
            .iter()
            .map(|e| {
                let ok = e["appendix"]["checks"]
                    .as_array()
                    .is_some_and(|cs| cs.iter().all(|c| c["violations"].as_array().is_some_and(Vec::is_empty)));
                format!(
                    "({}, {}): {} positive pairs, identity {}\n",
                    e["n"],
                    e["m"],
                    e["appendix"]["pairs"],
                    if ok { "holds" } else { "FAILS" }
                )
            })
            .collect(),
    };
    Ok((body, passed))
}

fn resolve(max_n: usize, format: Format, mode: Execution) -> Outcome {
    let res = resolve_conventions(max_n, mode)?;
    let body = match format {
        Format::Json => to_json(&json!({ "resolution": res, "frozen": Convention::RESOLVED })),
        Format::Text => {
            let mut out = String::new();
            for t in &res.tallies {
                out.push_str(&format!("{}: {} mismatching triples\n", t.convention, t.mismatches));
            }
            match res.selected {
                Some(c) => out.push_str(&format!("selected: {c}\n")),
                None => out.push_str(&format!("no unique record over {} triples\n", res.triples)),
            }
            out.push_str(&format!("frozen: {}\n", Convention::RESOLVED));
            out
        }
    };
    Ok((body, res.selected == Some(Convention::RESOLVED)))
}
