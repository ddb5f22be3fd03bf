//! Command-line front end: `degrees`, `verify <suite>` and `info`.
//!
//! Exit codes: 0 when everything passed, 1 when a check failed, 2 for
//! configuration and usage errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::contraction::contract;
use crate::error::{Error, Result};
use crate::liealg::{build_algebra, build_parabolic, format_levi, Family, LieType, ParabolicSpec};
use crate::partitions::{is_valid_nilpotent, lie_type_for, Partition, RichardsonProfile};
use crate::richardson::{centraliser, find_richardson, jordan_type, subalgebra_index};
use crate::sampling::derive_seed;
use crate::verify::{run_suite, Suite, SuiteConfig, SCHEMA_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "PARCON_THREADS";

#[derive(Debug, Parser)]
#[command(name = "parcon", version, about = "Exact computations with parabolic contractions of classical Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree data of the slice invariants for a nilpotent partition.
    Degrees(DegreesArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Dimensions, Richardson element and index of a contraction.
    Info(AlgebraArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct OutputArgs {
    /// Write the JSON record to this file.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Format on standard output.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct DegreesArgs {
    #[arg(long = "type", value_name = "A|B|C|GL")]
    pub family: Family,
    #[arg(long)]
    pub partition: Partition,
    /// Optional; must agree with the partition total.
    #[arg(long)]
    pub rank: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct AlgebraArgs {
    #[arg(long = "type", value_name = "A|B|C|D|GL")]
    pub family: Option<Family>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Block sizes along the diagonal, e.g. 3,2,1.
    #[arg(long, value_delimiter = ',')]
    pub composition: Option<Vec<usize>>,
    /// Size of the central block (types B, C, D); derived when omitted.
    #[arg(long)]
    pub central: Option<usize>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    /// coadjoint, adjoint, subregular, counterexample or combinatorics
    #[arg(value_parser = parse_suite)]
    pub suite: Suite,
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Record wall-clock times in the report.
    #[arg(long)]
    pub timing: bool,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Everything a command needs, after defaults.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub lie_type: Option<LieType>,
    pub spec: Option<ParabolicSpec>,
    pub trials: usize,
    pub seed: u64,
    pub format: Format,
    pub json: Option<PathBuf>,
}

impl AlgebraArgs {
    pub fn run_config(&self) -> Result<RunConfig> {
        let lie_type = match (self.family, self.rank) {
            (Some(f), Some(r)) => Some(LieType::new(f, r).map_err(|e| Error::Config(e.to_string()))?),
            (None, None) => None,
            _ => return Err(Error::Config("--type and --rank go together".into())),
        };
        let spec = match (&self.composition, lie_type) {
            (Some(c), Some(t)) => {
                Some(ParabolicSpec::for_type(t, c.clone(), self.central).map_err(|e| Error::Config(e.to_string()))?)
            }
            (Some(_), None) => return Err(Error::Config("--composition needs --type and --rank".into())),
            (None, _) if self.central.is_some() => {
                return Err(Error::Config("--central needs --composition".into()))
            }
            (None, _) => None,
        };
        Ok(RunConfig {
            lie_type,
            spec,
            trials: self.trials,
            seed: self.seed,
            format: self.output.format,
            json: self.output.json.clone(),
        })
    }
}

/// Text and JSON renderings of one command's result.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub passed: bool,
}

fn table(rows: &[(&str, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
}

fn braces(v: &[usize]) -> String {
    let s: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", s.join(","))
}

fn pairs(v: &[(usize, usize)]) -> String {
    v.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(",")
}

pub fn cmd_degrees(a: &DegreesArgs) -> Result<Output> {
    let t = lie_type_for(a.family, &a.partition).map_err(|e| Error::Config(e.to_string()))?;
    if let Some(r) = a.rank {
        if r != t.rank {
            return Err(Error::Config(format!(
                "partition {} lives in {}, not rank {r}",
                a.partition,
                t.label()
            )));
        }
    }
    if !is_valid_nilpotent(t, &a.partition)? {
        return Err(Error::Config(format!(
            "invalid nilpotent partition: {} for {}",
            a.partition,
            t.label()
        )));
    }
    let p = RichardsonProfile::compute(t, &a.partition).map_err(|e| Error::Config(e.to_string()))?;
    let degs = t.invariant_degrees();
    let mut rows = vec![
        ("partition", p.partition.to_string()),
        ("algebra", t.label()),
        ("dual", p.dual.to_string()),
    ];
    if let Some(m) = &p.modified {
        rows.push(("modified", m.to_string()));
    }
    rows.extend([
        ("levi", format_levi(&p.levi_type)),
        ("degree multiset", braces(&p.degree_multiset)),
        ("bi-degrees", pairs(&p.bidegrees)),
        ("levi degrees", braces(&p.levi_degrees)),
        ("sum deg_n-", format!("{} = dim n = {}", p.sum_second(), p.dim_n)),
        ("sum deg eF", format!("{} = dim b(l) = {}", p.sum_first(), p.dim_levi_borel)),
    ]);
    let mut text = table(&rows);
    text.push_str("\ndeg F  deg eF  deg_n-\n");
    for (d, (x, y)) in degs.iter().zip(&p.bidegrees) {
        let _ = writeln!(text, "{d:<5}  {x:<6}  {y}");
    }
    let consistent = p.is_consistent();
    text.push_str(if consistent { "\nconsistent\n" } else { "\nINCONSISTENT\n" });
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "degrees",
        "algebra": t.label(),
        "levi": format_levi(&p.levi_type),
        "invariant_degrees": degs,
        "profile": p,
        "consistent": consistent,
    });
    Ok(Output {
        text,
        json,
        passed: consistent,
    })
}

#[derive(Serialize)]
struct InfoRecord {
    schema_version: u32,
    command: &'static str,
    algebra: String,
    spec: String,
    levi: String,
    dim_g: usize,
    dim_p: usize,
    dim_n: usize,
    dim_levi: usize,
    dim_q: usize,
    jordan_type: String,
    certificate_rank: usize,
    dim_centraliser: usize,
    index_q: usize,
    index_centraliser: usize,
    rank: usize,
    seed: u64,
    trials: usize,
}

pub fn cmd_info(rc: &RunConfig) -> Result<Output> {
    let t = rc.lie_type.ok_or_else(|| Error::Config("info needs --type and --rank".into()))?;
    let spec = rc.spec.clone().unwrap_or_else(|| ParabolicSpec::borel(t));
    spec.validate(t).map_err(|e| Error::Config(e.to_string()))?;
    let a = Arc::new(build_algebra(t));
    let p = build_parabolic(a.clone(), spec.clone())?;
    let q = contract(&p);
    let e = find_richardson(&p, rc.trials.max(16), derive_seed(rc.seed, 2))?;
    let lambda = jordan_type(&e.matrix)?;
    let c = centraliser(&a, &e.coords);
    let r = InfoRecord {
        schema_version: SCHEMA_VERSION,
        command: "info",
        algebra: t.label(),
        spec: spec.label(t),
        levi: format_levi(&p.levi_blocks()),
        dim_g: p.dim(),
        dim_p: p.dim_p(),
        dim_n: p.dim_n(),
        dim_levi: p.dim_levi(),
        dim_q: q.dim(),
        jordan_type: lambda.to_string(),
        certificate_rank: e.certificate,
        dim_centraliser: c.dim,
        index_q: q.index_of(rc.trials, derive_seed(rc.seed, 1)),
        index_centraliser: subalgebra_index(&c, rc.trials, derive_seed(rc.seed, 8)),
        rank: t.reductive_rank(),
        seed: rc.seed,
        trials: rc.trials,
    };
    let text = table(&[
        ("algebra", format!("{} {}", r.algebra, r.spec)),
        ("levi", r.levi.clone()),
        ("dim g", r.dim_g.to_string()),
        ("dim p", r.dim_p.to_string()),
        ("dim n", r.dim_n.to_string()),
        ("dim levi", r.dim_levi.to_string()),
        ("dim q", r.dim_q.to_string()),
        ("jordan type", r.jordan_type.clone()),
        ("rank [p,e]", format!("{} (dim n = {})", r.certificate_rank, r.dim_n)),
        ("dim g_e", r.dim_centraliser.to_string()),
        ("index q", r.index_q.to_string()),
        ("index g_e", r.index_centraliser.to_string()),
        ("rank g", r.rank.to_string()),
    ]);
    let passed = r.certificate_rank == r.dim_n;
    Ok(Output {
        text,
        json: serde_json::to_value(&r)?,
        passed,
    })
}

pub fn cmd_verify(v: &VerifyArgs) -> Result<Output> {
    let rc = v.algebra.run_config()?;
    let mut cfg = SuiteConfig::new(v.suite, rc.lie_type, rc.spec)
        .with_trials(rc.trials)
        .with_seed(rc.seed);
    cfg.timing = v.timing;
    let report = run_suite(&cfg)?;
    Ok(Output {
        text: report.render_text(),
        json: serde_json::to_value(&report)?,
        passed: report.passed(),
    })
}

fn emit(out: &Output, format: Format, path: Option<&PathBuf>) -> Result<()> {
    let pretty = serde_json::to_string_pretty(&out.json)?;
    if let Some(p) = path {
        std::fs::write(p, format!("{pretty}\n"))?;
    }
    let body = match format {
        Format::Text => out.text.clone(),
        Format::Json => format!("{pretty}\n"),
    };
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()) {
        // a closed pipe (e.g. `| head`) is not an error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()) {
        // a second initialisation (e.g. in tests) is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs a parsed command and returns the exit code.
pub fn execute(cli: &Cli) -> i32 {
    init_threads();
    let (res, format, path) = match &cli.command {
        Command::Degrees(a) => (cmd_degrees(a), a.output.format, a.output.json.clone()),
        Command::Verify(v) => (cmd_verify(v), v.algebra.output.format, v.algebra.output.json.clone()),
        Command::Info(a) => (
            a.run_config().and_then(|rc| cmd_info(&rc)),
            a.output.format,
            a.output.json.clone(),
        ),
    };
    match res {
        Ok(out) => {
            if let Err(e) = emit(&out, format, path.as_ref()) {
                eprintln!("error: {e}");
                return EXIT_CONFIG;
            }
            if out.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e @ (Error::Config(_) | Error::InvalidType(_) | Error::InvalidParabolic(_) | Error::InvalidPartition(_) | Error::Parse(_))) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

/// Parses `args` (program name first) and runs; usage errors exit with 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_PASS
            }
        }
    }
}
