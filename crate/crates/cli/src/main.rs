//! `flagquant`: experiment runner for Berezin quantization on flag manifolds.

mod config;
mod suites;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use flagquant::rootsys::RootDatum;
use flagquant::uea::Pbw;
use serde::Serialize;
use serde_json::{json, Value};

use config::{resolve, ConfigArgs, ExperimentConfig, Suite, UsageError};
use suites::{Context, Outcome, RunError, Table};

/// Environment variable fixing the worker thread count.
const THREADS_ENV: &str = "FLAGQUANT_THREADS";

#[derive(Parser)]
#[command(name = "flagquant", version, about = "Berezin quantization on flag manifolds via symbol calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the root datum, sample irreps and orbit dimensions as JSON.
    Info {
        #[arg(long = "type", value_name = "TYPE")]
        type_label: String,
        /// Optional weight to describe in detail.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Run one experiment suite.
    Run {
        /// Suite name; may instead come from the config file.
        suite: Option<Suite>,
        #[command(flatten)]
        args: ConfigArgs,
    },
    /// Symbol evaluation and symbol-level checks.
    Symbol {
        #[command(subcommand)]
        command: SymbolCommand,
    },
    /// Star-product experiments.
    Star {
        #[command(subcommand)]
        command: StarCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SymbolSuite {
    Coherent,
    TraceDuality,
    CoxeterTwist,
    Stabilizer,
}

impl From<SymbolSuite> for Suite {
    fn from(s: SymbolSuite) -> Suite {
        match s {
            SymbolSuite::Coherent => Suite::Coherent,
            SymbolSuite::TraceDuality => Suite::TraceDuality,
            SymbolSuite::CoxeterTwist => Suite::CoxeterTwist,
            SymbolSuite::Stabilizer => Suite::Stabilizer,
        }
    }
}

#[derive(Subcommand)]
enum SymbolCommand {
    /// Tabulate s_λu(k) over Haar samples as CSV.
    Eval {
        #[command(flatten)]
        args: ConfigArgs,
    },
    /// Run a symbol-level suite and emit a pass/fail JSON report.
    Check {
        suite: SymbolSuite,
        #[command(flatten)]
        args: ConfigArgs,
    },
}

#[derive(Subcommand)]
enum StarCommand {
    /// Correspondence-principle errors over n = 1..n_max as CSV plus a JSON summary.
    Converge {
        #[command(flatten)]
        args: ConfigArgs,
    },
}

enum Failure {
    Usage(String),
    Library(flagquant::Error),
    Io(String),
    Suite(Vec<String>),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Usage(m) => Failure::Usage(m),
            RunError::Library(e) => Failure::Library(e),
        }
    }
}

impl From<flagquant::Error> for Failure {
    fn from(e: flagquant::Error) -> Self {
        Failure::Library(e)
    }
}

#[derive(Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    seed: u64,
    suite: &'static str,
    config: &'a ExperimentConfig,
    pass: bool,
    failing: Vec<String>,
    checks: &'a [suites::Check],
    data: &'a Value,
}

fn header_line(cfg: &ExperimentConfig) -> String {
    format!("# flagquant {} seed={} suite={} type={} lambda={}", env!("CARGO_PKG_VERSION"), cfg.seed, cfg.suite.name(), cfg.type_label, cfg.lambda)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(cfg: &ExperimentConfig, table: &Table) -> String {
    let mut out = header_line(cfg);
    out.push('\n');
    out.push_str(&table.header.join(","));
    out.push('\n');
    for row in &table.rows {
        out.push_str(&row.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn print(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Emit the JSON report to stdout, and to `out` when given. A `.csv` output
/// path receives the table and the JSON goes next to it with a `.json`
/// extension.
fn emit(cfg: &ExperimentConfig, outcome: &Outcome) -> Result<(), Failure> {
    let failing: Vec<String> = outcome.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    let report = Report {
        tool: "flagquant",
        version: env!("CARGO_PKG_VERSION"),
        seed: cfg.seed,
        suite: cfg.suite.name(),
        config: cfg,
        pass: failing.is_empty(),
        failing: failing.clone(),
        checks: &outcome.checks,
        data: &outcome.data,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    print(&json);
    if let Some(out) = &cfg.out {
        match (&outcome.table, is_csv(out)) {
            (Some(table), true) => {
                write_file(out, &render_csv(cfg, table))?;
                write_file(&out.with_extension("json"), &json)?;
            }
            _ => write_file(out, &json)?,
        }
    }
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Suite(failing))
    }
}

fn run_suite(suite: Option<Suite>, args: &ConfigArgs) -> Result<(), Failure> {
    let cfg = resolve(suite, args)?;
    let ctx = Context::new(&cfg)?;
    let outcome = suites::run(&ctx)?;
    emit(&cfg, &outcome)
}

fn symbol_eval(args: &ConfigArgs) -> Result<(), Failure> {
    let mut cfg = resolve(Some(Suite::Coherent), args)?;
    // evaluation tables are small by default; quadrature order for A1, sample count otherwise
    if args.samples.is_none() {
        cfg.samples = if cfg.type_label == "A1" { 4 } else { 16 };
    }
    let text = cfg.u.clone().ok_or_else(|| Failure::Usage("field `u` is required for symbol eval".into()))?;
    let ctx = Context::new(&cfg)?;
    let u = Pbw::parse(&ctx.rd, &text).map_err(|e| Failure::Usage(format!("field `u`: {e}")))?;
    let table = suites::symbol_table(&ctx, &u)?;
    let header = format!("# flagquant {} seed={} symbol eval type={} lambda={} u={}", env!("CARGO_PKG_VERSION"), cfg.seed, cfg.type_label, cfg.lambda, text);
    let mut csv = render_csv(&cfg, &table);
    let first = csv.find('\n').expect("header line");
    csv.replace_range(..first, &header);
    match &cfg.out {
        Some(out) => write_file(out, &csv),
        None => {
            print(&csv);
            Ok(())
        }
    }
}

fn info(type_label: &str, lambda: Option<&str>) -> Result<(), Failure> {
    let rd = Arc::new(RootDatum::build(type_label)?);
    let w = lambda.map(|s| suites::parse_weight(&rd, s)).transpose()?;
    let mut value = suites::info(&rd, w.as_ref(), 400)?;
    value["tool"] = json!("flagquant");
    value["version"] = json!(env!("CARGO_PKG_VERSION"));
    print(&(serde_json::to_string_pretty(&value).expect("info serializes") + "\n"));
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(Failure::Usage(format!("{THREADS_ENV} must be a positive integer")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Info { type_label, lambda } => info(type_label, lambda.as_deref()),
        Command::Run { suite, args } => run_suite(*suite, args),
        Command::Symbol { command: SymbolCommand::Eval { args } } => symbol_eval(args),
        Command::Symbol { command: SymbolCommand::Check { suite, args } } => run_suite(Some((*suite).into()), args),
        Command::Star { command: StarCommand::Converge { args } } => run_suite(Some(Suite::Converge), args),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suite(failing)) => {
            eprintln!("suite failed: {}", failing.join(", "));
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            match e {
                flagquant::Error::Config(_) | flagquant::Error::Usage(_) | flagquant::Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
