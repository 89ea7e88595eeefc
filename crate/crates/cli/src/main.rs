mod commands;
mod config;
mod input;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use commands::{Diagram, Which};
use config::{SuiteConfig, DEFAULT_CONFIG};
use input::{load_category, parse_class, Failure, Loaded};

/// Exhaustive checks of purity, (co)limits and QE classes in finite categories.
#[derive(Parser)]
#[command(name = "catpure", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Pass,
    Fail,
}

#[derive(Subcommand)]
enum Command {
    /// Replay the example suite and print a JSON report.
    VerifyPaper {
        /// Suite configuration; the built-in default when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run only these checks (repeatable).
        #[arg(long = "only", value_name = "CHECK_ID")]
        only: Vec<String>,
        /// Replaces the test-object bound of the purity checks.
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// List check ids and anchors instead of running.
        #[arg(long)]
        list: bool,
    },
    /// Compute a (co)limit or very weak construction, or certify that none exists.
    Limits {
        /// Category file: a concrete descriptor (`{"kind": ...}`) or a composition table.
        #[arg(long)]
        category: PathBuf,
        #[arg(long, value_enum)]
        diagram: Diagram,
        /// Morphism literals (JSON for modules, names for tables); objects for products.
        #[arg(required = true)]
        args: Vec<String>,
        /// Object-size bound of the searches; the whole category when omitted.
        #[arg(long)]
        bound: Option<u64>,
        /// `pass` expects a witness, `fail` a none-certificate.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a morphism class against the QE axioms, retract closure or the characterization.
    Qe {
        #[arg(long)]
        category: PathBuf,
        /// Shorthand (`coker-div:2`, `table:f,g`), inline JSON, or a JSON file.
        #[arg(long)]
        class: String,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(v: &Value, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict_code(passed: bool, expect: Option<Expect>) -> u8 {
    let want = expect.unwrap_or(Expect::Pass) == Expect::Pass;
    if passed == want {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::VerifyPaper { config, out, only, bound, jobs, list } => {
            if list {
                let rows: Vec<Value> =
                    suite::CHECKS.iter().map(|c| serde_json::json!({"id": c.id, "anchor": c.anchor})).collect();
                emit(&Value::Array(rows), out.as_ref())?;
                return Ok(0);
            }
            let mut cfg = match &config {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                    SuiteConfig::parse(&text, &path.display().to_string())?
                }
                None => SuiteConfig::parse(DEFAULT_CONFIG, "built-in default")?,
            };
            if let Some(b) = bound {
                cfg.bounds.suite = b;
            }
            let result = suite::run(cfg, &only, jobs)?;
            emit(&serde_json::to_value(&result).expect("serializable"), out.as_ref())?;
            Ok(result.exit_code())
        }
        Command::Limits { category, diagram, args, bound, expect, out } => {
            let (v, found) = match load_category(&category)? {
                Loaded::Module(c) => {
                    let b = bound.unwrap_or(c.horizon());
                    commands::run_limits(&c, diagram, &args, b)?
                }
                Loaded::Table(c) => commands::run_limits(&c, diagram, &args, bound.unwrap_or(1))?,
            };
            emit(&v, out.as_ref())?;
            Ok(match expect {
                Some(e) => verdict_code(found, Some(e)),
                None => 0,
            })
        }
        Command::Qe { category, class, which, bound, expect, out } => {
            let desc = parse_class(&class)?;
            let (v, passed) = match load_category(&category)? {
                Loaded::Module(c) => {
                    let b = bound.unwrap_or(c.horizon());
                    commands::run_qe(&c, desc, which, b)?
                }
                Loaded::Table(c) => commands::run_qe(&c, desc, which, bound.unwrap_or(1))?,
            };
            emit(&v, out.as_ref())?;
            Ok(verdict_code(passed, expect))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("catpure: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
