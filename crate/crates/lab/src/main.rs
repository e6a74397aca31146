use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ulat::check::{parse_doc, run_check};
use ulat::config::{check_horizon, parse_eps_grid};
use ulat::examples::run_example;
use ulat::{run_suites, Format, LabError, SuiteConfig};
use ulat_core::lattice::{check_distributive, find_non_homomorphic_truncation, Distributivity, Lattice};
use ulat_core::spaces::TableLattice;

#[derive(Parser)]
#[command(name = "ulat", version, about = "Exact checks for lattice uniformities and order convergence")]
struct Cli {
    /// TOML file whose keys mirror the suite flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run or list the verification suites.
    Suite {
        #[command(subcommand)]
        action: SuiteAction,
    },
    /// Operations on finite lattice documents.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Run a convergence check described by a JSON document.
    Check {
        file: PathBuf,
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Reproduce one of the counterexamples: ex-r, ex or o1o2.
    Example {
        name: String,
        #[arg(long)]
        horizon: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum SuiteAction {
    Run {
        /// Suite names, or `all`.
        names: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        horizon: Option<u64>,
        /// Comma-separated positive rationals.
        #[arg(long)]
        eps_grid: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Include wall-clock time per suite (makes reports nondeterministic).
        #[arg(long)]
        timings: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    List,
}

#[derive(Subcommand)]
enum LatticeAction {
    /// Validate a lattice document and report distributivity.
    Check { file: PathBuf },
}

fn base_config(path: Option<&PathBuf>) -> Result<SuiteConfig, LabError> {
    let mut c = SuiteConfig::default();
    if let Some(p) = path {
        c.apply_file(p)?;
    }
    c.apply_env(|k| std::env::var(k).ok())?;
    Ok(c)
}

fn run(cli: Cli) -> Result<i32, LabError> {
    match cli.command {
        Command::Suite { action: SuiteAction::List } => {
            for s in ulat::suites::SUITES {
                println!("{:<18} {}", s.name, s.anchor);
            }
            Ok(0)
        }
        Command::Suite { action: SuiteAction::Run { names, seed, horizon, eps_grid, format, timings, out } } => {
            let mut c = base_config(cli.config.as_ref())?;
            if !names.is_empty() {
                c.suites = names;
            }
            if let Some(s) = seed {
                c.seed = s;
            }
            if let Some(h) = horizon {
                c.horizon = check_horizon(h)?;
            }
            if let Some(g) = eps_grid {
                c.eps_grid = parse_eps_grid(&g)?;
            }
            if let Some(f) = format {
                c.format = f;
            }
            c.timings |= timings;
            let report = run_suites(&c)?;
            let text = match c.format {
                Format::Json => report.to_json() + "\n",
                Format::Md => report.to_markdown(),
            };
            match out {
                Some(p) => std::fs::write(&p, text).map_err(|e| LabError::Config(format!("{}: {e}", p.display())))?,
                None => std::io::stdout().write_all(text.as_bytes()).expect("stdout"),
            }
            Ok(report.exit_code())
        }
        Command::Lattice { action: LatticeAction::Check { file } } => {
            let text =
                std::fs::read_to_string(&file).map_err(|e| LabError::Config(format!("{}: {e}", file.display())))?;
            let l = match TableLattice::from_json(&text) {
                Ok(l) => l,
                Err(e) => {
                    println!("{}: not a lattice: {e}", file.display());
                    return Ok(1);
                }
            };
            println!("{}: lattice with {} elements", l.name(), l.labels().len());
            match check_distributive(&l) {
                Distributivity::Distributive => println!("distributive: yes"),
                Distributivity::Counterexample { x, y, z } => {
                    println!("distributive: no (x, y, z) = ({}, {}, {})", l.label(x), l.label(y), l.label(z))
                }
            }
            match find_non_homomorphic_truncation(&l) {
                None => println!("every truncation is a homomorphism"),
                Some((p, v)) => println!(
                    "truncation {} is not a homomorphism: {:?} at ({}, {})",
                    p.show(&l),
                    v.op,
                    l.label(v.x),
                    l.label(v.y)
                ),
            }
            Ok(0)
        }
        Command::Check { file, horizon } => {
            let mut c = base_config(cli.config.as_ref())?;
            if let Some(h) = horizon {
                c.horizon = check_horizon(h)?;
            }
            let text =
                std::fs::read_to_string(&file).map_err(|e| LabError::Config(format!("{}: {e}", file.display())))?;
            let out = run_check(&parse_doc(&text)?, &c)?;
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            Ok(if out.matched { 0 } else { 1 })
        }
        Command::Example { name, horizon, seed } => {
            let mut c = base_config(cli.config.as_ref())?;
            if let Some(h) = horizon {
                c.horizon = check_horizon(h)?;
            }
            if let Some(s) = seed {
                c.seed = s;
            }
            let out = run_example(&name, &c)?;
            println!("{}", serde_json::to_string_pretty(&out.document).expect("json"));
            Ok(if out.reproduced { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
