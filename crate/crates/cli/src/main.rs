use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use phasebench_cli::commands::{density, iso, lemmas, scan};
use phasebench_cli::config::{Overrides, RunConfig, Setup};
use phasebench_cli::output::{sidecar_path, to_json};
use phasebench_cli::Status;

#[derive(Parser)]
#[command(name = "phasebench", version, about = "Exhaustive phase-transition scans for three-case deciders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the counting and bound suites; JSON report on stdout.
    Lemmas(Common),
    /// Scan every slice up to the budget; CSV plus a JSON sidecar.
    Scan(Common),
    /// Build, verify, export or import table isomorphisms.
    Iso {
        #[arg(value_enum)]
        action: IsoAction,
        #[command(flatten)]
        common: Common,
    },
    /// Count inputs with E1 <= |τ| <= E2 and compare with the closed forms.
    Density(Common),
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum IsoAction {
    Build,
    Verify,
    Export,
    Import,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    budget: Option<u32>,
    /// Polynomial coefficients, constant term first, comma separated.
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Table isomorphism file.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    e1: Option<f64>,
    #[arg(long)]
    e2: Option<f64>,
}

impl Common {
    fn setup(&self) -> Result<Setup> {
        let mut config = RunConfig::load(&self.config)?;
        config.apply(&Overrides {
            budget: self.budget,
            poly: self.poly.clone(),
            c: self.c.clone(),
            out: self.out.clone(),
            table: self.table.clone(),
            e1: self.e1,
            e2: self.e2,
        });
        Setup::new(config)
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(a), Ok(b)) => a == b,
        _ => a == b,
    }
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Lemmas(common) => {
            let report = lemmas::run(&common.setup()?)?;
            print!("{}", to_json(&report)?);
            Ok(Status::from_passed(report.passed))
        }
        Command::Scan(common) => {
            let setup = common.setup()?;
            if let Some(path) = &setup.config.output_path {
                let side = sidecar_path(path);
                if same_file(&side, &common.config) || same_file(path, &common.config) {
                    bail!("scan output {} would overwrite the config file", path.display());
                }
            }
            let out = scan::outputs(&setup)?;
            match &setup.config.output_path {
                Some(path) => {
                    write(path, &out.csv)?;
                    write(&sidecar_path(path), &out.sidecar)?;
                    eprintln!("wrote {} rows to {}", out.report.slices.len(), path.display());
                }
                None => {
                    print!("{}", out.csv);
                    eprint!("{}", out.sidecar);
                }
            }
            Ok(Status::from_passed(out.passed))
        }
        Command::Iso { action, common } => {
            let setup = common.setup()?;
            match action {
                IsoAction::Build => {
                    print!("{}", to_json(&iso::build(&setup)?)?);
                    Ok(Status::Pass)
                }
                IsoAction::Verify | IsoAction::Import => {
                    let report = match action {
                        IsoAction::Verify => iso::verify(&setup)?,
                        _ => iso::import(&setup)?,
                    };
                    print!("{}", to_json(&report)?);
                    Ok(Status::from_passed(report.passed))
                }
                IsoAction::Export => {
                    let text = iso::export(&setup)?;
                    match &setup.config.output_path {
                        Some(path) => write(path, &text)?,
                        None => print!("{text}"),
                    }
                    Ok(Status::Pass)
                }
            }
        }
        Command::Density(common) => {
            let report = density::run(&common.setup()?)?;
            print!("{}", to_json(&report)?);
            Ok(Status::from_passed(report.aligned))
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("PHASEBENCH_THREADS") {
        let n: usize = v.parse().with_context(|| format!("PHASEBENCH_THREADS={v:?} is not a count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { Status::Usage.code() } else { 0 };
            return ExitCode::from(code);
        }
    };
    let status = configure_threads().and_then(|()| run(cli)).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        Status::of_error(&e)
    });
    ExitCode::from(status.code())
}
