//! Batch command-line front end: workspace files in, reports and witness
//! files out.

mod commands;
mod literal;
mod output;
mod schema;
mod workspace;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{run_command, verify_witness, Command, Options, Outcome, Target};
pub use literal::{emit_mor, emit_obj, parse_mor, parse_obj, scalar};
pub use output::{witness_file_name, CheckRecord, Report, SigmaComponent, SigmaFile, Status, WitnessEnvelope, WitnessKind};
pub use schema::*;
pub use workspace::{load_workspace, parse_workspace, AdjDecl, AdjKind, Decls, EquivDecl, ModuleDecl, MonadDecl, Workspace};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "separable", version, about = "Exact separability checks on finitely presented linear categories")]
pub struct Cli {
    /// Workspace file (JSON, schema version 1).
    #[arg(short, long, global = true)]
    pub workspace: Option<PathBuf>,
    /// Seed for every randomized sample.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random samples per randomized check.
    #[arg(long, global = true, default_value_t = 5)]
    pub samples: usize,
    /// Also compute essential preimages in the idempotent completion of the target.
    #[arg(long, global = true)]
    pub complete_target: bool,
    /// Directory for report.json and witness files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Do not print the report to stdout.
    #[arg(short, long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TargetArg {
    Functor,
    Monad,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Run the law suites of every declaration.
    Validate,
    /// Functor laws, naturality and triangle identities of an adjunction.
    AdjunctionCheck { name: String },
    /// Decide separability of a functor or monad and write its witness.
    Separability {
        name: String,
        #[arg(long, value_enum)]
        target: TargetArg,
    },
    /// Separability of the right adjoint against the monad and comparison functor.
    EmReport { adjunction: String },
    /// Induction adjunction, dictionary and sections for a group action.
    EquivariantReport { action: String },
    /// Componentwise monad on complexes and the comparison of hom dimensions.
    ComplexReport { action: String },
    /// Re-verify a witness file against the workspace.
    VerifyWitness { file: PathBuf },
    /// Run a named check suite.
    Suite { name: String },
}

impl Cmd {
    fn to_command(&self) -> Command {
        match self {
            Cmd::Validate => Command::Validate,
            Cmd::AdjunctionCheck { name } => Command::AdjunctionCheck(name.clone()),
            Cmd::Separability { name, target } => Command::Separability {
                name: name.clone(),
                target: match target {
                    TargetArg::Functor => Target::Functor,
                    TargetArg::Monad => Target::Monad,
                },
            },
            Cmd::EmReport { adjunction } => Command::EmReport(adjunction.clone()),
            Cmd::EquivariantReport { action } => Command::EquivariantReport(action.clone()),
            Cmd::ComplexReport { action } => Command::ComplexReport(action.clone()),
            Cmd::VerifyWitness { file } => Command::VerifyWitness(file.clone()),
            Cmd::Suite { name } => Command::Suite(name.clone()),
        }
    }
}

/// Runs a command against a workspace file and returns the report together
/// with the witness files it produced.
pub fn execute(workspace: &Path, cmd: &Command, opts: &Options) -> Result<(Report, Vec<(String, String)>)> {
    let ws = match cmd {
        Command::Validate => load_workspace(workspace)?,
        _ => parse_workspace(workspace)?,
    };
    let outcome = run_command(&ws, cmd, opts)?;
    let report = Report::new(cmd.label(), opts.seed, opts.samples, outcome.checks);
    Ok((report, outcome.witnesses))
}

fn write_outputs(dir: &Path, report: &Report, witnesses: &[(String, String)], with_report: bool) -> Result<()> {
    let io = |e: std::io::Error| Error::Invalid(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for (name, text) in witnesses {
        std::fs::write(dir.join(name), text).map_err(io)?;
    }
    if with_report {
        std::fs::write(dir.join("report.json"), report.to_json()).map_err(io)?;
    }
    Ok(())
}

/// Entry point of the binary; returns the process exit code
/// (0 all checks pass, 1 some check failed or was infeasible, 2 input error).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let Some(workspace) = cli.workspace.clone() else {
        eprintln!("error: --workspace <FILE> is required");
        return 2;
    };
    let opts = Options { seed: cli.seed, samples: cli.samples, complete_target: cli.complete_target };
    let cmd = cli.command.to_command();
    let (report, witnesses) = match execute(&workspace, &cmd, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(dir) => write_outputs(dir, &report, &witnesses, true),
        None => write_outputs(Path::new("."), &report, &witnesses, false),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if !cli.quiet {
        let _ = std::io::stdout().write_all(report.to_json().as_bytes());
    }
    for c in &report.checks {
        if c.status != Status::Pass {
            eprintln!("{:?}: {}", c.status, c.id);
        }
    }
    report.exit_code()
}
