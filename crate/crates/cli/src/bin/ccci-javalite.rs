//! Build-pass toolchain for mapping scripts: `compile` type-checks a script
//! against a workspace's task, `test` also runs it against the workspace's
//! reference script.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use javalite::{compile_script, test_script, Error, World};

#[derive(Parser)]
#[command(name = "ccci-javalite", about = "Compile and test Java mapping scripts")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    Compile {
        #[arg(long)]
        workspace: PathBuf,
        #[arg(long)]
        script: PathBuf,
    },
    Test {
        #[arg(long)]
        workspace: PathBuf,
        #[arg(long)]
        script: PathBuf,
        /// Defaults to `reference.txt` in the workspace.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
}

fn read(p: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(p).map_err(|e| Error::Setup(format!("{}: {e}", p.display())))
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Compile { workspace, script } => {
            let world = World::open(&workspace)?;
            compile_script(&world, &read(&script)?).map(|_| ())
        }
        Cmd::Test { workspace, script, reference } => {
            let world = World::open(&workspace)?;
            let reference = reference.unwrap_or_else(|| workspace.join("reference.txt"));
            test_script(&world, &read(&script)?, &read(&reference)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Setup(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
