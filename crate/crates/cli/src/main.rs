use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use girdle_core::report::{self, Report, Status};

#[derive(Parser)]
#[command(name = "girdle", version, about = "Exact checks for the flat 2-nondegenerate CR model")]
struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cross-check the bracket table, Jacobi identity or structure equations.
    Verify {
        #[arg(value_enum)]
        what: VerifyTarget,
    },
    /// Dimension of the Lie algebra cohomology H^ell_k.
    Cohomology {
        #[arg(long)]
        ell: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: i32,
    },
    /// Hodge decomposition of C^ell_k.
    Hodge {
        #[arg(long)]
        ell: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: i32,
    },
    /// Prolongation step 0-3, or all of them.
    Prolong {
        #[arg(long)]
        step: String,
    },
    /// Normalize a degree-k c-torsion read from a JSON file.
    Normalize {
        #[arg(long)]
        k: i32,
        #[arg(long)]
        input: PathBuf,
    },
    /// Checks on the quadric and tube models.
    Model {
        #[command(subcommand)]
        what: ModelCommand,
    },
    /// Linear constraints on structure functions.
    Constraints,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Table1,
    Jacobi,
    Structeq,
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Quadric membership of a point of CP^4 (five coordinates, I_{3,2} chart).
    Quadric {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Image of a tube point under the embedding f.
    Embed {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Levi rank, rib and extension independence at a cone point.
    Levi {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Cubic form at a cone point.
    Cubic {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Freeman sequence ranks at a cone point.
    Freeman {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Polynomial identities of the embedding.
    Identities,
}

fn dispatch(command: &Command) -> Result<Report, String> {
    match command {
        Command::Verify { what } => Ok(match what {
            VerifyTarget::Table1 => report::verify_table1(),
            VerifyTarget::Jacobi => report::verify_jacobi(),
            VerifyTarget::Structeq => report::verify_structeq(),
        }),
        Command::Cohomology { ell, k } => report::cohomology(*ell, *k),
        Command::Hodge { ell, k } => report::hodge(*ell, *k),
        Command::Prolong { step } => match step.as_str() {
            "all" => report::prolong(None),
            s => report::prolong(Some(s.parse().map_err(|_| format!("invalid step '{s}'"))?)),
        },
        Command::Normalize { k, input } => {
            let text = std::fs::read_to_string(input).map_err(|e| format!("{}: {e}", input.display()))?;
            report::normalize(*k, &text)
        }
        Command::Model { what } => match what {
            ModelCommand::Quadric { point } => report::model_quadric(point),
            ModelCommand::Embed { z } => report::model_embed(z),
            ModelCommand::Levi { z } => report::model_levi(z),
            ModelCommand::Cubic { z } => report::model_cubic(z),
            ModelCommand::Freeman { z } => report::model_freeman(z),
            ModelCommand::Identities => Ok(report::model_identities()),
        },
        Command::Constraints => Ok(report::constraints()),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let report = dispatch(&cli.command).unwrap_or_else(|e| Report::error(command_name(&cli.command), &e));
    print!("{}", report.render_text());
    if let Some(path) = &cli.json {
        std::fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(match report.status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Error => 2,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Cohomology { .. } => "cohomology",
        Command::Hodge { .. } => "hodge",
        Command::Prolong { .. } => "prolong",
        Command::Normalize { .. } => "normalize",
        Command::Model { .. } => "model",
        Command::Constraints => "constraints",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
