use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use braid_orbits::{PipelineOptions, DEFAULT_BUDGET};
use braid_orbits_cli::commands::{self, CliError};

/// Exact braid-orbit engine: verify the catalog of finite orbits, enumerate
/// orbits of tuple or signature files, classify candidate signatures.
///
/// Exit codes: 0 pass, 1 mismatch, 2 input error, 3 internal-consistency or
/// budget failure.
#[derive(Parser)]
#[command(name = "braid-orbits", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Re-derive published orbit lengths for catalog rows.
    Verify {
        /// Catalog table number.
        #[arg(long)]
        table: u8,
        /// Row selector, e.g. "3-8", "101", or "A,10" (default: whole table).
        #[arg(long)]
        rows: Option<String>,
        /// Labeled-state budget for orbit enumeration.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Catalog file (default: $BRAID_ORBITS_CATALOG, then the embedded catalog).
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate the braid orbit of a tuple or signature JSON document.
    Orbit {
        /// Input document (tuple or concrete signature).
        #[arg(long)]
        input: PathBuf,
        /// Labeled-state budget for orbit enumeration.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build candidate 5-signatures from 4-signature seeds, close them under
    /// the braid action, and type the survivors.
    Classify {
        /// Seed with catalog rows (4-signatures), e.g. "2,10-12".
        #[arg(long)]
        seed_rows: Option<String>,
        /// Table the seed rows come from.
        #[arg(long, default_value_t = 1)]
        seed_table: u8,
        /// Seed with the built-in parametric 4-signature families of the
        /// worked tetrahedral example.
        #[arg(long)]
        worked_example: bool,
        /// Full run: worked-example seeds expanded under all signature
        /// symmetries. Long-running; combine with --checkpoint.
        #[arg(long)]
        full: bool,
        /// Checkpoint file written between stages; an existing compatible
        /// checkpoint resumes the run.
        #[arg(long, visible_alias = "resume")]
        checkpoint: Option<PathBuf>,
        /// Largest parameter coefficient a merged cell may carry.
        #[arg(long, default_value_t = 4)]
        max_coeff: i64,
        /// Labeled-state budget when enumerating exceptional survivors.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Safety cap on the intermediate candidate count.
        #[arg(long, default_value_t = 100_000)]
        max_candidates: usize,
        /// Catalog file for --seed-rows (default: $BRAID_ORBITS_CATALOG).
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Export a catalog table in the published column order.
    Export {
        /// Catalog table number.
        #[arg(long)]
        table: u8,
        /// Catalog file (default: $BRAID_ORBITS_CATALOG, then the embedded catalog).
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Write the JSON table here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify { table, rows, budget, catalog, output } => commands::cmd_verify(
            table,
            rows.as_deref(),
            budget,
            catalog.as_deref(),
            output.as_deref(),
        ),
        Command::Orbit { input, budget, output } => {
            commands::cmd_orbit(&input, budget, output.as_deref())
        }
        Command::Classify {
            seed_rows,
            seed_table,
            worked_example,
            full,
            checkpoint,
            max_coeff,
            budget,
            max_candidates,
            catalog,
            output,
        } => commands::cmd_classify(
            seed_rows.as_deref(),
            seed_table,
            worked_example,
            full,
            checkpoint.as_deref(),
            PipelineOptions {
                max_coeff,
                orbit_budget: budget,
                max_candidates,
                checkpoint: None, // filled in from the flag by cmd_classify
            },
            catalog.as_deref(),
            output.as_deref(),
        ),
        Command::Export { table, catalog, output } => {
            commands::cmd_export(table, catalog.as_deref(), output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
