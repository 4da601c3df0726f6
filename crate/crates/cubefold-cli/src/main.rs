//! Batch front-end for the folding / stratification / dual-complex pipeline.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails
//! (with a witness in the report), 2 on input errors.

mod commands;
mod format;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cubefold", about = "Foldable complexes, mirror stratifications and dual cube complexes", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validity, homogeneity, boundary and admissibility checks.
    Check { file: PathBuf },
    /// Compute or verify a folding onto the model cube or simplex.
    Fold {
        file: PathBuf,
        /// Replace simplicial input by its standard cubification first.
        #[arg(long)]
        cubify: bool,
    },
    /// Stratify a folded complex into cells, tiles and mirrors.
    Stratify {
        file: PathBuf,
        #[arg(long)]
        cubify: bool,
    },
    /// Build the dual cubical complex of the stratification.
    Dualize {
        file: PathBuf,
        #[arg(long)]
        cubify: bool,
        /// Directory for emitted complex files.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Gromov link condition on a cubical complex.
    Npc {
        file: PathBuf,
        #[arg(long)]
        cubify: bool,
    },
    /// fold, stratify, dualize, check curvature and optionally contract
    /// every generator loop of the dual.
    Pipeline {
        file: PathBuf,
        #[arg(long)]
        cubify: bool,
        /// Produce contraction certificates for all generator loops.
        #[arg(long)]
        contract: bool,
        /// Move bound for the in-tile contraction search.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Build a finite cover from a permutation representation file.
    Cover {
        file: PathBuf,
        rep: PathBuf,
        /// Branched cover of a marked complex at its cone points.
        #[arg(long)]
        branched: bool,
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Check { file } => commands::cmd_check(file),
        Cmd::Fold { file, cubify } => commands::cmd_fold(file, *cubify),
        Cmd::Stratify { file, cubify } => commands::cmd_stratify(file, *cubify),
        Cmd::Dualize {
            file,
            cubify,
            emit_dir,
        } => commands::cmd_dualize(file, *cubify, emit_dir),
        Cmd::Npc { file, cubify } => commands::cmd_npc(file, *cubify),
        Cmd::Pipeline {
            file,
            cubify,
            contract,
            bound,
            emit_dir,
        } => commands::cmd_pipeline(file, *cubify, *contract, *bound, emit_dir),
        Cmd::Cover {
            file,
            rep,
            branched,
            emit_dir,
        } => commands::cmd_cover(file, rep, *branched, emit_dir),
    };
    match outcome {
        Ok(false) => ExitCode::from(0),
        Ok(true) => ExitCode::from(1),
        Err(commands::InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
