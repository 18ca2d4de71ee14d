use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use hopfrob::hopfcore::HopfData;
use hopfrob_cli::pipeline::{Report, Stage};
use hopfrob_cli::spec::{export_spec, AlgebraSpec};
use hopfrob_cli::{exit, run_source};

#[derive(Parser)]
#[command(name = "hopfrob", version, about = "Exact checks for finite-dimensional Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the bialgebra and Hopf axioms.
    Verify { src: String },
    /// Compute the integrals and check the Frobenius condition.
    Integrals { src: String },
    /// Build and verify the Hopf-Frobenius structure.
    Hf {
        src: String,
        /// Write the red Hopf algebra as a spec file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Build a Drinfeld double and check its R-matrix.
    #[command(group(ArgGroup::new("which").required(true).args(["classic", "red"])))]
    Double {
        src: String,
        #[arg(long)]
        classic: bool,
        #[arg(long)]
        red: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Print the canonical spec of a source.
    Export { src: String },
    /// Run every stage.
    Report {
        src: String,
        #[arg(long)]
        json: bool,
    },
}

fn emit(path: &PathBuf, h: Option<HopfData>) -> Result<(), String> {
    let h = h.ok_or("nothing to emit: the stage did not complete")?;
    std::fs::write(path, export_spec(&AlgebraSpec::from_hopf(&h))).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Export { src } = &cli.command {
        return match hopfrob_cli::load_source(src) {
            Ok(spec) => {
                print!("{}", export_spec(&spec));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit::PARSE_ERROR as u8)
            }
        };
    }
    let (src, stages): (&str, &[Stage]) = match &cli.command {
        Command::Verify { src } => (src, &[Stage::Hopf]),
        Command::Integrals { src } => (src, &[Stage::Frobenius]),
        Command::Hf { src, .. } => (src, &[Stage::Hf]),
        Command::Double { src, .. } => (src, &[Stage::Qt]),
        Command::Report { src, .. } => (src, &Stage::ALL),
        Command::Export { .. } => unreachable!(),
    };
    let (report, art) = match run_source(src, stages) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::PARSE_ERROR as u8);
        }
    };
    print_report(&cli.command, &report);
    let mut code = if report.ok() { exit::OK } else { exit::STAGE_FAILURE };
    let emitted = match &cli.command {
        Command::Hf { emit: Some(p), .. } => Some(emit(p, art.hf.map(|hf| hf.red_hopf()))),
        Command::Double { emit: Some(p), red, .. } => {
            let q = if *red { art.red } else { art.classic };
            Some(emit(p, q.map(|q| q.hopf)))
        }
        _ => None,
    };
    if let Some(Err(e)) = emitted {
        eprintln!("error: {e}");
        code = exit::STAGE_FAILURE;
    }
    ExitCode::from(code as u8)
}

// A closed pipe (`| head`) is not an error worth reporting.
fn print_report(cmd: &Command, report: &Report) {
    let text = match cmd {
        Command::Report { json: true, .. } => {
            serde_json::to_string_pretty(report).expect("report serializes") + "\n"
        }
        _ => report.to_string(),
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
