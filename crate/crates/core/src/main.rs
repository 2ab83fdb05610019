use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use courant_cube::cli::{cmd_nodal, cmd_screen, cmd_sweep, cmd_table, cmd_verdict, Format, Output, ReportConfig};
use courant_cube::nodal::DEFAULT_MAX_RESOLUTION;
use courant_cube::spectrum::{BoxSpec, ModeTriple};

/// Courant-sharp Dirichlet eigenvalues of the cube (0,π)³.
#[derive(Parser, Debug)]
#[command(name = "courant-cube", version)]
struct Cli {
    /// Largest eigenvalue to tabulate and screen (inclusive).
    #[arg(long, global = true, default_value_t = 48.0)]
    lambda_max: f64,
    /// Output format: md, csv or json.
    #[arg(long, global = true, default_value = "md")]
    format: String,
    /// Starting grid resolution of the nodal counter.
    #[arg(long, global = true, default_value_t = 128)]
    resolution: usize,
    /// Largest resolution the counter may double to.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RESOLUTION)]
    max_resolution: usize,
    /// Number of coefficient samples in eigenspace sweeps.
    #[arg(long, global = true, default_value_t = 500)]
    samples: usize,
    /// Seed of the low-discrepancy coefficient sequence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Box eigenvalue weights a,b,c (eigenvalue a ℓ² + b m² + c n²).
    #[arg(long = "box", global = true, default_value = "1,1,1")]
    bx: String,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues with index ranges and representative modes.
    Table,
    /// Faber–Krahn screening and symmetry exclusions.
    Screen,
    /// Full pipeline ending in the list of Courant-sharp eigenvalues.
    Verdict,
    /// Nodal-domain histogram over one eigenspace.
    Sweep {
        /// Eigenvalue whose eigenspace is swept.
        #[arg(long, default_value_t = 11.0)]
        value: f64,
    },
    /// Nodal domains of one eigenfunction, printed as JSON.
    Nodal {
        /// Mode l,m,n; repeat for each mode.
        #[arg(long = "mode", required = true)]
        modes: Vec<String>,
        /// Coefficients, one per mode, comma separated.
        #[arg(long, required = true, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Vec<f64>,
    },
}

fn run(cli: Cli) -> courant_cube::Result<Output> {
    let config = ReportConfig {
        lambda_max: cli.lambda_max,
        format: cli.format.parse::<Format>()?,
        resolution: cli.resolution,
        sweep_samples: cli.samples,
        seed: cli.seed,
        bx: cli.bx.parse::<BoxSpec>()?,
        max_resolution: cli.max_resolution,
    };
    match cli.command {
        Command::Table => cmd_table(&config),
        Command::Screen => cmd_screen(&config),
        Command::Verdict => cmd_verdict(&config),
        Command::Sweep { value } => cmd_sweep(&config, value),
        Command::Nodal { modes, coeffs } => {
            let modes = modes.iter().map(|m| m.parse::<ModeTriple>()).collect::<Result<Vec<_>, _>>()?;
            cmd_nodal(&config, &modes, &coeffs, config.resolution)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let out_path = cli.out.clone();
    let output = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match out_path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &output.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(output.text.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != ErrorKind::BrokenPipe {
                    eprintln!("error: cannot write output: {e}");
                    return ExitCode::from(1);
                }
            }
        }
    }
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    ExitCode::from(output.exit_code() as u8)
}
