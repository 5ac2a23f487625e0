use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gatebound_cli::report::{
    run_circuit, run_fig2, run_gate, run_parity, run_selftest, Report, RunOptions,
};

#[derive(Debug, Parser)]
#[command(name = "gatebound")]
#[command(about = "entanglement accounting and gate-count lower bounds for classical logic")]
struct Cli {
    /// Seed for every stochastic search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Random restarts of the capacity search (default 32).
    #[arg(long, global = true)]
    restarts: Option<usize>,

    /// Iteration cap per simplex run (default 2000).
    #[arg(long, global = true)]
    iterations: Option<usize>,

    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Nonlocal profile and capacity estimates for a catalog gate.
    Gate {
        /// Catalog gate name (NOT, RESET, XOR, AND, OR, NAND, NOR, CNOT,
        /// TOFFOLI, FANOUT).
        name: String,

        /// Treat the extension family optimistically (best member) instead
        /// of adversarially (every member).
        #[arg(long)]
        max_max: bool,
    },

    /// Parse a netlist, estimate its capacity, and bound gate counts.
    Circuit {
        /// Netlist file path.
        file: PathBuf,

        /// Gate type(s) whose count to bound from below.
        #[arg(long = "count-gate", default_value = "NAND")]
        count_gate: Vec<String>,

        /// Also evaluate the circuit classically on this bit string.
        #[arg(long)]
        input: Option<String>,
    },

    /// The parity-cascade example: capacity estimate and universal-gate
    /// bound for an n-bit parity circuit.
    Parity {
        #[arg(long)]
        n: usize,
    },

    /// Gain table of the population-count example as CSV (or JSON rows).
    Fig2 {
        /// Comma-separated input widths.
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
    },

    /// Run the oracle-equivalence suites and report the worst deviations.
    Selftest {
        /// Random logical states for the fast-path suite.
        #[arg(long, default_value_t = 500)]
        states: usize,

        /// Random netlists for the consistency suite.
        #[arg(long, default_value_t = 200)]
        netlists: usize,
    },
}

fn emit(text: String, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(Report, Option<String>), gatebound_core::Error> {
    let opts = RunOptions {
        seed: cli.seed,
        restarts: cli.restarts,
        iterations: cli.iterations,
        max_max: false,
    };
    match cli.command {
        Command::Gate { name, max_max } => {
            let opts = RunOptions { max_max, ..opts };
            Ok((run_gate(&name, &opts)?, None))
        }
        Command::Circuit {
            file,
            count_gate,
            input,
        } => {
            let text = std::fs::read_to_string(&file).map_err(|e| {
                gatebound_core::Error::UnknownGate(format!("cannot read {}: {e}", file.display()))
            })?;
            Ok((run_circuit(&text, &count_gate, input.as_deref(), &opts)?, None))
        }
        Command::Parity { n } => Ok((run_parity(n, &opts)?, None)),
        Command::Fig2 { n_list } => {
            let (report, csv) = run_fig2(&n_list, &opts)?;
            Ok((report, Some(csv)))
        }
        Command::Selftest { states, netlists } => {
            Ok((run_selftest(states, netlists, &opts)?, None))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let out = cli.out.clone();
    match run(cli) {
        Ok((report, csv)) => {
            let failed_suite = report.suites.iter().any(|s| !s.passed);
            let text = if json {
                report.to_json()
            } else if let Some(csv) = csv {
                csv
            } else {
                report.render_text()
            };
            if let Err(e) = emit(text, out.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if failed_suite {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
