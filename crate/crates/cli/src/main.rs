use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use hkernel::batch::Exec;
use hkernel_cli::bench::{self, Family, Scenario};
use hkernel_cli::{eval, selftest};

/// Division-free projective geometry kernel
#[derive(Parser, Debug)]
#[command(name = "hkernel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate line-delimited JSON records
    Eval {
        /// Input file (default: standard input)
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        /// Output file (default: standard output)
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Add Euclidean coordinates to point results
        #[arg(long)]
        euclidean: bool,
        /// Evaluate records on one thread
        #[arg(long)]
        sequential: bool,
    },
    /// Compare projective and Euclidean pipelines against exact references
    Bench {
        /// Instance families (comma separated)
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        family: Vec<Family>,
        /// Severities (comma separated); each family has a default sweep
        #[arg(long, value_delimiter = ',')]
        severity: Vec<f64>,
        /// Instances per row
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output file (default: standard output)
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Fill the wall-time column (otherwise "-", keeping output reproducible)
        #[arg(long)]
        timing: bool,
    },
    /// Run the built-in invariant sweep
    Selftest,
}

fn output(path: Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Eval { input, out, euclidean, sequential } => {
            let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            let w = output(out).map_err(|e| e.to_string())?;
            let summary = match input {
                Some(p) => {
                    let f = File::open(&p).map_err(|e| format!("{}: {e}", p.display()))?;
                    eval::run_batch(BufReader::new(f), w, euclidean, exec)
                }
                None => eval::run_batch(io::stdin().lock(), w, euclidean, exec),
            }
            .map_err(|e| e.to_string())?;
            eprintln!("{} records, {} errors", summary.records, summary.errors);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { family, severity, count, seed, out, timing } => {
            let mut rows = Vec::new();
            for f in family {
                let sev = if severity.is_empty() { f.default_severities().to_vec() } else { severity.clone() };
                for s in sev {
                    let sc = Scenario { family: f, severity: s, count, seed };
                    rows.extend(bench::run_scenario(&sc, timing)?);
                }
            }
            bench::write_csv(&rows, output(out).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let checks = selftest::run();
            let mut ok = true;
            for c in &checks {
                println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
                ok &= c.passed;
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
