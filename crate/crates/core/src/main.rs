use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cigsel::bounds::BoundReport;
use cigsel::harness::{sweep, verify, write_sweep_csv, SweepConfig, VerifyLevel};
use cigsel::process::{sample, ProcessSpec};
use cigsel::selector::{select_graph, SampleBlock};
use cigsel::Error;

#[derive(Parser)]
#[command(name = "cigsel", version, about = "Graph selection for stationary Gaussian time series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw N+1 samples of a process spec and write them as CSV.
    Gen {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "n")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate the graph from a sample CSV.
    Select {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        rho_min: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the sample-size bounds as JSON.
    Bounds {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        rho_min: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        delta: f64,
        /// Sample size for the MI and Fano fields.
        #[arg(long = "n")]
        n: Option<usize>,
    },
    /// Run a parameter sweep and write the results CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in oracle checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Fast,
    Full,
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Gen { spec, n, seed, out } => {
            let spec = ProcessSpec::from_json(&std::fs::read_to_string(spec)?)?;
            let block = sample(&spec, n, seed)?;
            let mut w = create(&out)?;
            block.write_csv(&mut w)?;
            w.flush()?;
        }
        Command::Select { input, rho_min, b, out } => {
            let block = SampleBlock::read_csv(BufReader::new(File::open(input)?))?;
            let result = select_graph(&block, rho_min, b)?;
            let mut w = create(&out)?;
            serde_json::to_writer_pretty(&mut w, &result)?;
            writeln!(w)?;
            w.flush()?;
        }
        Command::Bounds { p, rho_min, b, delta, n } => {
            let report = BoundReport::evaluate(p, rho_min, b, delta, n)?;
            writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&report)?)?;
        }
        Command::Sweep { config, out } => {
            let config = SweepConfig::from_json(&std::fs::read_to_string(config)?)?;
            let rows = sweep(&config)?;
            let mut w = create(&out)?;
            write_sweep_csv(&rows, &mut w)?;
            w.flush()?;
            let failed = rows.iter().filter(|r| r.estimate.is_err()).count();
            if failed > 0 {
                eprintln!("{failed} cell(s) failed; see ERROR rows");
            }
        }
        Command::Verify { level } => {
            let level = match level {
                Level::Fast => VerifyLevel::Fast,
                Level::Full => VerifyLevel::Full,
            };
            let report = verify(level);
            let stdout = io::stdout();
            let mut w = stdout.lock();
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(w, "{tag} {}: {}", c.name, c.detail)?;
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_configuration() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
