use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

/// Lossless compression of quantum-state ensembles into indeterminate-length strings.
#[derive(Parser, Debug)]
#[command(name = "qlossless", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Print base and average lengths and prefix-freeness verdicts for a state or ensemble.
    Inspect,
    /// Print the greedy decomposition table of an ensemble.
    Decompose,
    /// Print the code table built from an ensemble's decomposition.
    BuildCode,
    /// Encode a state file with the code of `--ensemble`.
    Encode,
    /// Decode an encoded state file with the code of `--ensemble`.
    Decode,
    /// Check the entropy bounds and the gap to the brute-force optimum.
    Verify,
    /// Send a state through the swap channel and print the step trace.
    Channel,
    /// Print the per-qubit noise report for an ensemble.
    Noise,
    /// Print the lossy truncation report for `--copies` copies of an ensemble.
    Lossy,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Input file: an ensemble, or a state literal for inspect/encode/decode/channel.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Ensemble defining the code for encode and decode.
    #[arg(long, global = true)]
    pub ensemble: Option<PathBuf>,
    /// Seed for the Monte Carlo noise check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Qubit cap for the channel simulation and lossy truncation.
    #[arg(long, global = true, default_value_t = qlossless::channelsim::DEFAULT_QUBIT_CAP)]
    pub cap_qubits: usize,
    /// Largest ensemble the exhaustive decomposition search accepts.
    #[arg(long, global = true, default_value_t = qlossless::decomposition::DEFAULT_STATE_CAP)]
    pub cap_states: usize,
    /// Slack above the entropy rate for lossy truncation.
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Per-qubit disturbance probability.
    #[arg(long, global = true, default_value_t = 0.1)]
    pub noise_p: f64,
    /// Number of copies for lossy truncation.
    #[arg(long, global = true, default_value_t = 1)]
    pub copies: usize,
    /// Channel steps; defaults to the message's base length.
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Noise model for the Monte Carlo check.
    #[arg(long, global = true, value_enum, default_value_t = Model::Erasure)]
    pub model: Model,
    /// Monte Carlo trials; 0 reports the analytic figures only.
    #[arg(long, global = true, default_value_t = 0)]
    pub trials: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Erasure,
    BitFlip,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli.command, &cli.opts) {
        Ok(outcome) => {
            if let Err(err) = commands::emit(&outcome.report, cli.opts.output.as_deref()) {
                eprintln!("error: {err}");
                return ExitCode::from(err.exit_code());
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(3)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                qlossless::Error::Parse { .. }
                | qlossless::Error::MalformedHeader(_)
                | qlossless::Error::NotNormalized { .. } => 2,
                _ => 1,
            },
        }
    }
}
