use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gakit_cli::commands;

/// Multivector algebra toolkit: evaluate expressions, verify identities,
/// factor metrics, and compute duals.
#[derive(Parser)]
#[command(name = "gakit", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a multivector expression under the session metric
    Eval {
        /// Space dimension (defaults to the metric file's, else 4)
        #[arg(short = 'n', long = "dimension", value_name = "N")]
        n: Option<usize>,
        /// Metric tensor JSON file; identity when omitted
        #[arg(long, value_name = "FILE")]
        metric: Option<String>,
        /// Expression, e.g. "e1 ^ e2 + 3 % e3"
        expr: String,
    },
    /// Run the randomized identity suites and report residuals
    Check {
        /// Seed for the deterministic trial streams
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trials per suite (must be at least 1)
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Space dimension (defaults to the metric file's, else 4)
        #[arg(short = 'n', long = "dimension", value_name = "N")]
        n: Option<usize>,
        /// Metric tensor JSON file; identity when omitted
        #[arg(long, value_name = "FILE")]
        metric: Option<String>,
    },
    /// Factor a metric as h-adjoint compose flat compose h and print the gauge
    Deform {
        /// Metric tensor JSON file
        #[arg(long, value_name = "FILE")]
        metric: String,
        /// Flat metric JSON file; defaults to the unit metric of matching signature
        #[arg(long, value_name = "FILE")]
        eta: Option<String>,
    },
    /// Evaluate an expression and apply the session duality map to it
    Hodge {
        /// Space dimension (defaults to the metric file's, else 4)
        #[arg(short = 'n', long = "dimension", value_name = "N")]
        n: Option<usize>,
        /// Metric tensor JSON file; identity when omitted
        #[arg(long, value_name = "FILE")]
        metric: Option<String>,
        /// Expression to dualize
        expr: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Eval { n, metric, expr } => commands::cmd_eval(n, metric.as_deref(), &expr),
        Cmd::Check {
            seed,
            trials,
            n,
            metric,
        } => commands::cmd_check(n, metric.as_deref(), seed, trials),
        Cmd::Deform { metric, eta } => commands::cmd_deform(&metric, eta.as_deref()),
        Cmd::Hodge { n, metric, expr } => commands::cmd_hodge(n, metric.as_deref(), &expr),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gakit: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
