mod args;
mod commands;
mod failure;
mod fetch;
mod source;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use failure::{CliResult, Failure, EXIT_CONFIG};

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::config("--threads must be >= 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::config(format!("cannot size thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Train(a) => commands::train_cmd(a),
        Command::Predict(a) => commands::predict_cmd(a),
        Command::Benchmark(a) => commands::benchmark_cmd(a),
        Command::Gridsearch(a) => commands::gridsearch_cmd(a),
        Command::Heatmap(a) => commands::heatmap_cmd(a),
        Command::Boundary(a) => commands::boundary_cmd(a),
        Command::BenchTime(a) => commands::bench_time_cmd(a),
        Command::FetchData(a) => fetch::fetch_data_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_CONFIG),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
