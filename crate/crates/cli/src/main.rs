use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use neurofuzz::{SearchMode, SynthKind};
use neurofuzz_cli::{cmd_compare, cmd_gen_synth, cmd_predict, cmd_train, init_threads, CliError, Overrides, RunConfig, Trainer};

/// ANFIS regression with hybrid, GA and PSO training.
///
/// Exit codes: 0 ok, 1 I/O, 2 config, 3 data, 4 numerical failure.
/// NEUROFUZZ_THREADS caps the number of fitness-evaluation workers.
#[derive(Parser)]
#[command(name = "neurofuzz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic dataset to CSV.
    GenSynth {
        #[arg(long, value_parser = parse_kind)]
        kind: SynthKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the selected models and write their artifacts.
    Train(RunArgs),
    /// Train all selected models and write comparison tables.
    Compare(RunArgs),
    /// Apply a saved model to a CSV file.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV dataset (last column is the target); replaces the config's data source.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// anfis, anfis-ga or anfis-pso; repeat to select several.
    #[arg(long = "trainer")]
    trainers: Vec<Trainer>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    mf_count: Option<usize>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<SearchMode>,
}

fn parse_kind(s: &str) -> Result<SynthKind, String> {
    s.parse().map_err(|e: neurofuzz::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<SearchMode, String> {
    s.parse().map_err(|e: neurofuzz::Error| e.to_string())
}

impl RunArgs {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let mut config = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        config.apply(&Overrides {
            seed: self.seed,
            trainers: self.trainers,
            out_dir: self.out,
            mf_count: self.mf_count,
            mode: self.mode,
            data: self.data,
        });
        Ok(config)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    match cli.command {
        Command::GenSynth { kind, n, noise, seed, out } => cmd_gen_synth(kind, n, noise, seed, &out),
        Command::Train(args) => {
            for r in cmd_train(&args.resolve()?)? {
                println!(
                    "{}: train RMSE {:?} MAE {:?} | test RMSE {:?} MAE {:?}",
                    r.method, r.train.rmse, r.train.mae, r.test.rmse, r.test.mae
                );
            }
            Ok(())
        }
        Command::Compare(args) => {
            print!("{}", cmd_compare(&args.resolve()?)?.text);
            Ok(())
        }
        Command::Predict { model, input, out } => cmd_predict(&model, &input, &out).map(|n| eprintln!("predicted {n} rows")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
