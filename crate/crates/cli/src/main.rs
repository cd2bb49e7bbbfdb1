use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rls_core::learning::{LearningParams, SelectionStrategy};
use rls_core::rls::{RlsConfig, Variant};
use rls_harness::{compare_variants, run_experiment, ExperimentSpec, HarnessError, Mode};

#[derive(Parser, Debug)]
#[command(
    name = "rls",
    version,
    about = "Learning-driven local search for graph coloring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for legal k-colorings, `--runs` times per instance.
    Solve {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Decrease k from `--k-start` while legal colorings are found.
    Chromatic {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        /// Defaults to max degree + 1.
        #[arg(long)]
        k_start: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full method and its ablations (rls0, rls1, rls2) side by side.
    Compare {
        instance: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Full,
    Rls0,
    Rls1,
    Rls2,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum StrategyArg {
    Hybrid,
    Random,
    Greedy,
    Roulette,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 20)]
    runs: usize,
    /// Base seed; run r uses seed + r.
    #[arg(long, env = "RLS_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "full")]
    variant: VariantArg,
    /// Group selection strategy (default hybrid).
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    /// Noise probability of hybrid selection.
    #[arg(long, default_value_t = 0.2)]
    omega: f64,
    /// Reward factor.
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    /// Penalization factor; tune per instance within (0, 0.45].
    #[arg(long, default_value_t = 0.3)]
    beta: f64,
    /// Compensation factor.
    #[arg(long, default_value_t = 0.3)]
    gamma: f64,
    /// Smoothing coefficient.
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    /// Smoothing threshold.
    #[arg(long, default_value_t = 0.995)]
    p0: f64,
    /// Consecutive non-improving generations before a run gives up.
    #[arg(long, default_value_t = 1_000_000)]
    imax: u64,
    /// Per-run wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Also write the final probability matrix of every run.
    #[arg(long)]
    dump_matrix: bool,
}

impl Common {
    fn config(&self) -> Result<RlsConfig, HarnessError> {
        let variant = match self.variant {
            VariantArg::Full => Variant::Full,
            VariantArg::Rls0 => Variant::NoLearning,
            VariantArg::Rls1 => Variant::NoSmoothing,
            VariantArg::Rls2 => Variant::Roulette,
        };
        let strategy = match self.strategy {
            None | Some(StrategyArg::Hybrid) => SelectionStrategy::Hybrid,
            Some(StrategyArg::Random) => SelectionStrategy::Random,
            Some(StrategyArg::Greedy) => SelectionStrategy::Greedy,
            Some(StrategyArg::Roulette) => SelectionStrategy::Roulette,
        };
        match (variant, self.strategy) {
            (Variant::Roulette, Some(s)) if s != StrategyArg::Roulette => {
                return Err(HarnessError::Invalid(
                    "--variant rls2 always uses roulette selection".into(),
                ))
            }
            (Variant::NoLearning, Some(_)) => {
                return Err(HarnessError::Invalid(
                    "--variant rls0 has no selection strategy".into(),
                ))
            }
            _ => {}
        }
        let time_limit = match self.time_limit {
            Some(t) if !(t.is_finite() && t > 0.0) => {
                return Err(HarnessError::Invalid(format!(
                    "--time-limit must be positive (got {t})"
                )))
            }
            t => t.map(Duration::from_secs_f64),
        };
        Ok(RlsConfig {
            params: LearningParams {
                noise: self.omega,
                reward: self.alpha,
                penalty: self.beta,
                compensation: self.gamma,
                smoothing: self.rho,
                threshold: self.p0,
            },
            strategy,
            max_stagnation: self.imax,
            time_limit,
            variant,
            seed: self.seed,
            keep_matrix: false,
        })
    }

    fn spec(&self, instances: Vec<PathBuf>, mode: Mode) -> Result<ExperimentSpec, HarnessError> {
        Ok(ExperimentSpec {
            instances,
            mode,
            runs: self.runs,
            config: self.config()?,
            jobs: self.jobs,
            out_dir: Some(self.out.clone()),
            dump_matrix: self.dump_matrix,
        })
    }
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Solve {
            instances,
            k,
            common,
        } => {
            run_experiment(&common.spec(instances, Mode::Fixed(k))?, &mut stdout)?;
        }
        Command::Chromatic {
            instances,
            k_start,
            common,
        } => {
            run_experiment(
                &common.spec(instances, Mode::Descending(k_start))?,
                &mut stdout,
            )?;
        }
        Command::Compare {
            instance,
            k,
            common,
        } => {
            let config = common.config()?;
            compare_variants(
                &instance,
                k,
                common.runs,
                &config,
                common.jobs,
                Some(&common.out),
                &mut stdout,
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
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
