//! Multi-run experiment protocols over DIMACS instances.
//!
//! Run `r` of an experiment uses seed `base_seed + r`. Runs may execute in
//! parallel; results are gathered in run order and written by one thread.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rls_core::rls::{solve_gcp, solve_k, RunResult, Variant};
use rls_core::{Graph, RlsConfig};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::records::{
    write_json, write_profile_file, InstanceMeta, RunRecord, Settings, SCHEMA_VERSION,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: rls_core::graph::ParseError,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl HarnessError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Invalid(_) => 1,
            HarnessError::Parse { .. } => 2,
            HarnessError::Io { .. } => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Every run targets this k.
    Fixed(usize),
    /// Every run descends from this k (max degree + 1 when `None`).
    Descending(Option<usize>),
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub instances: Vec<PathBuf>,
    pub mode: Mode,
    pub runs: usize,
    /// Shared solver settings; `seed` is the base seed.
    pub config: RlsConfig,
    pub jobs: usize,
    /// Artifact directory; nothing is written when `None`.
    pub out_dir: Option<PathBuf>,
    pub dump_matrix: bool,
}

impl ExperimentSpec {
    pub fn new(instances: Vec<PathBuf>, mode: Mode) -> Self {
        Self {
            instances,
            mode,
            runs: 20,
            config: RlsConfig::default(),
            jobs: 1,
            out_dir: None,
            dump_matrix: false,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.instances.is_empty() {
            return Err(HarnessError::Invalid("no instance given".into()));
        }
        if self.runs == 0 {
            return Err(HarnessError::Invalid("--runs must be at least 1".into()));
        }
        if self.jobs == 0 {
            return Err(HarnessError::Invalid("--jobs must be at least 1".into()));
        }
        if self.config.max_stagnation == 0 {
            return Err(HarnessError::Invalid("--imax must be at least 1".into()));
        }
        let k = match self.mode {
            Mode::Fixed(k) | Mode::Descending(Some(k)) => k,
            Mode::Descending(None) => 2,
        };
        if k < 2 {
            return Err(HarnessError::Invalid(format!(
                "k must be at least 2 (got {k})"
            )));
        }
        self.config
            .params
            .validate(k)
            .map_err(|e| HarnessError::Invalid(e.to_string()))
    }
}

/// Per-instance results of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub schema: u32,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub variant: String,
    /// Target k (fixed mode) or the best k reached (descending mode).
    pub k: Option<usize>,
    pub runs: usize,
    /// Runs that reached a legal `k`-coloring.
    pub hits: usize,
    /// Averages over successful runs; `None` without hits.
    pub avg_generations: Option<f64>,
    pub avg_descent_moves: Option<f64>,
    pub avg_time_s: Option<f64>,
    /// Smallest k over all runs (descending mode only).
    pub best_k: Option<usize>,
    pub base_seed: u64,
    pub settings: Settings,
}

impl AggregateStats {
    pub fn hit_ratio(&self) -> String {
        format!("{}/{}", self.hits, self.runs)
    }

    /// One fixed-width summary line.
    pub fn summary_row(&self) -> String {
        let k = self.k.map_or("-".to_string(), |k| k.to_string());
        let fmt =
            |x: Option<f64>, prec: usize| x.map_or("-".to_string(), |v| format!("{v:.prec$}"));
        format!(
            "{:<20} {:>6} {:>4} {:>7} {:>12} {:>14} {:>10}",
            self.instance,
            self.variant,
            k,
            self.hit_ratio(),
            fmt(self.avg_generations, 1),
            fmt(self.avg_descent_moves, 1),
            fmt(self.avg_time_s, 3),
        )
    }
}

pub fn summary_header() -> String {
    format!(
        "{:<20} {:>6} {:>4} {:>7} {:>12} {:>14} {:>10}",
        "instance", "variant", "k", "hits", "avg_gen", "avg_moves", "avg_time_s"
    )
}

/// Loads a DIMACS file. Parsing is not part of any reported timing.
pub fn load_instance(path: &Path) -> Result<(InstanceMeta, Graph), HarnessError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let graph = Graph::parse_dimacs(&text).map_err(|source| HarnessError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    let name = path.file_stem().map_or_else(
        || "instance".to_string(),
        |s| s.to_string_lossy().into_owned(),
    );
    Ok((
        InstanceMeta {
            name,
            n: graph.n(),
            m: graph.m(),
        },
        graph,
    ))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| HarnessError::Invalid(format!("cannot start {jobs} worker threads: {e}")))
}

fn run_config(base: &RlsConfig, run: usize, dump_matrix: bool) -> RlsConfig {
    RlsConfig {
        seed: base.seed.wrapping_add(run as u64),
        keep_matrix: dump_matrix || base.keep_matrix,
        ..base.clone()
    }
}

enum Outcome {
    Fixed(RunResult),
    Descending(rls_core::GcpResult),
}

fn average(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| sum / count as f64)
}

fn aggregate(
    meta: &InstanceMeta,
    mode: Mode,
    base: &RlsConfig,
    outcomes: &[Outcome],
) -> AggregateStats {
    // The attempt that counts for each run: the fixed-k run, or the run at
    // the best k reached by any run.
    let best_k = outcomes
        .iter()
        .filter_map(|o| match o {
            Outcome::Descending(g) => g.best_k,
            Outcome::Fixed(_) => None,
        })
        .min();
    let successes: Vec<Option<&RunResult>> = outcomes
        .iter()
        .map(|o| match o {
            Outcome::Fixed(r) => r.legal_found.then_some(r),
            Outcome::Descending(g) => g
                .trail
                .iter()
                .find(|r| r.legal_found && Some(r.k) == best_k),
        })
        .collect();
    // An edgeless graph reaches k = 1 without any solver run.
    let hits = match (mode, best_k) {
        (Mode::Descending(_), Some(1)) => outcomes.len(),
        _ => successes.iter().flatten().count(),
    };
    let ok = || successes.iter().flatten();
    AggregateStats {
        schema: SCHEMA_VERSION,
        instance: meta.name.clone(),
        n: meta.n,
        m: meta.m,
        variant: base.variant.name().to_string(),
        k: match mode {
            Mode::Fixed(k) => Some(k),
            Mode::Descending(_) => best_k,
        },
        runs: outcomes.len(),
        hits,
        avg_generations: average(ok().map(|r| r.generations as f64)),
        avg_descent_moves: average(ok().map(|r| r.descent_moves as f64)),
        avg_time_s: average(ok().map(|r| r.wall_time.as_secs_f64())),
        best_k,
        base_seed: base.seed,
        settings: base.into(),
    }
}

/// Runs every instance of `spec`, writes artifacts and prints one summary
/// row per instance to `report`.
pub fn run_experiment<W: Write>(
    spec: &ExperimentSpec,
    report: &mut W,
) -> Result<Vec<AggregateStats>, HarnessError> {
    spec.validate()?;
    let workers = pool(spec.jobs)?;
    let mut all = Vec::new();
    let _ = writeln!(report, "{}", summary_header());
    for path in &spec.instances {
        let (meta, graph) = load_instance(path)?;
        let dir = spec.out_dir.as_ref().map(|d| {
            d.join(&meta.name).join(match spec.mode {
                Mode::Fixed(k) => format!("{}-k{k}", spec.config.variant.name()),
                Mode::Descending(_) => format!("{}-chromatic", spec.config.variant.name()),
            })
        });
        let stats = run_batch(&workers, spec, &graph, &meta, &spec.config, dir.as_deref())?;
        let _ = writeln!(report, "{}", stats.summary_row());
        all.push(stats);
    }
    Ok(all)
}

fn run_batch(
    workers: &rayon::ThreadPool,
    spec: &ExperimentSpec,
    graph: &Graph,
    meta: &InstanceMeta,
    base: &RlsConfig,
    dir: Option<&Path>,
) -> Result<AggregateStats, HarnessError> {
    let outcomes: Vec<Outcome> = workers.install(|| {
        (0..spec.runs)
            .into_par_iter()
            .map(|run| {
                let config = run_config(base, run, spec.dump_matrix);
                match spec.mode {
                    Mode::Fixed(k) => Outcome::Fixed(solve_k(graph, k, &config)),
                    Mode::Descending(k) => Outcome::Descending(solve_gcp(graph, k, &config)),
                }
            })
            .collect()
    });
    let stats = aggregate(meta, spec.mode, base, &outcomes);
    if let Some(dir) = dir {
        write_batch(dir, meta, base, spec.dump_matrix, &outcomes, &stats)?;
    }
    Ok(stats)
}

fn write_batch(
    dir: &Path,
    meta: &InstanceMeta,
    base: &RlsConfig,
    dump_matrix: bool,
    outcomes: &[Outcome],
    stats: &AggregateStats,
) -> Result<(), HarnessError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for (run, outcome) in outcomes.iter().enumerate() {
        let config = run_config(base, run, false);
        let (record, results): (RunRecord, Vec<&RunResult>) = match outcome {
            Outcome::Fixed(r) => (RunRecord::fixed(meta, run, &config, r), vec![r]),
            Outcome::Descending(g) => (
                RunRecord::descending(meta, run, &config, g),
                g.trail.iter().collect(),
            ),
        };
        let path = dir.join(format!("run-{run:03}.json"));
        write_json(&path, &record).map_err(io_err(&path))?;
        let suffixed = results.len() > 1 || matches!(outcome, Outcome::Descending(_));
        for r in results {
            let stem = if suffixed {
                format!("run-{run:03}.k{}", r.k)
            } else {
                format!("run-{run:03}")
            };
            let path = dir.join(format!("{stem}.profile.csv"));
            write_profile_file(&path, &r.profile).map_err(io_err(&path))?;
            if let (true, Some(m)) = (dump_matrix, &r.matrix) {
                let path = dir.join(format!("{stem}.matrix.txt"));
                let mut buf = Vec::new();
                m.write_snapshot(&mut buf)
                    .and_then(|_| fs::write(&path, buf))
                    .map_err(io_err(&path))?;
            }
        }
    }
    let path = dir.join("aggregate.json");
    write_json(&path, stats).map_err(io_err(&path))?;
    Ok(())
}

/// Runs the full method and its three ablations under identical seeds and
/// budgets. Profiles of run `r` land in `<variant>/run-r.profile.csv` for
/// every variant, so the files pair up by name.
pub fn compare_variants<W: Write>(
    instance: &Path,
    k: usize,
    runs: usize,
    base: &RlsConfig,
    jobs: usize,
    out_dir: Option<&Path>,
    report: &mut W,
) -> Result<Vec<AggregateStats>, HarnessError> {
    let spec = ExperimentSpec {
        instances: vec![instance.to_path_buf()],
        mode: Mode::Fixed(k),
        runs,
        config: base.clone(),
        jobs,
        out_dir: out_dir.map(Path::to_path_buf),
        dump_matrix: false,
    };
    spec.validate()?;
    let workers = pool(jobs)?;
    let (meta, graph) = load_instance(instance)?;
    let root = out_dir.map(|d| d.join(&meta.name).join(format!("compare-k{k}")));
    let _ = writeln!(report, "{}", summary_header());
    let mut rows = Vec::new();
    for variant in Variant::ALL {
        let config = RlsConfig {
            variant,
            ..base.clone()
        };
        let dir = root.as_ref().map(|r| r.join(variant.name()));
        let stats = run_batch(&workers, &spec, &graph, &meta, &config, dir.as_deref())?;
        let _ = writeln!(report, "{}", stats.summary_row());
        rows.push(stats);
    }
    if let Some(root) = root {
        let path = root.join("compare.json");
        write_json(&path, &rows).map_err(io_err(&path))?;
    }
    Ok(rows)
}
