//! On-disk artifacts: per-run JSON records, running-profile CSVs and
//! aggregate JSON. Every JSON document carries `"schema": 1`.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use rls_core::learning::LearningParams;
use rls_core::rls::{ProfilePoint, RunResult, StopReason};
use rls_core::{Assignment, GcpResult, RlsConfig};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const PROFILE_HEADER: &str = "generation,best_cost,elapsed_ms";

/// Summary of one fixed-k run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub k: usize,
    pub legal_found: bool,
    pub best_cost: u64,
    pub generations: u64,
    pub descent_moves: u64,
    pub wall_time_s: f64,
    pub stop: StopReason,
}

impl From<&RunResult> for Attempt {
    fn from(r: &RunResult) -> Self {
        Self {
            k: r.k,
            legal_found: r.legal_found,
            best_cost: r.best_cost,
            generations: r.generations,
            descent_moves: r.descent_moves,
            wall_time_s: r.wall_time.as_secs_f64(),
            stop: r.stop,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub variant: String,
    pub strategy: String,
    pub params: LearningParams,
    pub max_stagnation: u64,
    pub time_limit_s: Option<f64>,
}

impl From<&RlsConfig> for Settings {
    fn from(c: &RlsConfig) -> Self {
        Self {
            variant: c.variant.name().to_string(),
            strategy: c.effective_strategy().name().to_string(),
            params: c.params,
            max_stagnation: c.max_stagnation,
            time_limit_s: c.time_limit.map(|d| d.as_secs_f64()),
        }
    }
}

/// One run of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema: u32,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub run: usize,
    pub seed: u64,
    pub settings: Settings,
    /// Fixed-k runs: the single attempt. Descending runs: one per k tried.
    pub attempts: Vec<Attempt>,
    /// Smallest k with a legal coloring (descending mode only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub best_k: Option<usize>,
    pub legal_found: bool,
    /// Best coloring found, 1-based colors in vertex order.
    pub coloring: Vec<usize>,
}

impl RunRecord {
    pub fn fixed(meta: &InstanceMeta, run: usize, config: &RlsConfig, r: &RunResult) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            instance: meta.name.clone(),
            n: meta.n,
            m: meta.m,
            run,
            seed: config.seed,
            settings: config.into(),
            attempts: vec![r.into()],
            best_k: None,
            legal_found: r.legal_found,
            coloring: one_based(&r.best),
        }
    }

    pub fn descending(meta: &InstanceMeta, run: usize, config: &RlsConfig, g: &GcpResult) -> Self {
        let coloring = g
            .witness
            .as_ref()
            .or_else(|| g.trail.last().map(|r| &r.best))
            .map(one_based)
            .unwrap_or_default();
        Self {
            schema: SCHEMA_VERSION,
            instance: meta.name.clone(),
            n: meta.n,
            m: meta.m,
            run,
            seed: config.seed,
            settings: config.into(),
            attempts: g.trail.iter().map(Attempt::from).collect(),
            best_k: g.best_k,
            legal_found: g.best_k.is_some(),
            coloring,
        }
    }

    /// A copy with every wall-clock field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut out = self.clone();
        for a in &mut out.attempts {
            a.wall_time_s = 0.0;
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct InstanceMeta {
    pub name: String,
    pub n: usize,
    pub m: usize,
}

fn one_based(a: &Assignment) -> Vec<usize> {
    a.as_slice().iter().map(|g| g + 1).collect()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    text.push('\n');
    fs::write(path, text)
}

pub fn write_profile<W: Write>(mut out: W, profile: &[ProfilePoint]) -> io::Result<()> {
    writeln!(out, "{PROFILE_HEADER}")?;
    for p in profile {
        writeln!(out, "{},{},{}", p.generation, p.best_cost, p.elapsed_ms)?;
    }
    Ok(())
}

pub fn write_profile_file(path: &Path, profile: &[ProfilePoint]) -> io::Result<()> {
    let mut buf = Vec::new();
    write_profile(&mut buf, profile)?;
    fs::write(path, buf)
}
