//! Learned group-selection state.
//!
//! Every item owns a probability vector over the `k` groups. Starting
//! solutions are drawn from these vectors; after each descent the vectors
//! are reinforced by comparing where items started with where descent left
//! them, then dominant entries are smoothed back down.
//!
//! For item `i` that started in group `u` and ended in group `v`:
//!
//! * `u == v` (reward, factor `α`):
//!   `p[u] ← α + (1−α)·p[u]`, `p[j] ← (1−α)·p[j]` otherwise.
//! * `u != v` (penalty `β`, compensation `γ`):
//!   `p[u] ← (1−γ)(1−β)·p[u]`,
//!   `p[v] ← γ + (1−γ)·β/(k−1) + (1−γ)(1−β)·p[v]`,
//!   `p[j] ← (1−γ)·β/(k−1) + (1−γ)(1−β)·p[j]` otherwise.
//!
//! Smoothing: when a row's largest entry `p[w]` exceeds `p₀`, it becomes
//! `ρ·p[w]` and every other entry gains `(1−ρ)/(k−1)·p[w]` (the value before
//! scaling). All three operators preserve row sums exactly in real
//! arithmetic.

use std::io::{self, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grouping::Assignment;

#[derive(Debug, Error, PartialEq)]
pub enum LearningError {
    #[error(
        "dimension mismatch: matrix is {n}×{k}, assignment is {len} items over {groups} groups"
    )]
    DimensionMismatch {
        n: usize,
        k: usize,
        len: usize,
        groups: usize,
    },
    #[error("parameter {name} = {value} outside {range}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: String,
    },
}

/// Parameters of the selection, reinforcement and smoothing operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LearningParams {
    /// Probability of a uniformly random choice in hybrid selection (ω).
    pub noise: f64,
    /// Reward factor for a group kept by descent (α).
    pub reward: f64,
    /// Penalization factor for a group abandoned by descent (β).
    pub penalty: f64,
    /// Compensation factor for the group descent moved the item to (γ).
    pub compensation: f64,
    /// Smoothing coefficient (ρ).
    pub smoothing: f64,
    /// Smoothing threshold (p₀).
    pub threshold: f64,
}

impl Default for LearningParams {
    fn default() -> Self {
        Self {
            noise: 0.2,
            reward: 0.1,
            penalty: 0.3,
            compensation: 0.3,
            smoothing: 0.5,
            threshold: 0.995,
        }
    }
}

impl LearningParams {
    /// Checks parameter ranges for a problem with `k` groups.
    pub fn validate(&self, k: usize) -> Result<(), LearningError> {
        let open = |name, value: f64| {
            if value > 0.0 && value < 1.0 {
                Ok(())
            } else {
                Err(LearningError::InvalidParameter {
                    name,
                    value,
                    range: "(0, 1)".into(),
                })
            }
        };
        if !(0.0..=1.0).contains(&self.noise) {
            return Err(LearningError::InvalidParameter {
                name: "noise",
                value: self.noise,
                range: "[0, 1]".into(),
            });
        }
        open("reward", self.reward)?;
        open("penalty", self.penalty)?;
        open("compensation", self.compensation)?;
        open("smoothing", self.smoothing)?;
        let floor = 1.0 / k as f64;
        if !(self.threshold > floor && self.threshold <= 1.0) {
            return Err(LearningError::InvalidParameter {
                name: "threshold",
                value: self.threshold,
                range: format!("(1/{k}, 1]"),
            });
        }
        Ok(())
    }
}

/// How each item picks its group from its probability vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionStrategy {
    /// Uniform over all groups, ignoring the probabilities.
    Random,
    /// The most probable group.
    Greedy,
    /// Group `j` with probability `p[j]`.
    Roulette,
    /// Random with probability ω, otherwise greedy.
    Hybrid,
}

impl SelectionStrategy {
    pub fn name(self) -> &'static str {
        match self {
            Self::Random => "random",
            Self::Greedy => "greedy",
            Self::Roulette => "roulette",
            Self::Hybrid => "hybrid",
        }
    }
}

/// Row-stochastic n×k matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix {
    n: usize,
    k: usize,
    p: Vec<f64>,
}

impl ProbabilityMatrix {
    /// All entries `1/k`.
    pub fn uniform(n: usize, k: usize) -> Self {
        assert!(
            n >= 1 && k >= 2,
            "need n >= 1 and k >= 2 (got n = {n}, k = {k})"
        );
        Self {
            n,
            k,
            p: vec![1.0 / k as f64; n * k],
        }
    }

    /// Builds a matrix from explicit rows. Rows must share a length of at
    /// least two; no normalization is applied.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let k = rows.first().map_or(0, Vec::len);
        assert!(
            k >= 2 && rows.iter().all(|r| r.len() == k),
            "ragged or too narrow rows"
        );
        Self {
            n: rows.len(),
            k,
            p: rows.concat(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.p[i * self.k..(i + 1) * self.k]
    }

    #[inline]
    fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.p[i * self.k..(i + 1) * self.k]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.k + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.p.chunks_exact(self.k)
    }

    /// Reinforces group `u` of item `i`.
    pub fn reward(&mut self, i: usize, u: usize, alpha: f64) {
        reward_row(self.row_mut(i), u, alpha);
    }

    /// Penalizes group `u` and compensates group `v` of item `i`.
    pub fn penalize(&mut self, i: usize, u: usize, v: usize, beta: f64, gamma: f64) {
        penalize_row(self.row_mut(i), u, v, beta, gamma);
    }

    /// Writes one line per item with space-separated probabilities.
    pub fn write_snapshot<W: Write>(&self, mut out: W) -> io::Result<()> {
        for row in self.rows() {
            let mut first = true;
            for x in row {
                if !first {
                    out.write_all(b" ")?;
                }
                write!(out, "{x}")?;
                first = false;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

pub fn reward_row(row: &mut [f64], u: usize, alpha: f64) {
    let keep = 1.0 - alpha;
    for (j, x) in row.iter_mut().enumerate() {
        *x = if j == u { alpha + keep * *x } else { keep * *x };
    }
}

pub fn penalize_row(row: &mut [f64], u: usize, v: usize, beta: f64, gamma: f64) {
    debug_assert_ne!(u, v);
    let k = row.len();
    let scale = (1.0 - gamma) * (1.0 - beta);
    let spread = (1.0 - gamma) * beta / (k - 1) as f64;
    for (j, x) in row.iter_mut().enumerate() {
        *x = if j == u {
            scale * *x
        } else if j == v {
            gamma + spread + scale * *x
        } else {
            spread + scale * *x
        };
    }
}

/// Applies smoothing to one row. Returns whether the row changed.
pub fn smooth_row(row: &mut [f64], rho: f64, threshold: f64) -> bool {
    let (w, &max) = row
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty row");
    if max <= threshold {
        return false;
    }
    let share = (1.0 - rho) / (row.len() - 1) as f64 * max;
    for (j, x) in row.iter_mut().enumerate() {
        if j == w {
            *x = rho * max;
        } else {
            *x += share;
        }
    }
    true
}

/// Index of a largest entry, ties broken uniformly at random.
fn argmax_random_tie<R: Rng + ?Sized>(row: &[f64], rng: &mut R) -> usize {
    let mut best = 0;
    let mut ties = 1u32;
    for (j, &x) in row.iter().enumerate().skip(1) {
        if x > row[best] {
            best = j;
            ties = 1;
        } else if x == row[best] {
            ties += 1;
            if rng.random_range(0..ties) == 0 {
                best = j;
            }
        }
    }
    best
}

fn roulette<R: Rng + ?Sized>(row: &[f64], rng: &mut R) -> usize {
    let total: f64 = row.iter().sum();
    let mut target = rng.random::<f64>() * total;
    for (j, &x) in row.iter().enumerate() {
        if target < x {
            return j;
        }
        target -= x;
    }
    // Rounding left `target` past the end: fall back to the last non-zero slot.
    row.iter().rposition(|&x| x > 0.0).unwrap_or(row.len() - 1)
}

/// Picks a group for every item according to `strategy`.
pub fn select_groups<R: Rng + ?Sized>(
    matrix: &ProbabilityMatrix,
    strategy: SelectionStrategy,
    noise: f64,
    rng: &mut R,
) -> Assignment {
    let mut out = Assignment::filled(matrix.n, matrix.k, 0);
    select_groups_into(matrix, strategy, noise, rng, &mut out);
    out
}

/// [`select_groups`] writing into an existing assignment of matching size.
pub fn select_groups_into<R: Rng + ?Sized>(
    matrix: &ProbabilityMatrix,
    strategy: SelectionStrategy,
    noise: f64,
    rng: &mut R,
    out: &mut Assignment,
) {
    assert_eq!(
        (out.len(), out.k()),
        (matrix.n, matrix.k),
        "assignment shape mismatch"
    );
    let k = matrix.k;
    for i in 0..matrix.n {
        let row = matrix.row(i);
        let g = match strategy {
            SelectionStrategy::Random => rng.random_range(0..k),
            SelectionStrategy::Greedy => argmax_random_tie(row, rng),
            SelectionStrategy::Roulette => roulette(row, rng),
            SelectionStrategy::Hybrid => {
                if rng.random_bool(noise) {
                    rng.random_range(0..k)
                } else {
                    argmax_random_tie(row, rng)
                }
            }
        };
        out.set(i, g);
    }
}

/// Reinforces every row from the pre-descent (`before`) and post-descent
/// (`after`) groups of its item.
pub fn update_probabilities(
    matrix: &mut ProbabilityMatrix,
    before: &Assignment,
    after: &Assignment,
    params: &LearningParams,
) -> Result<(), LearningError> {
    for a in [before, after] {
        if a.len() != matrix.n || a.k() != matrix.k {
            return Err(LearningError::DimensionMismatch {
                n: matrix.n,
                k: matrix.k,
                len: a.len(),
                groups: a.k(),
            });
        }
    }
    for i in 0..matrix.n {
        let (u, v) = (before.group(i), after.group(i));
        if u == v {
            matrix.reward(i, u, params.reward);
        } else {
            matrix.penalize(i, u, v, params.penalty, params.compensation);
        }
    }
    Ok(())
}

/// Smooths every row whose maximum exceeds the threshold. Returns the
/// number of rows changed.
pub fn smooth(matrix: &mut ProbabilityMatrix, params: &LearningParams) -> usize {
    let k = matrix.k;
    matrix
        .p
        .chunks_exact_mut(k)
        .map(|row| smooth_row(row, params.smoothing, params.threshold))
        .filter(|&changed| changed)
        .count()
}
