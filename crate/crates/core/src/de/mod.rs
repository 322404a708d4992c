//! Section-wise density evolution of BP decoding over erasure channels.
//!
//! A section is a nonzero base-matrix entry `(i, j)`. For each section we
//! track `x`, the erasure probability of variable-to-check messages, and `y`,
//! the erasure probability of check-to-variable messages. One step applies
//!
//! ```text
//! y'(i,j) = 1 - (1 - x(i,j))^(B(i,j)-1) * prod_{j' != j} (1 - x(i,j'))^B(i,j')
//! x'(i,j) = eps_j * y'(i,j)^(B(i,j)-1) * prod_{i' != i} y'(i',j)^B(i',j)
//! ```
//!
//! Leave-one-out products use prefix/suffix products, so absorbing states
//! (`x = 1` or `y = 0`) need no division and every step is monotone in its
//! inputs in floating point as well as in exact arithmetic.

mod region;
mod threshold;

pub use region::{sweep_region, RegionPoint, RegionResult};
pub use threshold::{bisect_threshold, corner_threshold, FreeParam, ThresholdResult};

use crate::base_matrix::BaseMatrix;
use crate::error::{invalid, Result};
use crate::relay::JointRelayGraph;

/// What must vanish for a channel point to count as achievable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Achievability {
    /// A-posteriori erasure probability `eps_j * prod_i y(i,j)^B(i,j)` of
    /// every target column (the source codeword for joint graphs, every
    /// column for standalone graphs).
    #[default]
    Posterior,
    /// Variable-to-check messages on edges of target columns.
    TargetMessages,
    /// Every variable-to-check message in the graph. Never satisfied with a
    /// degree-1 variable on a noisy channel, whose message stays `eps_j`.
    AllMessages,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeConfig {
    pub success_tol: f64,
    pub stall_tol: f64,
    pub max_iter: u64,
    /// Iterations between stall checks.
    pub stall_window: u64,
    pub achievability: Achievability,
}

impl Default for DeConfig {
    fn default() -> Self {
        DeConfig {
            success_tol: 1e-10,
            stall_tol: 1e-15,
            max_iter: 200_000,
            stall_window: 100,
            achievability: Achievability::Posterior,
        }
    }
}

impl DeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.stall_tol && self.stall_tol < self.success_tol && self.success_tol < 1.0) {
            return invalid(format!(
                "need 0 < stall_tol ({}) < success_tol ({}) < 1",
                self.stall_tol, self.success_tol
            ));
        }
        if self.max_iter == 0 || self.stall_window == 0 {
            return invalid("max_iter and stall_window must be positive");
        }
        Ok(())
    }
}

/// A base matrix compiled for density evolution.
#[derive(Debug, Clone)]
pub struct DeGraph {
    rows: usize,
    cols: usize,
    sec_row: Vec<u32>,
    sec_col: Vec<u32>,
    mult: Vec<i32>,
    /// Sections of row `i` are `row_ptr[i]..row_ptr[i + 1]`.
    row_ptr: Vec<usize>,
    /// Sections of column `j` are `col_secs[col_ptr[j]..col_ptr[j + 1]]`.
    col_ptr: Vec<usize>,
    col_secs: Vec<u32>,
    target_cols: Vec<bool>,
}

impl DeGraph {
    /// Every column is a target.
    pub fn new(base: &BaseMatrix) -> Self {
        Self::with_targets(base, vec![true; base.cols()])
    }

    pub fn with_targets(base: &BaseMatrix, target_cols: Vec<bool>) -> Self {
        assert_eq!(target_cols.len(), base.cols());
        let (rows, cols) = (base.rows(), base.cols());
        let mut sec_row = Vec::new();
        let mut sec_col = Vec::new();
        let mut mult = Vec::new();
        let mut row_ptr = Vec::with_capacity(rows + 1);
        row_ptr.push(0);
        for i in 0..rows {
            for (j, &b) in base.row(i).iter().enumerate() {
                if b != 0 {
                    sec_row.push(i as u32);
                    sec_col.push(j as u32);
                    mult.push(b as i32);
                }
            }
            row_ptr.push(sec_row.len());
        }
        let mut counts = vec![0usize; cols + 1];
        for &j in &sec_col {
            counts[j as usize + 1] += 1;
        }
        for j in 0..cols {
            counts[j + 1] += counts[j];
        }
        let col_ptr = counts.clone();
        let mut fill = counts;
        let mut col_secs = vec![0u32; sec_col.len()];
        for (s, &j) in sec_col.iter().enumerate() {
            col_secs[fill[j as usize]] = s as u32;
            fill[j as usize] += 1;
        }
        DeGraph {
            rows,
            cols,
            sec_row,
            sec_col,
            mult,
            row_ptr,
            col_ptr,
            col_secs,
            target_cols,
        }
    }

    /// Targets the source codeword columns of a joint graph.
    pub fn from_joint(graph: &JointRelayGraph) -> Self {
        Self::with_targets(&graph.base, graph.target_columns())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_sections(&self) -> usize {
        self.mult.len()
    }

    /// `(row, col)` of section `s`.
    pub fn section(&self, s: usize) -> (usize, usize) {
        (self.sec_row[s] as usize, self.sec_col[s] as usize)
    }

    pub fn section_index(&self, i: usize, j: usize) -> Option<usize> {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        let found = self.sec_col[range.clone()]
            .binary_search(&(j as u32))
            .ok()?;
        Some(range.start + found)
    }

    fn section_counts(&self, s: usize, criterion: Achievability) -> bool {
        match criterion {
            Achievability::AllMessages => true,
            Achievability::TargetMessages => self.target_cols[self.sec_col[s] as usize],
            Achievability::Posterior => false,
        }
    }

    /// Initial state `x(i,j) = eps_j`.
    pub fn initial_state(&self, eps: &[f64]) -> DeState {
        assert_eq!(eps.len(), self.cols, "one erasure probability per column");
        DeState {
            x: self.sec_col.iter().map(|&j| eps[j as usize]).collect(),
            y: vec![0.0; self.num_sections()],
            iteration: 0,
        }
    }

    /// Recomputes `y` on row `i`; calls `changed(s)` for every section whose
    /// value moved.
    fn update_row(
        &self,
        i: usize,
        x: &[f64],
        y: &mut [f64],
        scratch: &mut Vec<f64>,
        mut changed: impl FnMut(usize),
    ) {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        scratch.clear();
        let mut prefix = 1.0;
        for s in range.clone() {
            scratch.push(prefix);
            prefix *= pow(1.0 - x[s], self.mult[s]);
        }
        let mut suffix = 1.0;
        for (k, s) in range.enumerate().rev() {
            let keep = 1.0 - x[s];
            let v = 1.0 - pow(keep, self.mult[s] - 1) * scratch[k] * suffix;
            if v != y[s] {
                y[s] = v;
                changed(s);
            }
            suffix *= pow(keep, self.mult[s]);
        }
    }

    /// Recomputes `x` on column `j`.
    fn update_col(
        &self,
        j: usize,
        eps: f64,
        y: &[f64],
        x: &mut [f64],
        scratch: &mut Vec<f64>,
        mut changed: impl FnMut(usize),
    ) {
        let secs = &self.col_secs[self.col_ptr[j]..self.col_ptr[j + 1]];
        scratch.clear();
        let mut prefix = 1.0;
        for &s in secs {
            let s = s as usize;
            scratch.push(prefix);
            prefix *= pow(y[s], self.mult[s]);
        }
        let mut suffix = 1.0;
        for (k, &s) in secs.iter().enumerate().rev() {
            let s = s as usize;
            let v = eps * pow(y[s], self.mult[s] - 1) * scratch[k] * suffix;
            if v != x[s] {
                x[s] = v;
                changed(s);
            }
            suffix *= pow(y[s], self.mult[s]);
        }
    }

    fn check_update(&self, x: &[f64], y: &mut [f64], scratch: &mut Vec<f64>) {
        for i in 0..self.rows {
            self.update_row(i, x, y, scratch, |_| {});
        }
    }

    fn variable_update(&self, eps: &[f64], y: &[f64], x: &mut [f64], scratch: &mut Vec<f64>) {
        for j in 0..self.cols {
            self.update_col(j, eps[j], y, x, scratch, |_| {});
        }
    }

    fn column_posterior(&self, j: usize, eps: f64, y: &[f64]) -> f64 {
        self.col_secs[self.col_ptr[j]..self.col_ptr[j + 1]]
            .iter()
            .fold(eps, |acc, &s| {
                acc * pow(y[s as usize], self.mult[s as usize])
            })
    }

    /// A-posteriori erasure probability of each column,
    /// `eps_j * prod_i y(i,j)^B(i,j)`.
    pub fn posterior(&self, eps: &[f64], state: &DeState) -> Vec<f64> {
        (0..self.cols)
            .map(|j| self.column_posterior(j, eps[j], &state.y))
            .collect()
    }
}

#[inline]
fn pow(v: f64, m: i32) -> f64 {
    match m {
        0 => 1.0,
        1 => v,
        2 => v * v,
        _ => v.powi(m),
    }
}

/// Per-section message erasure probabilities after `iteration` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct DeState {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub iteration: u64,
}

/// One full iteration: check update from `x`, then variable update.
pub fn de_step(graph: &DeGraph, eps: &[f64], state: &DeState) -> DeState {
    let mut next = state.clone();
    let mut scratch = Vec::new();
    graph.check_update(&state.x, &mut next.y, &mut scratch);
    graph.variable_update(eps, &next.y, &mut next.x, &mut scratch);
    next.iteration += 1;
    next
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    Stalled,
    MaxIterations,
}

#[derive(Debug, Clone)]
pub struct DeOutcome {
    pub achievable: bool,
    pub reason: StopReason,
    pub iterations: u64,
    /// Largest target-section `x` at the final iteration.
    pub max_target_x: f64,
    pub state: DeState,
    /// Per-column a-posteriori erasure probability at the final iteration.
    pub posterior: Vec<f64>,
}

/// Runs density evolution from `x = eps` until the target sections fall
/// below `success_tol`, no section moves by more than `stall_tol` over a
/// stall window, or `max_iter` is reached.
pub fn run_de(graph: &DeGraph, eps: &[f64], config: &DeConfig) -> DeOutcome {
    run_de_observed(graph, eps, config, |_| {})
}

/// [`run_de`] calling `observe` on the initial state and after every step.
///
/// Only rows and columns with a changed input are recomputed, which gives
/// the same states as full sweeps (see [`de_step`]) at a fraction of the
/// cost once most of a coupled chain has settled.
pub fn run_de_observed(
    graph: &DeGraph,
    eps: &[f64],
    config: &DeConfig,
    mut observe: impl FnMut(&DeState),
) -> DeOutcome {
    let mut state = graph.initial_state(eps);
    observe(&state);
    let tol = config.success_tol;
    let criterion = config.achievability;
    let use_posterior = criterion == Achievability::Posterior;

    // Number of tracked quantities still at or above the success tolerance.
    let mut posterior: Vec<f64> = eps.to_vec();
    let mut pending = if use_posterior {
        (0..graph.cols)
            .filter(|&j| graph.target_cols[j] && posterior[j] >= tol)
            .count()
    } else {
        (0..graph.num_sections())
            .filter(|&s| graph.section_counts(s, criterion) && state.x[s] >= tol)
            .count()
    };

    let mut row_dirty = vec![true; graph.rows];
    let mut col_dirty = vec![true; graph.cols];
    let mut rows: Vec<u32> = (0..graph.rows as u32).collect();
    let mut cols: Vec<u32> = (0..graph.cols as u32).collect();
    let mut snapshot = state.x.clone();
    let mut scratch = Vec::new();
    let mut reason = if pending == 0 {
        StopReason::Converged
    } else {
        StopReason::MaxIterations
    };

    while reason == StopReason::MaxIterations && state.iteration < config.max_iter {
        for &i in &rows {
            row_dirty[i as usize] = false;
            graph.update_row(i as usize, &state.x, &mut state.y, &mut scratch, |s| {
                let j = graph.sec_col[s] as usize;
                if !col_dirty[j] {
                    col_dirty[j] = true;
                    cols.push(j as u32);
                }
            });
        }
        rows.clear();
        for &j in &cols {
            let j = j as usize;
            col_dirty[j] = false;
            graph.update_col(j, eps[j], &state.y, &mut state.x, &mut scratch, |s| {
                let i = graph.sec_row[s] as usize;
                if !row_dirty[i] {
                    row_dirty[i] = true;
                    rows.push(i as u32);
                }
            });
            if use_posterior && graph.target_cols[j] {
                let p = graph.column_posterior(j, eps[j], &state.y);
                match (posterior[j] >= tol, p >= tol) {
                    (true, false) => pending -= 1,
                    (false, true) => pending += 1,
                    _ => {}
                }
                posterior[j] = p;
            }
        }
        cols.clear();
        state.iteration += 1;
        observe(&state);

        if !use_posterior {
            pending = (0..graph.num_sections())
                .filter(|&s| graph.section_counts(s, criterion) && state.x[s] >= tol)
                .count();
        }
        if pending == 0 {
            reason = StopReason::Converged;
        } else if rows.is_empty() {
            // Nothing changed: a fixed point.
            reason = StopReason::Stalled;
        } else if state.iteration.is_multiple_of(config.stall_window) {
            let moved = snapshot
                .iter()
                .zip(&state.x)
                .fold(0.0f64, |m, (old, new)| m.max(old - new));
            if moved < config.stall_tol {
                reason = StopReason::Stalled;
            }
            snapshot.copy_from_slice(&state.x);
        }
    }
    let posterior = graph.posterior(eps, &state);
    DeOutcome {
        achievable: reason == StopReason::Converged,
        reason,
        iterations: state.iteration,
        max_target_x: max_target(graph, &state, &posterior, criterion),
        state,
        posterior,
    }
}

/// Largest tracked quantity under `criterion`.
fn max_target(
    graph: &DeGraph,
    state: &DeState,
    posterior: &[f64],
    criterion: Achievability,
) -> f64 {
    match criterion {
        Achievability::Posterior => (0..graph.cols)
            .filter(|&j| graph.target_cols[j])
            .fold(0.0, |m, j| m.max(posterior[j])),
        _ => (0..graph.num_sections())
            .filter(|&s| graph.section_counts(s, criterion))
            .fold(0.0, |m, s| m.max(state.x[s])),
    }
}
