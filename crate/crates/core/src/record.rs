//! Per-run results and the contract shared by every optimizer.

use serde::{Deserialize, Serialize};

use crate::benchmarks::FEASIBILITY_TOLERANCE;
use crate::error::Result;
use crate::problem::ProblemSpec;
use crate::stochastic::RngStream;

/// Iterations at which best-so-far error is snapshotted by default.
pub const DEFAULT_CHECKPOINTS: [usize; 6] = [50, 100, 200, 400, 700, 1000];

/// What an optimizer hands back after a completed run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Best-so-far fitness at the end of each iteration.
    pub trace: Vec<f64>,
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub evaluations: usize,
}

/// Anything that can be run on a problem from a seed.
pub trait Optimizer: Send + Sync {
    fn label(&self) -> &str;

    fn optimize(&self, problem: &ProblemSpec, rng: &mut RngStream) -> Result<RunOutcome>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub iteration: usize,
    pub best_fitness: f64,
    pub error: Option<f64>,
}

/// One (algorithm, problem, seed) trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub run_index: u64,
    pub seed: u64,
    pub trace: Vec<f64>,
    pub checkpoints: Vec<Checkpoint>,
    pub best_position: Vec<f64>,
    /// Best value of the optimized (possibly penalized) objective.
    pub best_fitness: f64,
    /// Unpenalized objective at `best_position`.
    pub objective_value: f64,
    /// `objective_value - f_true`, when the optimum is known.
    pub error: Option<f64>,
    pub feasible: Option<bool>,
    pub max_violation: Option<f64>,
    pub evaluations: usize,
    pub wall_time_ms: Option<u64>,
}

impl RunRecord {
    pub fn from_outcome(
        algorithm: &str,
        problem: &ProblemSpec,
        run_index: u64,
        seed: u64,
        outcome: RunOutcome,
    ) -> Self {
        let objective_value = if problem.penalty.is_some() {
            // Penalized catalog problems are deterministic; the stream is unused.
            problem.raw_value(&outcome.best_position, &mut RngStream::new(seed))
        } else {
            outcome.best_fitness
        };
        let (feasible, max_violation) = if problem.is_constrained() {
            let v = problem.max_violation(&outcome.best_position);
            (Some(v <= FEASIBILITY_TOLERANCE), Some(v))
        } else {
            (None, None)
        };
        let mut record = Self {
            algorithm: algorithm.to_string(),
            problem: problem.name.clone(),
            dim: problem.dim(),
            run_index,
            seed,
            error: problem.f_true.map(|f| objective_value - f),
            trace: outcome.trace,
            checkpoints: Vec::new(),
            best_position: outcome.best_position,
            best_fitness: outcome.best_fitness,
            objective_value,
            feasible,
            max_violation,
            evaluations: outcome.evaluations,
            wall_time_ms: None,
        };
        let defaults: Vec<usize> = DEFAULT_CHECKPOINTS
            .iter()
            .copied()
            .filter(|&c| c <= record.trace.len())
            .collect();
        record.set_checkpoints(&defaults, problem.f_true);
        record
    }

    /// Snapshots the trace at the given 1-based iterations. Iterations past
    /// the end of the trace are skipped.
    pub fn set_checkpoints(&mut self, iterations: &[usize], f_true: Option<f64>) {
        self.checkpoints = iterations
            .iter()
            .filter(|&&it| it >= 1 && it <= self.trace.len())
            .map(|&it| {
                let best = self.trace[it - 1];
                Checkpoint {
                    iteration: it,
                    best_fitness: best,
                    error: f_true.map(|f| best - f),
                }
            })
            .collect();
    }

    /// Value used by the reporting metrics: error when the optimum is
    /// known, the raw objective otherwise.
    pub fn metric_value(&self) -> f64 {
        self.error.unwrap_or(self.objective_value)
    }
}

/// Final numbers of one run, as stored in the summary table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub seed: u64,
    /// Unpenalized objective at the best position.
    pub best: f64,
    pub error: Option<f64>,
    pub feasible: Option<bool>,
    pub max_violation: Option<f64>,
    pub walltime_ms: Option<u64>,
}

impl From<&RunRecord> for RunSummary {
    fn from(r: &RunRecord) -> Self {
        Self {
            algorithm: r.algorithm.clone(),
            problem: r.problem.clone(),
            dim: r.dim,
            seed: r.seed,
            best: r.objective_value,
            error: r.error,
            feasible: r.feasible,
            max_violation: r.max_violation,
            walltime_ms: r.wall_time_ms,
        }
    }
}

/// Diagnostic left behind by a run that aborted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub run_index: u64,
    pub seed: u64,
    pub message: String,
}

/// Runs `optimizer` on `problem` with a fresh stream seeded by `seed`.
pub fn run_optimizer(
    optimizer: &dyn Optimizer,
    problem: &ProblemSpec,
    run_index: u64,
    seed: u64,
) -> Result<RunRecord, RunFailure> {
    let mut rng = RngStream::new(seed);
    match optimizer.optimize(problem, &mut rng) {
        Ok(outcome) => Ok(RunRecord::from_outcome(
            optimizer.label(),
            problem,
            run_index,
            seed,
            outcome,
        )),
        Err(e) => Err(RunFailure {
            algorithm: optimizer.label().to_string(),
            problem: problem.name.clone(),
            dim: problem.dim(),
            run_index,
            seed,
            message: e.to_string(),
        }),
    }
}

/// Best-so-far bookkeeping shared by the population loops.
#[derive(Debug, Clone)]
pub(crate) struct Progress {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub trace: Vec<f64>,
}

impl Progress {
    pub fn new(dim: usize, iterations: usize) -> Self {
        Self {
            best_position: vec![0.0; dim],
            best_fitness: f64::INFINITY,
            trace: Vec::with_capacity(iterations),
        }
    }

    pub fn offer(&mut self, x: &[f64], f: f64) {
        if f < self.best_fitness {
            self.best_fitness = f;
            self.best_position.copy_from_slice(x);
        }
    }

    pub fn record_iteration(&mut self) {
        self.trace.push(self.best_fitness);
    }

    pub fn finish(self, evaluations: usize) -> RunOutcome {
        RunOutcome {
            trace: self.trace,
            best_position: self.best_position,
            best_fitness: self.best_fitness,
            evaluations,
        }
    }
}
