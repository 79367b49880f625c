//! Drain-vortex metaheuristic, baseline optimizers, benchmark catalog,
//! nonparametric statistics and the experiment harness.

pub mod baselines;
pub mod benchmarks;
pub mod error;
pub mod harness;
pub mod problem;
pub mod record;
pub mod special;
pub mod stats;
pub mod stochastic;
pub mod vortex;

pub use error::{Error, Result};
pub use problem::{Bounds, Evaluator, PenaltySpec, ProblemKind, ProblemSpec};
pub use record::{Checkpoint, Optimizer, RunFailure, RunOutcome, RunRecord, RunSummary};
pub use stats::ResultSet;
pub use stochastic::RngStream;
