//! Global-best particle swarm with a linearly decreasing inertia weight.

use serde::{Deserialize, Serialize};

use super::{check_positive, init_population, progress_fraction};
use crate::error::Result;
use crate::problem::{Evaluator, ProblemSpec};
use crate::record::{Progress, RunOutcome};
use crate::stochastic::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoParams {
    pub c1: f64,
    pub c2: f64,
    pub w_start: f64,
    pub w_end: f64,
    /// Velocity cap as a fraction of each box side.
    pub velocity_fraction: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            c1: 2.0,
            c2: 2.0,
            w_start: 0.9,
            w_end: 0.4,
            velocity_fraction: 0.2,
        }
    }
}

impl PsoParams {
    pub(super) fn validate(&self, problems: &mut Vec<String>) {
        check_positive("velocity_fraction", self.velocity_fraction, problems);
        for (name, v) in [
            ("c1", self.c1),
            ("c2", self.c2),
            ("w_start", self.w_start),
            ("w_end", self.w_end),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                problems.push(format!("{name} must be nonnegative, got {v}"));
            }
        }
    }
}

/// Inertia weight at iteration `t`: `w_start` at 0, `w_end` at `T - 1`.
pub fn inertia_weight(t: usize, iterations: usize, params: &PsoParams) -> f64 {
    params.w_start + (params.w_end - params.w_start) * progress_fraction(t, iterations)
}

pub(super) fn optimize(
    problem: &ProblemSpec,
    n: usize,
    iterations: usize,
    params: &PsoParams,
    rng: &mut RngStream,
) -> Result<RunOutcome> {
    let bounds = &problem.bounds;
    let dim = problem.dim();
    let vmax: Vec<f64> = bounds
        .lower()
        .iter()
        .zip(bounds.upper())
        .map(|(lo, hi)| params.velocity_fraction * (hi - lo))
        .collect();
    let mut ev = Evaluator::new(problem);
    let (mut x, fit) = init_population(&mut ev, n, rng)?;
    let mut velocity = vec![vec![0.0; dim]; n];
    let mut pbest = x.clone();
    let mut pbest_fit = fit;
    let mut progress = Progress::new(dim, iterations);
    for (p, f) in pbest.iter().zip(&pbest_fit) {
        progress.offer(p, *f);
    }

    for t in 0..iterations {
        let w = inertia_weight(t, iterations, params);
        for i in 0..n {
            let gbest = &progress.best_position;
            for j in 0..dim {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                let v = w * velocity[i][j]
                    + params.c1 * r1 * (pbest[i][j] - x[i][j])
                    + params.c2 * r2 * (gbest[j] - x[i][j]);
                velocity[i][j] = v.clamp(-vmax[j], vmax[j]);
                x[i][j] += velocity[i][j];
            }
            bounds.clip(&mut x[i]);
        }
        for i in 0..n {
            let f = ev.eval(&x[i], rng)?;
            if f < pbest_fit[i] {
                pbest_fit[i] = f;
                pbest[i].clone_from(&x[i]);
            }
            progress.offer(&x[i], f);
        }
        progress.record_iteration();
    }
    Ok(progress.finish(ev.evaluations()))
}
