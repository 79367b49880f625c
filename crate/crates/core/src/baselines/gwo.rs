//! Grey wolf optimizer: every wolf moves to the average of three
//! leader-guided proposals.

use serde::{Deserialize, Serialize};

use super::{check_positive, init_population, progress_fraction};
use crate::error::Result;
use crate::problem::{Evaluator, ProblemSpec};
use crate::record::{Progress, RunOutcome};
use crate::stochastic::RngStream;
use crate::vortex::select_drains;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GwoParams {
    /// Starting value of the linearly decreasing coefficient `a`.
    pub a_start: f64,
}

impl Default for GwoParams {
    fn default() -> Self {
        Self { a_start: 2.0 }
    }
}

impl GwoParams {
    pub(super) fn validate(&self, problems: &mut Vec<String>) {
        check_positive("a_start", self.a_start, problems);
    }
}

/// `a(t)`, from `a_start` at 0 down to 0 at `T - 1`.
pub fn gwo_a(t: usize, iterations: usize, params: &GwoParams) -> f64 {
    params.a_start * (1.0 - progress_fraction(t, iterations))
}

pub(super) fn optimize(
    problem: &ProblemSpec,
    n: usize,
    iterations: usize,
    params: &GwoParams,
    rng: &mut RngStream,
) -> Result<RunOutcome> {
    let dim = problem.dim();
    let mut ev = Evaluator::new(problem);
    let (mut x, mut fit) = init_population(&mut ev, n, rng)?;
    let (mut leaders, mut leader_fit) = best_three(&x, &fit, &[], &[]);
    let mut progress = Progress::new(dim, iterations);
    progress.offer(&leaders[0], leader_fit[0]);

    for t in 0..iterations {
        let a = gwo_a(t, iterations, params);
        for xi in x.iter_mut() {
            let mut next = vec![0.0; dim];
            for leader in &leaders {
                for j in 0..dim {
                    let big_a = 2.0 * a * rng.uniform() - a;
                    let big_c = 2.0 * rng.uniform();
                    let d = (big_c * leader[j] - xi[j]).abs();
                    next[j] += leader[j] - big_a * d;
                }
            }
            let m = leaders.len() as f64;
            for (xj, v) in xi.iter_mut().zip(next) {
                *xj = v / m;
            }
            problem.bounds.clip(xi);
        }
        for i in 0..n {
            fit[i] = ev.eval(&x[i], rng)?;
        }
        (leaders, leader_fit) = best_three(&x, &fit, &leaders, &leader_fit);
        progress.offer(&leaders[0], leader_fit[0]);
        progress.record_iteration();
    }
    Ok(progress.finish(ev.evaluations()))
}

/// Alpha, beta and delta: the three best of population and old leaders.
fn best_three(
    x: &[Vec<f64>],
    fit: &[f64],
    leaders: &[Vec<f64>],
    leader_fit: &[f64],
) -> (Vec<Vec<f64>>, Vec<f64>) {
    let pool: Vec<(&[f64], f64)> = leaders
        .iter()
        .zip(leader_fit)
        .chain(x.iter().zip(fit))
        .map(|(p, &f)| (p.as_slice(), f))
        .collect();
    select_drains(&pool, 3.min(pool.len()))
}
