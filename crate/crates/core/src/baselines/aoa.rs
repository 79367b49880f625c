//! Arithmetic optimization: multiplication/division moves explore,
//! addition/subtraction moves exploit, switched by the accelerated
//! schedule MOA.

use serde::{Deserialize, Serialize};

use super::{argmin, check_positive, check_unit, init_population, progress_fraction};
use crate::error::Result;
use crate::problem::{Evaluator, ProblemSpec};
use crate::record::{Progress, RunOutcome};
use crate::stochastic::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AoaParams {
    pub moa_min: f64,
    pub moa_max: f64,
    /// Exploitation sensitivity of the MOP schedule.
    pub alpha: f64,
    /// Control parameter scaling the search step.
    pub mu: f64,
    pub epsilon: f64,
}

impl Default for AoaParams {
    fn default() -> Self {
        Self {
            moa_min: 0.1,
            moa_max: 0.9,
            alpha: 5.0,
            mu: 0.499,
            epsilon: f64::EPSILON,
        }
    }
}

impl AoaParams {
    pub(super) fn validate(&self, problems: &mut Vec<String>) {
        check_unit("moa_min", self.moa_min, problems);
        check_unit("moa_max", self.moa_max, problems);
        if self.moa_min > self.moa_max {
            problems.push(format!(
                "moa_min {} exceeds moa_max {}",
                self.moa_min, self.moa_max
            ));
        }
        check_positive("alpha", self.alpha, problems);
        check_positive("epsilon", self.epsilon, problems);
    }
}

/// MOA(t), linear from `moa_min` at 0 to `moa_max` at `T - 1`.
pub fn math_optimizer_accelerated(t: usize, iterations: usize, params: &AoaParams) -> f64 {
    params.moa_min + (params.moa_max - params.moa_min) * progress_fraction(t, iterations)
}

/// MOP(t) = 1 - ((t + 1) / T)^(1 / alpha).
pub fn math_optimizer_probability(t: usize, iterations: usize, params: &AoaParams) -> f64 {
    1.0 - ((t + 1) as f64 / iterations as f64).powf(1.0 / params.alpha)
}

pub(super) fn optimize(
    problem: &ProblemSpec,
    n: usize,
    iterations: usize,
    params: &AoaParams,
    rng: &mut RngStream,
) -> Result<RunOutcome> {
    let dim = problem.dim();
    let bounds = &problem.bounds;
    let scale: Vec<f64> = bounds
        .lower()
        .iter()
        .zip(bounds.upper())
        .map(|(lo, hi)| (hi - lo) * params.mu + lo)
        .collect();
    let mut ev = Evaluator::new(problem);
    let (mut x, mut fit) = init_population(&mut ev, n, rng)?;
    let mut progress = Progress::new(dim, iterations);
    let b0 = argmin(&fit);
    progress.offer(&x[b0], fit[b0]);

    for t in 0..iterations {
        let moa = math_optimizer_accelerated(t, iterations, params);
        let mop = math_optimizer_probability(t, iterations, params);
        let best = progress.best_position.clone();
        for i in 0..n {
            let mut cand = vec![0.0; dim];
            for j in 0..dim {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                let r3 = rng.uniform();
                cand[j] = if r1 > moa {
                    if r2 > 0.5 {
                        best[j] / (mop + params.epsilon) * scale[j]
                    } else {
                        best[j] * mop * scale[j]
                    }
                } else if r3 > 0.5 {
                    best[j] - mop * scale[j]
                } else {
                    best[j] + mop * scale[j]
                };
            }
            bounds.clip(&mut cand);
            let f = ev.eval(&cand, rng)?;
            if f < fit[i] {
                x[i] = cand;
                fit[i] = f;
                progress.offer(&x[i], f);
            }
        }
        progress.record_iteration();
    }
    Ok(progress.finish(ev.evaluations()))
}
