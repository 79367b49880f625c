//! Sine cosine algorithm with a small elite archive.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_positive, init_population, progress_fraction};
use crate::error::Result;
use crate::problem::{Evaluator, ProblemSpec};
use crate::record::{Progress, RunOutcome};
use crate::stochastic::RngStream;
use crate::vortex::select_drains;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScaParams {
    /// Starting amplitude of `r1`.
    pub a: f64,
    /// Size of the elite archive. Moves always target the best elite.
    pub elites: usize,
}

impl Default for ScaParams {
    fn default() -> Self {
        Self { a: 2.0, elites: 2 }
    }
}

impl ScaParams {
    pub(super) fn validate(&self, problems: &mut Vec<String>) {
        check_positive("a", self.a, problems);
        if self.elites == 0 {
            problems.push("elites must be at least 1".into());
        }
    }
}

/// Amplitude `r1(t)`, from `a` at 0 down to 0 at `T - 1`.
pub fn sca_r1(t: usize, iterations: usize, params: &ScaParams) -> f64 {
    params.a * (1.0 - progress_fraction(t, iterations))
}

pub(super) fn optimize(
    problem: &ProblemSpec,
    n: usize,
    iterations: usize,
    params: &ScaParams,
    rng: &mut RngStream,
) -> Result<RunOutcome> {
    let dim = problem.dim();
    let mut ev = Evaluator::new(problem);
    let (mut x, mut fit) = init_population(&mut ev, n, rng)?;
    let mut elites = update_elites(&x, &fit, (Vec::new(), Vec::new()), params.elites);
    let mut progress = Progress::new(dim, iterations);
    progress.offer(&elites.0[0], elites.1[0]);

    for t in 0..iterations {
        let r1 = sca_r1(t, iterations, params);
        let dest = elites.0[0].clone();
        for xi in x.iter_mut() {
            for j in 0..dim {
                let r2 = 2.0 * PI * rng.uniform();
                let r3 = 2.0 * rng.uniform();
                let r4 = rng.uniform();
                let gap = (r3 * dest[j] - xi[j]).abs();
                xi[j] += if r4 < 0.5 {
                    r1 * r2.sin() * gap
                } else {
                    r1 * r2.cos() * gap
                };
            }
            problem.bounds.clip(xi);
        }
        for i in 0..n {
            fit[i] = ev.eval(&x[i], rng)?;
        }
        elites = update_elites(&x, &fit, elites, params.elites);
        progress.offer(&elites.0[0], elites.1[0]);
        progress.record_iteration();
    }
    Ok(progress.finish(ev.evaluations()))
}

fn update_elites(
    x: &[Vec<f64>],
    fit: &[f64],
    (old, old_fit): (Vec<Vec<f64>>, Vec<f64>),
    k: usize,
) -> (Vec<Vec<f64>>, Vec<f64>) {
    let pool: Vec<(&[f64], f64)> = old
        .iter()
        .zip(&old_fit)
        .chain(x.iter().zip(fit))
        .map(|(p, &f)| (p.as_slice(), f))
        .collect();
    select_drains(&pool, k.min(pool.len()))
}
