//! Whale optimization: encircling, random search and logarithmic-spiral
//! bubble-net moves.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{argmin, check_positive, init_population, progress_fraction};
use crate::error::Result;
use crate::problem::{Evaluator, ProblemSpec};
use crate::record::{Progress, RunOutcome};
use crate::stochastic::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WoaParams {
    /// Logarithmic spiral constant `b`.
    pub spiral_b: f64,
    pub a_start: f64,
}

impl Default for WoaParams {
    fn default() -> Self {
        Self {
            spiral_b: 1.0,
            a_start: 2.0,
        }
    }
}

impl WoaParams {
    pub(super) fn validate(&self, problems: &mut Vec<String>) {
        check_positive("a_start", self.a_start, problems);
        if !self.spiral_b.is_finite() {
            problems.push(format!("spiral_b must be finite, got {}", self.spiral_b));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WoaBranch {
    /// Shrinking encirclement of the best whale (`|A| < 1`).
    Encircle,
    /// Move relative to a randomly chosen whale (`|A| >= 1`).
    Search,
    Spiral,
}

/// Branch chosen from the uniform draw `p` and the coefficient `A`.
pub fn woa_branch(p: f64, big_a: f64) -> WoaBranch {
    if p >= 0.5 {
        WoaBranch::Spiral
    } else if big_a.abs() < 1.0 {
        WoaBranch::Encircle
    } else {
        WoaBranch::Search
    }
}

/// Bubble-net spiral: `|best - x| * e^(b l) * cos(2 pi l) + best`.
pub fn woa_spiral(x: &[f64], best: &[f64], l: f64, b: f64) -> Vec<f64> {
    let factor = (b * l).exp() * (2.0 * PI * l).cos();
    x.iter()
        .zip(best)
        .map(|(xi, bi)| (bi - xi).abs() * factor + bi)
        .collect()
}

pub(super) fn optimize(
    problem: &ProblemSpec,
    n: usize,
    iterations: usize,
    params: &WoaParams,
    rng: &mut RngStream,
) -> Result<RunOutcome> {
    let dim = problem.dim();
    let mut ev = Evaluator::new(problem);
    let (mut x, mut fit) = init_population(&mut ev, n, rng)?;
    let mut progress = Progress::new(dim, iterations);
    let b0 = argmin(&fit);
    progress.offer(&x[b0], fit[b0]);

    for t in 0..iterations {
        let a = params.a_start * (1.0 - progress_fraction(t, iterations));
        let best = progress.best_position.clone();
        let snapshot = x.clone();
        for xi in x.iter_mut() {
            let big_a = 2.0 * a * rng.uniform() - a;
            let big_c = 2.0 * rng.uniform();
            let p = rng.uniform();
            let l = rng.uniform_in(-1.0, 1.0);
            let next = match woa_branch(p, big_a) {
                WoaBranch::Spiral => woa_spiral(xi, &best, l, params.spiral_b),
                WoaBranch::Encircle => toward(xi, &best, big_a, big_c),
                WoaBranch::Search => {
                    let other = &snapshot[rng.index(n)];
                    toward(xi, other, big_a, big_c)
                }
            };
            *xi = next;
            problem.bounds.clip(xi);
        }
        for i in 0..n {
            fit[i] = ev.eval(&x[i], rng)?;
            progress.offer(&x[i], fit[i]);
        }
        progress.record_iteration();
    }
    Ok(progress.finish(ev.evaluations()))
}

fn toward(x: &[f64], target: &[f64], big_a: f64, big_c: f64) -> Vec<f64> {
    x.iter()
        .zip(target)
        .map(|(xi, ti)| ti - big_a * (big_c * ti - xi).abs())
        .collect()
}
