//! Equilibrium optimizer with memory saving.

use serde::{Deserialize, Serialize};

use super::{check_positive, check_unit, init_population};
use crate::error::Result;
use crate::problem::{Evaluator, ProblemSpec};
use crate::record::{Progress, RunOutcome};
use crate::stochastic::RngStream;
use crate::vortex::select_drains;

/// Four best candidates plus their mean.
pub const EQUILIBRIUM_POOL_SIZE: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EoParams {
    pub a1: f64,
    pub a2: f64,
    /// Generation probability.
    pub gp: f64,
}

impl Default for EoParams {
    fn default() -> Self {
        Self {
            a1: 2.0,
            a2: 1.0,
            gp: 0.5,
        }
    }
}

impl EoParams {
    pub(super) fn validate(&self, problems: &mut Vec<String>) {
        check_positive("a1", self.a1, problems);
        check_positive("a2", self.a2, problems);
        check_unit("gp", self.gp, problems);
    }
}

/// Whether the generation term is active for draw `r2`.
pub fn generation_control(r2: f64, gp: f64) -> bool {
    r2 >= gp
}

pub(super) fn optimize(
    problem: &ProblemSpec,
    n: usize,
    iterations: usize,
    params: &EoParams,
    rng: &mut RngStream,
) -> Result<RunOutcome> {
    let dim = problem.dim();
    let mut ev = Evaluator::new(problem);
    let (mut c, mut fit) = init_population(&mut ev, n, rng)?;
    let mut eq: (Vec<Vec<f64>>, Vec<f64>) = (Vec::new(), Vec::new());
    let mut progress = Progress::new(dim, iterations);

    for t in 0..iterations {
        eq = best_four(&c, &fit, eq);
        progress.offer(&eq.0[0], eq.1[0]);
        let pool = equilibrium_pool(&eq.0);

        let frac = t as f64 / iterations as f64;
        let time = (1.0 - frac).powf(params.a2 * frac);
        let old = (c.clone(), fit.clone());
        for ci in c.iter_mut() {
            let ceq = &pool[rng.index(pool.len())];
            let lambda: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
            let r: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
            let r1 = rng.uniform();
            let r2 = rng.uniform();
            let gcp = if generation_control(r2, params.gp) {
                0.5 * r1
            } else {
                0.0
            };
            for j in 0..dim {
                let f = params.a1 * (r[j] - 0.5).signum() * ((-lambda[j] * time).exp() - 1.0);
                let g = gcp * (ceq[j] - lambda[j] * ci[j]) * f;
                ci[j] = ceq[j]
                    + (ci[j] - ceq[j]) * f
                    + g / lambda[j].max(f64::MIN_POSITIVE) * (1.0 - f);
            }
            problem.bounds.clip(ci);
        }
        for i in 0..n {
            fit[i] = ev.eval(&c[i], rng)?;
            progress.offer(&c[i], fit[i]);
            if old.1[i] < fit[i] {
                c[i].clone_from(&old.0[i]);
                fit[i] = old.1[i];
            }
        }
        progress.record_iteration();
    }
    Ok(progress.finish(ev.evaluations()))
}

fn best_four(
    c: &[Vec<f64>],
    fit: &[f64],
    (old, old_fit): (Vec<Vec<f64>>, Vec<f64>),
) -> (Vec<Vec<f64>>, Vec<f64>) {
    let pool: Vec<(&[f64], f64)> = old
        .iter()
        .zip(&old_fit)
        .chain(c.iter().zip(fit))
        .map(|(p, &f)| (p.as_slice(), f))
        .collect();
    select_drains(&pool, (EQUILIBRIUM_POOL_SIZE - 1).min(pool.len()))
}

/// Candidates followed by their component-wise mean.
fn equilibrium_pool(candidates: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = candidates.len() as f64;
    let dim = candidates[0].len();
    let mean: Vec<f64> = (0..dim)
        .map(|j| candidates.iter().map(|c| c[j]).sum::<f64>() / m)
        .collect();
    let mut pool = candidates.to_vec();
    pool.push(mean);
    pool
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_has_four_plus_mean() {
        let c: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64]).collect();
        let fit = [5.0, 4.0, 3.0, 2.0, 1.0, 0.0];
        let eq = best_four(&c, &fit, (Vec::new(), Vec::new()));
        let pool = equilibrium_pool(&eq.0);
        assert_eq!(pool.len(), EQUILIBRIUM_POOL_SIZE);
        assert_eq!(pool[4], vec![(5.0 + 4.0 + 3.0 + 2.0) / 4.0]);
    }

    #[test]
    fn generation_threshold() {
        assert!(generation_control(0.5, 0.5));
        assert!(!generation_control(0.49, 0.5));
    }
}
