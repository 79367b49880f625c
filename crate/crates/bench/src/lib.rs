//! Fixtures shared by the optimizer benchmarks.

use dvo_core::baselines::{Algorithm, Baseline, BaselineConfig};
use dvo_core::benchmarks::classical_scalable;
use dvo_core::vortex::{Dvo, DvoParams};
use dvo_core::{Optimizer, ProblemSpec};

/// Sphere, Rastrigin and Ackley at `dim`.
pub fn problems(dim: usize) -> Vec<ProblemSpec> {
    ["F1", "F9", "F10"]
        .iter()
        .map(|id| classical_scalable(id, dim).expect("catalog id"))
        .collect()
}

/// DVO followed by every baseline, all with the same budget.
pub fn optimizers(population: usize, iterations: usize) -> Vec<Box<dyn Optimizer>> {
    let params = DvoParams {
        population,
        iterations,
        ..DvoParams::default()
    };
    let mut out: Vec<Box<dyn Optimizer>> = vec![Box::new(Dvo::new(params))];
    for a in Algorithm::ALL {
        let cfg = BaselineConfig::new(a).with_budget(population, iterations);
        out.push(Box::new(Baseline::new(cfg)));
    }
    out
}
