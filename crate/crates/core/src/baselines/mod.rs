//! Comparison optimizers: PSO, GWO, WOA, SCA, AOA and EO.
//!
//! All of them clip candidates to the box, evaluate the initial population
//! once and then one population sweep per iteration, so a run costs
//! `N * (T + 1)` evaluations.

mod aoa;
mod eo;
mod gwo;
mod pso;
mod sca;
mod woa;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{Evaluator, ProblemSpec};
use crate::record::{run_optimizer, Optimizer, RunFailure, RunOutcome, RunRecord};
use crate::stochastic::RngStream;

pub use aoa::{math_optimizer_accelerated, math_optimizer_probability, AoaParams};
pub use eo::{generation_control, EoParams, EQUILIBRIUM_POOL_SIZE};
pub use gwo::{gwo_a, GwoParams};
pub use pso::{inertia_weight, PsoParams};
pub use sca::{sca_r1, ScaParams};
pub use woa::{woa_branch, woa_spiral, WoaBranch, WoaParams};

/// Baseline identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Algorithm {
    Pso,
    Gwo,
    Woa,
    Sca,
    Aoa,
    Eo,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Pso,
        Algorithm::Gwo,
        Algorithm::Woa,
        Algorithm::Sca,
        Algorithm::Aoa,
        Algorithm::Eo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pso => "PSO",
            Algorithm::Gwo => "GWO",
            Algorithm::Woa => "WOA",
            Algorithm::Sca => "SCA",
            Algorithm::Aoa => "AOA",
            Algorithm::Eo => "EO",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::config(format!("unknown baseline algorithm `{s}`")))
    }
}

/// Algorithm-specific parameter block.
#[derive(Debug, Clone, PartialEq)]
pub enum BaselineParams {
    Pso(PsoParams),
    Gwo(GwoParams),
    Woa(WoaParams),
    Sca(ScaParams),
    Aoa(AoaParams),
    Eo(EoParams),
}

impl BaselineParams {
    pub fn defaults(algorithm: Algorithm) -> Self {
        match algorithm {
            Algorithm::Pso => Self::Pso(PsoParams::default()),
            Algorithm::Gwo => Self::Gwo(GwoParams::default()),
            Algorithm::Woa => Self::Woa(WoaParams::default()),
            Algorithm::Sca => Self::Sca(ScaParams::default()),
            Algorithm::Aoa => Self::Aoa(AoaParams::default()),
            Algorithm::Eo => Self::Eo(EoParams::default()),
        }
    }

    /// Parses an override table on top of the defaults. Unknown keys are
    /// rejected.
    pub fn from_toml(algorithm: Algorithm, table: toml::Table) -> Result<Self> {
        fn parse<T: serde::de::DeserializeOwned>(
            algorithm: Algorithm,
            table: toml::Table,
        ) -> Result<T> {
            T::deserialize(toml::Value::Table(table))
                .map_err(|e| Error::config(format!("{algorithm} parameters: {e}")))
        }
        Ok(match algorithm {
            Algorithm::Pso => Self::Pso(parse(algorithm, table)?),
            Algorithm::Gwo => Self::Gwo(parse(algorithm, table)?),
            Algorithm::Woa => Self::Woa(parse(algorithm, table)?),
            Algorithm::Sca => Self::Sca(parse(algorithm, table)?),
            Algorithm::Aoa => Self::Aoa(parse(algorithm, table)?),
            Algorithm::Eo => Self::Eo(parse(algorithm, table)?),
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        match self {
            Self::Pso(_) => Algorithm::Pso,
            Self::Gwo(_) => Algorithm::Gwo,
            Self::Woa(_) => Algorithm::Woa,
            Self::Sca(_) => Algorithm::Sca,
            Self::Aoa(_) => Algorithm::Aoa,
            Self::Eo(_) => Algorithm::Eo,
        }
    }

    fn validate(&self, problems: &mut Vec<String>) {
        match self {
            Self::Pso(p) => p.validate(problems),
            Self::Gwo(p) => p.validate(problems),
            Self::Woa(p) => p.validate(problems),
            Self::Sca(p) => p.validate(problems),
            Self::Aoa(p) => p.validate(problems),
            Self::Eo(p) => p.validate(problems),
        }
    }
}

/// Population size, iteration count and parameters of one baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineConfig {
    pub population: usize,
    pub iterations: usize,
    pub params: BaselineParams,
}

impl BaselineConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            population: 30,
            iterations: 1000,
            params: BaselineParams::defaults(algorithm),
        }
    }

    pub fn with_budget(mut self, population: usize, iterations: usize) -> Self {
        self.population = population;
        self.iterations = iterations;
        self
    }

    pub fn algorithm(&self) -> Algorithm {
        self.params.algorithm()
    }

    /// Every violated requirement, not just the first.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.population < 1 {
            out.push("population must be at least 1".into());
        }
        if self.iterations < 2 {
            out.push(format!(
                "iterations must be at least 2, got {}",
                self.iterations
            ));
        }
        self.params.validate(&mut out);
        out
    }

    pub fn validate(&self) -> Result<()> {
        let problems = self.problems();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems))
        }
    }
}

/// A configured baseline, usable through the [`Optimizer`] trait.
#[derive(Debug, Clone)]
pub struct Baseline {
    label: String,
    config: BaselineConfig,
}

impl Baseline {
    pub fn new(config: BaselineConfig) -> Self {
        Self::with_label(config.algorithm().name(), config)
    }

    pub fn with_label(label: impl Into<String>, config: BaselineConfig) -> Self {
        Self {
            label: label.into(),
            config,
        }
    }

    pub fn config(&self) -> &BaselineConfig {
        &self.config
    }
}

impl Optimizer for Baseline {
    fn label(&self) -> &str {
        &self.label
    }

    fn optimize(&self, problem: &ProblemSpec, rng: &mut RngStream) -> Result<RunOutcome> {
        self.config.validate()?;
        let (n, t) = (self.config.population, self.config.iterations);
        match &self.config.params {
            BaselineParams::Pso(p) => pso::optimize(problem, n, t, p, rng),
            BaselineParams::Gwo(p) => gwo::optimize(problem, n, t, p, rng),
            BaselineParams::Woa(p) => woa::optimize(problem, n, t, p, rng),
            BaselineParams::Sca(p) => sca::optimize(problem, n, t, p, rng),
            BaselineParams::Aoa(p) => aoa::optimize(problem, n, t, p, rng),
            BaselineParams::Eo(p) => eo::optimize(problem, n, t, p, rng),
        }
    }
}

fn run_with(
    problem: &ProblemSpec,
    config: &BaselineConfig,
    algorithm: Algorithm,
    seed: u64,
) -> Result<RunRecord, RunFailure> {
    let fail = |message: String| RunFailure {
        algorithm: algorithm.name().to_string(),
        problem: problem.name.clone(),
        dim: problem.dim(),
        run_index: 0,
        seed,
        message,
    };
    if config.algorithm() != algorithm {
        return Err(fail(format!(
            "configuration is for {}, not {algorithm}",
            config.algorithm()
        )));
    }
    run_optimizer(&Baseline::new(config.clone()), problem, 0, seed)
}

pub fn run_pso(
    problem: &ProblemSpec,
    config: &BaselineConfig,
    seed: u64,
) -> Result<RunRecord, RunFailure> {
    run_with(problem, config, Algorithm::Pso, seed)
}

pub fn run_gwo(
    problem: &ProblemSpec,
    config: &BaselineConfig,
    seed: u64,
) -> Result<RunRecord, RunFailure> {
    run_with(problem, config, Algorithm::Gwo, seed)
}

pub fn run_woa(
    problem: &ProblemSpec,
    config: &BaselineConfig,
    seed: u64,
) -> Result<RunRecord, RunFailure> {
    run_with(problem, config, Algorithm::Woa, seed)
}

pub fn run_sca(
    problem: &ProblemSpec,
    config: &BaselineConfig,
    seed: u64,
) -> Result<RunRecord, RunFailure> {
    run_with(problem, config, Algorithm::Sca, seed)
}

pub fn run_aoa(
    problem: &ProblemSpec,
    config: &BaselineConfig,
    seed: u64,
) -> Result<RunRecord, RunFailure> {
    run_with(problem, config, Algorithm::Aoa, seed)
}

pub fn run_eo(
    problem: &ProblemSpec,
    config: &BaselineConfig,
    seed: u64,
) -> Result<RunRecord, RunFailure> {
    run_with(problem, config, Algorithm::Eo, seed)
}

/// `t / (T - 1)`, the normalized position of iteration `t` in the run.
pub(crate) fn progress_fraction(t: usize, iterations: usize) -> f64 {
    t as f64 / (iterations - 1) as f64
}

/// Uniform initial population and its fitness.
pub(crate) fn init_population(
    ev: &mut Evaluator<'_>,
    n: usize,
    rng: &mut RngStream,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let positions: Vec<Vec<f64>> = (0..n).map(|_| ev.problem().bounds.sample(rng)).collect();
    let mut fitness = Vec::with_capacity(n);
    for x in &positions {
        fitness.push(ev.eval(x, rng)?);
    }
    Ok((positions, fitness))
}

/// Index of the smallest fitness; the first one wins ties.
pub(crate) fn argmin(fitness: &[f64]) -> usize {
    let mut best = 0;
    for (i, f) in fitness.iter().enumerate() {
        if *f < fitness[best] {
            best = i;
        }
    }
    best
}

pub(crate) fn check_positive(name: &str, value: f64, problems: &mut Vec<String>) {
    if !(value > 0.0 && value.is_finite()) {
        problems.push(format!("{name} must be positive and finite, got {value}"));
    }
}

pub(crate) fn check_unit(name: &str, value: f64, problems: &mut Vec<String>) {
    if !(0.0..=1.0).contains(&value) {
        problems.push(format!("{name} must lie in [0, 1], got {value}"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::classical_scalable;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(a.name().to_lowercase().parse::<Algorithm>().unwrap(), a);
        }
        assert!("SVOA".parse::<Algorithm>().is_err());
    }

    #[test]
    fn override_table_rejects_unknown_keys() {
        let t: toml::Table = toml::from_str("c1 = 1.5").unwrap();
        let p = BaselineParams::from_toml(Algorithm::Pso, t).unwrap();
        match p {
            BaselineParams::Pso(p) => {
                assert_eq!(p.c1, 1.5);
                assert_eq!(p.c2, 2.0);
            }
            _ => unreachable!(),
        }
        let t: toml::Table = toml::from_str("bogus = 1").unwrap();
        assert!(BaselineParams::from_toml(Algorithm::Gwo, t).is_err());
    }

    #[test]
    fn evaluation_count_and_trace_length() {
        let p = classical_scalable("F1", 3).unwrap();
        for a in Algorithm::ALL {
            let cfg = BaselineConfig::new(a).with_budget(7, 11);
            let rec = run_optimizer(&Baseline::new(cfg), &p, 0, 3).unwrap();
            assert_eq!(rec.evaluations, 7 * 12, "{a}");
            assert_eq!(rec.trace.len(), 11, "{a}");
            assert!(rec.trace.windows(2).all(|w| w[1] <= w[0]), "{a}");
            assert!(p.bounds.contains(&rec.best_position), "{a}");
        }
    }

    #[test]
    fn mismatched_runner_is_refused() {
        let p = classical_scalable("F1", 2).unwrap();
        let cfg = BaselineConfig::new(Algorithm::Gwo);
        assert!(run_pso(&p, &cfg, 0).is_err());
    }

    #[test]
    fn invalid_budget_reported() {
        let cfg = BaselineConfig::new(Algorithm::Eo).with_budget(0, 1);
        assert_eq!(cfg.problems().len(), 2);
    }
}
