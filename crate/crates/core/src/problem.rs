//! Search boxes, problem definitions and counted objective evaluation.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stochastic::RngStream;

/// Objective callable. The stream argument is the run's own stream; only
/// noisy objectives draw from it.
pub type ObjectiveFn = Arc<dyn Fn(&[f64], &mut RngStream) -> f64 + Send + Sync>;

/// Inequality constraint `g(x) <= 0`.
pub type ConstraintFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Axis-aligned search box `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::Domain(format!(
                "bounds need matching nonempty vectors, got {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::Domain(format!(
                    "invalid bounds in component {i}: [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval in every one of `dim` components.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Euclidean length of the box diagonal.
    pub fn diameter(&self) -> f64 {
        crate::stochastic::distance(&self.lower, &self.upper)
    }

    /// Component-wise saturation into the box. Idempotent; NaN maps to the
    /// lower bound.
    pub fn clip(&self, x: &mut [f64]) {
        for ((xi, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *xi = if xi.is_nan() { *lo } else { xi.clamp(*lo, *hi) };
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(&self.lower)
                .zip(&self.upper)
                .all(|((xi, lo), hi)| lo <= xi && xi <= hi)
    }

    /// Uniform sample in the box.
    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| lo + rng.uniform() * (hi - lo))
            .collect()
    }
}

/// Catalog family a problem belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    Scalable,
    Fixed,
    Engineering,
    Plugin,
}

/// Static penalty: `f(x) + coefficient * sum_j max(0, g_j(x))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltySpec {
    pub coefficient: f64,
}

impl Default for PenaltySpec {
    fn default() -> Self {
        Self { coefficient: 1e9 }
    }
}

/// Everything an optimizer needs to know about one problem instance.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub bounds: Bounds,
    pub kind: ProblemKind,
    /// Known global optimum value.
    pub f_true: Option<f64>,
    /// Best value reported in the literature, for problems without a proven optimum.
    pub best_known: Option<f64>,
    /// A documented minimizer, when one is known.
    pub minimizer: Option<Vec<f64>>,
    pub constraints: Vec<ConstraintFn>,
    pub penalty: Option<PenaltySpec>,
    objective: ObjectiveFn,
    raw_objective: Option<ObjectiveFn>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("kind", &self.kind)
            .field("f_true", &self.f_true)
            .field("constraints", &self.constraints.len())
            .field("penalty", &self.penalty)
            .finish()
    }
}

impl ProblemSpec {
    pub fn new<F>(name: impl Into<String>, bounds: Bounds, objective: F) -> Self
    where
        F: Fn(&[f64], &mut RngStream) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            bounds,
            kind: ProblemKind::Plugin,
            f_true: None,
            best_known: None,
            minimizer: None,
            constraints: Vec::new(),
            penalty: None,
            objective: Arc::new(objective),
            raw_objective: None,
        }
    }

    /// Deterministic objective that ignores the run stream.
    pub fn deterministic<F>(name: impl Into<String>, bounds: Bounds, objective: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::new(name, bounds, move |x: &[f64], _: &mut RngStream| {
            objective(x)
        })
    }

    pub fn with_kind(mut self, kind: ProblemKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_f_true(mut self, f_true: f64) -> Self {
        self.f_true = Some(f_true);
        self
    }

    pub fn with_best_known(mut self, value: f64) -> Self {
        self.best_known = Some(value);
        self
    }

    pub fn with_minimizer(mut self, x: Vec<f64>) -> Self {
        self.minimizer = Some(x);
        self
    }

    pub fn with_constraint<G>(mut self, g: G) -> Self
    where
        G: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.constraints.push(Arc::new(g));
        self
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    /// Value the optimizers minimize (penalized, if a penalty is attached).
    pub fn evaluate(&self, x: &[f64], rng: &mut RngStream) -> f64 {
        (self.objective)(x, rng)
    }

    /// Objective without any penalty term.
    pub fn raw_value(&self, x: &[f64], rng: &mut RngStream) -> f64 {
        match &self.raw_objective {
            Some(raw) => raw(x, rng),
            None => (self.objective)(x, rng),
        }
    }

    pub fn is_constrained(&self) -> bool {
        !self.constraints.is_empty()
    }

    /// Sum of positive constraint values.
    pub fn total_violation(&self, x: &[f64]) -> f64 {
        self.constraints.iter().map(|g| g(x).max(0.0)).sum()
    }

    /// Largest positive constraint value, 0 when all constraints hold.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|g| g(x).max(0.0))
            .fold(0.0, f64::max)
    }

    pub(crate) fn replace_objective(&mut self, objective: ObjectiveFn) {
        if self.raw_objective.is_none() {
            self.raw_objective = Some(self.objective.clone());
        }
        self.objective = objective;
    }

    pub(crate) fn raw_objective_fn(&self) -> ObjectiveFn {
        self.raw_objective
            .clone()
            .unwrap_or_else(|| self.objective.clone())
    }
}

/// Counts evaluations and rejects non-finite objective values.
pub struct Evaluator<'a> {
    problem: &'a ProblemSpec,
    evaluations: usize,
}

impl<'a> Evaluator<'a> {
    pub fn new(problem: &'a ProblemSpec) -> Self {
        Self {
            problem,
            evaluations: 0,
        }
    }

    pub fn problem(&self) -> &'a ProblemSpec {
        self.problem
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn eval(&mut self, x: &[f64], rng: &mut RngStream) -> Result<f64> {
        self.evaluations += 1;
        let value = self.problem.evaluate(x, rng);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Evaluation {
                point: x.to_vec(),
                value,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_validation() {
        assert!(Bounds::new(vec![0.0], vec![0.0]).is_err());
        assert!(Bounds::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![f64::NEG_INFINITY], vec![1.0]).is_err());
        let b = Bounds::uniform(2, 0.0, 3.0).unwrap();
        assert_eq!(b.diameter(), 18f64.sqrt());
    }

    #[test]
    fn clip_saturates() {
        let b = Bounds::uniform(3, -1.0, 1.0).unwrap();
        let mut x = vec![0.5, 2.0, f64::NEG_INFINITY];
        b.clip(&mut x);
        assert_eq!(x, vec![0.5, 1.0, -1.0]);
    }

    #[test]
    fn evaluator_rejects_nan() {
        let p =
            ProblemSpec::deterministic("nan", Bounds::uniform(1, 0.0, 1.0).unwrap(), |_| f64::NAN);
        let mut ev = Evaluator::new(&p);
        let err = ev.eval(&[0.5], &mut RngStream::new(0)).unwrap_err();
        assert!(matches!(err, Error::Evaluation { ref point, .. } if point == &[0.5]));
        assert_eq!(ev.evaluations(), 1);
    }
}
