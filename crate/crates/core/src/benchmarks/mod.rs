//! Objective catalog: classical scalable and fixed-dimension functions,
//! constrained engineering designs, static penalty, and runtime plugins.

mod engineering;
mod fixed;
mod scalable;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use engineering::engineering_problem;
pub use fixed::{
    branin, classical_fixed, foxholes, goldstein_price, hartmann3, hartmann6, kowalik, shekel,
    six_hump_camel,
};
pub use scalable::{
    ackley, classical_scalable, griewank, penalized_1, penalized_2, quartic, rastrigin, rosenbrock,
    schwefel, schwefel_1_2, schwefel_2_21, schwefel_2_22, sphere, step, SCHWEFEL_MIN_PER_DIM,
};

use crate::error::{Error, Result};
use crate::problem::{PenaltySpec, ProblemKind, ProblemSpec};
use crate::stochastic::RngStream;

/// Constraint values up to this are treated as satisfied.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-8;

/// `(all g_j <= tol, max_j max(0, g_j))`.
pub fn feasibility(x: &[f64], spec: &ProblemSpec) -> (bool, f64) {
    let mut worst = 0.0_f64;
    let mut ok = true;
    for g in &spec.constraints {
        let v = g(x);
        if v.is_nan() || v > FEASIBILITY_TOLERANCE {
            ok = false;
        }
        worst = worst.max(if v.is_nan() {
            f64::INFINITY
        } else {
            v.max(0.0)
        });
    }
    (ok, worst)
}

/// Wraps the objective as `f(x) + c * sum_j max(0, g_j(x))`. Constraints stay
/// attached so feasibility can still be reported, and the raw objective stays
/// reachable through [`ProblemSpec::raw_value`].
pub fn penalize(mut spec: ProblemSpec, penalty: PenaltySpec) -> Result<ProblemSpec> {
    if !(penalty.coefficient > 0.0 && penalty.coefficient.is_finite()) {
        return Err(Error::Domain(format!(
            "penalty coefficient must be positive, got {}",
            penalty.coefficient
        )));
    }
    let raw = spec.raw_objective_fn();
    let constraints = spec.constraints.clone();
    let c = penalty.coefficient;
    spec.replace_objective(Arc::new(move |x: &[f64], rng: &mut RngStream| {
        let violation: f64 = constraints.iter().map(|g| g(x).max(0.0)).sum();
        raw(x, rng) + c * violation
    }));
    spec.penalty = Some(penalty);
    Ok(spec)
}

pub fn scalable_ids() -> &'static [&'static str] {
    &scalable::SCALABLE_IDS
}

pub fn fixed_ids() -> &'static [&'static str] {
    &fixed::FIXED_IDS
}

pub fn engineering_ids() -> &'static [&'static str] {
    &engineering::ENGINEERING_IDS
}

/// Name-addressable problem registry.
#[derive(Clone)]
pub struct Catalog {
    penalty: PenaltySpec,
    plugins: BTreeMap<String, ProblemSpec>,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Catalog {
    pub fn builtin() -> Self {
        Self {
            penalty: PenaltySpec::default(),
            plugins: BTreeMap::new(),
        }
    }

    /// Penalty applied to engineering problems on lookup.
    pub fn with_penalty(mut self, penalty: PenaltySpec) -> Self {
        self.penalty = penalty;
        self
    }

    pub fn penalty(&self) -> PenaltySpec {
        self.penalty
    }

    pub fn register_plugin(&mut self, spec: ProblemSpec) -> Result<()> {
        if self.contains(&spec.name) {
            return Err(Error::Catalog(format!(
                "problem `{}` is already registered",
                spec.name
            )));
        }
        let spec = spec.with_kind(ProblemKind::Plugin);
        self.plugins.insert(spec.name.clone(), spec);
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.kind_of(name).is_some()
    }

    pub fn kind_of(&self, name: &str) -> Option<ProblemKind> {
        if scalable_ids().contains(&name) {
            Some(ProblemKind::Scalable)
        } else if fixed_ids().contains(&name) {
            Some(ProblemKind::Fixed)
        } else if engineering_ids().contains(&name) {
            Some(ProblemKind::Engineering)
        } else if self.plugins.contains_key(name) {
            Some(ProblemKind::Plugin)
        } else {
            None
        }
    }

    /// Native dimension for problems whose size is fixed.
    pub fn native_dim(&self, name: &str) -> Option<usize> {
        match self.kind_of(name)? {
            ProblemKind::Scalable => None,
            ProblemKind::Fixed => classical_fixed(name).ok().map(|p| p.dim()),
            ProblemKind::Engineering => engineering_problem(name).ok().map(|p| p.dim()),
            ProblemKind::Plugin => self.plugins.get(name).map(ProblemSpec::dim),
        }
    }

    /// Builds the instance. `dim` is required for scalable functions and
    /// must match the native size of everything else when given.
    pub fn lookup(&self, name: &str, dim: Option<usize>) -> Result<ProblemSpec> {
        let kind = self
            .kind_of(name)
            .ok_or_else(|| Error::Catalog(format!("unknown problem `{name}`")))?;
        let spec = match kind {
            ProblemKind::Scalable => {
                let d = dim.ok_or_else(|| {
                    Error::Catalog(format!("scalable problem `{name}` needs a dimension"))
                })?;
                return classical_scalable(name, d);
            }
            ProblemKind::Fixed => classical_fixed(name)?,
            ProblemKind::Engineering => penalize(engineering_problem(name)?, self.penalty)?,
            ProblemKind::Plugin => self.plugins[name].clone(),
        };
        match dim {
            Some(d) if d != spec.dim() => Err(Error::Catalog(format!(
                "problem `{name}` has fixed dimension {}, requested {d}",
                spec.dim()
            ))),
            _ => Ok(spec),
        }
    }

    pub fn names(&self) -> Vec<String> {
        scalable_ids()
            .iter()
            .chain(fixed_ids())
            .chain(engineering_ids())
            .map(|s| s.to_string())
            .chain(self.plugins.keys().cloned())
            .collect()
    }
}
