use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Component switches used by the ablation variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Toggles {
    /// Time-varying radial pressure; when off the pressure is frozen at 1.
    pub adaptive_spiral: bool,
    /// Tangential term of the spiral move.
    pub swirl: bool,
    /// Spiral move reduced to a deterministic radial pull (no random phase).
    pub radial_only: bool,
    pub switching: bool,
    pub splash: bool,
    pub greedy_update: bool,
    /// When off the engine runs with a single drain regardless of `drains`.
    pub multi_vortex: bool,
}

impl Default for Toggles {
    fn default() -> Self {
        Self {
            adaptive_spiral: true,
            swirl: true,
            radial_only: false,
            switching: true,
            splash: true,
            greedy_update: true,
            multi_vortex: true,
        }
    }
}

/// Hyper-parameters of the drain-vortex optimizer.
///
/// Population size, drain count, circulation, shrink gain and switch
/// probability default to the reference configuration; the remaining
/// values are this crate's own defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DvoParams {
    pub population: usize,
    pub drains: usize,
    pub iterations: usize,
    /// Circulation strength of the free-vortex swirl.
    pub circulation: f64,
    /// Radial shrink gain, in (0, 1].
    pub shrink_gain: f64,
    /// Residual radial pressure at the end of the run, in [0, 1).
    pub min_radial_pressure: f64,
    /// Far-field drift coefficient.
    pub drift: f64,
    /// Far-field noise coefficient.
    pub noise: f64,
    /// Drain selection pressure at the first iteration.
    pub pressure_start: f64,
    /// Drain selection pressure at the last iteration.
    pub pressure_end: f64,
    pub far_threshold: f64,
    pub near_threshold: f64,
    /// Regularizer added to the normalized distance in the swirl law.
    pub core_regularizer: f64,
    /// Cap on the tangential speed.
    pub max_swirl: f64,
    /// Initial core radius as a fraction of the box diameter.
    pub core_radius: f64,
    pub switch_prob: f64,
    /// Core iterations without improvement before splash-out is allowed.
    pub stay_limit: usize,
    pub splash_prob: f64,
    /// Lévy stable index, in (0, 2).
    pub levy_index: f64,
    /// Splash step scale as a fraction of the box diameter.
    pub splash_scale: f64,
    pub epsilon: f64,
    /// When set, a splashed agent's previous position is also dropped from
    /// the elitist pool of that iteration.
    pub forced_splash_replacement: bool,
    pub toggles: Toggles,
}

impl Default for DvoParams {
    fn default() -> Self {
        Self {
            population: 30,
            drains: 6,
            iterations: 1000,
            circulation: 0.2,
            shrink_gain: 0.5,
            min_radial_pressure: 0.1,
            drift: 0.5,
            noise: 1.0,
            pressure_start: 1.0,
            pressure_end: 6.0,
            far_threshold: 0.5,
            near_threshold: 0.05,
            core_regularizer: 0.01,
            max_swirl: 10.0,
            core_radius: 0.1,
            switch_prob: 0.08,
            stay_limit: 10,
            splash_prob: 0.3,
            levy_index: 1.5,
            splash_scale: 0.5,
            epsilon: 1e-12,
            forced_splash_replacement: false,
            toggles: Toggles::default(),
        }
    }
}

fn prob_ok(p: f64) -> bool {
    (0.0..=1.0).contains(&p)
}

impl DvoParams {
    /// Number of drains the engine actually maintains.
    pub fn effective_drains(&self) -> usize {
        if self.toggles.multi_vortex {
            self.drains
        } else {
            1
        }
    }

    /// Every violated invariant, in field order.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |ok: bool, msg: &str| {
            if !ok {
                out.push(msg.to_string());
            }
        };
        check(self.drains >= 1, "drains must be at least 1");
        check(
            self.population >= self.drains,
            "population must be at least the drain count",
        );
        check(self.iterations >= 2, "iterations must be at least 2");
        check(
            self.circulation.is_finite() && self.circulation >= 0.0,
            "circulation must be finite and nonnegative",
        );
        check(
            self.shrink_gain > 0.0 && self.shrink_gain <= 1.0,
            "shrink_gain must lie in (0, 1]",
        );
        check(
            (0.0..1.0).contains(&self.min_radial_pressure),
            "min_radial_pressure must lie in [0, 1)",
        );
        check(
            self.drift.is_finite() && self.noise.is_finite() && self.noise >= 0.0,
            "drift and noise must be finite, noise nonnegative",
        );
        check(
            self.pressure_start >= 0.0 && self.pressure_end >= 0.0,
            "selection pressures must be nonnegative",
        );
        check(
            0.0 < self.near_threshold
                && self.near_threshold < self.far_threshold
                && self.far_threshold < 1.0,
            "thresholds must satisfy 0 < near_threshold < far_threshold < 1",
        );
        check(
            self.core_regularizer > 0.0,
            "core_regularizer must be positive",
        );
        check(self.max_swirl > 0.0, "max_swirl must be positive");
        check(self.core_radius >= 0.0, "core_radius must be nonnegative");
        check(prob_ok(self.switch_prob), "switch_prob must lie in [0, 1]");
        check(prob_ok(self.splash_prob), "splash_prob must lie in [0, 1]");
        check(
            self.levy_index > 0.0 && self.levy_index < 2.0,
            "levy_index must lie in (0, 2)",
        );
        check(self.splash_scale >= 0.0, "splash_scale must be nonnegative");
        check(self.epsilon > 0.0, "epsilon must be positive");
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

/// Names of the ablation variants, in reporting order.
pub const ABLATION_VARIANTS: [&str; 8] = [
    "full",
    "no_greedy",
    "no_switch",
    "single_vortex",
    "no_swirl",
    "no_adaptive_spiral",
    "no_splash",
    "radial_only",
];

/// `base` with one component disabled.
pub fn make_ablation_params(base: &DvoParams, variant: &str) -> Result<DvoParams> {
    let mut p = base.clone();
    match variant {
        "full" => {}
        "no_greedy" => p.toggles.greedy_update = false,
        "no_switch" => {
            p.switch_prob = 0.0;
            p.toggles.switching = false;
        }
        "single_vortex" => {
            p.drains = 1;
            p.toggles.multi_vortex = false;
        }
        "no_swirl" => p.toggles.swirl = false,
        "no_adaptive_spiral" => p.toggles.adaptive_spiral = false,
        "no_splash" => {
            p.splash_prob = 0.0;
            p.toggles.splash = false;
        }
        "radial_only" => p.toggles.radial_only = true,
        other => {
            return Err(Error::config(format!(
                "unknown ablation variant `{other}` (expected one of {})",
                ABLATION_VARIANTS.join(", ")
            )))
        }
    }
    Ok(p)
}
