//! Drain-vortex optimizer.
//!
//! Each agent is attached to one of `K` drains (the best points seen so
//! far) and moves in one of three regimes chosen by its normalized distance
//! to that drain: a noisy far-field drift, a spiral inward move combining
//! radial shrink with a free-vortex swirl, or Gaussian sampling in the core.
//! Agents stuck in the core are relaunched by a Lévy splash.

mod engine;
pub mod motion;
mod params;

pub use engine::{
    elitist_drain_update, initialize, next_stagnation, run, select_drains, step, Dvo, DvoState,
};
pub use motion::Phase;
pub use params::{make_ablation_params, DvoParams, Toggles, ABLATION_VARIANTS};
