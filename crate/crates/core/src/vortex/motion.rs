//! Schedules, drain assignment and the three motion phases.
//!
//! Everything here is a pure function of its inputs and the stream it is
//! handed, so each piece can be checked in isolation.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::problem::Bounds;
use crate::stochastic::{self, distance, levy_step, LevyParams, RngStream};

/// Control value decreasing linearly from 2 at `t = 0` to 0 at `t = T - 1`.
pub fn phi(t: usize, iterations: usize) -> f64 {
    2.0 * (1.0 - t as f64 / (iterations - 1) as f64)
}

/// Drain selection pressure, linear from `start` to `end`.
pub fn beta_schedule(t: usize, iterations: usize, start: f64, end: f64) -> f64 {
    start + (end - start) * t as f64 / (iterations - 1) as f64
}

/// Radial pressure `c(t)`. Frozen at 1 when the adaptive schedule is off.
pub fn radial_pressure(phi: f64, min_pressure: f64, adaptive: bool) -> f64 {
    if adaptive {
        min_pressure + (1.0 - min_pressure) * phi / 2.0
    } else {
        1.0
    }
}

/// Radius after one spiral step.
pub fn shrink_radius(r: f64, shrink_gain: f64, pressure: f64) -> f64 {
    (1.0 - shrink_gain * pressure) * r
}

/// Rank softmax over drains sorted best first.
pub fn drain_probabilities(k: usize, beta: f64) -> Vec<f64> {
    if k == 1 {
        return vec![1.0];
    }
    let w: Vec<f64> = (0..k)
        .map(|j| (-beta * j as f64 / (k - 1) as f64).exp())
        .collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// Drain chosen for one agent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assignment {
    pub drain: usize,
    /// Euclidean distance to the drain.
    pub distance: f64,
    /// Distance normalized by the box diameter, clamped to 1.
    pub rho: f64,
}

impl Assignment {
    pub fn to(drain: usize, x: &[f64], drains: &[Vec<f64>], diameter: f64) -> Self {
        let r = distance(x, &drains[drain]);
        Self {
            drain,
            distance: r,
            rho: (r / diameter).min(1.0),
        }
    }
}

/// Assigns each agent to `argmax_k P_k / (rho_ik + eps)`; the lowest drain
/// index wins ties.
pub fn assign_drains(
    positions: &[Vec<f64>],
    drains: &[Vec<f64>],
    probs: &[f64],
    diameter: f64,
    epsilon: f64,
) -> Vec<Assignment> {
    positions
        .iter()
        .map(|x| {
            let mut best = Assignment::to(0, x, drains, diameter);
            let mut best_score = probs[0] / (best.rho + epsilon);
            for (k, p) in probs.iter().enumerate().take(drains.len()).skip(1) {
                let cand = Assignment::to(k, x, drains, diameter);
                let score = p / (cand.rho + epsilon);
                if score > best_score {
                    best = cand;
                    best_score = score;
                }
            }
            best
        })
        .collect()
}

/// Draws a drain other than `current`, proportional to the remaining
/// probabilities. Requires at least two drains.
pub fn switch_target(current: usize, probs: &[f64], rng: &mut RngStream) -> usize {
    debug_assert!(probs.len() >= 2);
    let rest: f64 = probs
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != current)
        .map(|(_, p)| p)
        .sum();
    let mut u = rng.uniform() * rest;
    let mut last = current;
    for (k, p) in probs.iter().enumerate() {
        if k == current {
            continue;
        }
        last = k;
        if u < *p {
            return k;
        }
        u -= p;
    }
    last
}

/// Reassigns each agent with probability `p_switch`. Returns the indices of
/// the agents that switched.
pub fn stochastic_switch(
    assign: &mut [usize],
    probs: &[f64],
    p_switch: f64,
    rng: &mut RngStream,
) -> Vec<usize> {
    let mut switched = Vec::new();
    if probs.len() < 2 {
        return switched;
    }
    for (i, a) in assign.iter_mut().enumerate() {
        if rng.uniform() < p_switch {
            *a = switch_target(*a, probs, rng);
            switched.push(i);
        }
    }
    switched
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    FarField,
    Spiral,
    Core,
}

pub fn select_phase(rho: f64, far: f64, near: f64) -> Phase {
    if rho > far {
        Phase::FarField
    } else if rho > near {
        Phase::Spiral
    } else {
        Phase::Core
    }
}

/// Weak drift towards the drain plus box-scaled Gaussian noise.
pub fn far_field_update(
    x: &[f64],
    drain: &[f64],
    phi: f64,
    drift: f64,
    noise: f64,
    bounds: &Bounds,
    rng: &mut RngStream,
) -> Vec<f64> {
    let sqrt_d = (x.len() as f64).sqrt();
    let eta = stochastic::gaussian_vector(x.len(), rng);
    x.iter()
        .zip(drain)
        .zip(bounds.lower().iter().zip(bounds.upper()))
        .zip(eta)
        .map(|(((xi, vi), (lo, hi)), e)| {
            xi + drift * phi * (vi - xi) + noise * (phi / 2.0) * ((hi - lo) / sqrt_d) * e
        })
        .collect()
}

/// Regularized free-vortex tangential speed.
pub fn swirl_speed(rho: f64, circulation: f64, core_regularizer: f64, max_swirl: f64) -> f64 {
    (circulation / (rho + core_regularizer)).min(max_swirl)
}

/// How the spiral phase moves an agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpiralMode {
    /// Radial pull plus tangential rotation.
    Full,
    /// Tangential term dropped, random phase kept.
    NoSwirl,
    /// Deterministic radial pull only.
    RadialOnly,
}

/// `drain + s [cos(w) e_r + sin(w) v_theta e_theta]`.
pub fn spiral_point(
    drain: &[f64],
    e_r: &[f64],
    e_theta: Option<&[f64]>,
    shrink: f64,
    omega: f64,
    v_theta: f64,
) -> Vec<f64> {
    let (c, s) = (omega.cos(), omega.sin());
    match e_theta {
        Some(et) => drain
            .iter()
            .zip(e_r)
            .zip(et)
            .map(|((v, er), t)| v + shrink * (c * er + s * v_theta * t))
            .collect(),
        None => drain
            .iter()
            .zip(e_r)
            .map(|(v, er)| v + shrink * c * er)
            .collect(),
    }
}

/// Result of one spiral move, with the draws that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SpiralStep {
    pub position: Vec<f64>,
    pub omega: f64,
    pub shrink: f64,
    pub v_theta: f64,
}

/// Spiral inward move around `drain`. `r` must be positive.
#[allow(clippy::too_many_arguments)]
pub fn spiral_update(
    x: &[f64],
    drain: &[f64],
    r: f64,
    shrink: f64,
    v_theta: f64,
    epsilon: f64,
    mode: SpiralMode,
    rng: &mut RngStream,
) -> Result<SpiralStep> {
    let e_r: Vec<f64> = x
        .iter()
        .zip(drain)
        .map(|(a, b)| (a - b) / (r + epsilon))
        .collect();
    let (omega, e_theta) = match mode {
        SpiralMode::RadialOnly => (0.0, None),
        SpiralMode::NoSwirl => (2.0 * PI * rng.uniform(), None),
        SpiralMode::Full => {
            let omega = 2.0 * PI * rng.uniform();
            // A one-dimensional box has no tangential direction.
            let e_theta = if x.len() >= 2 {
                Some(stochastic::tangent_unit_vector(&e_r, rng)?)
            } else {
                None
            };
            (omega, e_theta)
        }
    };
    let v = if e_theta.is_some() { v_theta } else { 0.0 };
    Ok(SpiralStep {
        position: spiral_point(drain, &e_r, e_theta.as_deref(), shrink, omega, v),
        omega,
        shrink,
        v_theta: v,
    })
}

/// Gaussian cloud around the drain with standard deviation
/// `sigma0 * phi / 2 / sqrt(D)` per component.
pub fn core_update(drain: &[f64], phi: f64, sigma0: f64, rng: &mut RngStream) -> Vec<f64> {
    let scale = sigma0 * phi / 2.0 / (drain.len() as f64).sqrt();
    let eta = stochastic::gaussian_vector(drain.len(), rng);
    drain.iter().zip(eta).map(|(v, e)| v + scale * e).collect()
}

/// Lévy relaunch centred on the best drain. The caller clips the result.
pub fn splash_out(
    best_drain: &[f64],
    splash_scale: f64,
    diameter: f64,
    levy: &LevyParams,
    rng: &mut RngStream,
) -> Vec<f64> {
    let scale = splash_scale * diameter / (best_drain.len() as f64).sqrt();
    let step = levy_step(best_drain.len(), levy, rng);
    best_drain
        .iter()
        .zip(step)
        .map(|(v, l)| v + scale * l)
        .collect()
}

/// Greedy acceptance: with the toggle on the better of old and new is
/// kept (new wins ties); with it off the new point is always taken.
pub fn greedy_select(old: (&[f64], f64), new: (&[f64], f64), enabled: bool) -> (Vec<f64>, f64) {
    if !enabled || new.1 <= old.1 {
        (new.0.to_vec(), new.1)
    } else {
        (old.0.to_vec(), old.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_endpoints() {
        assert_eq!(phi(0, 1000), 2.0);
        assert_eq!(phi(999, 1000), 0.0);
        assert_eq!(phi(500, 1001), 1.0);
    }

    #[test]
    fn beta_endpoints() {
        assert_eq!(beta_schedule(0, 100, 1.0, 6.0), 1.0);
        assert_eq!(beta_schedule(99, 100, 1.0, 6.0), 6.0);
        for t in 0..10 {
            assert_eq!(beta_schedule(t, 10, 5.0, 5.0), 5.0);
        }
    }

    #[test]
    fn pressure_endpoints() {
        assert_eq!(radial_pressure(2.0, 0.1, true), 1.0);
        assert!((radial_pressure(0.0, 0.1, true) - 0.1).abs() < 1e-15);
        assert_eq!(radial_pressure(0.7, 0.1, false), 1.0);
    }

    #[test]
    fn probabilities() {
        let p = drain_probabilities(6, 0.0);
        assert!(p.iter().all(|x| (x - 1.0 / 6.0).abs() < 1e-15));
        let p = drain_probabilities(2, 3f64.ln());
        assert!((p[0] - 0.75).abs() < 1e-12 && (p[1] - 0.25).abs() < 1e-12);
        assert_eq!(drain_probabilities(1, 7.0), vec![1.0]);
    }

    #[test]
    fn coincident_agent_takes_that_drain() {
        let drains: Vec<Vec<f64>> = (0..6).map(|k| vec![k as f64, 0.0]).collect();
        let probs = drain_probabilities(6, 4.0);
        let a = assign_drains(&[vec![2.0, 0.0]], &drains, &probs, 10.0, 1e-12);
        assert_eq!(a[0].drain, 2);
        assert_eq!(a[0].rho, 0.0);
    }

    #[test]
    fn equidistant_agent_takes_best_drain() {
        let drains = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ];
        let a = assign_drains(
            &[vec![0.0, 0.0]],
            &drains,
            &drain_probabilities(4, 2.0),
            5.0,
            1e-12,
        );
        assert_eq!(a[0].drain, 0);
        // Uniform probabilities: tie broken by lowest index.
        let a = assign_drains(
            &[vec![0.0, 0.0]],
            &drains,
            &drain_probabilities(4, 0.0),
            5.0,
            1e-12,
        );
        assert_eq!(a[0].drain, 0);
    }

    #[test]
    fn switch_with_two_drains_is_certain() {
        let mut rng = RngStream::new(4);
        for _ in 0..100 {
            assert_eq!(switch_target(0, &[0.6, 0.4], &mut rng), 1);
            assert_eq!(switch_target(1, &[0.6, 0.4], &mut rng), 0);
        }
    }

    #[test]
    fn zero_switch_probability_is_identity() {
        let mut assign = vec![0, 1, 2, 1, 0];
        let before = assign.clone();
        let switched =
            stochastic_switch(&mut assign, &[0.5, 0.3, 0.2], 0.0, &mut RngStream::new(1));
        assert!(switched.is_empty());
        assert_eq!(assign, before);
    }

    #[test]
    fn phase_regions() {
        assert_eq!(select_phase(0.9, 0.5, 0.1), Phase::FarField);
        assert_eq!(select_phase(0.5, 0.5, 0.1), Phase::Spiral);
        assert_eq!(select_phase(0.1, 0.5, 0.1), Phase::Core);
        assert_eq!(select_phase(0.0, 0.5, 0.1), Phase::Core);
    }

    #[test]
    fn far_field_endpoints() {
        let b = Bounds::uniform(2, -5.0, 5.0).unwrap();
        let x = [1.0, -2.0];
        let v = [3.0, 4.0];
        let mut rng = RngStream::new(0);
        assert_eq!(
            far_field_update(&x, &v, 0.0, 0.5, 0.5, &b, &mut rng),
            x.to_vec()
        );
        assert_eq!(
            far_field_update(&x, &v, 1.0, 1.0, 0.0, &b, &mut rng),
            v.to_vec()
        );
    }

    #[test]
    fn far_field_matches_hand_evaluation() {
        let b = Bounds::new(vec![0.0, -2.0], vec![4.0, 6.0]).unwrap();
        let x = [1.0, 1.0];
        let v = [3.0, -1.0];
        let phi = 1.5;
        let new = far_field_update(&x, &v, phi, 0.5, 0.5, &b, &mut RngStream::new(77));
        let mut rng = RngStream::new(77);
        let (e0, e1) = (rng.normal(), rng.normal());
        let s2 = 2f64.sqrt();
        let want0 = 1.0 + 0.5 * 1.5 * 2.0 + 0.5 * 0.75 * (4.0 / s2) * e0;
        let want1 = 1.0 + 0.5 * 1.5 * -2.0 + 0.5 * 0.75 * (8.0 / s2) * e1;
        assert!((new[0] - want0).abs() < 1e-12);
        assert!((new[1] - want1).abs() < 1e-12);
    }

    #[test]
    fn swirl_values() {
        assert!((swirl_speed(0.1, 0.2, 0.01, 10.0) - 0.2 / 0.11).abs() < 1e-12);
        assert!((swirl_speed(0.1, 0.2, 0.01, 10.0) - 1.818_181_818_181_818).abs() < 1e-12);
        assert_eq!(swirl_speed(0.0, 0.2, 0.01, 10.0), 10.0);
        let mut last = f64::INFINITY;
        for i in 0..100 {
            let s = swirl_speed(0.5 + i as f64, 0.2, 0.01, 10.0);
            assert!(s < last && s > 0.0);
            last = s;
        }
    }

    #[test]
    fn spiral_forced_zero_phase() {
        let v = [1.0, 2.0, 3.0];
        let e_r = [0.0, 0.6, 0.8];
        let e_t = [1.0, 0.0, 0.0];
        let p = spiral_point(&v, &e_r, Some(&e_t), 0.5, 0.0, 3.0);
        assert!((distance(&p, &v) - 0.5).abs() < 1e-12);
        // Full shrink collapses onto the drain.
        let s = shrink_radius(2.0, 1.0, radial_pressure(0.0, 1.0, true));
        assert_eq!(s, 0.0);
        assert_eq!(spiral_point(&v, &e_r, Some(&e_t), s, 0.0, 3.0), v.to_vec());
    }

    #[test]
    fn spiral_distance_identity() {
        let mut rng = RngStream::new(5);
        let x = [2.0, -1.0, 0.5, 4.0];
        let v = [0.0, 0.0, 1.0, 1.0];
        let r = distance(&x, &v);
        for mode in [
            SpiralMode::Full,
            SpiralMode::NoSwirl,
            SpiralMode::RadialOnly,
        ] {
            let step = spiral_update(&x, &v, r, 0.7 * r, 1.4, 1e-12, mode, &mut rng).unwrap();
            let want = step.shrink
                * (step.omega.cos().powi(2) + (step.v_theta * step.omega.sin()).powi(2)).sqrt();
            assert!((distance(&step.position, &v) - want).abs() < 1e-9);
        }
    }

    #[test]
    fn core_endpoints() {
        let v = [1.0, -1.0];
        let mut rng = RngStream::new(2);
        assert_eq!(core_update(&v, 0.0, 3.0, &mut rng), v.to_vec());
        assert_eq!(core_update(&v, 1.3, 0.0, &mut rng), v.to_vec());
    }

    #[test]
    fn splash_zero_scale_lands_on_best() {
        let levy = LevyParams::new(1.5).unwrap();
        let v = [0.3, 0.7];
        assert_eq!(
            splash_out(&v, 0.0, 10.0, &levy, &mut RngStream::new(8)),
            v.to_vec()
        );
    }

    #[test]
    fn greedy_rules() {
        let old = [0.0];
        let new = [1.0];
        assert_eq!(greedy_select((&old, 2.0), (&new, 1.0), true).1, 1.0);
        assert_eq!(greedy_select((&old, 1.0), (&new, 2.0), true).1, 1.0);
        assert_eq!(greedy_select((&old, 1.0), (&new, 2.0), false).1, 2.0);
    }
}
