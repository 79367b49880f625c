//! Scalable classical functions F1-F13.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::problem::{Bounds, ProblemKind, ProblemSpec};

pub(crate) const SCALABLE_IDS: [&str; 13] = [
    "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9", "F10", "F11", "F12", "F13",
];

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn schwefel_2_22(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v.abs()).sum();
    let prod: f64 = x.iter().map(|v| v.abs()).product();
    sum + prod
}

pub fn schwefel_1_2(x: &[f64]) -> f64 {
    let mut partial = 0.0;
    x.iter()
        .map(|v| {
            partial += v;
            partial * partial
        })
        .sum()
}

pub fn schwefel_2_21(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

pub fn step(x: &[f64]) -> f64 {
    x.iter().map(|v| (v + 0.5).floor().powi(2)).sum()
}

/// Quartic part of F7, without the noise term.
pub fn quartic(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v.powi(4))
        .sum()
}

pub fn schwefel(x: &[f64]) -> f64 {
    x.iter().map(|v| -v * v.abs().sqrt().sin()).sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
        .sum()
}

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = (x.iter().map(|v| v * v).sum::<f64>() / n).sqrt();
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    // Grouped so the optimum cancels to exactly zero.
    (20.0 - 20.0 * (-0.2 * sq).exp()) + (E - cs.exp())
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

fn boundary_penalty(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

pub fn penalized_1(x: &[f64]) -> f64 {
    let n = x.len();
    let y: Vec<f64> = x.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
    let mut s = 10.0 * (PI * y[0]).sin().powi(2);
    for i in 0..n - 1 {
        s += (y[i] - 1.0).powi(2) * (1.0 + 10.0 * (PI * y[i + 1]).sin().powi(2));
    }
    s += (y[n - 1] - 1.0).powi(2);
    PI / n as f64 * s
        + x.iter()
            .map(|&v| boundary_penalty(v, 10.0, 100.0, 4))
            .sum::<f64>()
}

pub fn penalized_2(x: &[f64]) -> f64 {
    let n = x.len();
    let mut s = (3.0 * PI * x[0]).sin().powi(2);
    for i in 0..n - 1 {
        s += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
    }
    s += (x[n - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * x[n - 1]).sin().powi(2));
    0.1 * s
        + x.iter()
            .map(|&v| boundary_penalty(v, 5.0, 100.0, 4))
            .sum::<f64>()
}

/// Optimum of F8 per dimension.
pub const SCHWEFEL_MIN_PER_DIM: f64 = -418.982_887_272_433_8;
const SCHWEFEL_ARGMIN: f64 = 420.968_746_359_982;

/// Scalable function `id` in dimension `dim`.
pub fn classical_scalable(id: &str, dim: usize) -> Result<ProblemSpec> {
    if dim < 2 {
        return Err(Error::Catalog(format!(
            "{id} needs dimension >= 2, got {dim}"
        )));
    }
    let det = |f: fn(&[f64]) -> f64, lo: f64, hi: f64| -> Result<ProblemSpec> {
        Ok(ProblemSpec::deterministic(
            id,
            Bounds::uniform(dim, lo, hi)?,
            f,
        ))
    };
    let (spec, argmin, f_true) = match id {
        "F1" => (det(sphere, -100.0, 100.0)?, 0.0, 0.0),
        "F2" => (det(schwefel_2_22, -10.0, 10.0)?, 0.0, 0.0),
        "F3" => (det(schwefel_1_2, -100.0, 100.0)?, 0.0, 0.0),
        "F4" => (det(schwefel_2_21, -100.0, 100.0)?, 0.0, 0.0),
        "F5" => (det(rosenbrock, -30.0, 30.0)?, 1.0, 0.0),
        "F6" => (det(step, -100.0, 100.0)?, 0.0, 0.0),
        "F7" => (
            ProblemSpec::new(id, Bounds::uniform(dim, -1.28, 1.28)?, |x, rng| {
                quartic(x) + rng.uniform()
            }),
            0.0,
            0.0,
        ),
        "F8" => (
            det(schwefel, -500.0, 500.0)?,
            SCHWEFEL_ARGMIN,
            SCHWEFEL_MIN_PER_DIM * dim as f64,
        ),
        "F9" => (det(rastrigin, -5.12, 5.12)?, 0.0, 0.0),
        "F10" => (det(ackley, -32.0, 32.0)?, 0.0, 0.0),
        "F11" => (det(griewank, -600.0, 600.0)?, 0.0, 0.0),
        "F12" => (det(penalized_1, -50.0, 50.0)?, -1.0, 0.0),
        "F13" => (det(penalized_2, -50.0, 50.0)?, 1.0, 0.0),
        other => {
            return Err(Error::Catalog(format!(
                "unknown scalable function `{other}`"
            )))
        }
    };
    Ok(spec
        .with_kind(ProblemKind::Scalable)
        .with_f_true(f_true)
        .with_minimizer(vec![argmin; dim]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::RngStream;

    #[test]
    fn optima_hold() {
        let mut rng = RngStream::new(0);
        for id in SCALABLE_IDS {
            for dim in [2, 10, 30] {
                let p = classical_scalable(id, dim).unwrap();
                let x = p.minimizer.clone().unwrap();
                let f = p.evaluate(&x, &mut rng);
                let tol = if id == "F7" { 1.0 } else { 1e-6 };
                assert!(
                    (f - p.f_true.unwrap()).abs() <= tol,
                    "{id} D={dim}: {f} vs {:?}",
                    p.f_true
                );
            }
        }
    }

    #[test]
    fn hand_values() {
        assert_eq!(sphere(&[0.0; 7]), 0.0);
        assert_eq!(rastrigin(&[0.0; 30]), 0.0);
        assert!((rastrigin(&[1.0; 30]) - 30.0).abs() < 1e-9);
        assert!(ackley(&[0.0; 30]).abs() < 1e-12);
        assert_eq!(step(&[0.4, -0.5, 1.6]), 0.0 + 0.0 + 4.0);
        assert_eq!(schwefel_1_2(&[1.0, 2.0, 3.0]), 1.0 + 9.0 + 36.0);
        assert_eq!(schwefel_2_22(&[1.0, -2.0]), 3.0 + 2.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(classical_scalable("F24", 10).is_err());
        assert!(classical_scalable("F1", 1).is_err());
    }
}
