//! Seeded sampling primitives shared by every optimizer.
//!
//! One [`RngStream`] is owned by exactly one run. Streams for parallel runs
//! are derived from a master seed and a run index, so a grid of runs is
//! reproducible no matter how it is scheduled.

use std::f64::consts::PI;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::special::gamma;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d1_049b_b133_111b);
    z ^ (z >> 31)
}

/// Deterministic stream of random samples.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Stream for run `run_index` of an experiment seeded with `master`.
    pub fn derive(master: u64, run_index: u64) -> Self {
        Self::new(mix64(master ^ mix64(run_index)))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform sample in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform sample in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal sample.
    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// `dim` independent standard normal samples.
pub fn gaussian_vector(dim: usize, rng: &mut RngStream) -> Vec<f64> {
    (0..dim).map(|_| rng.normal()).collect()
}

/// `dim` independent uniform samples in `[0, 1)`.
pub fn uniform_vector(dim: usize, rng: &mut RngStream) -> Vec<f64> {
    (0..dim).map(|_| rng.uniform()).collect()
}

/// Scale of the numerator normal in Mantegna's algorithm.
pub fn mantegna_sigma(beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 2.0) {
        return Err(Error::Domain(format!(
            "Lévy stable index must lie in (0, 2), got {beta}"
        )));
    }
    let num = gamma(1.0 + beta) * (PI * beta / 2.0).sin();
    let den = gamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    Ok((num / den).powf(1.0 / beta))
}

/// Stable index together with its Mantegna scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyParams {
    beta: f64,
    sigma_u: f64,
}

impl LevyParams {
    pub fn new(beta: f64) -> Result<Self> {
        Ok(Self {
            beta,
            sigma_u: mantegna_sigma(beta)?,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma_u(&self) -> f64 {
        self.sigma_u
    }
}

const LEVY_DENOM_FLOOR: f64 = 1e-300;

/// One Lévy-distributed step of length `dim`, `u / |v|^(1/beta)`.
pub fn levy_step(dim: usize, params: &LevyParams, rng: &mut RngStream) -> Vec<f64> {
    let inv_beta = 1.0 / params.beta;
    (0..dim)
        .map(|_| {
            let u = params.sigma_u * rng.normal();
            let mut v = rng.normal();
            while v.abs() < LEVY_DENOM_FLOOR {
                v = rng.normal();
            }
            u / v.abs().powf(inv_beta)
        })
        .collect()
}

const TANGENT_ATTEMPTS: usize = 16;
const TANGENT_MIN_NORM: f64 = 1e-12;

/// Random unit vector orthogonal to `axis`, uniform over the orthogonal
/// hyperplane. `axis` need not be exactly unit length.
pub fn tangent_unit_vector(axis: &[f64], rng: &mut RngStream) -> Result<Vec<f64>> {
    let dim = axis.len();
    if dim < 2 {
        return Err(Error::DegenerateDimension(
            "no direction is orthogonal to a one-dimensional axis".into(),
        ));
    }
    let axis_norm = norm(axis);
    if axis_norm == 0.0 || !axis_norm.is_finite() {
        return Err(Error::Domain("axis must be a finite nonzero vector".into()));
    }
    let e: Vec<f64> = axis.iter().map(|a| a / axis_norm).collect();
    for _ in 0..TANGENT_ATTEMPTS {
        let mut g = gaussian_vector(dim, rng);
        // Two Gram-Schmidt passes keep |g·e| at rounding level in high dimension.
        for _ in 0..2 {
            let proj = dot(&g, &e);
            g.iter_mut().zip(&e).for_each(|(gi, ei)| *gi -= proj * ei);
        }
        let n = norm(&g);
        if n >= TANGENT_MIN_NORM {
            g.iter_mut().for_each(|gi| *gi /= n);
            return Ok(g);
        }
    }
    Err(Error::Domain(
        "tangent projection stayed degenerate after repeated draws".into(),
    ))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    // 40-digit evaluations of the closed form.
    const SIGMA_1_5: f64 = 0.696_574_502_557_696_8;
    const SIGMA_0_5: f64 = 1.479_337_559_594_319_4;

    #[test]
    fn sigma_closed_form() {
        assert_eq!(mantegna_sigma(1.0).unwrap(), 1.0);
        let s15 = mantegna_sigma(1.5).unwrap();
        let s05 = mantegna_sigma(0.5).unwrap();
        assert!(((s15 - SIGMA_1_5) / SIGMA_1_5).abs() < 1e-12);
        assert!(((s05 - SIGMA_0_5) / SIGMA_0_5).abs() < 1e-12);
    }

    #[test]
    fn sigma_rejects_out_of_range() {
        for beta in [0.0, 2.0, -1.0, 2.5, f64::NAN] {
            assert!(matches!(mantegna_sigma(beta), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn sigma_positive_and_continuous_on_grid() {
        let grid: Vec<f64> = (0..100).map(|i| 0.05 + 1.9 * i as f64 / 99.0).collect();
        let values: Vec<f64> = grid.iter().map(|&b| mantegna_sigma(b).unwrap()).collect();
        assert!(values.iter().all(|v| v.is_finite() && *v > 0.0));
        for w in values.windows(2) {
            assert!((w[1] / w[0]).ln().abs() < 1.5, "jump {w:?}");
        }
    }

    #[test]
    fn levy_step_shape() {
        let mut rng = RngStream::new(3);
        let p = LevyParams::new(1.5).unwrap();
        let s = levy_step(5, &p, &mut rng);
        assert_eq!(s.len(), 5);
        assert!(s.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn tangent_in_two_dimensions_is_perpendicular_axis() {
        let mut rng = RngStream::new(11);
        for _ in 0..50 {
            let t = tangent_unit_vector(&[1.0, 0.0], &mut rng).unwrap();
            assert!(t[0].abs() < 1e-9);
            assert!((t[1].abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn tangent_rejects_one_dimension() {
        let mut rng = RngStream::new(1);
        assert!(matches!(
            tangent_unit_vector(&[1.0], &mut rng),
            Err(Error::DegenerateDimension(_))
        ));
    }

    #[test]
    fn gaussian_vector_shape_and_determinism() {
        let a = gaussian_vector(3, &mut RngStream::new(9));
        let b = gaussian_vector(3, &mut RngStream::new(9));
        assert_eq!(a.len(), 3);
        assert_eq!(a, b);
    }

    #[test]
    fn derived_streams_differ() {
        let a = RngStream::derive(42, 0).uniform();
        let b = RngStream::derive(42, 1).uniform();
        assert_ne!(a, b);
        assert_eq!(a, RngStream::derive(42, 0).uniform());
    }
}
