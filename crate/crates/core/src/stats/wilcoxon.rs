use serde::{Deserialize, Serialize};

use super::rank_per_case;
use crate::special::normal_sf;

/// Largest number of nonzero differences handled by exact enumeration.
pub const EXACT_LIMIT: usize = 25;

/// Sign of the median paired difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Positive,
    Negative,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// Rank sum of the positive differences.
    pub w_plus: f64,
    /// Rank sum of the negative differences.
    pub w_minus: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    pub direction: Direction,
    /// Differences left after dropping zeros.
    pub n: usize,
    pub exact: bool,
    /// Set when every difference is zero.
    pub degenerate: bool,
}

impl WilcoxonResult {
    /// `min(W+, W-)`.
    pub fn statistic(&self) -> f64 {
        self.w_plus.min(self.w_minus)
    }
}

/// Two-sided signed-rank test on paired differences. Zero differences are
/// dropped, ties get average ranks. Up to [`EXACT_LIMIT`] differences the
/// null distribution of `W+` is enumerated exactly; beyond that a normal
/// approximation with tie and continuity corrections is used.
pub fn wilcoxon_signed_rank(diffs: &[f64]) -> WilcoxonResult {
    let direction = median_direction(diffs);
    let nonzero: Vec<f64> = diffs.iter().copied().filter(|d| *d != 0.0).collect();
    let n = nonzero.len();
    if n == 0 {
        return WilcoxonResult {
            w_plus: 0.0,
            w_minus: 0.0,
            p_value: 1.0,
            direction,
            n,
            exact: true,
            degenerate: true,
        };
    }
    let abs: Vec<f64> = nonzero.iter().map(|d| d.abs()).collect();
    let ranks = rank_per_case(&abs);
    let w_plus: f64 = ranks
        .iter()
        .zip(&nonzero)
        .filter(|(_, d)| **d > 0.0)
        .map(|(r, _)| r)
        .sum();
    let total = n as f64 * (n as f64 + 1.0) / 2.0;
    let w_minus = total - w_plus;
    let (p_value, exact) = if n <= EXACT_LIMIT {
        (exact_p(&ranks, w_plus), true)
    } else {
        (normal_p(&abs, &ranks, w_plus), false)
    };
    WilcoxonResult {
        w_plus,
        w_minus,
        p_value,
        direction,
        n,
        exact,
        degenerate: false,
    }
}

/// `min(1, 2 min(P(W+ <= w), P(W+ >= w)))` under the exact permutation
/// distribution. Average ranks are multiples of 1/2, so the distribution is
/// tracked over doubled rank sums.
fn exact_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max: usize = doubled.iter().sum();
    let mut counts = vec![0.0_f64; max + 1];
    counts[0] = 1.0;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let total = 2f64.powi(ranks.len() as i32);
    let w = (2.0 * w_plus).round() as usize;
    let lower: f64 = counts[..=w].iter().sum();
    let upper: f64 = counts[w..].iter().sum();
    (2.0 * lower.min(upper) / total).min(1.0)
}

fn normal_p(abs: &[f64], ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut sorted = abs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let dev = ((w_plus - mean).abs() - 0.5).max(0.0);
    (2.0 * normal_sf(dev / var.sqrt())).min(1.0)
}

fn median_direction(diffs: &[f64]) -> Direction {
    if diffs.is_empty() {
        return Direction::Zero;
    }
    let mut s = diffs.to_vec();
    s.sort_by(f64::total_cmp);
    let k = s.len();
    let median = if k % 2 == 1 {
        s[k / 2]
    } else {
        (s[k / 2 - 1] + s[k / 2]) / 2.0
    };
    if median > 0.0 {
        Direction::Positive
    } else if median < 0.0 {
        Direction::Negative
    } else {
        Direction::Zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_zero_is_degenerate() {
        let r = wilcoxon_signed_rank(&[0.0, 0.0, 0.0]);
        assert!(r.degenerate);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.direction, Direction::Zero);
    }

    #[test]
    fn one_sided_five() {
        let r = wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(r.exact);
        assert_eq!(r.w_plus, 15.0);
        assert_eq!(r.statistic(), 0.0);
        assert!((r.p_value - 0.0625).abs() < 1e-15);
        assert_eq!(r.direction, Direction::Positive);
        let r = wilcoxon_signed_rank(&[-1.0, -2.0, -3.0, -4.0, -5.0]);
        assert!((r.p_value - 0.0625).abs() < 1e-15);
        assert_eq!(r.direction, Direction::Negative);
    }

    #[test]
    fn zeros_are_dropped() {
        let a = wilcoxon_signed_rank(&[1.0, 0.0, 2.0, -3.0, 0.0]);
        let b = wilcoxon_signed_rank(&[1.0, 2.0, -3.0]);
        assert_eq!(a.p_value, b.p_value);
        assert_eq!(a.n, 3);
    }

    #[test]
    fn normal_approximation_reference() {
        let diffs: Vec<f64> = (1..=30)
            .map(|k| if k % 3 == 1 { -(k as f64) } else { k as f64 })
            .collect();
        let r = wilcoxon_signed_rank(&diffs);
        assert!(!r.exact);
        assert!(
            (r.p_value - 0.073_543_093_345_318_01).abs() < 1e-9,
            "{}",
            r.p_value
        );
    }
}
