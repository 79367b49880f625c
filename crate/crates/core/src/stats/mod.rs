//! Error metrics and nonparametric comparison of optimizers.

mod summary;
mod wilcoxon;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::gamma_q;

pub use summary::{
    median, sample_std, summarize, CaseKey, CellSummary, ErrorSummary, PairwiseComparison,
    ResultSet, StatReport, Summary,
};
pub use wilcoxon::{wilcoxon_signed_rank, Direction, WilcoxonResult, EXACT_LIMIT};

/// Smallest absolute error resolved on the log scale.
pub const ERROR_FLOOR: f64 = 1e-12;

/// `log10(max(|found - f_true|, 1e-12))`.
pub fn log10_error(found: f64, f_true: f64) -> f64 {
    log10_abs(found - f_true)
}

/// `log10(max(|error|, 1e-12))`.
pub fn log10_abs(error: f64) -> f64 {
    error.abs().max(ERROR_FLOOR).log10()
}

/// Fractional ranks, 1 for the smallest value; tied values share the
/// average of the ranks they span.
pub fn rank_per_case(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && tie(values[order[j + 1]], values[order[i]]) {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn tie(a: f64, b: f64) -> bool {
    a == b || (a.is_nan() && b.is_nan())
}

/// Outcome of the Friedman test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult {
    pub statistic: f64,
    pub p_value: f64,
    pub dof: usize,
    /// Mean rank of each algorithm (column).
    pub mean_ranks: Vec<f64>,
}

/// Friedman chi-square on a cases x algorithms rank matrix.
pub fn friedman(ranks: &[Vec<f64>]) -> Result<FriedmanResult> {
    let n = ranks.len();
    let m = ranks.first().map_or(0, Vec::len);
    if n < 2 || m < 2 {
        return Err(Error::Domain(format!(
            "Friedman test needs at least 2 cases and 2 algorithms, got {n} x {m}"
        )));
    }
    if let Some(bad) = ranks.iter().position(|r| r.len() != m) {
        return Err(Error::Domain(format!(
            "rank row {bad} has {} entries, expected {m}",
            ranks[bad].len()
        )));
    }
    let (nf, mf) = (n as f64, m as f64);
    let mean_ranks: Vec<f64> = (0..m)
        .map(|j| ranks.iter().map(|r| r[j]).sum::<f64>() / nf)
        .collect();
    let sum_sq: f64 = mean_ranks.iter().map(|r| r * r).sum();
    let statistic =
        (12.0 * nf / (mf * (mf + 1.0)) * (sum_sq - mf * (mf + 1.0).powi(2) / 4.0)).max(0.0);
    Ok(FriedmanResult {
        statistic,
        p_value: chi_square_sf(statistic, m - 1),
        dof: m - 1,
        mean_ranks,
    })
}

/// Upper tail of the chi-square distribution, `Q(dof / 2, x / 2)`.
pub fn chi_square_sf(x: f64, dof: usize) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    gamma_q(dof as f64 / 2.0, x / 2.0)
}

/// Holm step-down adjustment, returned in input order.
pub fn holm_correct(pvalues: &[f64]) -> Vec<f64> {
    let k = pvalues.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| pvalues[a].total_cmp(&pvalues[b]));
    let mut out = vec![0.0; k];
    let mut running = 0.0_f64;
    for (pos, &i) in order.iter().enumerate() {
        let adjusted = ((k - pos) as f64 * pvalues[i]).min(1.0);
        running = running.max(adjusted);
        out[i] = running;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_error_floor_and_scale() {
        assert_eq!(log10_error(2.0, 1.0), 0.0);
        assert_eq!(log10_error(5.0, 5.0), -12.0);
        assert_eq!(log10_abs(1e-15), -12.0);
        assert!((log10_abs(3e3) - log10_abs(3.0) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn ranks_with_ties() {
        assert_eq!(rank_per_case(&[3.0, 1.0, 2.0]), vec![3.0, 1.0, 2.0]);
        assert_eq!(rank_per_case(&[1.0, 1.0, 5.0]), vec![1.5, 1.5, 3.0]);
        assert_eq!(rank_per_case(&[2.0, 2.0, 2.0]), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn friedman_hand_case() {
        let r = vec![vec![1.0, 2.0, 3.0]; 3];
        let f = friedman(&r).unwrap();
        assert_eq!(f.statistic, 6.0);
        assert_eq!(f.dof, 2);
        assert!((f.p_value - (-3.0f64).exp()).abs() < 1e-12);
        let tied = vec![vec![2.0, 2.0, 2.0]; 4];
        let f = friedman(&tied).unwrap();
        assert_eq!(f.statistic, 0.0);
        assert_eq!(f.p_value, 1.0);
        assert!(friedman(&[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn chi_square_reference_values() {
        assert_eq!(chi_square_sf(0.0, 3), 1.0);
        assert!((chi_square_sf(2.0 * 2f64.ln(), 2) - 0.5).abs() < 1e-12);
        assert!((chi_square_sf(14.07, 7) - 0.049_950_250_317_479_47).abs() < 1e-10);
    }

    #[test]
    fn holm_hand_case() {
        assert_eq!(holm_correct(&[0.03]), vec![0.03]);
        assert_eq!(holm_correct(&[0.01, 0.04, 0.03]), vec![0.03, 0.06, 0.06]);
        assert_eq!(holm_correct(&[0.5, 0.9]), vec![1.0, 1.0]);
    }
}
