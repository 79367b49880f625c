use std::fmt;

use serde::{Deserialize, Serialize};

use super::{friedman, holm_correct, log10_abs, rank_per_case, wilcoxon_signed_rank};
use super::{FriedmanResult, WilcoxonResult};
use crate::error::{Error, Result};
use crate::record::{RunRecord, RunSummary};

/// Significance level used for the flags in [`PairwiseComparison`].
const ALPHA: f64 = 0.05;

/// Error statistics of one (algorithm, case) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    pub runs: usize,
    pub mean: f64,
    pub median: f64,
    pub best: f64,
    /// Sample standard deviation, 0 for a single run.
    pub std: f64,
    /// Mean of the floored log10 absolute errors.
    pub mean_log10_error: f64,
}

impl ErrorSummary {
    /// Summary of absolute errors. Returns `None` for an empty slice.
    pub fn from_errors(errors: &[f64]) -> Option<Self> {
        if errors.is_empty() {
            return None;
        }
        let abs: Vec<f64> = errors.iter().map(|e| e.abs()).collect();
        let n = abs.len() as f64;
        let mean = abs.iter().sum::<f64>() / n;
        Some(Self {
            runs: abs.len(),
            mean,
            median: median(&abs),
            best: abs.iter().copied().fold(f64::INFINITY, f64::min),
            std: sample_std(&abs, mean),
            mean_log10_error: abs.iter().map(|e| log10_abs(*e)).sum::<f64>() / n,
        })
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    let k = s.len();
    if k % 2 == 1 {
        s[k / 2]
    } else {
        (s[k / 2 - 1] + s[k / 2]) / 2.0
    }
}

/// Sample standard deviation around `mean`; 0 for fewer than two values.
pub fn sample_std(values: &[f64], mean: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}

/// A benchmark case: a problem at one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseKey {
    pub problem: String,
    pub dim: usize,
}

impl fmt::Display for CaseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (D={})", self.problem, self.dim)
    }
}

/// Final results of a run grid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultSet {
    runs: Vec<RunSummary>,
}

impl ResultSet {
    pub fn new(runs: Vec<RunSummary>) -> Self {
        Self { runs }
    }

    pub fn from_records(records: &[RunRecord]) -> Self {
        Self::new(records.iter().map(RunSummary::from).collect())
    }

    pub fn runs(&self) -> &[RunSummary] {
        &self.runs
    }

    /// Algorithms in order of first appearance.
    pub fn algorithms(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.runs {
            if !out.contains(&r.algorithm) {
                out.push(r.algorithm.clone());
            }
        }
        out
    }

    /// Cases in order of first appearance.
    pub fn cases(&self) -> Vec<CaseKey> {
        let mut out: Vec<CaseKey> = Vec::new();
        for r in &self.runs {
            let key = CaseKey {
                problem: r.problem.clone(),
                dim: r.dim,
            };
            if !out.contains(&key) {
                out.push(key);
            }
        }
        out
    }

    pub fn cell(&self, algorithm: &str, case: &CaseKey) -> Vec<&RunSummary> {
        self.runs
            .iter()
            .filter(|r| r.algorithm == algorithm && r.problem == case.problem && r.dim == case.dim)
            .collect()
    }
}

/// Everything reported for one (algorithm, case) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub algorithm: String,
    pub case: CaseKey,
    pub runs: usize,
    /// Present when the optimum of the problem is known.
    pub error: Option<ErrorSummary>,
    /// Lowest unpenalized objective over all runs.
    pub best_value: f64,
    /// Lowest objective over feasible runs of a constrained problem.
    pub best_feasible: Option<f64>,
    pub feasibility_rate: Option<f64>,
    pub mean_max_violation: Option<f64>,
    /// Value the cell is ranked by, lower is better: mean log10 error when
    /// the optimum is known, best feasible objective for constrained
    /// problems (infinite if no run was feasible), best raw value otherwise.
    pub score: f64,
}

impl CellSummary {
    fn build(algorithm: &str, case: &CaseKey, runs: &[&RunSummary]) -> Self {
        let errors: Vec<f64> = runs.iter().filter_map(|r| r.error).collect();
        let error = if errors.len() == runs.len() {
            ErrorSummary::from_errors(&errors)
        } else {
            None
        };
        let best_value = runs.iter().map(|r| r.best).fold(f64::INFINITY, f64::min);
        let constrained = runs.iter().all(|r| r.feasible.is_some());
        let (best_feasible, feasibility_rate, mean_max_violation) = if constrained {
            let feasible: Vec<f64> = runs
                .iter()
                .filter(|r| r.feasible == Some(true))
                .map(|r| r.best)
                .collect();
            let rate = feasible.len() as f64 / runs.len() as f64;
            let best = feasible.iter().copied().reduce(f64::min);
            let viol = runs
                .iter()
                .map(|r| r.max_violation.unwrap_or(0.0))
                .sum::<f64>()
                / runs.len() as f64;
            (best, Some(rate), Some(viol))
        } else {
            (None, None, None)
        };
        let score = match (&error, constrained) {
            (Some(e), _) => e.mean_log10_error,
            (None, true) => best_feasible.unwrap_or(f64::INFINITY),
            (None, false) => best_value,
        };
        Self {
            algorithm: algorithm.to_string(),
            case: case.clone(),
            runs: runs.len(),
            error,
            best_value,
            best_feasible,
            feasibility_rate,
            mean_max_violation,
            score,
        }
    }
}

/// Reference algorithm against one competitor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub algorithm: String,
    /// Test on `reference - algorithm` per case.
    pub wilcoxon: WilcoxonResult,
    pub p_holm: f64,
    pub significant: bool,
}

/// Ranks, wins and hypothesis tests over a cases x algorithms score matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatReport {
    pub algorithms: Vec<String>,
    pub cases: usize,
    pub mean_ranks: Vec<f64>,
    /// Cases on which each algorithm attains the row minimum (ties count
    /// for every tied algorithm).
    pub win_counts: Vec<usize>,
    /// Absent with fewer than two cases.
    pub friedman: Option<FriedmanResult>,
    pub reference: Option<String>,
    pub comparisons: Vec<PairwiseComparison>,
}

impl StatReport {
    /// `scores[case][algorithm]`, lower is better.
    pub fn from_matrix(
        algorithms: &[String],
        scores: &[Vec<f64>],
        reference: Option<&str>,
    ) -> Result<Self> {
        let m = algorithms.len();
        if m < 2 {
            return Err(Error::Domain(format!(
                "comparison needs at least 2 algorithms, got {m}"
            )));
        }
        if scores.is_empty() {
            return Err(Error::Domain("comparison needs at least one case".into()));
        }
        if let Some(bad) = scores.iter().position(|r| r.len() != m) {
            return Err(Error::Domain(format!(
                "score row {bad} has {} entries, expected {m}",
                scores[bad].len()
            )));
        }
        let ranks: Vec<Vec<f64>> = scores.iter().map(|r| rank_per_case(r)).collect();
        let n = scores.len() as f64;
        let mean_ranks = (0..m)
            .map(|j| ranks.iter().map(|r| r[j]).sum::<f64>() / n)
            .collect();
        let mut win_counts = vec![0; m];
        for row in scores {
            let best = row.iter().copied().fold(f64::INFINITY, f64::min);
            for (j, v) in row.iter().enumerate() {
                if *v == best {
                    win_counts[j] += 1;
                }
            }
        }
        let friedman = if scores.len() >= 2 {
            Some(friedman(&ranks)?)
        } else {
            None
        };
        let comparisons = match reference {
            Some(name) => {
                let r = algorithms.iter().position(|a| a == name).ok_or_else(|| {
                    Error::config(format!(
                        "reference algorithm `{name}` is not in the results"
                    ))
                })?;
                pairwise(algorithms, scores, r)
            }
            None => Vec::new(),
        };
        Ok(Self {
            algorithms: algorithms.to_vec(),
            cases: scores.len(),
            mean_ranks,
            win_counts,
            friedman,
            reference: reference.map(str::to_string),
            comparisons,
        })
    }
}

fn pairwise(algorithms: &[String], scores: &[Vec<f64>], r: usize) -> Vec<PairwiseComparison> {
    let tests: Vec<(usize, WilcoxonResult)> = (0..algorithms.len())
        .filter(|&j| j != r)
        .map(|j| {
            let diffs: Vec<f64> = scores
                .iter()
                .map(|row| {
                    if row[r] == row[j] {
                        0.0
                    } else {
                        row[r] - row[j]
                    }
                })
                .collect();
            (j, wilcoxon_signed_rank(&diffs))
        })
        .collect();
    let raw: Vec<f64> = tests.iter().map(|(_, w)| w.p_value).collect();
    let adjusted = holm_correct(&raw);
    tests
        .into_iter()
        .zip(adjusted)
        .map(|((j, w), p_holm)| PairwiseComparison {
            algorithm: algorithms[j].clone(),
            significant: !w.degenerate && p_holm < ALPHA,
            wilcoxon: w,
            p_holm,
        })
        .collect()
}

/// Per-cell summaries, row winners and the global comparison report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub algorithms: Vec<String>,
    pub cases: Vec<CaseKey>,
    /// `cells[case][algorithm]`.
    pub cells: Vec<Vec<CellSummary>>,
    /// `winners[case][algorithm]`: attains the row minimum score.
    pub winners: Vec<Vec<bool>>,
    /// Absent with a single algorithm.
    pub report: Option<StatReport>,
}

/// Summarizes a complete result grid. Every algorithm must have at least
/// one run on every case.
pub fn summarize(set: &ResultSet, reference: Option<&str>) -> Result<Summary> {
    let algorithms = set.algorithms();
    let cases = set.cases();
    let mut missing = Vec::new();
    let mut cells = Vec::with_capacity(cases.len());
    for case in &cases {
        let mut row = Vec::with_capacity(algorithms.len());
        for alg in &algorithms {
            let runs = set.cell(alg, case);
            if runs.is_empty() {
                missing.push(format!("{alg} on {case}"));
            } else {
                row.push(CellSummary::build(alg, case, &runs));
            }
        }
        cells.push(row);
    }
    if !missing.is_empty() {
        return Err(Error::IncompleteGrid(missing));
    }
    let scores: Vec<Vec<f64>> = cells
        .iter()
        .map(|row| row.iter().map(|c| c.score).collect())
        .collect();
    let winners = scores
        .iter()
        .map(|row| {
            let best = row.iter().copied().fold(f64::INFINITY, f64::min);
            row.iter().map(|v| *v == best).collect()
        })
        .collect();
    let report = if algorithms.len() >= 2 {
        Some(StatReport::from_matrix(&algorithms, &scores, reference)?)
    } else {
        None
    };
    Ok(Summary {
        algorithms,
        cases,
        cells,
        winners,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(alg: &str, problem: &str, seed: u64, error: f64) -> RunSummary {
        RunSummary {
            algorithm: alg.into(),
            problem: problem.into(),
            dim: 2,
            seed,
            best: error,
            error: Some(error),
            feasible: None,
            max_violation: None,
            walltime_ms: None,
        }
    }

    #[test]
    fn error_summary_fields() {
        let s = ErrorSummary::from_errors(&[1.0, 10.0, 100.0, 0.0]).unwrap();
        assert_eq!(s.best, 0.0);
        assert_eq!(s.median, 5.5);
        assert!((s.mean_log10_error - (0.0 + 1.0 + 2.0 - 12.0) / 4.0).abs() < 1e-12);
        assert!(s.best <= s.median && s.std >= 0.0);
        assert_eq!(ErrorSummary::from_errors(&[3.0]).unwrap().std, 0.0);
    }

    #[test]
    fn dominant_algorithm_wins_everything() {
        let mut runs = Vec::new();
        for p in ["F1", "F2", "F3"] {
            for s in 0..3 {
                runs.push(run("A", p, s, 0.1));
                runs.push(run("B", p, s, 1.0));
            }
        }
        let sum = summarize(&ResultSet::new(runs), Some("A")).unwrap();
        let rep = sum.report.unwrap();
        assert_eq!(rep.win_counts, vec![3, 0]);
        assert_eq!(rep.mean_ranks, vec![1.0, 2.0]);
        assert_eq!(rep.comparisons.len(), 1);
        assert_eq!(
            rep.comparisons[0].wilcoxon.direction,
            super::super::Direction::Negative
        );
        assert!(sum.winners.iter().all(|w| w == &vec![true, false]));
    }

    #[test]
    fn missing_cells_listed() {
        let runs = vec![run("A", "F1", 0, 1.0), run("B", "F2", 0, 1.0)];
        match summarize(&ResultSet::new(runs), None) {
            Err(Error::IncompleteGrid(gaps)) => assert_eq!(gaps.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn constrained_cells_rank_by_best_feasible() {
        let mk = |alg: &str, best: f64, feasible: bool| RunSummary {
            feasible: Some(feasible),
            max_violation: Some(if feasible { 0.0 } else { 0.5 }),
            error: None,
            ..run(alg, "welded_beam", 0, best)
        };
        let runs = vec![mk("A", 1.8, true), mk("A", 1.0, false), mk("B", 1.75, true)];
        let sum = summarize(&ResultSet::new(runs), None).unwrap();
        let a = &sum.cells[0][0];
        assert_eq!(a.best_feasible, Some(1.8));
        assert_eq!(a.feasibility_rate, Some(0.5));
        assert_eq!(a.mean_max_violation, Some(0.25));
        assert_eq!(sum.winners[0], vec![false, true]);
    }
}
