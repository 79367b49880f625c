//! Text renderings of result grids: per-case tables, statistical tests and
//! convergence data.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::record::RunRecord;
use crate::stats::{log10_abs, summarize, CellSummary, ResultSet, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    #[default]
    Plain,
    Latex,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Self::Plain),
            "latex" => Ok(Self::Latex),
            other => Err(Error::config(format!(
                "unknown table format `{other}`, expected plain or latex"
            ))),
        }
    }
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, format: TableFormat) -> String {
        let mut out = String::new();
        match format {
            TableFormat::Plain => {
                let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
                out.push_str(&line(&self.header));
                let rule: Vec<String> = self.header.iter().map(|_| "---".to_string()).collect();
                out.push_str(&line(&rule));
                for row in &self.rows {
                    out.push_str(&line(row));
                }
            }
            TableFormat::Latex => {
                let spec: String = std::iter::once('l')
                    .chain(std::iter::repeat_n('r', self.header.len() - 1))
                    .collect();
                let _ = writeln!(out, "\\begin{{tabular}}{{{spec}}}");
                out.push_str("\\toprule\n");
                let _ = writeln!(out, "{} \\\\", self.header.join(" & "));
                out.push_str("\\midrule\n");
                for row in &self.rows {
                    let _ = writeln!(out, "{} \\\\", row.join(" & "));
                }
                out.push_str("\\bottomrule\n\\end{tabular}\n");
            }
        }
        out
    }
}

fn escape(text: &str, format: TableFormat) -> String {
    match format {
        TableFormat::Plain => text.to_string(),
        TableFormat::Latex => text.replace('_', "\\_"),
    }
}

fn bold(text: &str, format: TableFormat) -> String {
    match format {
        TableFormat::Plain => format!("*{text}*"),
        TableFormat::Latex => format!("\\textbf{{{text}}}"),
    }
}

/// Rounds to `digits` significant figures and prints without exponent in
/// the usual magnitude range.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let exponent = value.abs().log10().floor() as i32;
    if !(-4..6).contains(&exponent) {
        return format!("{:.*e}", digits - 1, value);
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let scale = 10f64.powi(exponent - (digits as i32 - 1));
    let rounded = (value / scale).round() * scale;
    format!("{rounded:.decimals$}")
}

/// The number shown for a cell, before any decoration.
fn cell_value(cell: &CellSummary) -> Option<String> {
    match (&cell.error, cell.feasibility_rate) {
        (Some(e), _) => Some(format!("{:.3}", e.mean_log10_error)),
        (None, Some(_)) => cell.best_feasible.map(|v| format_significant(v, 4)),
        (None, None) => Some(format_significant(cell.best_value, 4)),
    }
}

fn case_labels(summary: &Summary) -> Vec<String> {
    summary
        .cases
        .iter()
        .map(|c| {
            let repeated = summary
                .cases
                .iter()
                .filter(|o| o.problem == c.problem)
                .count()
                > 1;
            if repeated {
                format!("{} (D={})", c.problem, c.dim)
            } else {
                c.problem.clone()
            }
        })
        .collect()
}

/// One row per case, one column per algorithm: mean log10 error with three
/// decimals, or for constrained problems without a known optimum the best
/// feasible objective followed by the feasibility rate when below one. The
/// smallest displayed value of each row is bolded, ties included.
pub fn emit_result_table(set: &ResultSet, format: TableFormat) -> Result<String> {
    let summary = summarize(set, None)?;
    let labels = case_labels(&summary);
    let mut header = vec!["Case".to_string()];
    header.extend(summary.algorithms.iter().map(|a| escape(a, format)));
    let mut rows = Vec::new();
    for (label, cells) in labels.iter().zip(&summary.cells) {
        let shown: Vec<Option<String>> = cells.iter().map(cell_value).collect();
        let parsed: Vec<Option<f64>> = shown
            .iter()
            .map(|s| s.as_ref().and_then(|v| v.parse().ok()))
            .collect();
        let best = parsed
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let mut row = vec![escape(label, format)];
        for ((cell, text), value) in cells.iter().zip(&shown).zip(&parsed) {
            let mut entry = match (text, value) {
                (Some(t), Some(v)) if *v == best => bold(t, format),
                (Some(t), _) => t.clone(),
                (None, _) => match format {
                    TableFormat::Plain => "n/a".to_string(),
                    TableFormat::Latex => "--".to_string(),
                },
            };
            if let Some(rate) = cell.feasibility_rate {
                if rate < 1.0 {
                    let _ = write!(entry, " ({rate:.2})");
                }
            }
            row.push(entry);
        }
        rows.push(row);
    }
    Ok(Table { header, rows }.render(format))
}

/// Friedman ranking table followed by the pairwise Wilcoxon table of
/// `reference` against every other algorithm, Holm-corrected.
pub fn emit_stat_tables(set: &ResultSet, reference: &str, format: TableFormat) -> Result<String> {
    let summary = summarize(set, Some(reference))?;
    let report = summary
        .report
        .as_ref()
        .ok_or_else(|| Error::Domain("statistical tables need at least two algorithms".into()))?;
    let mut out = String::new();

    let friedman = Table {
        header: ["Algorithm", "Avg. rank", "Wins"]
            .map(String::from)
            .to_vec(),
        rows: report
            .algorithms
            .iter()
            .zip(&report.mean_ranks)
            .zip(&report.win_counts)
            .map(|((a, r), w)| vec![escape(a, format), format!("{r:.3}"), w.to_string()])
            .collect(),
    };
    out.push_str(&friedman.render(format));
    match &report.friedman {
        Some(f) => {
            let _ = writeln!(
                out,
                "Friedman: cases = {}, chi2 = {:.2}, dof = {}, p = {:.2e}",
                report.cases, f.statistic, f.dof, f.p_value
            );
        }
        None => {
            let _ = writeln!(
                out,
                "Friedman: cases = {}, not computed (fewer than 2 cases)",
                report.cases
            );
        }
    }
    out.push('\n');

    let ref_index = report
        .algorithms
        .iter()
        .position(|a| a == reference)
        .expect("reference validated by summarize");
    let mean_score = |j: usize| {
        summary.cells.iter().map(|row| row[j].score).sum::<f64>() / summary.cells.len() as f64
    };
    let ref_mean = mean_score(ref_index);
    let header = vec![
        "Comparison".to_string(),
        format!("Mean ({})", escape(reference, format)),
        "Mean (other)".to_string(),
        "Diff".to_string(),
        "Holm p".to_string(),
        "Significant".to_string(),
    ];
    let rows = report
        .comparisons
        .iter()
        .map(|c| {
            let j = report
                .algorithms
                .iter()
                .position(|a| *a == c.algorithm)
                .unwrap_or(0);
            let other = mean_score(j);
            vec![
                format!(
                    "{} vs {}",
                    escape(reference, format),
                    escape(&c.algorithm, format)
                ),
                format!("{ref_mean:.3}"),
                format!("{other:.3}"),
                format!("{:.3}", ref_mean - other),
                format!("{:.2e}", c.p_holm),
                if c.significant { "Yes" } else { "No" }.to_string(),
            ]
        })
        .collect();
    out.push_str(&Table { header, rows }.render(format));
    Ok(out)
}

/// Plot-ready convergence data: mean and sample standard deviation of the
/// log10 error per (algorithm, problem, dimension, checkpoint). Problems
/// without a known optimum use the best objective value in place of the
/// error. `problems` restricts the output; unknown names are an error.
pub fn emit_convergence(records: &[RunRecord], problems: Option<&[String]>) -> Result<String> {
    let known: BTreeSet<&str> = records.iter().map(|r| r.problem.as_str()).collect();
    if let Some(list) = problems {
        let unknown: Vec<&str> = list
            .iter()
            .map(String::as_str)
            .filter(|p| !known.contains(p))
            .collect();
        if !unknown.is_empty() {
            return Err(Error::Catalog(format!(
                "no records for problem(s): {}",
                unknown.join(", ")
            )));
        }
    }
    let wanted = |p: &str| problems.is_none_or(|list| list.iter().any(|q| q == p));

    let mut groups: Vec<(&str, &str, usize)> = Vec::new();
    for r in records.iter().filter(|r| wanted(&r.problem)) {
        let key = (r.algorithm.as_str(), r.problem.as_str(), r.dim);
        if !groups.contains(&key) {
            groups.push(key);
        }
    }
    let mut out =
        String::from("algorithm,problem,dim,checkpoint,mean_log10_error,std_log10_error\n");
    for (alg, problem, dim) in groups {
        let runs: Vec<&RunRecord> = records
            .iter()
            .filter(|r| r.algorithm == alg && r.problem == problem && r.dim == dim)
            .collect();
        let iterations: BTreeSet<usize> = runs
            .iter()
            .flat_map(|r| r.checkpoints.iter().map(|c| c.iteration))
            .collect();
        for it in iterations {
            let values: Vec<f64> = runs
                .iter()
                .filter_map(|r| r.checkpoints.iter().find(|c| c.iteration == it))
                .map(|c| log10_abs(c.error.unwrap_or(c.best_fitness)))
                .collect();
            let n = values.len() as f64;
            let mean = values.iter().sum::<f64>() / n;
            let std = crate::stats::sample_std(&values, mean);
            let _ = writeln!(out, "{alg},{problem},{dim},{it},{mean},{std}");
        }
    }
    Ok(out)
}
