//! Run records, the summary table and failure lists on disk.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::runner::Experiment;
use crate::error::{Error, Result};
use crate::record::{RunFailure, RunRecord, RunSummary};
use crate::stats::log10_abs;

/// Version written into every record file.
pub const SCHEMA_VERSION: &str = "1.0";
const SCHEMA_MAJOR: &str = "1";

pub const SUMMARY_FILE: &str = "summary.csv";
pub const CONFIG_FILE: &str = "config.toml";
pub const FAILURES_FILE: &str = "failures.json";
pub const RECORDS_DIR: &str = "records";

/// Columns of the summary table, in order.
pub const SUMMARY_COLUMNS: [&str; 10] = [
    "algorithm",
    "problem",
    "dim",
    "seed",
    "best",
    "error",
    "log10_error",
    "feasible",
    "max_violation",
    "walltime_ms",
];

#[derive(Serialize, Deserialize)]
struct RecordFile {
    schema_version: String,
    #[serde(flatten)]
    record: RunRecord,
}

/// `{algorithm}__{problem}__D{dim}__r{run:03}.json`
pub fn record_file_name(record: &RunRecord) -> String {
    format!(
        "{}__{}__D{}__r{:03}.json",
        sanitize(&record.algorithm),
        sanitize(&record.problem),
        record.dim,
        record.run_index
    )
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' {
                c
            } else {
                '-'
            }
        })
        .collect()
}

pub fn record_to_json(record: &RunRecord) -> Result<String> {
    let file = RecordFile {
        schema_version: SCHEMA_VERSION.to_string(),
        record: record.clone(),
    };
    serde_json::to_string_pretty(&file).map_err(|e| Error::Format(format!("record encoding: {e}")))
}

/// Parses a record file, rejecting unknown major schema versions.
pub fn record_from_json(text: &str) -> Result<RunRecord> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("record decoding: {e}")))?;
    let version = value
        .get("schema_version")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::Schema("missing".into()))?;
    if version.split('.').next() != Some(SCHEMA_MAJOR) {
        return Err(Error::Schema(version.to_string()));
    }
    let file: RecordFile = serde_json::from_value(value)
        .map_err(|e| Error::Format(format!("record decoding: {e}")))?;
    Ok(file.record)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes the configuration snapshot, one JSON file per run, the summary
/// table and, if any run failed, the failure list.
pub fn emit_records(experiment: &Experiment, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let records_dir = dir.join(RECORDS_DIR);
    fs::create_dir_all(&records_dir).map_err(|e| Error::io(&records_dir, e))?;
    let mut written = Vec::new();

    let config_path = dir.join(CONFIG_FILE);
    write(&config_path, &experiment.config.to_toml_string()?)?;
    written.push(config_path);

    for record in &experiment.records {
        let path = records_dir.join(record_file_name(record));
        write(&path, &record_to_json(record)?)?;
        written.push(path);
    }

    let summary: Vec<RunSummary> = experiment.records.iter().map(RunSummary::from).collect();
    let summary_path = dir.join(SUMMARY_FILE);
    write(&summary_path, &summary_to_csv(&summary)?)?;
    written.push(summary_path);

    let failures_path = dir.join(FAILURES_FILE);
    if experiment.failures.is_empty() {
        if failures_path.exists() {
            fs::remove_file(&failures_path).map_err(|e| Error::io(&failures_path, e))?;
        }
    } else {
        let text = serde_json::to_string_pretty(&experiment.failures)
            .map_err(|e| Error::Format(format!("failure encoding: {e}")))?;
        write(&failures_path, &text)?;
        written.push(failures_path);
    }
    Ok(written)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Summary table as comma-separated text. Floats use the shortest
/// representation that parses back to the same value.
pub fn summary_to_csv(rows: &[RunSummary]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Format(format!("summary encoding: {e}"));
    w.write_record(SUMMARY_COLUMNS).map_err(fail)?;
    for r in rows {
        w.write_record([
            r.algorithm.clone(),
            r.problem.clone(),
            r.dim.to_string(),
            r.seed.to_string(),
            r.best.to_string(),
            opt(r.error),
            opt(r.error.map(log10_abs)),
            opt(r.feasible),
            opt(r.max_violation),
            opt(r.walltime_ms),
        ])
        .map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Format(format!("summary encoding: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

pub fn summary_from_csv(text: &str) -> Result<Vec<RunSummary>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::Format(format!("summary header: {e}")))?
        .clone();
    if header.iter().ne(SUMMARY_COLUMNS) {
        return Err(Error::Format(format!(
            "summary columns must be {}",
            SUMMARY_COLUMNS.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Format(format!("summary line {line}: {e}")))?;
        let field = |k: usize| rec.get(k).unwrap_or("");
        let bad =
            |k: usize| Error::Format(format!("summary line {line}: bad {}", SUMMARY_COLUMNS[k]));
        fn maybe<T: std::str::FromStr>(s: &str) -> std::result::Result<Option<T>, ()> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| ())
            }
        }
        rows.push(RunSummary {
            algorithm: field(0).to_string(),
            problem: field(1).to_string(),
            dim: field(2).parse().map_err(|_| bad(2))?,
            seed: field(3).parse().map_err(|_| bad(3))?,
            best: field(4).parse().map_err(|_| bad(4))?,
            error: maybe(field(5)).map_err(|_| bad(5))?,
            feasible: maybe(field(7)).map_err(|_| bad(7))?,
            max_violation: maybe(field(8)).map_err(|_| bad(8))?,
            walltime_ms: maybe(field(9)).map_err(|_| bad(9))?,
        });
    }
    Ok(rows)
}

pub fn read_summary(dir: impl AsRef<Path>) -> Result<Vec<RunSummary>> {
    let path = dir.as_ref().join(SUMMARY_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    summary_from_csv(&text)
}

/// Loads every record file of an output directory, in file-name order.
pub fn load_records(dir: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    let records_dir = dir.as_ref().join(RECORDS_DIR);
    let mut paths: Vec<PathBuf> = fs::read_dir(&records_dir)
        .map_err(|e| Error::io(&records_dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            record_from_json(&text).map_err(|e| Error::Format(format!("{}: {e}", p.display())))
        })
        .collect()
}

pub fn load_failures(dir: impl AsRef<Path>) -> Result<Vec<RunFailure>> {
    let path = dir.as_ref().join(FAILURES_FILE);
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(best: f64, error: Option<f64>, feasible: Option<bool>) -> RunSummary {
        RunSummary {
            algorithm: "DVO".into(),
            problem: "welded_beam".into(),
            dim: 4,
            seed: u64::MAX,
            best,
            error,
            feasible,
            max_violation: feasible.map(|_| 1.234_567_890_123_456_7e-9),
            walltime_ms: None,
        }
    }

    #[test]
    fn summary_round_trip_is_exact() {
        let rows = vec![
            row(1.724_852_308_597_366_4, None, Some(true)),
            row(0.1 + 0.2, Some(1e-300), None),
            row(-3.862_782_147_820_756, Some(5e-324), None),
        ];
        let text = summary_to_csv(&rows).unwrap();
        assert!(text.starts_with("algorithm,problem,dim,seed,best,error,log10_error,feasible,max_violation,walltime_ms\n"));
        assert_eq!(summary_from_csv(&text).unwrap(), rows);
    }

    #[test]
    fn schema_major_checked() {
        let rec = RunRecord {
            algorithm: "PSO".into(),
            problem: "F1".into(),
            dim: 2,
            run_index: 4,
            seed: 1,
            trace: vec![1.0, 0.5],
            checkpoints: Vec::new(),
            best_position: vec![0.0, 0.0],
            best_fitness: 0.5,
            objective_value: 0.5,
            error: Some(0.5),
            feasible: None,
            max_violation: None,
            evaluations: 6,
            wall_time_ms: None,
        };
        assert_eq!(record_file_name(&rec), "PSO__F1__D2__r004.json");
        let json = record_to_json(&rec).unwrap();
        assert!(json.contains("\"schema_version\": \"1.0\""));
        assert_eq!(record_from_json(&json).unwrap(), rec);
        let future = json.replace("\"1.0\"", "\"2.0\"");
        assert!(matches!(record_from_json(&future), Err(Error::Schema(_))));
        let minor = json.replace("\"1.0\"", "\"1.7\"");
        assert!(record_from_json(&minor).is_ok());
    }
}
