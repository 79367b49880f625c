use std::fs;

use dvo_core::benchmarks::Catalog;
use dvo_core::harness::{
    emit_convergence, emit_records, emit_result_table, emit_stat_tables, load_failures,
    load_records, read_summary, run_experiment, run_experiment_with, summary_from_csv,
    summary_to_csv, ExperimentConfig, TableFormat, RECORDS_DIR, SUMMARY_FILE,
};
use dvo_core::problem::Bounds;
use dvo_core::stats::summarize;
use dvo_core::{ProblemSpec, RunSummary};

fn config(text: &str) -> ExperimentConfig {
    ExperimentConfig::from_toml_str(text).unwrap()
}

const SMALL: &str = r#"
[suite]
kind = "classical_scalable"
problems = ["F1", "F9"]
dimensions = [3]

[execution]
runs = 3
iterations = 20
population = 8
seed = 42
checkpoints = [5, 10, 20]

[[algorithms]]
name = "DVO"

[[algorithms]]
name = "PSO"

[[algorithms]]
name = "GWO"
"#;

#[test]
fn grid_has_one_record_per_cell_in_order() {
    let exp = run_experiment(&config(SMALL)).unwrap();
    assert!(exp.failures.is_empty());
    assert_eq!(exp.records.len(), 3 * 2 * 3);
    let first: Vec<(&str, &str, u64)> = exp
        .records
        .iter()
        .take(4)
        .map(|r| (r.algorithm.as_str(), r.problem.as_str(), r.run_index))
        .collect();
    assert_eq!(
        first,
        vec![
            ("DVO", "F1", 0),
            ("DVO", "F1", 1),
            ("DVO", "F1", 2),
            ("DVO", "F9", 0)
        ]
    );
    for r in &exp.records {
        assert_eq!(r.evaluations, 8 * 21);
        assert_eq!(
            r.checkpoints
                .iter()
                .map(|c| c.iteration)
                .collect::<Vec<_>>(),
            vec![5, 10, 20]
        );
        assert!(r.wall_time_ms.is_none());
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let mut one = config(SMALL);
    one.execution.parallel = 1;
    let mut many = config(SMALL);
    many.execution.parallel = 4;
    let a = run_experiment(&one).unwrap();
    let b = run_experiment(&many).unwrap();
    assert_eq!(a.records, b.records);
}

#[test]
fn emitted_files_round_trip() {
    let mut cfg = config(SMALL);
    cfg.algorithms.truncate(1);
    cfg.suite.problems.truncate(1);
    cfg.execution.runs = 6;
    let exp = run_experiment(&cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    emit_records(&exp, dir.path()).unwrap();
    let files = fs::read_dir(dir.path().join(RECORDS_DIR)).unwrap().count();
    assert_eq!(files, 6);
    assert_eq!(load_records(dir.path()).unwrap(), exp.records);
    assert!(load_failures(dir.path()).unwrap().is_empty());

    let rows = read_summary(dir.path()).unwrap();
    let want: Vec<RunSummary> = exp.records.iter().map(RunSummary::from).collect();
    assert_eq!(rows, want);
    let text = fs::read_to_string(dir.path().join(SUMMARY_FILE)).unwrap();
    assert_eq!(
        summary_to_csv(&summary_from_csv(&text).unwrap()).unwrap(),
        text
    );
}

#[test]
fn failing_runs_are_reported_not_fatal() {
    let mut catalog = Catalog::builtin();
    catalog
        .register_plugin(ProblemSpec::deterministic(
            "cliff",
            Bounds::uniform(2, -1.0, 1.0).unwrap(),
            |x| {
                if x[0] > 0.9 {
                    f64::NAN
                } else {
                    x[0] * x[0] + x[1] * x[1]
                }
            },
        ))
        .unwrap();
    let cfg = ExperimentConfig::parse_toml(
        r#"
[suite]
kind = "custom"
problems = ["cliff"]

[execution]
runs = 4
iterations = 30
population = 10

[[algorithms]]
name = "PSO"
"#,
    )
    .unwrap();
    assert!(cfg.validate().is_err());
    let exp = run_experiment_with(&cfg, &catalog).unwrap();
    assert_eq!(exp.records.len() + exp.failures.len(), 4);
    assert!(!exp.failures.is_empty());
    for f in &exp.failures {
        assert_eq!(f.problem, "cliff");
        assert!(!f.message.is_empty());
    }
    let dir = tempfile::tempdir().unwrap();
    emit_records(&exp, dir.path()).unwrap();
    assert_eq!(load_failures(dir.path()).unwrap(), exp.failures);
}

#[test]
fn reports_build_from_records() {
    let exp = run_experiment(&config(SMALL)).unwrap();
    let set = exp.result_set();
    let summary = summarize(&set, Some("DVO")).unwrap();
    assert_eq!(summary.algorithms, vec!["DVO", "PSO", "GWO"]);
    assert_eq!(summary.cases.len(), 2);
    for row in &summary.winners {
        assert!(row.iter().any(|&w| w));
    }
    let table = emit_result_table(&set, TableFormat::Plain).unwrap();
    assert!(table.contains('*'));
    let stats = emit_stat_tables(&set, "DVO", TableFormat::Latex).unwrap();
    assert!(stats.contains("\\begin{tabular}"));
    let conv = emit_convergence(&exp.records, None).unwrap();
    let lines: Vec<&str> = conv.lines().collect();
    assert_eq!(
        lines[0],
        "algorithm,problem,dim,checkpoint,mean_log10_error,std_log10_error"
    );
    assert_eq!(lines.len(), 1 + 3 * 2 * 3);
    let only = emit_convergence(&exp.records, Some(&["F9".to_string()])).unwrap();
    assert_eq!(only.lines().count(), 1 + 3 * 3);
}

#[test]
fn invalid_configs_list_every_problem() {
    let err = ExperimentConfig::from_toml_str(
        r#"
[suite]
kind = "classical_scalable"
problems = ["F1", "nope"]

[execution]
runs = 0

[[algorithms]]
name = "HHO"
"#,
    )
    .and_then(|c| c.validate())
    .unwrap_err()
    .to_string();
    assert!(err.contains("nope"), "{err}");
    assert!(err.contains("HHO"), "{err}");
    assert!(err.contains("runs"), "{err}");
}
