//! Experiment configuration, grid execution and result emission.

mod config;
mod io;
mod runner;
mod tables;

pub use config::{
    load_config, AlgorithmConfig, CaseSpec, ExecutionConfig, ExperimentConfig, OutputConfig,
    ResolvedAlgorithm, SuiteConfig, SuiteKind, DVO_NAME,
};
pub use io::{
    emit_records, load_failures, load_records, read_summary, record_file_name, record_from_json,
    record_to_json, summary_from_csv, summary_to_csv, CONFIG_FILE, FAILURES_FILE, RECORDS_DIR,
    SCHEMA_VERSION, SUMMARY_COLUMNS, SUMMARY_FILE,
};
pub use runner::{derive_seed, run_experiment, run_experiment_with, Experiment};
pub use tables::{
    emit_convergence, emit_result_table, emit_stat_tables, format_significant, TableFormat,
};
