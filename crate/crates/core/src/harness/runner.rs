//! Parallel execution of the run grid.

use std::time::Instant;

use rayon::prelude::*;

use super::config::{CaseSpec, ExperimentConfig, ResolvedAlgorithm};
use crate::benchmarks::Catalog;
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::record::{run_optimizer, RunFailure, RunRecord};
use crate::stats::ResultSet;
use crate::stochastic::mix64;

/// Outcome of a grid: the configuration it came from, the completed runs in
/// grid order and the runs that aborted.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub records: Vec<RunRecord>,
    pub failures: Vec<RunFailure>,
}

impl Experiment {
    pub fn result_set(&self) -> ResultSet {
        ResultSet::from_records(&self.records)
    }
}

/// 64-bit FNV-1a.
fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Seed of one run, from the master seed and the cell coordinates only, so
/// adding or removing cells leaves the other seeds untouched.
pub fn derive_seed(master: u64, algorithm: &str, problem: &str, dim: usize, run: u64) -> u64 {
    let mut h = mix64(master);
    for part in [fnv1a(algorithm), fnv1a(problem), dim as u64, run] {
        h = mix64(h ^ part);
    }
    h
}

struct Task<'a> {
    algorithm: &'a ResolvedAlgorithm,
    problem: &'a ProblemSpec,
    run: u64,
}

/// Runs the grid with the builtin catalog.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Experiment> {
    run_experiment_with(config, &config.catalog())
}

/// Runs every (algorithm, case, run) cell. Results come back in grid order
/// whatever the thread count.
pub fn run_experiment_with(config: &ExperimentConfig, catalog: &Catalog) -> Result<Experiment> {
    config.validate_with(catalog)?;
    let algorithms = config.resolve_algorithms()?;
    let problems: Vec<ProblemSpec> = config
        .resolve_cases(catalog)?
        .iter()
        .map(|CaseSpec { problem, dim }| catalog.lookup(problem, *dim))
        .collect::<Result<_>>()?;
    let exec = &config.execution;
    let checkpoints = exec.checkpoint_list();

    let mut tasks = Vec::new();
    for algorithm in &algorithms {
        for problem in &problems {
            for run in 0..exec.runs as u64 {
                tasks.push(Task {
                    algorithm,
                    problem,
                    run,
                });
            }
        }
    }

    let execute = |task: &Task<'_>| -> Result<RunRecord, RunFailure> {
        let label = task.algorithm.label();
        let seed = derive_seed(
            exec.seed,
            label,
            &task.problem.name,
            task.problem.dim(),
            task.run,
        );
        let start = Instant::now();
        let mut record = run_optimizer(
            task.algorithm.optimizer().as_ref(),
            task.problem,
            task.run,
            seed,
        )?;
        record.set_checkpoints(&checkpoints, task.problem.f_true);
        if exec.timing {
            record.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
        Ok(record)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(exec.parallel)
        .build()
        .map_err(|e| Error::Format(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<Result<RunRecord, RunFailure>> =
        pool.install(|| tasks.par_iter().map(execute).collect());

    let mut records = Vec::with_capacity(outcomes.len());
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => records.push(r),
            Err(f) => failures.push(f),
        }
    }
    Ok(Experiment {
        config: config.clone(),
        records,
        failures,
    })
}
