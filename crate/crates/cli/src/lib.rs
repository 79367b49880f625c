//! Command-line front end: run experiment grids and post-process stored
//! results.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use dvo_core::baselines::Algorithm;
use dvo_core::benchmarks::Catalog;
use dvo_core::harness::{
    emit_convergence, emit_records, emit_result_table, emit_stat_tables, load_config, load_records,
    read_summary, run_experiment, Experiment, ExperimentConfig, TableFormat, DVO_NAME,
};
use dvo_core::vortex::ABLATION_VARIANTS;
use dvo_core::ResultSet;

const DEFAULT_OUT: &str = "results";

#[derive(Debug, Parser)]
#[command(
    name = "dvo",
    version,
    about = "Drain-vortex optimizer experiment harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Execute the grid described by a configuration file.
    Run(RunArgs),
    /// Run every ablation variant of the configured DVO entry.
    Ablation(RunArgs),
    /// Per-case result table from a stored run.
    Tables(TableArgs),
    /// Friedman and pairwise Wilcoxon tables from a stored run.
    Stats(StatArgs),
    /// Checkpoint convergence data as CSV.
    Convergence(ConvergenceArgs),
    /// Print catalog contents.
    List {
        #[arg(value_enum)]
        what: ListTarget,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output.dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    parallel: Option<usize>,
    /// Master seed; overrides `execution.seed`.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    Latex,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Plain => TableFormat::Plain,
            FormatArg::Latex => TableFormat::Latex,
        }
    }
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "plain")]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct StatArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Algorithm compared against all others; defaults to DVO if present,
    /// otherwise the first algorithm.
    #[arg(long)]
    reference: Option<String>,
    #[arg(long, value_enum, default_value = "plain")]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct ConvergenceArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Restrict to these problems (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    problems: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ListTarget {
    Problems,
    Algorithms,
    Variants,
}

/// Runs the command line `argv` (program name first), writing normal output
/// to `out` and diagnostics to `err`. Returns the process exit code: 0 on
/// success, 1 on failure, 2 on usage errors.
pub fn cli_main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

/// [`cli_main_with`] on the process's standard streams.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    cli_main_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Run(args) => {
            let config = prepare(&args)?;
            run_and_emit(config, &args, out, err)
        }
        Command::Ablation(args) => {
            let config = prepare(&args)?.expand_ablation();
            run_and_emit(config, &args, out, err)
        }
        Command::Tables(args) => {
            let set = load_set(&args.input)?;
            out.write_all(emit_result_table(&set, args.format.into())?.as_bytes())?;
            Ok(0)
        }
        Command::Stats(args) => {
            let set = load_set(&args.input)?;
            let algorithms = set.algorithms();
            let reference = match args.reference {
                Some(r) => r,
                None if algorithms.iter().any(|a| a == DVO_NAME) => DVO_NAME.to_string(),
                None => algorithms
                    .first()
                    .cloned()
                    .context("no runs in the summary")?,
            };
            out.write_all(emit_stat_tables(&set, &reference, args.format.into())?.as_bytes())?;
            Ok(0)
        }
        Command::Convergence(args) => {
            let records = load_records(&args.input)?;
            let filter = (!args.problems.is_empty()).then_some(args.problems.as_slice());
            out.write_all(emit_convergence(&records, filter)?.as_bytes())?;
            Ok(0)
        }
        Command::List { what } => {
            let names: Vec<String> = match what {
                ListTarget::Problems => Catalog::builtin().names(),
                ListTarget::Algorithms => std::iter::once(DVO_NAME.to_string())
                    .chain(Algorithm::ALL.iter().map(|a| a.name().to_string()))
                    .collect(),
                ListTarget::Variants => ABLATION_VARIANTS.iter().map(|s| s.to_string()).collect(),
            };
            for n in names {
                writeln!(out, "{n}")?;
            }
            Ok(0)
        }
    }
}

fn prepare(args: &RunArgs) -> anyhow::Result<ExperimentConfig> {
    let mut config =
        load_config(&args.config).with_context(|| format!("loading {}", args.config.display()))?;
    if let Some(p) = args.parallel {
        config.execution.parallel = p;
    }
    if let Some(s) = args.seed {
        config.execution.seed = s;
    }
    if let Some(dir) = &args.out {
        config.output.dir = Some(dir.clone());
    }
    Ok(config)
}

fn run_and_emit(
    config: ExperimentConfig,
    args: &RunArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<i32> {
    let dir = args
        .out
        .clone()
        .or_else(|| config.output.dir.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    // The snapshot must not depend on where it was written or how many
    // threads produced it.
    let mut snapshot = config.clone();
    snapshot.output.dir = None;
    snapshot.execution.parallel = 0;
    let experiment = run_experiment(&config)?;
    let experiment = Experiment {
        config: snapshot,
        ..experiment
    };
    emit_records(&experiment, &dir)?;
    writeln!(
        out,
        "{} runs written to {}",
        experiment.records.len(),
        dir.display()
    )?;
    if experiment.failures.is_empty() {
        return Ok(0);
    }
    for f in &experiment.failures {
        writeln!(
            err,
            "run failed: {} on {} (D={}) run {}: {}",
            f.algorithm, f.problem, f.dim, f.run_index, f.message
        )?;
    }
    Ok(1)
}

fn load_set(dir: &Path) -> anyhow::Result<ResultSet> {
    let rows = read_summary(dir)?;
    if rows.is_empty() {
        bail!("{} holds no runs", dir.display());
    }
    Ok(ResultSet::new(rows))
}
