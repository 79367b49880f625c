//! Experiment configuration files.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::baselines::{Algorithm, Baseline, BaselineConfig, BaselineParams};
use crate::benchmarks::{engineering_ids, fixed_ids, scalable_ids, Catalog};
use crate::error::{Error, Result};
use crate::problem::{PenaltySpec, ProblemKind};
use crate::record::{Optimizer, DEFAULT_CHECKPOINTS};
use crate::vortex::{make_ablation_params, Dvo, DvoParams, ABLATION_VARIANTS};

/// Name under which the drain-vortex optimizer is configured.
pub const DVO_NAME: &str = "DVO";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    ClassicalScalable,
    ClassicalFixed,
    Engineering,
    /// The listed problems with the DVO entry expanded into every ablation
    /// variant.
    Ablation,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub kind: SuiteKind,
    /// Problem names; empty selects the whole family for the catalog
    /// suites.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
    /// Dimensions for scalable problems.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dimensions: Vec<usize>,
    /// Static penalty coefficient for constrained problems.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalty: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmConfig {
    /// `DVO` or one of the baseline names.
    pub name: String,
    /// Name used in outputs; defaults to the variant or the algorithm name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// DVO ablation variant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    /// Overrides on top of the algorithm's default parameters.
    #[serde(default, skip_serializing_if = "toml::Table::is_empty")]
    pub params: toml::Table,
}

impl AlgorithmConfig {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            label: None,
            variant: None,
            params: toml::Table::new(),
        }
    }

    pub fn label(&self) -> String {
        self.label
            .clone()
            .or_else(|| self.variant.clone())
            .unwrap_or_else(|| self.name.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExecutionConfig {
    pub runs: usize,
    pub iterations: usize,
    pub population: usize,
    /// Master seed from which every run seed is derived.
    pub seed: u64,
    /// Iterations at which best-so-far errors are recorded. When absent the
    /// standard schedule is used, truncated to the iteration budget.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<usize>>,
    /// Worker threads; 0 uses every available core.
    pub parallel: usize,
    /// Record per-run wall time. Off by default so outputs stay
    /// reproducible byte for byte.
    pub timing: bool,
}

impl Default for ExecutionConfig {
    fn default() -> Self {
        Self {
            runs: 30,
            iterations: 1000,
            population: 30,
            seed: 0,
            checkpoints: None,
            parallel: 0,
            timing: false,
        }
    }
}

impl ExecutionConfig {
    pub fn checkpoint_list(&self) -> Vec<usize> {
        match &self.checkpoints {
            Some(c) => c.clone(),
            None => DEFAULT_CHECKPOINTS
                .iter()
                .copied()
                .filter(|&c| c <= self.iterations)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub suite: SuiteConfig,
    #[serde(default)]
    pub execution: ExecutionConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub algorithms: Vec<AlgorithmConfig>,
}

/// One (problem, dimension) cell of the grid. `dim` is `None` for problems
/// of fixed size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseSpec {
    pub problem: String,
    pub dim: Option<usize>,
}

/// An algorithm entry turned into a runnable optimizer.
#[derive(Debug, Clone)]
pub enum ResolvedAlgorithm {
    Dvo {
        label: String,
        params: DvoParams,
    },
    Baseline {
        label: String,
        config: BaselineConfig,
    },
}

impl ResolvedAlgorithm {
    pub fn label(&self) -> &str {
        match self {
            Self::Dvo { label, .. } | Self::Baseline { label, .. } => label,
        }
    }

    pub fn optimizer(&self) -> Box<dyn Optimizer> {
        match self {
            Self::Dvo { label, params } => Box::new(Dvo::with_label(label.clone(), params.clone())),
            Self::Baseline { label, config } => {
                Box::new(Baseline::with_label(label.clone(), config.clone()))
            }
        }
    }
}

impl ExperimentConfig {
    /// Parses and validates configuration text against the builtin catalog.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config = Self::parse_toml(text)?;
        config.validate()?;
        Ok(config)
    }

    /// Parses configuration text without checking names against a catalog,
    /// for grids that use plugin problems.
    pub fn parse_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| line_column(text, s.start))
                .unwrap_or((0, 0));
            Error::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Format(format!("cannot serialize config: {e}")))
    }

    pub fn penalty(&self) -> PenaltySpec {
        self.suite
            .penalty
            .map(|coefficient| PenaltySpec { coefficient })
            .unwrap_or_default()
    }

    /// Catalog with this configuration's penalty.
    pub fn catalog(&self) -> Catalog {
        Catalog::builtin().with_penalty(self.penalty())
    }

    /// Same configuration with the algorithm list replaced by every ablation
    /// variant of the first DVO entry (default parameters if there is none).
    pub fn expand_ablation(&self) -> Self {
        let base = self
            .algorithms
            .iter()
            .find(|a| a.name.eq_ignore_ascii_case(DVO_NAME))
            .map(|a| a.params.clone())
            .unwrap_or_default();
        let mut out = self.clone();
        out.algorithms = ABLATION_VARIANTS
            .iter()
            .map(|v| AlgorithmConfig {
                name: DVO_NAME.to_string(),
                label: None,
                variant: Some(v.to_string()),
                params: base.clone(),
            })
            .collect();
        out.suite.kind = SuiteKind::Ablation;
        out
    }

    /// Algorithm entries actually run: ablation suites expand the DVO entry.
    fn effective_algorithms(&self) -> Vec<AlgorithmConfig> {
        let already_expanded = self.algorithms.len() == ABLATION_VARIANTS.len()
            && self.algorithms.iter().all(|a| a.variant.is_some());
        if self.suite.kind == SuiteKind::Ablation && !already_expanded {
            self.expand_ablation().algorithms
        } else {
            self.algorithms.clone()
        }
    }

    pub fn resolve_algorithms(&self) -> Result<Vec<ResolvedAlgorithm>> {
        let mut problems = Vec::new();
        let out = self.resolve_algorithms_into(&mut problems);
        if problems.is_empty() {
            Ok(out)
        } else {
            Err(Error::Config(problems))
        }
    }

    fn resolve_algorithms_into(&self, problems: &mut Vec<String>) -> Vec<ResolvedAlgorithm> {
        let exec = &self.execution;
        let mut out = Vec::new();
        let mut labels = BTreeSet::new();
        let algorithms = self.effective_algorithms();
        if algorithms.is_empty() {
            problems.push("at least one [[algorithms]] entry is required".into());
        }
        for entry in &algorithms {
            let label = entry.label();
            if !labels.insert(label.clone()) {
                problems.push(format!("duplicate algorithm label `{label}`"));
            }
            for key in ["population", "iterations"] {
                if entry.params.contains_key(key) {
                    problems.push(format!(
                        "{label}: `{key}` is set in [execution], not in algorithm params"
                    ));
                }
            }
            if entry.name.eq_ignore_ascii_case(DVO_NAME) {
                let parsed = DvoParams::deserialize(toml::Value::Table(entry.params.clone()));
                let mut params = match parsed {
                    Ok(p) => p,
                    Err(e) => {
                        problems.push(format!("{label}: {e}"));
                        continue;
                    }
                };
                params.population = exec.population;
                params.iterations = exec.iterations;
                if let Some(v) = &entry.variant {
                    match make_ablation_params(&params, v) {
                        Ok(p) => params = p,
                        Err(e) => {
                            problems.push(format!("{label}: {e}"));
                            continue;
                        }
                    }
                }
                for p in params.problems() {
                    problems.push(format!("{label}: {p}"));
                }
                out.push(ResolvedAlgorithm::Dvo { label, params });
            } else {
                if entry.variant.is_some() {
                    problems.push(format!("{label}: variants apply to {DVO_NAME} only"));
                }
                let algorithm = match entry.name.parse::<Algorithm>() {
                    Ok(a) => a,
                    Err(_) => {
                        problems.push(format!("unknown algorithm `{}`", entry.name));
                        continue;
                    }
                };
                let params = match BaselineParams::from_toml(algorithm, entry.params.clone()) {
                    Ok(p) => p,
                    Err(e) => {
                        problems.push(format!("{label}: {e}"));
                        continue;
                    }
                };
                let config = BaselineConfig {
                    population: exec.population,
                    iterations: exec.iterations,
                    params,
                };
                for p in config.problems() {
                    problems.push(format!("{label}: {p}"));
                }
                out.push(ResolvedAlgorithm::Baseline { label, config });
            }
        }
        out
    }

    /// Problem cells, with `catalog` used for name lookup.
    pub fn resolve_cases(&self, catalog: &Catalog) -> Result<Vec<CaseSpec>> {
        let mut problems = Vec::new();
        let cases = self.resolve_cases_into(catalog, &mut problems);
        if problems.is_empty() {
            Ok(cases)
        } else {
            Err(Error::Config(problems))
        }
    }

    fn resolve_cases_into(&self, catalog: &Catalog, problems: &mut Vec<String>) -> Vec<CaseSpec> {
        let suite = &self.suite;
        let family: &[&str] = match suite.kind {
            SuiteKind::ClassicalScalable => scalable_ids(),
            SuiteKind::ClassicalFixed => fixed_ids(),
            SuiteKind::Engineering => engineering_ids(),
            SuiteKind::Ablation | SuiteKind::Custom => &[],
        };
        let names: Vec<String> = if suite.problems.is_empty() {
            if family.is_empty() {
                problems.push("suite.problems must list at least one problem".into());
            }
            family.iter().map(|s| s.to_string()).collect()
        } else {
            suite.problems.clone()
        };
        let mut cases = Vec::new();
        let mut scalable_used = false;
        for name in &names {
            match catalog.kind_of(name) {
                None => problems.push(format!("unknown problem `{name}`")),
                Some(kind) => {
                    if !family.is_empty() && !family.contains(&name.as_str()) {
                        problems.push(format!(
                            "problem `{name}` does not belong to the {:?} suite",
                            suite.kind
                        ));
                    }
                    if kind == ProblemKind::Scalable {
                        scalable_used = true;
                        if suite.dimensions.is_empty() {
                            problems
                                .push(format!("scalable problem `{name}` needs suite.dimensions"));
                        }
                        for &d in &suite.dimensions {
                            cases.push(CaseSpec {
                                problem: name.clone(),
                                dim: Some(d),
                            });
                        }
                    } else {
                        cases.push(CaseSpec {
                            problem: name.clone(),
                            dim: None,
                        });
                    }
                }
            }
        }
        if scalable_used {
            if let Some(&d) = suite.dimensions.iter().find(|&&d| d < 2) {
                problems.push(format!("dimensions must be at least 2, got {d}"));
            }
        } else if !suite.dimensions.is_empty() && !names.is_empty() {
            problems.push("suite.dimensions given but no selected problem is scalable".into());
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name) {
                problems.push(format!("problem `{name}` is listed twice"));
            }
        }
        cases
    }

    /// Every problem in the configuration, not just the first.
    pub fn problems_with(&self, catalog: &Catalog) -> Vec<String> {
        let mut problems = Vec::new();
        let exec = &self.execution;
        if exec.runs < 1 {
            problems.push("execution.runs must be at least 1".into());
        }
        if exec.iterations < 2 {
            problems.push(format!(
                "execution.iterations must be at least 2, got {}",
                exec.iterations
            ));
        }
        if exec.population < 1 {
            problems.push("execution.population must be at least 1".into());
        }
        if let Some(cps) = &exec.checkpoints {
            for &c in cps {
                if c < 1 || c > exec.iterations {
                    problems.push(format!(
                        "checkpoint {c} lies outside [1, {}]",
                        exec.iterations
                    ));
                }
            }
            if cps.windows(2).any(|w| w[1] <= w[0]) {
                problems.push("checkpoints must be strictly increasing".into());
            }
        }
        if let Some(c) = self.suite.penalty {
            if !(c > 0.0 && c.is_finite()) {
                problems.push(format!("suite.penalty must be positive, got {c}"));
            }
        }
        self.resolve_algorithms_into(&mut problems);
        self.resolve_cases_into(catalog, &mut problems);
        problems
    }

    pub fn validate_with(&self, catalog: &Catalog) -> Result<()> {
        let problems = self.problems_with(catalog);
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems))
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with(&self.catalog())
    }
}

/// Reads and validates a configuration file.
pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ExperimentConfig::from_toml_str(&text)
}

/// 1-based line and column of a byte offset.
fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.len(), |i| before.len() - i - 1)
        + 1;
    (line, column)
}
