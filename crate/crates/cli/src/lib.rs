//! Seeded verification suites over `ssi-core` with JSON and CSV reports.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use ssi_core::random::{self, Rng64};

mod suites;

pub const SUITES: [&str; 8] = ["supergrade", "clifford", "poincare", "spinbundle", "induce", "fock", "susy", "qstoch"];

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown suite `{0}`; run `ssi list` for the available suites")]
    UnknownSuite(String),
    #[error("malformed config: {0}")]
    Config(String),
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl CliError {
    /// 2 for usage and configuration problems.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

fn default_tolerances() -> BTreeMap<String, f64> {
    [
        ("exact", 1e-12),
        ("group", 1e-10),
        ("fiber", 1e-9),
        ("massiveAngle", 1e-5),
        ("measure", 1e-2),
        ("groundEnergy", 1e-4),
        ("pairing", 1e-6),
        ("order", 0.2),
        ("stone", 1e-8),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

fn default_cutoffs() -> BTreeMap<String, i64> {
    [("parity", 8), ("qstoch", 2), ("superFockDegree", 3), ("stone", 14)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

fn default_grid_sizes() -> BTreeMap<String, i64> {
    [
        ("samples", 100),
        ("witten", 2048),
        ("qstochMaxBins", 32),
        ("measureSamples", 200_000),
        ("cocycleCosets", 150),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

fn default_suites() -> Vec<String> {
    SUITES.iter().map(|s| s.to_string()).collect()
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// Run parameters. Missing keys take their defaults; unknown keys are errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub cutoffs: BTreeMap<String, i64>,
    #[serde(default)]
    pub grid_sizes: BTreeMap<String, i64>,
    #[serde(default = "default_suites")]
    pub suites: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tolerances: BTreeMap::new(),
            cutoffs: BTreeMap::new(),
            grid_sizes: BTreeMap::new(),
            suites: default_suites(),
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Rejects unknown map keys, non-positive sizes and unknown suite names.
    pub fn validate(&self) -> Result<(), CliError> {
        let known_t = default_tolerances();
        for (k, v) in &self.tolerances {
            if !known_t.contains_key(k) {
                return Err(CliError::Config(format!("unknown tolerance `{k}`")));
            }
            if !(v.is_finite() && *v >= 0.0) {
                return Err(CliError::Config(format!("tolerance `{k}` must be finite and nonnegative")));
            }
        }
        for (label, map, known) in [
            ("cutoff", &self.cutoffs, default_cutoffs()),
            ("grid size", &self.grid_sizes, default_grid_sizes()),
        ] {
            for (k, v) in map {
                if !known.contains_key(k) {
                    return Err(CliError::Config(format!("unknown {label} `{k}`")));
                }
                if *v <= 0 {
                    return Err(CliError::Config(format!("{label} `{k}` must be positive")));
                }
            }
        }
        for s in &self.suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(CliError::UnknownSuite(s.clone()));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances.get(name).copied().unwrap_or_else(|| default_tolerances()[name])
    }

    pub fn cutoff(&self, name: &str) -> usize {
        self.cutoffs.get(name).copied().unwrap_or_else(|| default_cutoffs()[name]) as usize
    }

    pub fn grid_size(&self, name: &str) -> usize {
        self.grid_sizes.get(name).copied().unwrap_or_else(|| default_grid_sizes()[name]) as usize
    }

    pub fn rng(&self, suite: &str) -> Rng64 {
        random::rng_for(self.seed, suite)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub details: String,
}

impl Check {
    /// Passes when `residual <= tolerance`. Non-finite residuals fail and are
    /// stored as `f64::MAX` so the report stays valid JSON.
    pub fn measured(name: impl Into<String>, residual: f64, tolerance: f64, details: impl Into<String>) -> Self {
        let mut details = details.into();
        let residual = if residual.is_finite() {
            residual
        } else {
            details = format!("{details} (non-finite residual {residual})");
            f64::MAX
        };
        Self {
            name: name.into(),
            passed: residual <= tolerance,
            residual,
            tolerance,
            details,
        }
    }

    /// A yes/no check, recorded as residual 0 or 1 against tolerance 0.
    pub fn structural(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Self::measured(name, if ok { 0.0 } else { 1.0 }, 0.0, details)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn empty(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            checks: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

fn run_single(name: &str, cfg: &SuiteConfig) -> Vec<Check> {
    let mut rng = cfg.rng(name);
    let run = match name {
        "supergrade" => suites::supergrade::run,
        "clifford" => suites::clifford::run,
        "poincare" => suites::poincare::run,
        "spinbundle" => suites::spinbundle::run,
        "induce" => suites::induce::run,
        "fock" => suites::fock::run,
        "susy" => suites::susy::run,
        "qstoch" => suites::qstoch::run,
        _ => unreachable!("suite names are validated before dispatch"),
    };
    run(cfg, &mut rng)
}

/// Runs one suite, or every suite listed in `cfg.suites` for `all`. Suites
/// run on the rayon pool and are merged in the order of [`SUITES`].
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let checks = if name == "all" {
        let selected: Vec<&str> = SUITES.iter().copied().filter(|s| cfg.suites.iter().any(|c| c == s)).collect();
        let mut per_suite: Vec<(usize, Vec<Check>)> = selected
            .par_iter()
            .map(|s| {
                let order = SUITES.iter().position(|x| x == s).expect("selected from SUITES");
                let checks = run_single(s, cfg)
                    .into_iter()
                    .map(|mut c| {
                        c.name = format!("{s}.{}", c.name);
                        c
                    })
                    .collect();
                (order, checks)
            })
            .collect();
        per_suite.sort_by_key(|(order, _)| *order);
        per_suite.into_iter().flat_map(|(_, c)| c).collect()
    } else if SUITES.contains(&name) {
        run_single(name, cfg)
    } else {
        return Err(CliError::UnknownSuite(name.to_string()));
    };
    Ok(Report {
        suite: name.to_string(),
        checks,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn to_json(report: &Report) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Serialize(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<Report, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Serialize(e.to_string()))
}

/// One row per check: `suite,name,passed,residual,tolerance,details`.
pub fn to_csv(report: &Report) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Row<'a> {
        suite: &'a str,
        name: &'a str,
        passed: bool,
        residual: f64,
        tolerance: f64,
        details: &'a str,
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    if report.checks.is_empty() {
        w.write_record(["suite", "name", "passed", "residual", "tolerance", "details"])
            .map_err(|e| CliError::Serialize(e.to_string()))?;
    }
    for c in &report.checks {
        w.serialize(Row {
            suite: &report.suite,
            name: &c.name,
            passed: c.passed,
            residual: c.residual,
            tolerance: c.tolerance,
            details: &c.details,
        })
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
    }
}

/// Writes the report to `path`, or to stdout when `path` is `None`.
pub fn emit(report: &Report, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let text = render(report, format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}
