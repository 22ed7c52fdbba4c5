//! TOML experiment specs and the bundled figure specs.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

pub const BUNDLED: &[(&str, &str)] = &[
    ("fig2", include_str!("../specs/fig2.toml")),
    ("fig3", include_str!("../specs/fig3.toml")),
    ("fig4", include_str!("../specs/fig4.toml")),
    ("fig5", include_str!("../specs/fig5.toml")),
    ("fig6", include_str!("../specs/fig6.toml")),
    ("baseline-exp", include_str!("../specs/baseline-exp.toml")),
];

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Rb,
    Lrb,
    LrbShield,
    Surjectivity,
    Twirl,
    Fit,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rb => "rb",
            Self::Lrb => "lrb",
            Self::LrbShield => "lrb-shield",
            Self::Surjectivity => "surjectivity",
            Self::Twirl => "twirl",
            Self::Fit => "fit",
        })
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub experiment: Option<ExperimentKind>,
    pub name: Option<String>,
    #[serde(default)]
    pub seed: u64,
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub plot: bool,
    pub rb: Option<RbSection>,
    pub lrb: Option<LrbSection>,
    pub sweep: Option<SweepSection>,
    pub surjectivity: Option<CodeSection>,
    pub twirl: Option<TwirlSection>,
    pub fit: Option<FitSection>,
}

/// Either an explicit list or an inclusive range.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum LengthSet {
    List(Vec<usize>),
    Range {
        start: usize,
        end: usize,
        #[serde(default = "one")]
        step: usize,
    },
}

fn one() -> usize {
    1
}

impl LengthSet {
    pub fn values(&self) -> Result<Vec<usize>, CliError> {
        let v = match self {
            Self::List(v) => v.clone(),
            Self::Range { start, end, step } => {
                if *step == 0 || start > end {
                    return Err(CliError::Config(format!(
                        "empty or invalid range {start}..={end} step {step}"
                    )));
                }
                (*start..=*end).step_by(*step).collect()
            }
        };
        if v.is_empty() {
            return Err(CliError::Config("no sequence lengths given".into()));
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RbSection {
    #[serde(default = "one")]
    pub k: usize,
    pub model: String,
    pub p: Option<f64>,
    pub tau: Option<usize>,
    pub m: LengthSet,
    pub n_sequences: usize,
    /// Also write the exact twirl prediction (depolarizing, k ≤ 2).
    #[serde(default)]
    pub exact: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LrbSection {
    /// Number of Steane blocks; for a parity-check file, must match its `k`.
    pub k: Option<usize>,
    pub reset: f64,
    /// `"steane"` or a parity-check file relative to the spec.
    pub code: Option<String>,
    pub copies: Option<usize>,
    /// Derive `copies` from a target amplitude over `horizon` gates.
    pub target_amplitude: Option<f64>,
    pub horizon: Option<usize>,
    pub m: LengthSet,
    pub n_sequences: usize,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    Reset,
    K,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSection {
    #[serde(default = "steane")]
    pub code: String,
    /// Independent copies of the code.
    #[serde(default = "one")]
    pub blocks: usize,
}

fn steane() -> String {
    "steane".into()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwirlSection {
    #[serde(default = "one")]
    pub k: usize,
    /// `depolarizing`, `amplitude_damping` or `random`.
    pub channel: String,
    pub p: Option<f64>,
    pub m: Option<LengthSet>,
    #[serde(default)]
    pub witness: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSection {
    #[serde(default = "one")]
    pub components: usize,
    /// CSV with `m` and `p_hat` columns; only for `experiment = "fit"`.
    pub input: Option<PathBuf>,
}

/// A parsed spec and the directory its relative paths resolve against.
#[derive(Clone, Debug)]
pub struct LoadedSpec {
    pub spec: ExperimentSpec,
    pub base_dir: PathBuf,
    pub source: String,
}

pub fn parse(text: &str) -> Result<ExperimentSpec, CliError> {
    toml::from_str(text).map_err(|e| CliError::Config(format!("malformed spec: {e}")))
}

/// An existing file wins over a bundled name of the same spelling.
pub fn load(arg: &str) -> Result<LoadedSpec, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {arg}: {e}")))?;
        let base_dir = path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        return Ok(LoadedSpec {
            spec: parse(&text)?,
            base_dir,
            source: arg.to_string(),
        });
    }
    match BUNDLED.iter().find(|(name, _)| *name == arg) {
        Some((name, text)) => Ok(LoadedSpec {
            spec: parse(text)?,
            base_dir: PathBuf::from("."),
            source: format!("bundled:{name}"),
        }),
        None => Err(CliError::Config(format!(
            "{arg} is neither a spec file nor a bundled spec"
        ))),
    }
}
