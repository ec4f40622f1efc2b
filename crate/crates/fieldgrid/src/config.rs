//! Run configuration: a single TOML document, read from a path or standard
//! input, validated into a [`RunConfig`].
//!
//! Beam inputs are accepted either dimensionless (`beta`, `epsilon`) or
//! physical (`mass`, `waist`, `velocity` plus `hbar` and `c` unit
//! declarations); physical inputs are converted at ingestion so everything
//! downstream works in natural units.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Deserialize;

use hgbeam::kgmodes::Convention;
use hgbeam::kinematics::{BeamSpec, ModeIndex};

/// Error carrying the machine-readable kind printed on standard error.
#[derive(Debug)]
pub struct ConfigError {
    pub message: String,
}

impl ConfigError {
    pub fn new(message: impl Into<String>) -> Self {
        ConfigError {
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for ConfigError {}

impl From<hgbeam::Error> for ConfigError {
    fn from(e: hgbeam::Error) -> Self {
        ConfigError::new(e.to_string())
    }
}

/// Grid coordinate names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coordinate {
    Xi1,
    Xi2,
    Xi3,
    Tau,
    S,
}

impl Coordinate {
    pub fn name(self) -> &'static str {
        match self {
            Coordinate::Xi1 => "xi1",
            Coordinate::Xi2 => "xi2",
            Coordinate::Xi3 => "xi3",
            Coordinate::Tau => "tau",
            Coordinate::S => "s",
        }
    }
}

impl FromStr for Coordinate {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xi1" => Ok(Coordinate::Xi1),
            "xi2" => Ok(Coordinate::Xi2),
            "xi3" => Ok(Coordinate::Xi3),
            "tau" => Ok(Coordinate::Tau),
            "s" => Ok(Coordinate::S),
            other => Err(ConfigError::new(format!(
                "unknown grid coordinate '{other}' (expected xi1, xi2, xi3, tau or s)"
            ))),
        }
    }
}

/// One swept axis.
#[derive(Debug, Clone, Copy)]
pub struct AxisRange {
    pub coord: Coordinate,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

/// Validated sampling grid: up to three swept axes plus fixed values for
/// the remaining coordinates.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub axes: Vec<AxisRange>,
    pub fixed: Vec<(Coordinate, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::new(format!(
                "unknown output format '{other}' (expected csv or json)"
            ))),
        }
    }
}

/// Fully validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub beam: BeamSpec,
    pub mode: ModeIndex,
    pub convention: Convention,
    pub grid: Option<GridSpec>,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub seed: u64,
}

// --------------------------------------------------------------------------
// raw TOML shape

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<u64>,
    beam: RawBeam,
    grid: Option<RawGrid>,
    output: Option<RawOutput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBeam {
    beta: Option<f64>,
    epsilon: Option<f64>,
    physical: Option<RawPhysical>,
    mode: [u32; 2],
    convention: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhysical {
    mass: f64,
    waist: f64,
    velocity: f64,
    hbar: f64,
    c: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    axes: Vec<String>,
    range: BTreeMap<String, RawRange>,
    fixed: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRange {
    min: f64,
    max: f64,
    count: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: Option<String>,
    format: Option<String>,
}

// --------------------------------------------------------------------------

/// Read a config document from a path, or from standard input when the
/// path is `-`.
pub fn load(path: &str) -> Result<RunConfig, ConfigError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| ConfigError::new(format!("cannot read configuration from stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new(format!("cannot read configuration '{path}': {e}")))?
    };
    parse(&text)
}

/// Parse and validate a config document.
pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig =
        toml::from_str(text).map_err(|e| ConfigError::new(format!("configuration parse error: {e}")))?;

    let mode = ModeIndex::new(raw.beam.mode[0], raw.beam.mode[1])?;

    let beam = match (raw.beam.beta, raw.beam.epsilon, &raw.beam.physical) {
        (Some(beta), Some(epsilon), None) => BeamSpec::new(beta, epsilon, mode)?,
        (None, None, Some(p)) => {
            BeamSpec::from_physical(p.mass, p.waist, p.velocity, p.hbar, p.c, mode)?
        }
        _ => {
            return Err(ConfigError::new(
                "beam requires either both 'beta' and 'epsilon', or a [beam.physical] section, \
                 but not both",
            ))
        }
    };

    let convention = match raw.beam.convention.as_deref() {
        None | Some("canonical") => Convention::Canonical,
        Some("as_printed") => Convention::AsPrinted,
        Some(other) => {
            return Err(ConfigError::new(format!(
                "unknown convention '{other}' (expected canonical or as_printed)"
            )))
        }
    };

    let grid = raw.grid.map(validate_grid).transpose()?;

    let (output_path, format) = match &raw.output {
        Some(out) => {
            let format = match out.format.as_deref() {
                None => OutputFormat::Csv,
                Some(f) => f.parse()?,
            };
            (out.path.as_ref().map(PathBuf::from), format)
        }
        None => (None, OutputFormat::Csv),
    };

    Ok(RunConfig {
        beam,
        mode,
        convention,
        grid,
        output_path,
        format,
        seed: raw.seed.unwrap_or(0),
    })
}

fn validate_grid(raw: RawGrid) -> Result<GridSpec, ConfigError> {
    if raw.axes.is_empty() {
        return Err(ConfigError::new("grid.axes must name at least one axis"));
    }
    if raw.axes.len() > 3 {
        return Err(ConfigError::new(format!(
            "at most 3 swept axes are supported, got {}",
            raw.axes.len()
        )));
    }
    let mut axes = Vec::new();
    for name in &raw.axes {
        let coord: Coordinate = name.parse()?;
        if axes.iter().any(|a: &AxisRange| a.coord == coord) {
            return Err(ConfigError::new(format!("axis '{name}' listed twice")));
        }
        let range = raw.range.get(name).ok_or_else(|| {
            ConfigError::new(format!("axis '{name}' has no [grid.range.{name}] entry"))
        })?;
        if range.count < 2 {
            return Err(ConfigError::new(format!(
                "axis '{name}': count must be >= 2, got {}",
                range.count
            )));
        }
        if !(range.min.is_finite() && range.max.is_finite() && range.min < range.max) {
            return Err(ConfigError::new(format!(
                "axis '{name}': need finite min < max, got [{}, {}]",
                range.min, range.max
            )));
        }
        axes.push(AxisRange {
            coord,
            min: range.min,
            max: range.max,
            count: range.count,
        });
    }
    for name in raw.range.keys() {
        if !raw.axes.iter().any(|a| a == name) {
            return Err(ConfigError::new(format!(
                "[grid.range.{name}] does not correspond to any listed axis"
            )));
        }
    }

    let mut fixed = Vec::new();
    if let Some(map) = &raw.fixed {
        for (name, value) in map {
            let coord: Coordinate = name.parse()?;
            if axes.iter().any(|a| a.coord == coord) {
                return Err(ConfigError::new(format!(
                    "coordinate '{name}' is both swept and fixed"
                )));
            }
            if !value.is_finite() {
                return Err(ConfigError::new(format!(
                    "fixed coordinate '{name}' must be finite, got {value}"
                )));
            }
            fixed.push((coord, *value));
        }
    }

    // `s` stands in for the light-cone combination xi3 + c tau; mixing it
    // with explicit xi3 or tau values would be ambiguous.
    let uses = |c: Coordinate| {
        axes.iter().any(|a| a.coord == c) || fixed.iter().any(|(f, _)| *f == c)
    };
    if uses(Coordinate::S) && (uses(Coordinate::Xi3) || uses(Coordinate::Tau)) {
        return Err(ConfigError::new(
            "coordinate 's' cannot be combined with 'xi3' or 'tau'",
        ));
    }

    Ok(GridSpec { axes, fixed })
}
