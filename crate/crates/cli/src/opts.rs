//! Flag definitions and the config-file merge.
//!
//! Every subcommand accepts `--config PATH` pointing at a TOML document with
//! the same keys as the flags; explicit flags override file values.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use gshape::{Criterion, Space};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    /// Band-limited target class B_sigma.
    #[value(name = "B", alias = "b")]
    B,
    /// Super-Gaussian spectral class G_sigma.
    #[value(name = "G", alias = "g")]
    G,
}

impl From<SpaceArg> for Space {
    fn from(v: SpaceArg) -> Space {
        match v {
            SpaceArg::B => Space::BandLimited,
            SpaceArg::G => Space::GaussianCubic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Scattered,
    EvenlySpaced,
}

impl From<CriterionArg> for Criterion {
    fn from(v: CriterionArg) -> Criterion {
        match v {
            CriterionArg::Scattered => Criterion::Scattered,
            CriterionArg::EvenlySpaced => Criterion::EvenlySpaced,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    /// Equispaced grid filling the cube (scattered criteria).
    Grid,
    /// Evenly spaced simplex centers (evenly-spaced criteria).
    Simplex,
}

/// Flags shared by the advisor-style subcommands.
#[derive(Debug, Args)]
pub struct ProblemFlags {
    /// Space dimension (1..=64).
    #[arg(long)]
    pub n: Option<u32>,
    /// Cube side / simplex scale b0.
    #[arg(long)]
    pub b0: Option<f64>,
    /// Density parameter delta.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Space parameter sigma.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Target function class.
    #[arg(long, value_enum)]
    pub space: Option<SpaceArg>,
    /// Center-geometry criterion.
    #[arg(long, value_enum)]
    pub criterion: Option<CriterionArg>,
    /// TOML file supplying defaults for any missing flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Optional values loaded from a `--config` TOML document.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<u32>,
    pub b0: Option<f64>,
    pub delta: Option<f64>,
    pub sigma: Option<f64>,
    pub beta: Option<f64>,
    pub space: Option<String>,
    pub criterion: Option<String>,
    pub beta_min: Option<f64>,
    pub beta_max: Option<f64>,
    pub count: Option<usize>,
    pub degree: Option<u32>,
    pub layout: Option<String>,
    pub out: Option<PathBuf>,
    pub data: Option<PathBuf>,
    pub eval: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn space(&self) -> Result<Option<Space>, CliError> {
        match self.space.as_deref() {
            None => Ok(None),
            Some("B") | Some("b") => Ok(Some(Space::BandLimited)),
            Some("G") | Some("g") => Ok(Some(Space::GaussianCubic)),
            Some(other) => Err(CliError::Config(format!(
                "unknown space {other:?} in config file (expected \"B\" or \"G\")"
            ))),
        }
    }

    pub fn criterion(&self) -> Result<Option<Criterion>, CliError> {
        match self.criterion.as_deref() {
            None => Ok(None),
            Some("scattered") => Ok(Some(Criterion::Scattered)),
            Some("evenly-spaced") => Ok(Some(Criterion::EvenlySpaced)),
            Some(other) => Err(CliError::Config(format!(
                "unknown criterion {other:?} in config file (expected \"scattered\" or \"evenly-spaced\")"
            ))),
        }
    }

    pub fn layout(&self) -> Result<Option<LayoutArg>, CliError> {
        match self.layout.as_deref() {
            None => Ok(None),
            Some("grid") => Ok(Some(LayoutArg::Grid)),
            Some("simplex") => Ok(Some(LayoutArg::Simplex)),
            Some(other) => Err(CliError::Config(format!(
                "unknown layout {other:?} in config file (expected \"grid\" or \"simplex\")"
            ))),
        }
    }
}

pub fn required<T>(flag: Option<T>, file: Option<T>, name: &str) -> Result<T, CliError> {
    flag.or(file)
        .ok_or_else(|| CliError::Config(format!("missing required value: --{name}")))
}
