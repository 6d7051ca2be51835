//! Normalized job description shared by every subcommand.

use std::fmt;
use std::str::FromStr;

use affweyl::rational::{format_rational, parse_rational};
use affweyl::root_system::{build_algebra, Algebra, Series, Weight};
use affweyl::ComplexRational;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable overriding the explicit-module depth cap.
pub const DEPTH_CAP_ENV: &str = "AFFWEYL_DEPTH_CAP";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Algebra,
    Symlevels,
    Decompose,
    Candidates,
    Certify,
    Crossvalidate,
    Dump,
}

impl fmt::Display for CommandName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("plain enum");
        write!(f, "{}", s.as_str().expect("string tag"))
    }
}

/// Everything a single invocation depends on. Weights are lists of
/// fundamental-weight coordinates, kept as normalized rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: CommandName,
    pub series: String,
    pub rank: usize,
    pub weights: Vec<Vec<String>>,
    pub kappa: Option<String>,
    pub n_max: Option<u64>,
    pub depth: Option<usize>,
    pub modes: Option<Vec<i64>>,
    pub format: Format,
}

impl JobConfig {
    pub fn new(command: CommandName, series: &str, rank: usize, format: Format) -> Result<Self, CliError> {
        let series = Series::from_str(series)?.to_string();
        Ok(JobConfig {
            command,
            series,
            rank,
            weights: Vec::new(),
            kappa: None,
            n_max: None,
            depth: None,
            modes: None,
            format,
        })
    }

    pub fn algebra(&self) -> Result<Algebra, CliError> {
        Ok(build_algebra(Series::from_str(&self.series)?, self.rank)?)
    }

    /// Parses and normalizes a comma-separated weight such as `1,0` or `1/2,-1`.
    pub fn push_weight(&mut self, text: &str) -> Result<(), CliError> {
        let coords = text
            .split(',')
            .map(|p| parse_rational(p.trim()).map(|r| format_rational(&r)))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != self.rank {
            return Err(CliError::Usage(format!(
                "weight '{text}' has {} coordinates, rank is {}",
                coords.len(),
                self.rank
            )));
        }
        self.weights.push(coords);
        Ok(())
    }

    pub fn set_kappa(&mut self, text: &str) -> Result<(), CliError> {
        let k: ComplexRational = text.parse()?;
        self.kappa = Some(k.to_string());
        Ok(())
    }

    pub fn weight(&self, algebra: &Algebra, i: usize) -> Result<Weight, CliError> {
        match self.weights.get(i) {
            None => Ok(Weight::zero(algebra)),
            Some(coords) => {
                let parsed = coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
                Ok(Weight::new(algebra, parsed)?)
            }
        }
    }

    pub fn kappa_value(&self) -> Result<ComplexRational, CliError> {
        let text = self.kappa.as_deref().ok_or_else(|| CliError::Usage("--kappa is required".into()))?;
        Ok(text.parse()?)
    }
}

/// The depth cap, from the environment when set.
pub fn depth_cap() -> Result<usize, CliError> {
    match std::env::var(DEPTH_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{DEPTH_CAP_ENV}='{v}' is not a non-negative integer"))),
        Err(_) => Ok(affweyl::explicit_module::DEFAULT_DEPTH_CAP),
    }
}
