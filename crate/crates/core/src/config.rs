//! Parameter files: flat `key = value` lines grouped under `[section]`
//! headers (a TOML subset), loaded into the model types.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::array::TechParams;
use crate::cell::{AccessTransistor, Cell, OperatingVoltages};
use crate::device::{Device, Film, Grain, StackConfig, TransistorParams};
use crate::error::ConfigError;
use crate::lgd::LgdParams;
use crate::reliability::{CyclingModel, DriftModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriftSection {
    pub unipolar: DriftModel,
    pub bipolar: DriftModel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclingSection {
    pub unipolar: CyclingModel,
    pub bipolar: CyclingModel,
}

/// Device parameter file. `[cell]`, `[access]`, `[drift.*]` and
/// `[cycling.*]` are only needed by the cell and reliability commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceFile {
    pub lgd: LgdParams,
    pub stack: StackConfig,
    pub transistor: TransistorParams,
    #[serde(default)]
    pub grain: Vec<Grain>,
    pub cell: Option<OperatingVoltages>,
    pub access: Option<AccessTransistor>,
    pub drift: Option<DriftSection>,
    pub cycling: Option<CyclingSection>,
}

impl DeviceFile {
    pub fn device(&self) -> Result<Device, crate::error::DeviceError> {
        let film = if self.grain.is_empty() {
            Film::single_domain(self.lgd)
        } else {
            Film {
                lgd: self.lgd,
                grains: self.grain.clone(),
            }
        };
        Device::new(self.stack, self.transistor, film)
    }

    /// Builds the cell, requiring the `[cell]`, `[access]` and `[drift.*]` sections.
    pub fn cell(&self, origin: &str) -> Result<Cell, ConfigError> {
        let missing = |s: &str| ConfigError::Invalid {
            path: origin.to_string(),
            message: format!("missing [{s}] section"),
        };
        let volts = self.cell.ok_or_else(|| missing("cell"))?;
        let access = self.access.ok_or_else(|| missing("access"))?;
        let drift = self.drift.ok_or_else(|| missing("drift.unipolar] / [drift.bipolar"))?;
        let invalid = |e: &dyn std::fmt::Display| ConfigError::Invalid {
            path: origin.to_string(),
            message: e.to_string(),
        };
        let device = self.device().map_err(|e| invalid(&e))?;
        Cell::new(device, volts, access, drift.unipolar, drift.bipolar).map_err(|e| invalid(&e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilmSection {
    /// Film thickness (m).
    pub t_afe: f64,
}

/// Material-only file for polarization loops. Other sections are ignored so
/// a full device file can be passed as well; its `[stack]` thickness then
/// sets the voltage scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LgdFile {
    pub lgd: LgdParams,
    pub film: Option<FilmSection>,
    pub stack: Option<StackConfig>,
}

impl LgdFile {
    pub fn t_afe(&self) -> Option<f64> {
        self.film.map(|f| f.t_afe).or(self.stack.map(|s| s.t_afe))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechFile {
    pub tech: Vec<TechParams>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parses file contents; `origin` names the source in errors.
pub fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, ConfigError> {
    toml::from_str(text).map_err(|e| {
        let message = e.message().trim().to_string();
        let message = match e.span() {
            Some(span) => format!("line {}: {message}", line_of(text, span.start)),
            None => message,
        };
        ConfigError::Parse {
            path: origin.to_string(),
            message,
        }
    })
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, ConfigError> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: origin.clone(),
        message: e.to_string(),
    })?;
    parse(&text, &origin)
}

/// Serializes a parameter file back to the text format.
pub fn to_text<T: Serialize>(value: &T) -> String {
    toml::to_string(value).expect("parameter types serialize to tables")
}
