//! Array-level retention power, refresh occupancy and hold-bias leakage for
//! SRAM, gain-cell eDRAM and 2T1AF arrays.

use serde::{Deserialize, Serialize};

use crate::error::ArrayError;

/// Exponent of the parasitic term in the retention power model.
pub const PARASITIC_EXPONENT: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tech {
    #[serde(rename = "sram6t")]
    Sram6T,
    #[serde(rename = "edram2t")]
    Edram2T,
    #[serde(rename = "af2t1")]
    Af2T1,
}

impl Tech {
    pub fn label(&self) -> &'static str {
        match self {
            Tech::Sram6T => "6T SRAM",
            Tech::Edram2T => "2T eDRAM",
            Tech::Af2T1 => "2T1AF",
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            Tech::Sram6T => "sram6t",
            Tech::Edram2T => "edram2t",
            Tech::Af2T1 => "af2t1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayConfig {
    pub rows: usize,
    pub cols: usize,
}

impl ArrayConfig {
    pub fn new(rows: usize, cols: usize) -> Result<Self, ArrayError> {
        if rows == 0 || cols == 0 {
            return Err(ArrayError::InvalidParams(format!("array shape {rows}x{cols} must be at least 1x1")));
        }
        Ok(Self { rows, cols })
    }

    /// Square (or 2:1 when `n_bits` is an odd power of two) array holding
    /// `n_bits` cells.
    pub fn with_bits(n_bits: usize) -> Result<Self, ArrayError> {
        if n_bits == 0 {
            return Err(ArrayError::InvalidParams("n_bits must be positive".into()));
        }
        let mut rows = (n_bits as f64).sqrt().floor() as usize;
        while !n_bits.is_multiple_of(rows) {
            rows -= 1;
        }
        Self::new(rows, n_bits / rows)
    }

    pub fn n_bits(&self) -> usize {
        self.rows * self.cols
    }
}

/// Per-technology array cost model. Refresh fields are zero except for eDRAM.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechParams {
    pub tech: Tech,
    /// Static leakage per cell (W).
    pub p_cell: f64,
    /// Parasitic coefficient (W per bit^1.5).
    pub c_parasitic: f64,
    /// Energy per row refresh (J).
    #[serde(default)]
    pub e_refresh_row: f64,
    /// Cell retention period between refreshes (s).
    #[serde(default)]
    pub t_retention_cell: f64,
    /// Time a row refresh occupies the array (s).
    #[serde(default)]
    pub t_refresh_row: f64,
}

impl TechParams {
    pub fn validate(&self) -> Result<(), ArrayError> {
        let fields = [
            ("p_cell", self.p_cell),
            ("c_parasitic", self.c_parasitic),
            ("e_refresh_row", self.e_refresh_row),
            ("t_retention_cell", self.t_retention_cell),
            ("t_refresh_row", self.t_refresh_row),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v >= 0.0) {
                return Err(ArrayError::InvalidParams(format!("{name} = {v} must be finite and non-negative")));
            }
        }
        let refresh = self.e_refresh_row > 0.0 || self.t_refresh_row > 0.0 || self.t_retention_cell > 0.0;
        match self.tech {
            Tech::Edram2T => {
                if refresh && self.t_retention_cell <= 0.0 {
                    return Err(ArrayError::InvalidParams("eDRAM refresh needs t_retention_cell > 0".into()));
                }
            }
            _ if refresh => {
                return Err(ArrayError::InvalidParams(format!("{} has no refresh; refresh fields must be 0", self.tech.label())));
            }
            _ => {}
        }
        Ok(())
    }

    fn refresh_rate(&self) -> f64 {
        if self.tech == Tech::Edram2T && self.t_retention_cell > 0.0 {
            1.0 / self.t_retention_cell
        } else {
            0.0
        }
    }
}

/// Static plus parasitic plus refresh power of an array in retention (W).
pub fn retention_power(tech: &TechParams, arr: &ArrayConfig) -> f64 {
    let n = arr.n_bits() as f64;
    tech.p_cell * n + tech.c_parasitic * n.powf(PARASITIC_EXPONENT) + arr.rows as f64 * tech.e_refresh_row * tech.refresh_rate()
}

/// Fraction of time the array is busy refreshing; exactly 0 for SRAM and 2T1AF.
pub fn inaccessible_fraction(tech: &TechParams, arr: &ArrayConfig) -> f64 {
    match tech.tech {
        Tech::Edram2T => arr.rows as f64 * tech.t_refresh_row * tech.refresh_rate(),
        Tech::Sram6T | Tech::Af2T1 => 0.0,
    }
}

/// Lumped gate leakage `i(v) = i0 * exp(v / v_slope)` of one held cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateLeakLaw {
    /// Prefactor (A).
    pub i0: f64,
    /// Voltage per e-fold (V).
    pub v_slope: f64,
}

impl GateLeakLaw {
    /// Fits the law to two `(v_m, array power)` anchors of an `n_bits` array.
    pub fn calibrate(n_bits: usize, a: (f64, f64), b: (f64, f64)) -> Result<Self, ArrayError> {
        let ok = |(v, p): (f64, f64)| v > 0.0 && p > 0.0;
        if n_bits == 0 || !ok(a) || !ok(b) {
            return Err(ArrayError::InvalidParams("leakage anchors need positive v_m and power".into()));
        }
        if a.0 == b.0 {
            return Err(ArrayError::Singular);
        }
        let n = n_bits as f64;
        let ia = (a.1 / (n * a.0)).ln();
        let ib = (b.1 / (n * b.0)).ln();
        let v_slope = (b.0 - a.0) / (ib - ia);
        let i0 = (ia - a.0 / v_slope).exp();
        Ok(Self { i0, v_slope })
    }

    pub fn current(&self, v: f64) -> f64 {
        self.i0 * (v / self.v_slope).exp()
    }
}

/// Gate-leakage power of an array held at `v_m` (W).
pub fn vm_leakage(arr: &ArrayConfig, v_m: f64, law: &GateLeakLaw) -> f64 {
    arr.n_bits() as f64 * law.current(v_m) * v_m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelShape {
    /// `p_cell * n`
    Linear,
    /// `p_cell * n + c_parasitic * n^1.5`
    LinearSuperlinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub params: TechParams,
    /// Largest relative error over the supplied endpoints.
    pub max_rel_residual: f64,
}

/// Fits `p_cell` (and `c_parasitic`) to `(n_bits, watts)` endpoints by
/// non-negative least squares on relative error; exact when the system is
/// square and its solution is non-negative. Any refresh fields of `base` are
/// held fixed and their contribution removed before fitting.
pub fn calibrate_power_model(base: &TechParams, endpoints: &[(usize, f64)], shape: ModelShape) -> Result<Calibration, ArrayError> {
    let k = match shape {
        ModelShape::Linear => 1,
        ModelShape::LinearSuperlinear => 2,
    };
    if endpoints.len() < k {
        return Err(ArrayError::TooFewEndpoints { need: k, got: endpoints.len() });
    }
    let mut bits: Vec<usize> = endpoints.iter().map(|e| e.0).collect();
    bits.sort_unstable();
    bits.dedup();
    if bits.len() != endpoints.len() || bits[0] == 0 {
        return Err(ArrayError::Singular);
    }
    if endpoints.iter().any(|e| !(e.1.is_finite() && e.1 > 0.0)) {
        return Err(ArrayError::InvalidParams("endpoint powers must be positive".into()));
    }
    let fixed = TechParams {
        p_cell: 0.0,
        c_parasitic: 0.0,
        ..*base
    };

    // Row-scaled system A x = b (relative error), columns normalized to unit
    // length before forming the normal equations.
    let mut rows = Vec::with_capacity(endpoints.len());
    for &(n, w) in endpoints {
        let arr = ArrayConfig::with_bits(n)?;
        let nf = n as f64;
        let rhs = (w - retention_power(&fixed, &arr)) / w;
        rows.push(([nf / w, nf.powf(PARASITIC_EXPONENT) / w], rhs));
    }
    let mut scale = [0.0; 2];
    for (row, _) in &rows {
        for j in 0..2 {
            scale[j] += row[j] * row[j];
        }
    }
    let scale = scale.map(f64::sqrt);
    let mut ata = [[0.0; 2]; 2];
    let mut atb = [0.0; 2];
    for (row, rhs) in &rows {
        let r = [row[0] / scale[0], row[1] / scale[1]];
        for i in 0..k {
            atb[i] += r[i] * rhs;
            for j in 0..k {
                ata[i][j] += r[i] * r[j];
            }
        }
    }
    let y = if k == 1 {
        [atb[0] / ata[0][0], 0.0]
    } else {
        let det = ata[0][0] * ata[1][1] - ata[0][1] * ata[1][0];
        if det.abs() <= 1e-12 {
            return Err(ArrayError::Singular);
        }
        let y = [
            (atb[0] * ata[1][1] - atb[1] * ata[0][1]) / det,
            (ata[0][0] * atb[1] - ata[1][0] * atb[0]) / det,
        ];
        // Non-negative least squares: drop a negative term and refit the other.
        if y[0] < 0.0 {
            [0.0, (atb[1] / ata[1][1]).max(0.0)]
        } else if y[1] < 0.0 {
            [(atb[0] / ata[0][0]).max(0.0), 0.0]
        } else {
            y
        }
    };
    let coef = [y[0] / scale[0], y[1] / scale[1]];
    let params = TechParams {
        p_cell: coef[0],
        c_parasitic: coef[1],
        ..*base
    };
    let mut max_rel_residual: f64 = 0.0;
    for &(n, w) in endpoints {
        let p = retention_power(&params, &ArrayConfig::with_bits(n)?);
        max_rel_residual = max_rel_residual.max(((p - w) / w).abs());
    }
    Ok(Calibration { params, max_rel_residual })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerRow {
    pub n_bits: usize,
    pub rows: usize,
    pub cols: usize,
    pub tech: Tech,
    /// Retention power (W).
    pub power: f64,
    pub inaccessible_fraction: f64,
    /// This technology's power divided by the 2T1AF power at the same size.
    pub ratio_vs_af2t1: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerReport {
    pub rows: Vec<PowerRow>,
}

impl PowerReport {
    pub fn find(&self, n_bits: usize, tech: Tech) -> Option<&PowerRow> {
        self.rows.iter().find(|r| r.n_bits == n_bits && r.tech == tech)
    }
}

/// Power and refresh occupancy for every (size, technology) pair, ordered by
/// size then by the order of `techs`.
pub fn compare(configs: &[ArrayConfig], techs: &[TechParams]) -> PowerReport {
    let af = techs.iter().find(|t| t.tech == Tech::Af2T1);
    let mut rows = Vec::with_capacity(configs.len() * techs.len());
    for arr in configs {
        let base = af.map(|t| retention_power(t, arr));
        for t in techs {
            let power = retention_power(t, arr);
            rows.push(PowerRow {
                n_bits: arr.n_bits(),
                rows: arr.rows,
                cols: arr.cols,
                tech: t.tech,
                power,
                inaccessible_fraction: inaccessible_fraction(t, arr),
                ratio_vs_af2t1: base.filter(|b| *b > 0.0).map(|b| power / b),
            });
        }
    }
    PowerReport { rows }
}

/// Sizes from 1 Kb to 256 Kb in powers of four.
pub fn standard_sizes() -> Vec<ArrayConfig> {
    (0..5).map(|k| ArrayConfig::with_bits(1024 << (2 * k)).expect("power of two")).collect()
}
