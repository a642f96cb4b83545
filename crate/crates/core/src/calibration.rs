//! Calibrated reference parameters and the measurement protocol used to
//! characterize them.

use std::sync::OnceLock;

use crate::array::{calibrate_power_model, ArrayConfig, Calibration, GateLeakLaw, ModelShape, Tech, TechParams};
use crate::cell::Cell;
use crate::config::{self, CyclingSection, DeviceFile, DriftSection, TechFile};
use crate::device::{ramp, Device, SweepTrace, WindowMetrics};
use crate::error::{ArrayError, DeviceError};

/// Calibrated device, cell and drift parameters.
pub const DEVICE_TOML: &str = include_str!("../data/device.toml");
/// Array technology parameters fitted to [`POWER_ENDPOINTS`].
pub const TECH_TOML: &str = include_str!("../data/tech.toml");

/// Top of the characterization sweep (V).
pub const V_HIGH: f64 = 4.0;
/// Bottom of the unipolar sweep (V).
pub const V_LOW_UNIPOLAR: f64 = 0.0;
/// Bottom of the bipolar sweep (V).
pub const V_LOW_BIPOLAR: f64 = -2.0;
/// Sweep step (V).
pub const SWEEP_STEP: f64 = 5e-3;
/// Threshold current criterion per channel width (A/m), i.e. 1e-3 uA/um.
pub const I_CRIT_PER_WIDTH: f64 = 1e-3;
/// Read drain bias (V).
pub const V_DS: f64 = 0.1;
/// Nominal hold voltage (V).
pub const V_M: f64 = 1.5;
/// Nominal area ratio.
pub const AR: f64 = 16.0;
/// Minimum readable ON/OFF ratio.
pub const RATIO_MIN: f64 = 10.0;

/// Retention power `(n_bits, W)` at 1 Kb and 256 Kb per technology.
pub const POWER_ENDPOINTS: [(Tech, [(usize, f64); 2]); 3] = [
    (Tech::Sram6T, [(1024, 48.1e-6), (262_144, 12.3e-3)]),
    (Tech::Edram2T, [(1024, 2.8e-6), (262_144, 11.5e-3)]),
    (Tech::Af2T1, [(1024, 11.5e-9), (262_144, 11.8e-6)]),
];
/// Refresh settings held fixed while fitting the eDRAM power model:
/// energy per row refresh (J), cell retention (s), row refresh time (s).
pub const EDRAM_REFRESH: (f64, f64, f64) = (1e-12, 1e-3, 5e-9);
/// Quoted 1 Kb SRAM to 2T1AF power ratio.
pub const CLAIMED_RATIO_1KB: f64 = 4178.0;
/// Quoted 256 Kb eDRAM to 2T1AF power ratio.
pub const CLAIMED_RATIO_256KB: f64 = 7805.0;
/// Hold-bias leakage anchors `(v_m, W)` of a 32x32 2T1AF array.
pub const LEAK_ANCHORS: [(f64, f64); 2] = [(1.0, 5e-12), (2.0, 20e-12)];

pub fn device_file() -> &'static DeviceFile {
    static FILE: OnceLock<DeviceFile> = OnceLock::new();
    FILE.get_or_init(|| config::parse(DEVICE_TOML, "device.toml").expect("bundled device file parses"))
}

/// Calibrated AFeFET at the nominal area ratio.
pub fn device() -> Device {
    device_file().device().expect("bundled device is valid")
}

/// Calibrated 2T1AF cell.
pub fn cell() -> Cell {
    device_file().cell("device.toml").expect("bundled cell is valid")
}

pub fn drift() -> DriftSection {
    device_file().drift.expect("bundled device file has drift models")
}

pub fn cycling() -> CyclingSection {
    device_file().cycling.expect("bundled device file has cycling models")
}

pub fn tech() -> Vec<TechParams> {
    config::parse::<TechFile>(TECH_TOML, "tech.toml").expect("bundled tech file parses").tech
}

/// Fits each technology's power model to [`POWER_ENDPOINTS`]: linear for
/// SRAM, linear plus parasitic for the others, with the eDRAM refresh
/// settings of [`EDRAM_REFRESH`].
pub fn fit_tech() -> Result<Vec<Calibration>, ArrayError> {
    POWER_ENDPOINTS
        .iter()
        .map(|&(tech, ends)| {
            let (e_refresh_row, t_retention_cell, t_refresh_row) = match tech {
                Tech::Edram2T => EDRAM_REFRESH,
                _ => (0.0, 0.0, 0.0),
            };
            let base = TechParams {
                tech,
                p_cell: 0.0,
                c_parasitic: 0.0,
                e_refresh_row,
                t_retention_cell,
                t_refresh_row,
            };
            let shape = match tech {
                Tech::Sram6T => ModelShape::Linear,
                _ => ModelShape::LinearSuperlinear,
            };
            calibrate_power_model(&base, &ends, shape)
        })
        .collect()
}

/// Gate-leakage law fitted to [`LEAK_ANCHORS`].
pub fn leak_law() -> GateLeakLaw {
    let arr = ArrayConfig::new(32, 32).expect("valid shape");
    GateLeakLaw::calibrate(arr.n_bits(), LEAK_ANCHORS[0], LEAK_ANCHORS[1]).expect("anchors are valid")
}

/// Characterization loop `V_HIGH -> v_low -> V_HIGH`, starting from a film
/// first brought to `V_HIGH`.
pub fn characterize(device: &Device, v_low: f64, step: f64) -> Result<SweepTrace, DeviceError> {
    let (_, top) = device.solve_stack(&device.fresh_state(), V_HIGH)?;
    let mut w = vec![V_HIGH];
    w.extend(ramp(V_HIGH, v_low, step));
    w.extend(ramp(v_low, V_HIGH, step));
    Ok(device.sweep_currents(&top, &w, V_DS)?.0)
}

/// Window metrics of the characterization loop read at `v_m`.
pub fn window(device: &Device, v_low: f64, v_m: f64) -> Result<WindowMetrics, DeviceError> {
    let trace = characterize(device, v_low, SWEEP_STEP)?;
    crate::device::extract_window_metrics(&trace, v_m, I_CRIT_PER_WIDTH)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tech_matches_endpoint_fit() {
        let fitted = fit_tech().unwrap();
        let bundled = tech();
        assert_eq!(fitted.len(), bundled.len());
        for (f, b) in fitted.iter().zip(&bundled) {
            assert_eq!(f.params.tech, b.tech);
            for (x, y) in [(f.params.p_cell, b.p_cell), (f.params.c_parasitic, b.c_parasitic)] {
                assert!((x - y).abs() <= 1e-6 * x.abs().max(1e-30), "{:?}: {x} vs {y}", b.tech);
            }
            assert_eq!(f.params.e_refresh_row, b.e_refresh_row);
        }
    }

    #[test]
    fn bundled_device_loads() {
        let d = device();
        assert_eq!(d.stack().ar, AR);
        let c = cell();
        assert!(c.margin_ok());
    }

    #[test]
    fn leak_law_hits_anchors() {
        let law = leak_law();
        let arr = ArrayConfig::new(32, 32).unwrap();
        for (v, p) in LEAK_ANCHORS {
            let got = crate::array::vm_leakage(&arr, v, &law);
            assert!((got - p).abs() < 1e-9 * p);
        }
    }
}
