//! Retention drift, endurance degradation and the log-time extrapolation fits
//! used to turn short measurements into lifetime estimates.

use serde::{Deserialize, Serialize};

use crate::device::{Device, TransistorParams};
use crate::error::{DeviceError, FitError};

/// Retention fits report `exceeds_horizon` past this time (s).
pub const RETENTION_HORIZON: f64 = 1e10;
/// Endurance fits report `exceeds_horizon` past this cycle count.
pub const ENDURANCE_HORIZON: f64 = 1e16;

/// Log-time threshold drift of the two stored states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftModel {
    /// Programmed-state `V_TH` rise per decade of hold time (V/decade).
    pub rate_p: f64,
    /// Erased-state `V_TH` fall per decade of hold time (V/decade).
    pub rate_e: f64,
    /// Reference time of the log-time law (s).
    pub t0: f64,
    /// Collapse time constant when the hold bias is removed (s).
    pub fast_depol_tau: f64,
}

impl DriftModel {
    pub fn validate(&self) -> Result<(), DeviceError> {
        if !(self.t0 > 0.0 && self.fast_depol_tau > 0.0) {
            return Err(DeviceError::InvalidParams("drift t0 and fast_depol_tau must be positive".into()));
        }
        if !(self.rate_p >= 0.0 && self.rate_e >= 0.0) {
            return Err(DeviceError::InvalidParams("drift rates must be non-negative".into()));
        }
        Ok(())
    }

    /// Decades of drift accumulated after `t` seconds.
    pub fn decades(&self, t: f64) -> f64 {
        (1.0 + t.max(0.0) / self.t0).log10()
    }

    /// `(programmed, erased)` threshold shifts after `t` seconds of hold (V).
    /// The programmed threshold rises and the erased one falls.
    pub fn vth_shift(&self, t: f64) -> (f64, f64) {
        let l = self.decades(t);
        (self.rate_p * l, -self.rate_e * l)
    }
}

/// Internal-node voltage at which the transistor carries `i_d`. Currents at
/// or below the leakage floor map to a point deep in subthreshold.
pub fn v_int_for_current(trans: &TransistorParams, i_d: f64, v_ds: f64) -> f64 {
    let (mut lo, mut hi) = (trans.v_t0 - 5.0, trans.v_t0 + 50.0);
    if trans.drain_current(lo, v_ds) >= i_d {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if trans.drain_current(mid, v_ds) < i_d {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Currents of the two states after `t` seconds.
///
/// Held: each state's threshold shifts by its log-time drift and the current
/// is re-evaluated through the transistor at the shifted internal node.
/// Unheld: the programmed current relaxes in log scale toward the erased
/// (depolarized) current with time constant `fast_depol_tau`.
pub fn drift_sample(model: &DriftModel, state0: (f64, f64), device: &Device, t: f64, held: bool, v_ds: f64) -> (f64, f64) {
    let (i_on, i_off) = state0;
    if t <= 0.0 {
        return state0;
    }
    if held {
        let trans = device.transistor();
        let (dp, de) = model.vth_shift(t);
        let on = trans.drain_current(v_int_for_current(trans, i_on, v_ds) - dp, v_ds);
        let off = trans.drain_current(v_int_for_current(trans, i_off, v_ds) - de, v_ds);
        (on, off)
    } else {
        let k = (-t / model.fast_depol_tau).exp();
        let on = (i_off.ln() + (i_on.ln() - i_off.ln()) * k).exp();
        (on, i_off)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl LineFit {
    pub fn at(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Ordinary least squares `y = intercept + slope * x`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit, FitError> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return Err(FitError::TooFewSamples { need: 2, got: n.min(ys.len()) });
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FitError::Degenerate);
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    Ok(LineFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Log-domain fit with its extrapolated failure point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// Slope per decade of the abscissa.
    pub slope: f64,
    /// Fitted value at an abscissa of 1 (log10 = 0).
    pub intercept: f64,
    pub r_squared: f64,
    /// Abscissa (s or cycles) where the fitted line reaches the failure
    /// criterion; `None` when it never does. Zero means the criterion is
    /// already violated at the start and the line is not heading back.
    pub crossing: Option<f64>,
    /// `true` when `crossing` is absent or beyond the horizon.
    pub exceeds_horizon: bool,
}

fn crossing_result(line: LineFit, threshold: f64, horizon: f64) -> FitResult {
    let crossing = if line.slope < 0.0 {
        Some(10f64.powf((threshold - line.intercept) / line.slope))
    } else if line.intercept < threshold {
        Some(0.0)
    } else {
        None
    };
    FitResult {
        slope: line.slope,
        intercept: line.intercept,
        r_squared: line.r_squared,
        crossing,
        exceeds_horizon: crossing.is_none_or(|c| c > horizon),
    }
}

fn log_axis(xs: impl Iterator<Item = f64>, min_len: usize) -> Result<Vec<f64>, FitError> {
    let xs: Vec<f64> = xs.collect();
    if xs.len() < min_len {
        return Err(FitError::TooFewSamples { need: min_len, got: xs.len() });
    }
    if xs.iter().any(|&x| !(x > 0.0)) || xs.windows(2).any(|w| w[1] <= w[0]) {
        if xs.windows(2).all(|w| w[1] == w[0]) {
            return Err(FitError::Degenerate);
        }
        return Err(FitError::NotIncreasing);
    }
    Ok(xs.into_iter().map(f64::log10).collect())
}

/// Fits `log10(i)` against `log10(t)` for each state and extrapolates the
/// time at which the fitted ON/OFF ratio falls to `ratio_min`. The reported
/// slope and intercept are those of `log10(ratio)`; `r_squared` is the worse
/// of the two state fits.
pub fn fit_retention(samples_on: &[(f64, f64)], samples_off: &[(f64, f64)], ratio_min: f64) -> Result<FitResult, FitError> {
    let fit_state = |s: &[(f64, f64)]| -> Result<LineFit, FitError> {
        let xs = log_axis(s.iter().map(|p| p.0), 3)?;
        if s.iter().any(|p| !(p.1 > 0.0)) {
            return Err(FitError::NotIncreasing);
        }
        let ys: Vec<f64> = s.iter().map(|p| p.1.log10()).collect();
        fit_line(&xs, &ys)
    };
    let on = fit_state(samples_on)?;
    let off = fit_state(samples_off)?;
    let ratio = LineFit {
        slope: on.slope - off.slope,
        intercept: on.intercept - off.intercept,
        r_squared: on.r_squared.min(off.r_squared),
    };
    Ok(crossing_result(ratio, ratio_min.log10(), RETENTION_HORIZON))
}

/// Fits `mw` against `log10(n)` and extrapolates the cycle count at which the
/// window falls to `mw0 / 2`.
pub fn fit_endurance(points: &[(f64, f64)], mw0: f64) -> Result<FitResult, FitError> {
    let xs = log_axis(points.iter().map(|p| p.0), 3)?;
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let line = fit_line(&xs, &ys)?;
    Ok(crossing_result(line, 0.5 * mw0, ENDURANCE_HORIZON))
}

/// Cycling degradation: a parallel threshold shift of both states plus a
/// smaller loss of switchable polarization, both linear in `log10(1 + n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CyclingModel {
    /// Stress pulse amplitude (V).
    pub amplitude: f64,
    /// Stress pulse width (s).
    pub width: f64,
    /// Parallel `V_TH` shift per decade of cycles (V/decade).
    pub vth_shift_per_decade: f64,
    /// Fractional loss of polarization scale per decade of cycles.
    pub p_loss_per_decade: f64,
}

impl CyclingModel {
    pub fn validate(&self) -> Result<(), DeviceError> {
        if !(self.width > 0.0 && self.amplitude.is_finite() && self.amplitude != 0.0) {
            return Err(DeviceError::InvalidParams("cycling pulse needs a nonzero amplitude and positive width".into()));
        }
        if !(self.p_loss_per_decade >= 0.0 && self.vth_shift_per_decade.is_finite()) {
            return Err(DeviceError::InvalidParams("cycling rates must be finite, polarization loss non-negative".into()));
        }
        Ok(())
    }
}

/// Device after `n_pulses` stress cycles.
pub fn cycling_stress(device: &Device, n_pulses: f64, model: &CyclingModel) -> Result<Device, DeviceError> {
    model.validate()?;
    if !(n_pulses >= 0.0) {
        return Err(DeviceError::InvalidParams("n_pulses must be non-negative".into()));
    }
    if n_pulses == 0.0 {
        return Ok(device.clone());
    }
    let decades = (1.0 + n_pulses).log10();
    let mut trans = *device.transistor();
    trans.v_t0 += model.vth_shift_per_decade * decades;
    let mut film = device.film().clone();
    film.lgd.p_scale *= (1.0 - model.p_loss_per_decade * decades).max(1e-6);
    Device::new(*device.stack(), trans, film)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_fit_exact() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 - 0.5 * x).collect();
        let f = fit_line(&xs, &ys).unwrap();
        assert!((f.slope + 0.5).abs() < 1e-12 && (f.intercept - 2.0).abs() < 1e-12);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn parallel_states_never_cross() {
        let on: Vec<(f64, f64)> = [1.0, 10.0, 100.0].iter().map(|&t| (t, 7e-7)).collect();
        let off: Vec<(f64, f64)> = [1.0, 10.0, 100.0].iter().map(|&t| (t, 1e-9)).collect();
        let f = fit_retention(&on, &off, 10.0).unwrap();
        assert_eq!(f.crossing, None);
        assert!(f.exceeds_horizon);
    }

    #[test]
    fn rejects_bad_abscissae() {
        let pts = [(1.0, 1.0), (1.0, 0.9), (1.0, 0.8)];
        assert_eq!(fit_endurance(&pts, 1.0), Err(FitError::Degenerate));
        let pts = [(1.0, 1.0), (10.0, 0.9), (5.0, 0.8)];
        assert_eq!(fit_endurance(&pts, 1.0), Err(FitError::NotIncreasing));
        assert_eq!(fit_endurance(&pts[..2], 1.0), Err(FitError::TooFewSamples { need: 3, got: 2 }));
    }

    #[test]
    fn drift_zero_time_is_identity() {
        let m = DriftModel {
            rate_p: 0.05,
            rate_e: 0.05,
            t0: 1.0,
            fast_depol_tau: 1.0,
        };
        assert_eq!(m.vth_shift(0.0), (0.0, 0.0));
        assert_eq!(m.decades(0.0), 0.0);
    }
}
