use serde::{Deserialize, Serialize};

use super::{SweepSample, SweepTrace};
use crate::error::DeviceError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowMetrics {
    /// Memory window `V_TH,E - V_TH,P` (V).
    pub mw: f64,
    pub on_off: f64,
    /// Down-branch (programmed) current at `v_m` (A).
    pub i_on: f64,
    /// Up-branch (erased) current at `v_m` (A).
    pub i_off: f64,
    pub v_th_p: f64,
    pub v_th_e: f64,
}

/// First crossing of `i_target` along a branch, interpolated linearly in
/// `log(i)` versus `v_gs`.
fn crossing(branch: &[SweepSample], i_target: f64) -> Option<f64> {
    let lc = i_target.ln();
    branch.windows(2).find_map(|w| {
        let (l0, l1) = (w[0].i_d.ln(), w[1].i_d.ln());
        if l0 == lc {
            return Some(w[0].v_gs);
        }
        if (l0 - lc) * (l1 - lc) <= 0.0 && l0 != l1 {
            Some(w[0].v_gs + (lc - l0) / (l1 - l0) * (w[1].v_gs - w[0].v_gs))
        } else {
            None
        }
    })
}

/// Branch current at `v`, interpolated linearly in `log(i)`.
fn current_at(branch: &[SweepSample], v: f64) -> Option<f64> {
    if let Some(s) = branch.iter().find(|s| s.v_gs == v) {
        return Some(s.i_d);
    }
    branch.windows(2).find_map(|w| {
        let (v0, v1) = (w[0].v_gs, w[1].v_gs);
        if (v0 - v) * (v1 - v) < 0.0 {
            let t = (v - v0) / (v1 - v0);
            Some((w[0].i_d.ln() + t * (w[1].i_d.ln() - w[0].i_d.ln())).exp())
        } else {
            None
        }
    })
}

/// Constant-current thresholds `(v_th_up, v_th_down)` at `i_crit_per_width * w`.
/// The up branch gives the erased-state `V_TH,E`, the down branch the
/// programmed-state `V_TH,P`.
pub fn extract_vth(trace: &SweepTrace, i_crit_per_width: f64) -> Result<(f64, f64), DeviceError> {
    let i_c = i_crit_per_width * trace.width;
    let up = crossing(trace.up_branch(), i_c).ok_or(DeviceError::NoCrossing("up"))?;
    let down = crossing(trace.down_branch(), i_c).ok_or(DeviceError::NoCrossing("down"))?;
    Ok((up, down))
}

pub fn extract_window_metrics(trace: &SweepTrace, v_m: f64, i_crit_per_width: f64) -> Result<WindowMetrics, DeviceError> {
    let (v_th_e, v_th_p) = extract_vth(trace, i_crit_per_width)?;
    let i_on = current_at(trace.down_branch(), v_m).ok_or(DeviceError::OutOfRange(v_m))?;
    let i_off = current_at(trace.up_branch(), v_m).ok_or(DeviceError::OutOfRange(v_m))?;
    Ok(WindowMetrics {
        mw: v_th_e - v_th_p,
        on_off: i_on / i_off,
        i_on,
        i_off,
        v_th_p,
        v_th_e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_trace(shift_up: f64) -> SweepTrace {
        // i = 1e-9 * 10^(v - 1): crosses 1e-9 at v = 1.
        let mut pts = Vec::new();
        for k in 0..=40 {
            let v = k as f64 * 0.05;
            pts.push((v, 1e-9 * 10f64.powf(v - 1.0 - shift_up)));
        }
        for k in (0..40).rev() {
            let v = k as f64 * 0.05;
            pts.push((v, 1e-9 * 10f64.powf(v - 1.0)));
        }
        SweepTrace::from_points(1.0, &pts)
    }

    #[test]
    fn hysteresis_free_identity() {
        let t = exp_trace(0.0);
        let (up, down) = extract_vth(&t, 1e-9).unwrap();
        assert!((up - 1.0).abs() < 1e-12 && (down - 1.0).abs() < 1e-12);
        let m = extract_window_metrics(&t, 1.5, 1e-9).unwrap();
        assert!(m.mw.abs() < 1e-12);
        assert!((m.on_off - 1.0).abs() < 1e-12);
    }

    #[test]
    fn displaced_branches_give_window() {
        let m = extract_window_metrics(&exp_trace(0.5), 1.2, 1e-9).unwrap();
        assert!((m.mw - 0.5).abs() < 1e-9);
        assert!((m.on_off - 10f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn missing_crossing_names_branch() {
        let t = exp_trace(0.0);
        assert_eq!(extract_vth(&t, 1.0), Err(DeviceError::NoCrossing("up")));
    }
}
