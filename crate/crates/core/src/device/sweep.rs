use serde::{Deserialize, Serialize};

use super::{Device, FilmState};
use crate::error::DeviceError;

/// Step used for the symmetric gate-charge derivative (V).
pub const CGG_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Up,
    Down,
    Flat,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Up => "up",
            Branch::Down => "down",
            Branch::Flat => "flat",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSample {
    /// Applied gate voltage (V).
    pub v_gs: f64,
    /// Drain current (A).
    pub i_d: f64,
    /// Gate capacitance per AFE area (F/m^2); NaN when not computed.
    pub c_gg: f64,
    /// Film polarization (C/m^2).
    pub p: f64,
    /// Internal node voltage (V).
    pub v_int: f64,
    pub branch: Branch,
    pub switched: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTrace {
    /// Channel width of the swept device (m).
    pub width: f64,
    pub samples: Vec<SweepSample>,
}

impl SweepTrace {
    /// Labels samples by sweep direction. A sample takes the direction from
    /// its predecessor; the first sample takes the direction to its successor.
    pub fn from_points(width: f64, points: &[(f64, f64)]) -> Self {
        let samples = points
            .iter()
            .map(|&(v_gs, i_d)| SweepSample {
                v_gs,
                i_d,
                c_gg: f64::NAN,
                p: 0.0,
                v_int: 0.0,
                branch: Branch::Flat,
                switched: false,
            })
            .collect();
        let mut trace = Self { width, samples };
        trace.label_branches();
        trace
    }

    fn label_branches(&mut self) {
        let v: Vec<f64> = self.samples.iter().map(|s| s.v_gs).collect();
        let dir = |a: f64, b: f64| {
            if b > a {
                Branch::Up
            } else if b < a {
                Branch::Down
            } else {
                Branch::Flat
            }
        };
        let mut prev = if v.len() > 1 { dir(v[0], v[1]) } else { Branch::Flat };
        for (k, s) in self.samples.iter_mut().enumerate() {
            if k > 0 {
                let d = dir(v[k - 1], v[k]);
                if d != Branch::Flat {
                    prev = d;
                }
            }
            s.branch = prev;
        }
    }

    /// The last run of samples swept in direction `which`, led by the turning
    /// sample that precedes it.
    pub fn last_run(&self, which: Branch) -> &[SweepSample] {
        let Some(end) = self.samples.iter().rposition(|s| s.branch == which) else {
            return &[];
        };
        let mut start = end;
        while start > 0 && self.samples[start - 1].branch == which {
            start -= 1;
        }
        let start = start.saturating_sub(1);
        &self.samples[start..=end]
    }

    pub fn up_branch(&self) -> &[SweepSample] {
        self.last_run(Branch::Up)
    }

    pub fn down_branch(&self) -> &[SweepSample] {
        self.last_run(Branch::Down)
    }

    pub fn switching_count(&self) -> usize {
        self.samples.iter().filter(|s| s.switched).count()
    }
}

/// Points from `from` (exclusive) to `to` (inclusive) with spacing at most `max_step`.
pub fn ramp(from: f64, to: f64, max_step: f64) -> Vec<f64> {
    let n = ((to - from).abs() / max_step).ceil().max(1.0) as usize;
    (1..=n).map(|k| from + (to - from) * k as f64 / n as f64).collect()
}

/// `0 -> v_low` preconditioning (skipped when `v_low == 0`) followed by
/// `cycles` repetitions of `v_low -> v_high -> v_low`.
pub fn loop_waveform(v_low: f64, v_high: f64, max_step: f64, cycles: usize) -> Vec<f64> {
    let mut w = vec![0.0];
    if v_low != 0.0 {
        w.extend(ramp(0.0, v_low, max_step));
    }
    for _ in 0..cycles {
        w.extend(ramp(v_low, v_high, max_step));
        w.extend(ramp(v_high, v_low, max_step));
    }
    w
}

impl Device {
    /// Quasi-static `I_D`-`V_GS` sweep with gate capacitance.
    pub fn sweep(&self, state: &FilmState, waveform: &[f64], v_ds: f64) -> Result<(SweepTrace, FilmState), DeviceError> {
        self.sweep_inner(state, waveform, v_ds, true)
    }

    /// As [`Device::sweep`] but without the capacitance probes (`c_gg` is NaN).
    pub fn sweep_currents(&self, state: &FilmState, waveform: &[f64], v_ds: f64) -> Result<(SweepTrace, FilmState), DeviceError> {
        self.sweep_inner(state, waveform, v_ds, false)
    }

    fn sweep_inner(&self, state: &FilmState, waveform: &[f64], v_ds: f64, cgg: bool) -> Result<(SweepTrace, FilmState), DeviceError> {
        if waveform.is_empty() {
            return Err(DeviceError::EmptyWaveform);
        }
        let mut st = state.clone();
        let mut samples = Vec::with_capacity(waveform.len());
        for &v in waveform {
            let (sol, next) = self.solve_stack(&st, v)?;
            let c_gg = if cgg { self.gate_capacitance(&next, v)? } else { f64::NAN };
            st = next;
            samples.push(super::SweepSample {
                v_gs: v,
                i_d: self.drain_current(sol.v_int, v_ds),
                c_gg,
                p: sol.p,
                v_int: sol.v_int,
                branch: Branch::Flat,
                switched: sol.switching,
            });
        }
        let mut trace = SweepTrace {
            width: self.transistor().w,
            samples,
        };
        trace.label_branches();
        Ok((trace, st))
    }

    /// Symmetric derivative of gate charge per AFE area at `v_gs`, probing
    /// from `state` without committing any branch change.
    pub fn gate_capacitance(&self, state: &FilmState, v_gs: f64) -> Result<f64, DeviceError> {
        let (hi, _) = self.solve_stack(state, v_gs + CGG_STEP)?;
        let (lo, _) = self.solve_stack(state, v_gs - CGG_STEP)?;
        Ok((self.gate_charge(&hi) - self.gate_charge(&lo)) / (2.0 * CGG_STEP))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_endpoints() {
        let r = ramp(0.0, 1.0, 0.3);
        assert_eq!(r.len(), 4);
        assert_eq!(*r.last().unwrap(), 1.0);
        assert!(r[0] > 0.0);
    }

    #[test]
    fn loop_waveform_returns_to_low() {
        let w = loop_waveform(-2.0, 4.0, 0.5, 2);
        assert_eq!(w[0], 0.0);
        assert_eq!(*w.last().unwrap(), -2.0);
        assert_eq!(w.iter().filter(|&&v| v == 4.0).count(), 2);
    }

    #[test]
    fn branches_split_at_turning_points() {
        let pts: Vec<(f64, f64)> = [0.0, 1.0, 2.0, 1.0, 0.0].iter().map(|&v| (v, 1.0)).collect();
        let t = SweepTrace::from_points(1.0, &pts);
        let up: Vec<f64> = t.up_branch().iter().map(|s| s.v_gs).collect();
        let down: Vec<f64> = t.down_branch().iter().map(|s| s.v_gs).collect();
        assert_eq!(up, vec![0.0, 1.0, 2.0]);
        assert_eq!(down, vec![2.0, 1.0, 0.0]);
    }
}
