//! MFMIS gate stack: an AFE capacitor in series with a MOS gate, joined at a
//! floating metal node where charge balance holds.
//!
//! The AFE film is a set of grains sharing one Landau landscape. Each grain
//! carries a built-in field offset (imprint) and follows its own quasi-static
//! branch; the film polarization is their weighted mean. A film with a single
//! unbiased grain is the plain single-domain model.

mod extract;
mod sweep;

pub use extract::{extract_vth, extract_window_metrics, WindowMetrics};
pub use sweep::{loop_waveform, ramp, Branch, SweepSample, SweepTrace};

use serde::{Deserialize, Serialize};

use crate::error::DeviceError;
use crate::lgd::{AfeBranchState, Landscape, LgdParams, PieceRoot};

/// Thermal voltage at room temperature (V).
pub const THERMAL_VOLTAGE: f64 = 0.0259;
/// Drain-bias linearization constant of the `tanh` output term (V).
pub const V_DS_LIN: f64 = 0.1;
/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_812_8e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StackConfig {
    /// Area ratio `A_MOS / A_AFE`.
    pub ar: f64,
    /// AFE film thickness (m).
    pub t_afe: f64,
    /// AFE background permittivity (F/m).
    pub eps_afe: f64,
    /// Gate dielectric areal capacitance (F/m^2).
    pub c_ox: f64,
    /// Linear overlap/fringe areal capacitance of the MOS side (F/m^2).
    pub c_par: f64,
    /// Flat-band offset of the stack (V).
    pub v_fb: f64,
    /// Fixed areal charge on the floating gate, per AFE area (C/m^2).
    pub q_trap: f64,
}

impl StackConfig {
    pub fn validate(&self) -> Result<(), DeviceError> {
        let bad = |m: &str| Err(DeviceError::InvalidParams(m.into()));
        let all = [self.ar, self.t_afe, self.eps_afe, self.c_ox, self.c_par, self.v_fb, self.q_trap];
        if !all.iter().all(|v| v.is_finite()) {
            return bad("non-finite stack parameter");
        }
        if self.ar <= 0.0 {
            return bad("ar must be > 0");
        }
        if self.t_afe <= 0.0 {
            return bad("t_afe must be > 0");
        }
        if self.c_ox <= 0.0 {
            return bad("c_ox must be > 0");
        }
        if self.eps_afe < 0.0 || self.c_par < 0.0 {
            return bad("eps_afe and c_par must be >= 0");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransistorParams {
    /// Channel width (m).
    pub w: f64,
    /// Channel length (m).
    pub l_ch: f64,
    /// Transconductance factor `mu * C_ox` (A/V^2 per square).
    pub mu_cox: f64,
    /// Threshold of the MOS sub-device, referenced to the internal node (V).
    pub v_t0: f64,
    /// Subthreshold ideality factor.
    pub n_ss: f64,
    /// Floor leakage per width (A/m).
    pub i_gmin: f64,
}

impl TransistorParams {
    pub fn validate(&self) -> Result<(), DeviceError> {
        let pos = [self.w, self.l_ch, self.mu_cox, self.i_gmin];
        if !pos.iter().all(|v| v.is_finite() && *v > 0.0) || !self.v_t0.is_finite() {
            return Err(DeviceError::InvalidParams("w, l_ch, mu_cox, i_gmin must be finite and > 0".into()));
        }
        if !(self.n_ss >= 1.0) {
            return Err(DeviceError::InvalidParams(format!("n_ss must be >= 1, got {}", self.n_ss)));
        }
        Ok(())
    }

    /// Smoothed inversion overdrive `2 n vt ln(1 + exp((v - v_t0) / (2 n vt)))` (V).
    pub fn overdrive(&self, v_int: f64) -> f64 {
        let nv = 2.0 * self.n_ss * THERMAL_VOLTAGE;
        nv * softplus((v_int - self.v_t0) / nv)
    }

    /// Drain current (A). Above threshold it is quadratic in the overdrive;
    /// below, it rises one decade per `n_ss vt ln 10`.
    pub fn drain_current(&self, v_int: f64, v_ds: f64) -> f64 {
        let q = self.overdrive(v_int);
        self.w / self.l_ch * self.mu_cox * q * q * (v_ds / V_DS_LIN).tanh() + self.w * self.i_gmin
    }
}

/// `ln(1 + exp(x))` without overflow.
fn softplus(x: f64) -> f64 {
    if x > 30.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grain {
    /// Built-in field offset in normalized field units.
    pub imprint: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Film {
    pub lgd: LgdParams,
    pub grains: Vec<Grain>,
}

impl Film {
    pub fn single_domain(lgd: LgdParams) -> Self {
        Self {
            lgd,
            grains: vec![Grain { imprint: 0.0, weight: 1.0 }],
        }
    }

    pub fn validate(&self) -> Result<(), DeviceError> {
        self.lgd.validate()?;
        if self.grains.is_empty() {
            return Err(DeviceError::InvalidParams("film needs at least one grain".into()));
        }
        if !self.grains.iter().all(|g| g.imprint.is_finite() && g.weight.is_finite() && g.weight > 0.0) {
            return Err(DeviceError::InvalidParams("grain weights must be > 0 and imprints finite".into()));
        }
        Ok(())
    }

    fn total_weight(&self) -> f64 {
        self.grains.iter().map(|g| g.weight).sum()
    }
}

/// Branch state of every grain plus the normalized film field it last saw.
/// Each grain's `e_last` is the film field plus that grain's imprint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilmState {
    pub grains: Vec<AfeBranchState>,
    pub e_film: f64,
}

impl FilmState {
    /// State of a single-domain film.
    pub fn single(state: AfeBranchState) -> Self {
        Self {
            e_film: state.e_last,
            grains: vec![state],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StackSolution {
    /// Voltage across the AFE film (V).
    pub v_afe: f64,
    /// Floating-gate-to-channel voltage (V).
    pub v_int: f64,
    /// Film polarization (C/m^2).
    pub p: f64,
    /// Whether any grain switched branch during this solve.
    pub switching: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Device {
    stack: StackConfig,
    trans: TransistorParams,
    film: Film,
    land: Landscape,
    weight_sum: f64,
}

impl Device {
    pub fn new(stack: StackConfig, trans: TransistorParams, film: Film) -> Result<Self, DeviceError> {
        stack.validate()?;
        trans.validate()?;
        film.validate()?;
        let land = Landscape::new(&film.lgd);
        let weight_sum = film.total_weight();
        Ok(Self {
            stack,
            trans,
            film,
            land,
            weight_sum,
        })
    }

    pub fn stack(&self) -> &StackConfig {
        &self.stack
    }

    pub fn transistor(&self) -> &TransistorParams {
        &self.trans
    }

    pub fn film(&self) -> &Film {
        &self.film
    }

    pub fn lgd(&self) -> &LgdParams {
        &self.film.lgd
    }

    pub fn with_stack(&self, stack: StackConfig) -> Result<Self, DeviceError> {
        Self::new(stack, self.trans, self.film.clone())
    }

    pub fn with_transistor(&self, trans: TransistorParams) -> Result<Self, DeviceError> {
        Self::new(self.stack, trans, self.film.clone())
    }

    pub fn with_ar(&self, ar: f64) -> Result<Self, DeviceError> {
        self.with_stack(StackConfig { ar, ..self.stack })
    }

    /// Unswitched state at zero film field: each grain on the stable root
    /// nearest zero polarization at its own imprint field.
    pub fn fresh_state(&self) -> FilmState {
        let grains = self
            .film
            .grains
            .iter()
            .map(|g| {
                let e = g.imprint;
                let piece = self.land.piece_of(0.0).unwrap_or_else(|| nearest_piece(&self.land, 0.0));
                let p = self.land.root_on_piece(piece, e, 0.0);
                let p = if p.is_inside() {
                    p.p()
                } else {
                    crate::lgd::step_with(&self.land, &AfeBranchState { p: 0.0, e_last: 0.0 }, e).state.p
                };
                AfeBranchState { p, e_last: e }
            })
            .collect();
        FilmState { grains, e_film: 0.0 }
    }

    /// Weighted mean of grain polarizations (normalized).
    pub fn mean_p(&self, state: &FilmState) -> f64 {
        self.film
            .grains
            .iter()
            .zip(&state.grains)
            .map(|(g, s)| g.weight * s.p)
            .sum::<f64>()
            / self.weight_sum
    }

    /// MOS gate charge per MOS area (C/m^2), zero at `v = 0`.
    pub fn q_mos(&self, v_int: f64) -> f64 {
        self.stack.c_par * v_int + self.stack.c_ox * (self.trans.overdrive(v_int) - self.trans.overdrive(0.0))
    }

    /// Field across the AFE film (V/m) for a given internal node voltage.
    pub fn afe_field(&self, v_gs: f64, v_int: f64) -> f64 {
        (v_gs - self.stack.v_fb - v_int) / self.stack.t_afe
    }

    pub fn drain_current(&self, v_int: f64, v_ds: f64) -> f64 {
        self.trans.drain_current(v_int, v_ds)
    }

    /// Gate charge per AFE area (C/m^2): the displacement `eps E + P` of the film.
    pub fn gate_charge(&self, sol: &StackSolution) -> f64 {
        self.stack.eps_afe * sol.v_afe / self.stack.t_afe + sol.p
    }

    fn check_state(&self, state: &FilmState) -> Result<(), DeviceError> {
        if state.grains.len() != self.film.grains.len() {
            return Err(DeviceError::InvalidParams(format!(
                "film state has {} grains, device has {}",
                state.grains.len(),
                self.film.grains.len()
            )));
        }
        Ok(())
    }

    /// Solves the stack at `v_gs` starting from `state`, returning the
    /// solution and the continued film state.
    ///
    /// With every grain frozen on its current branch (clamped at the branch
    /// ends) the charge balance is monotone in `v_int` and is solved by a
    /// bracketing iteration. Grains pushed past a branch end then switch one at
    /// a time, largest overshoot first, and the balance is solved again.
    pub fn solve_stack(&self, state: &FilmState, v_gs: f64) -> Result<(StackSolution, FilmState), DeviceError> {
        self.check_state(state)?;
        if !v_gs.is_finite() {
            return Err(DeviceError::InvalidParams("v_gs must be finite".into()));
        }
        let n = self.film.grains.len();
        let max_iter = 60 + 4 * n;
        let mut grains = state.grains.clone();
        let mut pieces: Vec<usize> = grains
            .iter()
            .map(|g| self.land.piece_near(g.p).unwrap_or_else(|| nearest_piece(&self.land, g.p)))
            .collect();
        let mut switching = false;
        let mut last_residual = f64::NAN;

        for _ in 0..max_iter {
            let (v_int, residual) = self.solve_frozen(&mut grains, &pieces, v_gs)?;
            last_residual = residual;
            let e_film = self.afe_field(v_gs, v_int) / self.film.lgd.e_scale;

            let mut worst: Option<(usize, f64)> = None;
            for (k, g) in self.film.grains.iter().enumerate() {
                let e = e_film + g.imprint;
                let excess = match self.land.root_on_piece(pieces[k], e, grains[k].p) {
                    PieceRoot::Inside(_) => continue,
                    PieceRoot::Below(_) => self.land.field_range(pieces[k]).0 - e,
                    PieceRoot::Above(_) => e - self.land.field_range(pieces[k]).1,
                };
                if worst.is_none_or(|(_, x)| excess > x) {
                    worst = Some((k, excess));
                }
            }
            match worst {
                None => {
                    for (k, g) in self.film.grains.iter().enumerate() {
                        grains[k].e_last = e_film + g.imprint;
                    }
                    let sol = StackSolution {
                        v_afe: v_gs - self.stack.v_fb - v_int,
                        v_int,
                        p: self.mean_p_of(&grains) * self.film.lgd.p_scale,
                        switching,
                    };
                    return Ok((sol, FilmState { grains, e_film }));
                }
                Some((k, _)) => {
                    let e = e_film + self.film.grains[k].imprint;
                    let from = AfeBranchState {
                        p: grains[k].p,
                        e_last: grains[k].e_last,
                    };
                    let step = crate::lgd::step_with(&self.land, &from, e);
                    grains[k] = step.state;
                    pieces[k] = self.land.piece_near(step.state.p).unwrap_or_else(|| nearest_piece(&self.land, step.state.p));
                    switching = true;
                }
            }
        }
        Err(DeviceError::NoConvergence {
            v_gs,
            iterations: max_iter,
            residual: last_residual,
        })
    }

    /// Re-solves at `v_gs` with every grain kept on the branch it occupies in
    /// `state`, starting from a seed that depends only on those branch
    /// assignments. States on the same branches come out bit-identical,
    /// whatever rounding history produced them.
    pub fn canonical_state(&self, state: &FilmState, v_gs: f64) -> Result<(StackSolution, FilmState), DeviceError> {
        self.check_state(state)?;
        let grains = state
            .grains
            .iter()
            .map(|g| {
                let k = self.land.piece_near(g.p).unwrap_or_else(|| nearest_piece(&self.land, g.p));
                let pc = self.land.pieces()[k];
                let p = match (pc.lo, pc.hi) {
                    (Some(lo), Some(hi)) => 0.5 * (lo + hi),
                    (None, Some(hi)) => hi - 1.0,
                    (Some(lo), None) => lo + 1.0,
                    (None, None) => 0.0,
                };
                AfeBranchState {
                    p,
                    e_last: self.film.lgd.field_at(p),
                }
            })
            .collect();
        self.solve_stack(&FilmState { grains, e_film: 0.0 }, v_gs)
    }

    fn mean_p_of(&self, grains: &[AfeBranchState]) -> f64 {
        self.film
            .grains
            .iter()
            .zip(grains)
            .map(|(g, s)| g.weight * s.p)
            .sum::<f64>()
            / self.weight_sum
    }

    /// Net floating-gate charge per AFE area with grains frozen on `pieces`.
    /// Decreasing in `v_int`. Updates grain polarizations in place.
    fn balance(&self, grains: &mut [AfeBranchState], pieces: &[usize], v_gs: f64, v_int: f64) -> (f64, f64) {
        let field = self.afe_field(v_gs, v_int);
        let e_film = field / self.film.lgd.e_scale;
        let mut p_sum = 0.0;
        for ((g, s), &pc) in self.film.grains.iter().zip(grains.iter_mut()).zip(pieces) {
            let p = self.land.root_on_piece(pc, e_film + g.imprint, s.p).p();
            s.p = p;
            p_sum += g.weight * p;
        }
        let pol = p_sum / self.weight_sum * self.film.lgd.p_scale;
        let q_afe = self.stack.eps_afe * field + pol + self.stack.q_trap;
        let q_mos = self.stack.ar * self.q_mos(v_int);
        let scale = pol.abs().max(q_mos.abs()).max(q_afe.abs());
        (q_afe - q_mos, scale)
    }

    /// Illinois false-position solve of the frozen balance for `v_int`.
    fn solve_frozen(&self, grains: &mut [AfeBranchState], pieces: &[usize], v_gs: f64) -> Result<(f64, f64), DeviceError> {
        let (mut a, mut b) = (v_gs - 10.0, v_gs + 10.0);
        let (mut fa, _) = self.balance(grains, pieces, v_gs, a);
        let (mut fb, _) = self.balance(grains, pieces, v_gs, b);
        if fa == 0.0 {
            return Ok((a, 0.0));
        }
        if fb == 0.0 {
            return Ok((b, 0.0));
        }
        if fa.signum() == fb.signum() {
            return Err(DeviceError::NoConvergence {
                v_gs,
                iterations: 0,
                residual: fa.abs().min(fb.abs()),
            });
        }
        let mut side = 0i8;
        let mut c = 0.5 * (a + b);
        let mut fc = f64::NAN;
        for it in 0..400 {
            c = if it % 8 == 7 {
                0.5 * (a + b)
            } else {
                let x = (fa * b - fb * a) / (fa - fb);
                if x > a.min(b) && x < a.max(b) {
                    x
                } else {
                    0.5 * (a + b)
                }
            };
            let (f, scale) = self.balance(grains, pieces, v_gs, c);
            fc = f;
            if f == 0.0 || f.abs() <= 1e-13 * scale || (b - a).abs() <= 4.0 * f64::EPSILON * c.abs().max(1.0) {
                break;
            }
            if f.signum() == fb.signum() {
                b = c;
                fb = f;
                if side == -1 {
                    fa *= 0.5;
                }
                side = -1;
            } else {
                a = c;
                fa = f;
                if side == 1 {
                    fb *= 0.5;
                }
                side = 1;
            }
        }
        Ok((c, fc.abs()))
    }

    /// Charge-balance residual of a solution relative to its charge scale.
    pub fn balance_residual(&self, sol: &StackSolution) -> f64 {
        let field = sol.v_afe / self.stack.t_afe;
        let q_afe = self.stack.eps_afe * field + sol.p + self.stack.q_trap;
        let q_mos = self.stack.ar * self.q_mos(sol.v_int);
        let scale = sol.p.abs().max(q_mos.abs());
        if scale == 0.0 {
            (q_afe - q_mos).abs()
        } else {
            (q_afe - q_mos).abs() / scale
        }
    }
}

fn nearest_piece(land: &Landscape, p: f64) -> usize {
    let dist = |k: usize| {
        let pc = land.pieces()[k];
        let lo = pc.lo.unwrap_or(f64::NEG_INFINITY);
        let hi = pc.hi.unwrap_or(f64::INFINITY);
        if p < lo {
            lo - p
        } else if p > hi {
            p - hi
        } else {
            0.0
        }
    };
    (0..land.pieces().len())
        .min_by(|&a, &b| dist(a).partial_cmp(&dist(b)).unwrap())
        .expect("landscape has a stable piece")
}
