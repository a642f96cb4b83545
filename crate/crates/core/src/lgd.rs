//! Landau free-energy landscape of a ferroelectric or anti-ferroelectric film.
//!
//! The film is single-domain: its state is one polarization `p` in
//! normalized units. The Gibbs energy is
//!
//! ```text
//! G(p, e) = (alpha/2) p^2 + (beta/4) p^4 + (xi/6) p^6 - e p
//! ```
//!
//! and equilibria are the real roots of `dG/dp = alpha p + beta p^3 + xi p^5 - e`.
//! Physical units are recovered through `p_scale` (C/m^2) and `e_scale` (V/m).

use serde::{Deserialize, Serialize};

use crate::error::LgdError;
use crate::poly::Poly;

/// Below this `|d2G/dp2|` an equilibrium is treated as a degenerate, unstable point.
pub const DEGENERATE_CURVATURE: f64 = 1e-9;

/// Maximum residual `|dG/dp|` accepted for a returned equilibrium.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LgdParams {
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    /// Polarization unit (C/m^2) of normalized `p`.
    pub p_scale: f64,
    /// Field unit (V/m) of normalized `e`.
    pub e_scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `alpha > 0`: single minimum at zero field.
    Antiferroelectric,
    /// `alpha < 0`: double well at zero field.
    Ferroelectric,
    /// `alpha == 0`: critical point.
    Critical,
}

impl LgdParams {
    pub fn new(alpha: f64, beta: f64, xi: f64, p_scale: f64, e_scale: f64) -> Result<Self, LgdError> {
        let params = Self {
            alpha,
            beta,
            xi,
            p_scale,
            e_scale,
        };
        params.validate()?;
        Ok(params)
    }

    /// Normalized anti-ferroelectric reference set: one zero-field minimum and a
    /// field-induced double hysteresis on either polarity.
    pub fn reference_afe() -> Self {
        Self {
            alpha: 1.0,
            beta: -1.8,
            xi: 1.0,
            p_scale: 1.0,
            e_scale: 1.0,
        }
    }

    /// Normalized ferroelectric set with remnant states near `p = +-1`.
    pub fn reference_fe() -> Self {
        Self {
            alpha: -1.0,
            beta: 1.0,
            xi: 1e-6,
            p_scale: 1.0,
            e_scale: 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), LgdError> {
        let finite = [self.alpha, self.beta, self.xi, self.p_scale, self.e_scale]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(LgdError::InvalidParams("non-finite coefficient".into()));
        }
        if self.xi <= 0.0 {
            return Err(LgdError::InvalidParams(format!("xi must be > 0, got {}", self.xi)));
        }
        if self.p_scale <= 0.0 || self.e_scale <= 0.0 {
            return Err(LgdError::InvalidParams("p_scale and e_scale must be > 0".into()));
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        if self.alpha > 0.0 {
            Regime::Antiferroelectric
        } else if self.alpha < 0.0 {
            Regime::Ferroelectric
        } else {
            Regime::Critical
        }
    }

    /// Field that holds `p` in equilibrium: `alpha p + beta p^3 + xi p^5`.
    pub fn field_at(&self, p: f64) -> f64 {
        let p2 = p * p;
        p * (self.alpha + p2 * (self.beta + p2 * self.xi))
    }

    /// `d2G/dp2`.
    pub fn curvature(&self, p: f64) -> f64 {
        let p2 = p * p;
        self.alpha + p2 * (3.0 * self.beta + 5.0 * self.xi * p2)
    }

    /// Smallest `p_max >= 1` (doubling) with `xi p^4 > |alpha| + |beta| p^2 + |e|/p`;
    /// no equilibrium lies outside `[-p_max, p_max]`.
    pub fn p_bound(&self, e: f64) -> f64 {
        let mut p: f64 = 1.0;
        while self.xi * p.powi(4) <= self.alpha.abs() + self.beta.abs() * p * p + e.abs() / p {
            p *= 2.0;
        }
        p
    }

    fn gradient_poly(&self, e: f64) -> Poly {
        Poly::new(vec![-e, self.alpha, 0.0, self.beta, 0.0, self.xi])
    }

    fn curvature_poly(&self) -> Poly {
        Poly::new(vec![self.alpha, 0.0, 3.0 * self.beta, 0.0, 5.0 * self.xi])
    }
}

/// Gibbs energy density `G(p, e)` in normalized units.
pub fn free_energy(params: &LgdParams, p: f64, e: f64) -> f64 {
    let p2 = p * p;
    p2 * (params.alpha / 2.0 + p2 * (params.beta / 4.0 + p2 * params.xi / 6.0)) - e * p
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub p: f64,
    pub stable: bool,
    pub energy: f64,
}

/// All equilibria at field `e`, sorted by `p`. At least one is stable.
pub fn equilibria(params: &LgdParams, e: f64) -> Result<Vec<Equilibrium>, LgdError> {
    params.validate()?;
    let bound = params.p_bound(e);
    let poly = params.gradient_poly(e);
    let roots = poly.real_roots_in(-bound, bound);
    let residual = roots
        .iter()
        .map(|&p| (params.field_at(p) - e).abs())
        .fold(0.0, f64::max);
    if roots.is_empty() || residual > ROOT_RESIDUAL_TOL * (1.0 + e.abs()) {
        return Err(LgdError::RootSolve { e, residual });
    }
    let out: Vec<Equilibrium> = roots
        .into_iter()
        .map(|p| Equilibrium {
            p,
            stable: params.curvature(p) > DEGENERATE_CURVATURE,
            energy: free_energy(params, p, e),
        })
        .collect();
    if !out.iter().any(|q| q.stable) {
        return Err(LgdError::RootSolve { e, residual });
    }
    Ok(out)
}

/// Maximal `p` interval on which the landscape curvature is positive. Along a
/// piece the equilibrium field is strictly increasing, so each piece carries
/// one continuous stable branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl Piece {
    pub fn contains(&self, p: f64) -> bool {
        self.lo.is_none_or(|lo| p > lo) && self.hi.is_none_or(|hi| p < hi)
    }
}

/// Where a field lands relative to a piece's field range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceRoot {
    Inside(f64),
    /// Field below the piece's range; polarization clamped at the lower end.
    Below(f64),
    /// Field above the piece's range; polarization clamped at the upper end.
    Above(f64),
}

impl PieceRoot {
    pub fn p(&self) -> f64 {
        match *self {
            PieceRoot::Inside(p) | PieceRoot::Below(p) | PieceRoot::Above(p) => p,
        }
    }

    pub fn is_inside(&self) -> bool {
        matches!(self, PieceRoot::Inside(_))
    }
}

/// Field-independent structure of the landscape: turning points and stable pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    params: LgdParams,
    turning: Vec<f64>,
    pieces: Vec<Piece>,
}

impl Landscape {
    pub fn new(params: &LgdParams) -> Self {
        let curv = params.curvature_poly();
        let bound = curv.root_bound();
        let turning = curv.real_roots_in(-bound, bound);

        let mut knots = vec![f64::NEG_INFINITY];
        knots.extend(turning.iter().copied());
        knots.push(f64::INFINITY);
        let mut pieces: Vec<Piece> = Vec::new();
        for w in knots.windows(2) {
            let probe = match (w[0].is_finite(), w[1].is_finite()) {
                (true, true) => 0.5 * (w[0] + w[1]),
                (false, true) => w[1] - 1.0,
                (true, false) => w[0] + 1.0,
                (false, false) => 0.0,
            };
            if params.curvature(probe) <= 0.0 {
                continue;
            }
            let lo = w[0].is_finite().then_some(w[0]);
            let hi = w[1].is_finite().then_some(w[1]);
            match pieces.last_mut() {
                // Touching turning point (no sign change): merge neighbours.
                Some(prev) if prev.hi.is_some() && prev.hi == lo => prev.hi = hi,
                _ => pieces.push(Piece { lo, hi }),
            }
        }
        Self {
            params: *params,
            turning,
            pieces,
        }
    }

    pub fn params(&self) -> &LgdParams {
        &self.params
    }

    /// Real roots of `d2G/dp2`, ascending.
    pub fn turning_points(&self) -> &[f64] {
        &self.turning
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece_of(&self, p: f64) -> Option<usize> {
        self.pieces.iter().position(|pc| pc.contains(p))
    }

    /// Piece whose closure contains `p`, preferring an interior match. Used
    /// for states clamped at a turning point.
    pub fn piece_near(&self, p: f64) -> Option<usize> {
        self.piece_of(p).or_else(|| {
            self.pieces
                .iter()
                .position(|pc| pc.lo == Some(p) || pc.hi == Some(p))
        })
    }

    /// Field range `(e_lo, e_hi)` over which piece `idx` holds an equilibrium.
    pub fn field_range(&self, idx: usize) -> (f64, f64) {
        let pc = self.pieces[idx];
        (
            pc.lo.map_or(f64::NEG_INFINITY, |p| self.params.field_at(p)),
            pc.hi.map_or(f64::INFINITY, |p| self.params.field_at(p)),
        )
    }

    /// Equilibrium on piece `idx` at field `e`, clamped to the piece's ends when
    /// the branch does not exist at `e`. `hint` seeds the Newton iteration.
    pub fn root_on_piece(&self, idx: usize, e: f64, hint: f64) -> PieceRoot {
        let pc = self.pieces[idx];
        let prm = &self.params;
        let lo = match pc.lo {
            Some(lo) => {
                if e <= prm.field_at(lo) {
                    return if e < prm.field_at(lo) { PieceRoot::Below(lo) } else { PieceRoot::Inside(lo) };
                }
                lo
            }
            None => -prm.p_bound(e),
        };
        let hi = match pc.hi {
            Some(hi) => {
                if e >= prm.field_at(hi) {
                    return if e > prm.field_at(hi) { PieceRoot::Above(hi) } else { PieceRoot::Inside(hi) };
                }
                hi
            }
            None => prm.p_bound(e),
        };
        PieceRoot::Inside(monotone_root(prm, e, lo, hi, hint))
    }
}

/// Safeguarded Newton on an interval where `field_at` is increasing and brackets `e`.
fn monotone_root(prm: &LgdParams, e: f64, mut lo: f64, mut hi: f64, hint: f64) -> f64 {
    let mut x = if hint > lo && hint < hi { hint } else { 0.5 * (lo + hi) };
    for _ in 0..200 {
        let f = prm.field_at(x) - e;
        if f == 0.0 {
            return x;
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = prm.curvature(x);
        let newton = x - f / d;
        let next = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(1e-12) || hi - lo <= 2.0 * f64::EPSILON * hi.abs().max(lo.abs()) {
            return next;
        }
        x = next;
    }
    x
}

/// Quasi-static state of a film: a stable equilibrium and the field it sits in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AfeBranchState {
    pub p: f64,
    pub e_last: f64,
}

impl AfeBranchState {
    /// Zero-field state on the stable root closest to `p = 0` (ties go positive).
    pub fn virgin(params: &LgdParams) -> Result<Self, LgdError> {
        let eq = equilibria(params, 0.0)?;
        let p = eq
            .iter()
            .filter(|q| q.stable)
            .min_by(|a, b| {
                a.p.abs()
                    .partial_cmp(&b.p.abs())
                    .unwrap()
                    .then(b.p.partial_cmp(&a.p).unwrap())
            })
            .map(|q| q.p)
            .unwrap();
        Ok(Self { p, e_last: 0.0 })
    }

    /// Checks the branch invariant: `p` is a stable equilibrium at `e_last`.
    pub fn is_valid(&self, params: &LgdParams) -> bool {
        (params.field_at(self.p) - self.e_last).abs() <= ROOT_RESIDUAL_TOL * (1.0 + self.e_last.abs())
            && params.curvature(self.p) > DEGENERATE_CURVATURE
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub state: AfeBranchState,
    pub switched: bool,
    /// Field at which the previous branch ceased to exist, when `switched`.
    pub switch_field: Option<f64>,
}

/// Advances the film to field `e_new` by branch continuation.
///
/// The state follows its own stable branch while that branch exists. When the
/// branch has been lost through a saddle-node, the film relaxes down the energy
/// gradient to the nearest stable root in the descent direction.
pub fn step_quasistatic(state: &AfeBranchState, params: &LgdParams, e_new: f64) -> Step {
    let land = Landscape::new(params);
    step_with(&land, state, e_new)
}

/// [`step_quasistatic`] with a precomputed landscape.
pub fn step_with(land: &Landscape, state: &AfeBranchState, e_new: f64) -> Step {
    let params = land.params();
    let Some(piece) = land.piece_near(state.p) else {
        let p = descend(params, state.p, e_new);
        return Step {
            state: AfeBranchState { p, e_last: e_new },
            switched: true,
            switch_field: Some(state.e_last),
        };
    };
    match land.root_on_piece(piece, e_new, state.p) {
        PieceRoot::Inside(p) => Step {
            state: AfeBranchState { p, e_last: e_new },
            switched: false,
            switch_field: None,
        },
        _ => {
            let switch_field = locate_branch_loss(land, piece, state.e_last, e_new, state.p);
            let p = descend(params, state.p, e_new);
            Step {
                state: AfeBranchState { p, e_last: e_new },
                switched: true,
                switch_field: Some(switch_field),
            }
        }
    }
}

/// Bisects the field interval between the last field where `piece` held a root
/// and `e_lost` where it does not.
fn locate_branch_loss(land: &Landscape, piece: usize, e_ok: f64, e_lost: f64, hint: f64) -> f64 {
    let (mut a, mut b) = (e_ok, e_lost);
    let mut p = hint;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        match land.root_on_piece(piece, m, p) {
            PieceRoot::Inside(q) => {
                a = m;
                p = q;
            }
            _ => b = m,
        }
    }
    0.5 * (a + b)
}

/// Endpoint of gradient descent on `G(., e)` started from `p0`.
fn descend(params: &LgdParams, p0: f64, e: f64) -> f64 {
    let up = params.field_at(p0) < e;
    let roots = match equilibria(params, e) {
        Ok(r) => r,
        Err(_) => return p0,
    };
    let pick = if up {
        roots.iter().filter(|q| q.stable && q.p > p0).map(|q| q.p).next()
    } else {
        roots.iter().rev().filter(|q| q.stable && q.p < p0).map(|q| q.p).next()
    };
    pick.unwrap_or_else(|| {
        roots
            .iter()
            .filter(|q| q.stable)
            .min_by(|a, b| (a.p - p0).abs().partial_cmp(&(b.p - p0).abs()).unwrap())
            .map(|q| q.p)
            .unwrap_or(p0)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeSample {
    pub e: f64,
    pub p: f64,
    pub switched: bool,
}

/// Applies [`step_quasistatic`] along a field waveform.
pub fn trace_pe_loop(params: &LgdParams, waveform: &[f64], initial: AfeBranchState) -> Vec<PeSample> {
    let land = Landscape::new(params);
    let mut state = initial;
    waveform
        .iter()
        .map(|&e| {
            let step = step_with(&land, &state, e);
            state = step.state;
            PeSample {
                e,
                p: state.p,
                switched: step.switched,
            }
        })
        .collect()
}

/// Triangular waveform `0 -> +amp -> -amp -> 0` with spacing at most `step`.
pub fn triangle_wave(amplitude: f64, step: f64) -> Vec<f64> {
    let n = (amplitude / step).ceil().max(1.0) as usize;
    let h = amplitude / n as f64;
    let mut out = Vec::with_capacity(4 * n + 1);
    out.extend((0..=n).map(|k| k as f64 * h));
    out.extend((1..=2 * n).map(|k| amplitude - k as f64 * h));
    out.extend((1..=n).map(|k| -amplitude + k as f64 * h));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn afe() -> LgdParams {
        LgdParams::reference_afe()
    }

    #[test]
    fn energy_vanishes_at_zero_polarization() {
        for e in [-3.0, 0.0, 0.4, 7.0] {
            assert_eq!(free_energy(&afe(), 0.0, e), 0.0);
        }
    }

    #[test]
    fn energy_even_at_zero_field() {
        for p in [0.1, 0.7, 1.3] {
            assert_eq!(free_energy(&afe(), p, 0.0), free_energy(&afe(), -p, 0.0));
        }
    }

    #[test]
    fn energy_reference_value() {
        // 1/2 - 1.8/4 + 1/6
        let g = free_energy(&afe(), 1.0, 0.0);
        assert!((g - (0.5 - 0.45 + 1.0 / 6.0)).abs() < 1e-15);
        assert!((g - 0.216_666_666_666_666_7).abs() < 1e-12);
    }

    #[test]
    fn afe_single_minimum_at_zero_field() {
        let eq = equilibria(&afe(), 0.0).unwrap();
        assert_eq!(eq.len(), 1);
        assert!(eq[0].stable);
        assert!(eq[0].p.abs() < 1e-12);
    }

    #[test]
    fn fe_double_well_at_zero_field() {
        let eq = equilibria(&LgdParams::reference_fe(), 0.0).unwrap();
        let stable: Vec<f64> = eq.iter().filter(|q| q.stable).map(|q| q.p).collect();
        assert_eq!(stable.len(), 2);
        assert!((stable[0] + 1.0).abs() < 1e-5 && (stable[1] - 1.0).abs() < 1e-5);
        assert!(eq.iter().any(|q| !q.stable && q.p.abs() < 1e-12));
    }

    #[test]
    fn afe_inside_window_has_two_stable_one_unstable() {
        let eq = equilibria(&afe(), 0.25).unwrap();
        assert_eq!(eq.iter().filter(|q| q.stable).count(), 2);
        assert_eq!(eq.iter().filter(|q| !q.stable).count(), 1);
    }

    #[test]
    fn invalid_xi_rejected() {
        assert!(LgdParams::new(1.0, -1.8, 0.0, 1.0, 1.0).is_err());
        assert!(LgdParams::new(1.0, -1.8, 1.0, 0.0, 1.0).is_err());
        assert_eq!(afe().regime(), Regime::Antiferroelectric);
        assert_eq!(LgdParams::reference_fe().regime(), Regime::Ferroelectric);
    }

    #[test]
    fn afe_has_three_stable_pieces() {
        let land = Landscape::new(&afe());
        assert_eq!(land.turning_points().len(), 4);
        assert_eq!(land.pieces().len(), 3);
        assert_eq!(land.piece_of(0.0), Some(1));
        assert_eq!(land.piece_of(0.7), None);
    }

    #[test]
    fn identity_step() {
        let s = AfeBranchState { p: 0.0, e_last: 0.0 };
        let st = step_quasistatic(&s, &afe(), 0.0);
        assert!(!st.switched);
        assert_eq!(st.state, s);
    }

    #[test]
    fn switching_on_up_and_down_ramps() {
        let params = afe();
        let mut s = AfeBranchState::virgin(&params).unwrap();
        let mut up_field = None;
        for k in 1..=70 {
            let st = step_quasistatic(&s, &params, k as f64 * 0.005);
            if st.switched {
                up_field = st.switch_field;
                assert!(k as f64 * 0.005 >= 0.3065);
            }
            s = st.state;
        }
        assert!((up_field.unwrap() - 0.3065).abs() < 1e-3);
        assert!(s.p > 1.0);
        let mut down_field = None;
        for k in (0..70).rev() {
            let st = step_quasistatic(&s, &params, k as f64 * 0.005);
            if st.switched {
                down_field = st.switch_field;
            }
            s = st.state;
        }
        assert!((down_field.unwrap() - 0.1774).abs() < 1e-3);
        assert_eq!(s.e_last, 0.0);
        assert!(s.p.abs() < 1e-12);
    }

    #[test]
    fn energy_drops_at_switching() {
        let params = afe();
        let s = AfeBranchState { p: 0.48, e_last: params.field_at(0.48) };
        let st = step_quasistatic(&s, &params, 0.31);
        assert!(st.switched);
        assert!(free_energy(&params, st.state.p, 0.31) < free_energy(&params, s.p, 0.31));
        assert!(st.state.is_valid(&params));
    }

    #[test]
    fn triangle_wave_shape() {
        let w = triangle_wave(1.0, 0.25);
        assert_eq!(w.len(), 17);
        assert_eq!(w[0], 0.0);
        assert_eq!(w[4], 1.0);
        assert_eq!(w[12], -1.0);
        assert!(w.last().unwrap().abs() < 1e-15);
    }
}
