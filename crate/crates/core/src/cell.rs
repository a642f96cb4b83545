//! 2T1AF memory cell: a write-access transistor charging the AFeFET gate
//! (the storage node), a read path through the AFeFET channel, and leakage
//! free hold with the node and write bitline both clamped at `v_m`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::device::{ramp, Branch, Device, FilmState, SweepTrace};
use crate::error::{CellError, DeviceError};
use crate::reliability::DriftModel;

/// Largest gate-voltage step of a quasi-static node transition (V).
pub const NODE_STEP: f64 = 5e-3;
/// Write and erase pulse width (s).
pub const PULSE_WIDTH: f64 = 10e-3;
/// Required distance of `v_m` from either edge of the hold window (V).
pub const HOLD_MARGIN: f64 = 0.1;
/// Drain bias of the read path (V).
pub const V_DS_READ: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatingVoltages {
    /// Write-'1' bitline level (V).
    pub v_w: f64,
    /// Erase bitline level (V).
    pub v_e: f64,
    /// Boosted write wordline level (V).
    pub v_h: f64,
    /// Hold and clamp level (V).
    pub v_m: f64,
    /// Read bitline precharge level (V).
    pub vdd_read: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AccessTransistor {
    /// On-state resistance (ohm).
    pub on_resistance: f64,
    /// Off-state channel conductance (S).
    pub off_subthreshold_conductance: f64,
    /// Lumped gate leakage of the held cell (A).
    pub gate_leak: f64,
    /// Threshold voltage (V).
    pub v_th: f64,
}

impl AccessTransistor {
    pub fn validate(&self) -> Result<(), CellError> {
        if !(self.on_resistance > 0.0 && self.off_subthreshold_conductance >= 0.0 && self.gate_leak >= 0.0 && self.v_th.is_finite()) {
            return Err(CellError::Config(
                "access transistor needs on_resistance > 0 and non-negative leakage".into(),
            ));
        }
        Ok(())
    }
}

impl OperatingVoltages {
    pub fn validate(&self, access: &AccessTransistor) -> Result<(), CellError> {
        let all = [self.v_w, self.v_e, self.v_h, self.v_m, self.vdd_read];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(CellError::Config("operating voltages must be finite".into()));
        }
        if self.v_h <= self.v_w + access.v_th {
            return Err(CellError::Config(format!(
                "v_h = {} V must exceed v_w + V_TH = {} V",
                self.v_h,
                self.v_w + access.v_th
            )));
        }
        if self.v_e >= self.v_m || self.v_w <= self.v_m {
            return Err(CellError::Config("need v_e < v_m < v_w".into()));
        }
        Ok(())
    }
}

/// What the last data operation left in the cell; selects the drift law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stored {
    Fresh,
    One,
    /// Written '0' by grounding the node (minor loop).
    ZeroGround,
    /// Erased with the negative bitline level.
    Erased,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellState {
    /// Storage-node (AFeFET gate) voltage (V).
    pub node_v: f64,
    pub afe: FilmState,
    /// Hold time accumulated since the last data operation (s).
    pub drift_clock: f64,
    pub stored_bit_intent: Option<bool>,
    pub stored: Stored,
}

/// Gate-voltage range over which both stored states are stable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoldWindow {
    /// Highest voltage at which the programmed state starts to lose polarization.
    pub lo: f64,
    /// Lowest voltage at which an erased state starts to switch up.
    pub hi: f64,
}

impl HoldWindow {
    pub fn admits(&self, v: f64, margin: f64) -> bool {
        v >= self.lo + margin && v <= self.hi - margin
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadResult {
    pub bit: bool,
    /// Read-path current at `v_m` (A).
    pub i_read: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoldResult {
    pub state: CellState,
    /// Drain-source leakage power of the write transistor (W).
    pub ds_leakage_power: f64,
    /// Gate-leakage power of the held cell (W).
    pub hold_power: f64,
}

/// A cell design: device, bias levels, access transistor and drift laws.
#[derive(Debug, Clone)]
pub struct Cell {
    device: Device,
    volts: OperatingVoltages,
    access: AccessTransistor,
    drift_unipolar: DriftModel,
    drift_bipolar: DriftModel,
    window: HoldWindow,
    i_on: f64,
    i_off: f64,
}

impl Cell {
    /// Builds the cell and characterizes it: the hold window from a full
    /// write/erase loop and the sense threshold as the geometric mean of the
    /// programmed and erased currents at `v_m`.
    pub fn new(
        device: Device,
        volts: OperatingVoltages,
        access: AccessTransistor,
        drift_unipolar: DriftModel,
        drift_bipolar: DriftModel,
    ) -> Result<Self, CellError> {
        access.validate()?;
        volts.validate(&access)?;
        drift_unipolar.validate()?;
        drift_bipolar.validate()?;
        let window = hold_window(&device, &volts)?;
        let mut cell = Self {
            device,
            volts,
            access,
            drift_unipolar,
            drift_bipolar,
            window,
            i_on: f64::NAN,
            i_off: f64::NAN,
        };
        let fresh = cell.fresh();
        cell.i_on = cell.current(&cell.write(&fresh, true)?)?;
        cell.i_off = cell.current(&cell.erase(&fresh)?)?;
        Ok(cell)
    }

    pub fn device(&self) -> &Device {
        &self.device
    }

    pub fn volts(&self) -> &OperatingVoltages {
        &self.volts
    }

    pub fn access(&self) -> &AccessTransistor {
        &self.access
    }

    pub fn hold_window(&self) -> HoldWindow {
        self.window
    }

    /// Sense threshold (A).
    pub fn i_sense(&self) -> f64 {
        (self.i_on * self.i_off).sqrt()
    }

    /// `(i_on, i_off)` of a freshly programmed and a freshly erased cell (A).
    pub fn reference_currents(&self) -> (f64, f64) {
        (self.i_on, self.i_off)
    }

    /// Whether `v_m` sits inside the hold window with the required margin.
    pub fn margin_ok(&self) -> bool {
        self.window.admits(self.volts.v_m, HOLD_MARGIN)
    }

    /// Unswitched cell clamped at `v_m`.
    pub fn fresh(&self) -> CellState {
        let (_, afe) = self
            .device
            .canonical_state(&self.device.fresh_state(), self.volts.v_m)
            .expect("fresh film state solves at v_m");
        CellState {
            node_v: self.volts.v_m,
            afe,
            drift_clock: 0.0,
            stored_bit_intent: None,
            stored: Stored::Fresh,
        }
    }

    /// Moves the node quasi-statically from its current level to `target`
    /// and leaves it there.
    fn drive(&self, state: &CellState, target: f64) -> Result<CellState, CellError> {
        let mut afe = state.afe.clone();
        if target != state.node_v {
            for v in ramp(state.node_v, target, NODE_STEP) {
                afe = self.device.solve_stack(&afe, v)?.1;
            }
        }
        let (_, afe) = self.device.canonical_state(&afe, target)?;
        Ok(CellState {
            node_v: target,
            afe,
            ..state.clone()
        })
    }

    /// Full-settling pulse to `level` followed by re-clamping at `v_m`.
    fn pulse(&self, state: &CellState, level: f64) -> Result<CellState, CellError> {
        let top = self.drive(state, level)?;
        self.drive(&top, self.volts.v_m)
    }

    /// Writes `bit`: '1' drives the node to `v_w`, '0' grounds it.
    pub fn write(&self, state: &CellState, bit: bool) -> Result<CellState, CellError> {
        self.volts.validate(&self.access)?;
        let level = if bit { self.volts.v_w } else { 0.0 };
        let mut next = self.pulse(state, level)?;
        next.drift_clock = 0.0;
        next.stored_bit_intent = Some(bit);
        next.stored = if bit { Stored::One } else { Stored::ZeroGround };
        Ok(next)
    }

    /// Erases with the negative bitline level `v_e`.
    pub fn erase(&self, state: &CellState) -> Result<CellState, CellError> {
        self.volts.validate(&self.access)?;
        let mut next = self.pulse(state, self.volts.v_e)?;
        next.drift_clock = 0.0;
        next.stored_bit_intent = Some(false);
        next.stored = Stored::Erased;
        Ok(next)
    }

    fn drift_shift(&self, state: &CellState) -> f64 {
        let t = state.drift_clock;
        match state.stored {
            Stored::One => self.drift_bipolar.vth_shift(t).0,
            Stored::ZeroGround => self.drift_unipolar.vth_shift(t).1,
            Stored::Erased | Stored::Fresh => self.drift_bipolar.vth_shift(t).1,
        }
    }

    /// Read-path current of the cell at `v_m`, including hold drift (A).
    pub fn current(&self, state: &CellState) -> Result<f64, CellError> {
        let (sol, _) = self.device.solve_stack(&state.afe, self.volts.v_m)?;
        let i_d = self.device.drain_current(sol.v_int - self.drift_shift(state), V_DS_READ);
        Ok(i_d.min(self.volts.vdd_read / self.access.on_resistance))
    }

    /// Precharges the read bitline and senses whether the AFeFET discharges
    /// it. The gate stays at `v_m`, so the returned state equals the input.
    pub fn read(&self, state: &CellState) -> Result<(ReadResult, CellState), CellError> {
        let i_read = self.current(state)?;
        Ok((
            ReadResult {
                bit: i_read >= self.i_sense(),
                i_read,
            },
            state.clone(),
        ))
    }

    /// Holds for `dt` seconds. At the nominal clamp the write transistor has
    /// equal source and drain voltages, so its leakage power is exactly zero
    /// and the cell dissipates only gate leakage. A different `v_hold` moves
    /// the node there for the hold and re-clamps it to `v_m` afterwards.
    pub fn hold(&self, state: &CellState, dt: f64, v_hold: Option<f64>) -> Result<HoldResult, CellError> {
        if !(dt >= 0.0) {
            return Err(CellError::Config(format!("hold time {dt} s must be non-negative")));
        }
        let v_m = self.volts.v_m;
        let v = v_hold.unwrap_or(v_m);
        let mut next = if v == v_m || dt == 0.0 {
            state.clone()
        } else {
            let held = self.drive(state, v)?;
            self.drive(&held, v_m)?
        };
        next.drift_clock += dt;
        // Bitline and node share the clamp level.
        let (v_bitline, v_node) = (v_m, v_m);
        let ds_leakage_power = self.access.off_subthreshold_conductance * (v_bitline - v_node) * (v_bitline - v_node);
        Ok(HoldResult {
            state: next,
            ds_leakage_power,
            hold_power: self.access.gate_leak * v,
        })
    }
}

/// Hold window from a full `v_w -> v_e -> v_w` loop and a unipolar
/// `v_w -> 0 -> v_w` loop: the first down-switch of the programmed branch and
/// the first up-switch above 0 V of either erased branch.
pub fn hold_window(device: &Device, volts: &OperatingVoltages) -> Result<HoldWindow, DeviceError> {
    let (_, top) = device.solve_stack(&device.fresh_state(), volts.v_w)?;
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for v_low in [volts.v_e, 0.0] {
        let mut w = ramp(volts.v_w, v_low, NODE_STEP);
        w.extend(ramp(v_low, volts.v_w, NODE_STEP));
        let (trace, _) = device.sweep_currents(&top, &w, V_DS_READ)?;
        if let Some(s) = first_switch(&trace, Branch::Down, |v| v > v_low) {
            lo = lo.max(s);
        }
        if let Some(s) = first_switch(&trace, Branch::Up, |v| v > 0.0) {
            hi = hi.min(s);
        }
    }
    Ok(HoldWindow { lo, hi })
}

fn first_switch(trace: &SweepTrace, which: Branch, keep: impl Fn(f64) -> bool) -> Option<f64> {
    let run = if which == Branch::Up { trace.up_branch() } else { trace.down_branch() };
    run.iter().skip(1).find(|s| s.switched && keep(s.v_gs)).map(|s| s.v_gs)
}

/// One line of a cell operation script.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CellOp {
    Write { row: usize, col: usize, bit: bool },
    Erase { row: usize, col: usize },
    Read { row: usize, col: usize },
    Hold { seconds: f64, v_m: Option<f64> },
}

impl fmt::Display for CellOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellOp::Write { row, col, bit } => write!(f, "WRITE {row} {col} {}", u8::from(*bit)),
            CellOp::Erase { row, col } => write!(f, "ERASE {row} {col}"),
            CellOp::Read { row, col } => write!(f, "READ {row} {col}"),
            CellOp::Hold { seconds, v_m: None } => write!(f, "HOLD {seconds}"),
            CellOp::Hold { seconds, v_m: Some(v) } => write!(f, "HOLD {seconds} {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptError {
    pub line: usize,
    /// 1-based index of the offending token.
    pub token: usize,
    pub message: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, token {}: {}", self.line, self.token, self.message)
    }
}

impl std::error::Error for ScriptError {}

/// Parses `WRITE r c b`, `ERASE r c`, `READ r c` and `HOLD seconds [v_m]`
/// lines. Blank lines and `#` comments are skipped; keywords are case
/// insensitive.
pub fn parse_script(text: &str) -> Result<Vec<CellOp>, ScriptError> {
    let mut ops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let err = |token: usize, message: String| ScriptError { line, token, message };
        let arity = |n: usize| -> Result<(), ScriptError> {
            if toks.len() == n {
                Ok(())
            } else {
                Err(err(toks.len().min(n) + 1, format!("{} takes {} arguments", toks[0], n - 1)))
            }
        };
        let index = |k: usize| -> Result<usize, ScriptError> {
            toks[k].parse().map_err(|_| err(k + 1, format!("expected an index, got {:?}", toks[k])))
        };
        let number = |k: usize| -> Result<f64, ScriptError> {
            toks[k]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(k + 1, format!("expected a number, got {:?}", toks[k])))
        };
        let op = match toks[0].to_ascii_uppercase().as_str() {
            "WRITE" => {
                arity(4)?;
                let bit = match toks[3] {
                    "0" => false,
                    "1" => true,
                    other => return Err(err(4, format!("bit must be 0 or 1, got {other:?}"))),
                };
                CellOp::Write {
                    row: index(1)?,
                    col: index(2)?,
                    bit,
                }
            }
            "ERASE" => {
                arity(3)?;
                CellOp::Erase {
                    row: index(1)?,
                    col: index(2)?,
                }
            }
            "READ" => {
                arity(3)?;
                CellOp::Read {
                    row: index(1)?,
                    col: index(2)?,
                }
            }
            "HOLD" => {
                if !(toks.len() == 2 || toks.len() == 3) {
                    return Err(err(toks.len().min(3) + 1, "HOLD takes a duration and an optional v_m".into()));
                }
                let seconds = number(1)?;
                if seconds < 0.0 {
                    return Err(err(2, "hold time must be non-negative".into()));
                }
                CellOp::Hold {
                    seconds,
                    v_m: if toks.len() == 3 { Some(number(2)?) } else { None },
                }
            }
            other => return Err(err(1, format!("unknown command {other:?}"))),
        };
        ops.push(op);
    }
    Ok(ops)
}

/// One executed operation as logged by [`CellArray::apply`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub op: String,
    pub row: Option<usize>,
    pub col: Option<usize>,
    /// Storage-node voltage after the operation (V).
    pub node_v: f64,
    /// Film polarization of the addressed cell (C/m^2); `None` for holds.
    pub p: Option<f64>,
    pub bit_read: Option<bool>,
    /// Array hold power during a hold (W).
    pub hold_power: Option<f64>,
}

/// Small array of cells sharing one design.
#[derive(Debug, Clone)]
pub struct CellArray<'a> {
    cell: &'a Cell,
    rows: usize,
    cols: usize,
    cells: Vec<CellState>,
}

impl<'a> CellArray<'a> {
    pub fn new(cell: &'a Cell, rows: usize, cols: usize) -> Result<Self, CellError> {
        if rows == 0 || cols == 0 {
            return Err(CellError::Config(format!("array shape {rows}x{cols} must be at least 1x1")));
        }
        Ok(Self {
            cell,
            rows,
            cols,
            cells: vec![cell.fresh(); rows * cols],
        })
    }

    pub fn state(&self, row: usize, col: usize) -> Result<&CellState, CellError> {
        Ok(&self.cells[self.index(row, col)?])
    }

    fn index(&self, row: usize, col: usize) -> Result<usize, CellError> {
        if row >= self.rows || col >= self.cols {
            return Err(CellError::Address {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(row * self.cols + col)
    }

    fn polarization(&self, state: &CellState) -> Result<f64, CellError> {
        Ok(self.cell.device.solve_stack(&state.afe, state.node_v)?.0.p)
    }

    pub fn apply(&mut self, op: &CellOp) -> Result<LogEntry, CellError> {
        let addressed = |row: usize, col: usize| (Some(row), Some(col));
        match *op {
            CellOp::Write { row, col, bit } => {
                let k = self.index(row, col)?;
                self.cells[k] = self.cell.write(&self.cells[k], bit)?;
                self.entry(op, addressed(row, col), k, None)
            }
            CellOp::Erase { row, col } => {
                let k = self.index(row, col)?;
                self.cells[k] = self.cell.erase(&self.cells[k])?;
                self.entry(op, addressed(row, col), k, None)
            }
            CellOp::Read { row, col } => {
                let k = self.index(row, col)?;
                let (r, _) = self.cell.read(&self.cells[k])?;
                self.entry(op, addressed(row, col), k, Some(r.bit))
            }
            CellOp::Hold { seconds, v_m } => {
                let mut power = 0.0;
                for s in self.cells.iter_mut() {
                    let h = self.cell.hold(s, seconds, v_m)?;
                    power += h.hold_power;
                    *s = h.state;
                }
                Ok(LogEntry {
                    op: op.to_string(),
                    row: None,
                    col: None,
                    node_v: self.cell.volts.v_m,
                    p: None,
                    bit_read: None,
                    hold_power: Some(power),
                })
            }
        }
    }

    fn entry(&self, op: &CellOp, (row, col): (Option<usize>, Option<usize>), k: usize, bit_read: Option<bool>) -> Result<LogEntry, CellError> {
        let s = &self.cells[k];
        Ok(LogEntry {
            op: op.to_string(),
            row,
            col,
            node_v: s.node_v,
            p: Some(self.polarization(s)?),
            bit_read,
            hold_power: None,
        })
    }

    pub fn run(&mut self, ops: &[CellOp]) -> Result<Vec<LogEntry>, CellError> {
        ops.iter().map(|op| self.apply(op)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisturbReport {
    /// Largest storage-node excursion from `v_m` seen by any unselected cell (V).
    pub max_excursion: f64,
    /// Unselected cells whose film switched while a neighbour was accessed.
    pub switched_cells: Vec<(usize, usize)>,
    /// Cells whose final read disagrees with the last bit written to them.
    pub mismatched_cells: Vec<(usize, usize)>,
    pub margin_ok: bool,
    pub disturbed: bool,
}

/// Runs `pattern` on a `rows x cols` array and checks the half-selected
/// cells. Unselected rows keep their write wordline grounded, so their nodes
/// stay isolated at `v_m`; unselected columns of a selected row see the write
/// bitline parked at `v_m`. Each unselected node is re-solved at the voltage
/// it sees, and the array is read back at the end.
pub fn check_disturb(cell: &Cell, rows: usize, cols: usize, pattern: &[CellOp]) -> Result<DisturbReport, CellError> {
    let mut arr = CellArray::new(cell, rows, cols)?;
    let v_m = cell.volts.v_m;
    let mut max_excursion: f64 = 0.0;
    let mut switched = Vec::new();
    for op in pattern {
        let target = match *op {
            CellOp::Write { row, col, .. } | CellOp::Erase { row, col } | CellOp::Read { row, col } => Some((row, col)),
            CellOp::Hold { .. } => None,
        };
        arr.apply(op)?;
        let Some((row, col)) = target else { continue };
        for r in 0..rows {
            for c in 0..cols {
                if (r, c) == (row, col) {
                    continue;
                }
                let k = arr.index(r, c)?;
                // Wordline off: isolated node. Wordline on: bitline at v_m.
                let v_node = v_m;
                max_excursion = max_excursion.max((v_node - v_m).abs());
                let (sol, _) = cell.device.solve_stack(&arr.cells[k].afe, v_node)?;
                if sol.switching && !switched.contains(&(r, c)) {
                    switched.push((r, c));
                }
            }
        }
    }
    let mut mismatched = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let s = arr.state(r, c)?;
            if let Some(bit) = s.stored_bit_intent {
                if cell.read(s)?.0.bit != bit {
                    mismatched.push((r, c));
                }
            }
        }
    }
    let margin_ok = cell.margin_ok();
    let disturbed = !margin_ok || !switched.is_empty() || !mismatched.is_empty();
    Ok(DisturbReport {
        max_excursion,
        switched_cells: switched,
        mismatched_cells: mismatched,
        margin_ok,
        disturbed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_script() {
        let ops = parse_script("WRITE 0 1 1\n# c\n\nread 0 1\nHOLD 1e4\nHOLD 10 0\nERASE 1 0\n").unwrap();
        assert_eq!(
            ops,
            vec![
                CellOp::Write { row: 0, col: 1, bit: true },
                CellOp::Read { row: 0, col: 1 },
                CellOp::Hold { seconds: 1e4, v_m: None },
                CellOp::Hold { seconds: 10.0, v_m: Some(0.0) },
                CellOp::Erase { row: 1, col: 0 },
            ]
        );
        assert!(parse_script("").unwrap().is_empty());
    }

    #[test]
    fn script_errors_carry_position() {
        let e = parse_script("READ 0 0\nFLIP 0 0\n").unwrap_err();
        assert_eq!((e.line, e.token), (2, 1));
        let e = parse_script("WRITE 0 0 2").unwrap_err();
        assert_eq!((e.line, e.token), (1, 4));
        let e = parse_script("HOLD x").unwrap_err();
        assert_eq!((e.line, e.token), (1, 2));
    }

    #[test]
    fn ops_round_trip_through_display() {
        let text = "WRITE 2 3 0\nERASE 1 1\nREAD 0 0\nHOLD 5\nHOLD 5 0\n";
        let ops = parse_script(text).unwrap();
        let back: String = ops.iter().map(|o| format!("{o}\n")).collect();
        assert_eq!(back, text);
    }

    #[test]
    fn v_h_precondition() {
        let access = AccessTransistor {
            on_resistance: 1e4,
            off_subthreshold_conductance: 1e-12,
            gate_leak: 1e-11,
            v_th: 0.5,
        };
        let mut v = OperatingVoltages {
            v_w: 4.0,
            v_e: -2.0,
            v_h: 5.0,
            v_m: 1.5,
            vdd_read: 1.0,
        };
        assert!(v.validate(&access).is_ok());
        v.v_h = 4.4;
        assert!(matches!(v.validate(&access), Err(CellError::Config(_))));
    }
}
