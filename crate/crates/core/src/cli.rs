//! Command-line front end. Every subcommand renders its result to a string
//! that goes to `--out` or stdout; diagnostics go to stderr.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::array::{compare, standard_sizes, ArrayConfig, PowerReport, TechParams};
use crate::calibration::{self, I_CRIT_PER_WIDTH, V_DS};
use crate::cell::{parse_script, Cell, CellArray, CellState};
use crate::config::{self, DeviceFile, LgdFile, TechFile};
use crate::device::{extract_window_metrics, ramp, Device, SweepTrace, WindowMetrics};
use crate::error::ConfigError;
use crate::lgd::{trace_pe_loop, triangle_wave, AfeBranchState, LgdParams};
use crate::reliability::{cycling_stress, fit_endurance, fit_retention, FitResult};

/// Film thickness used by `pv-loop` when the parameter file gives none (m).
pub const DEFAULT_T_AFE: f64 = 10e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Model(String),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Model(_) | CliError::Output { .. } => 1,
        }
    }
}

fn model(e: impl std::fmt::Display) -> CliError {
    CliError::Model(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Unipolar,
    Bipolar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitKind {
    Retention,
    Endurance,
}

#[derive(Debug, Parser)]
#[command(name = "lfvm", version, about = "Leakage-free volatile memory device, cell and array models")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Parameter file; the bundled calibration is used when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Worker threads for independent sweep points.
    #[arg(long, global = true, default_value_t = 1)]
    pub parallel: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polarization versus film voltage under a triangular drive.
    PvLoop {
        /// Peak film voltage (V).
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        amplitude: f64,
        #[arg(long, default_value_t = 5e-3)]
        step: f64,
    },
    /// Drain current and gate capacitance loops for a list of area ratios.
    Idvg {
        #[arg(long, value_delimiter = ',', default_values_t = [8.0, 16.0, 24.0])]
        ar: Vec<f64>,
        #[arg(long, default_value_t = calibration::V_LOW_UNIPOLAR, allow_negative_numbers = true)]
        v_low: f64,
        #[arg(long, default_value_t = calibration::V_HIGH, allow_negative_numbers = true)]
        v_high: f64,
        #[arg(long, default_value_t = calibration::SWEEP_STEP)]
        step: f64,
        /// Read voltage for the ON/OFF ratio (V).
        #[arg(long, default_value_t = calibration::V_M)]
        v_m: f64,
    },
    /// ON/OFF ratio versus hold voltage for unipolar and bipolar operation.
    VmStudy {
        #[arg(long, default_value_t = 1.0)]
        from: f64,
        #[arg(long, default_value_t = 2.0)]
        to: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Runs a WRITE/ERASE/READ/HOLD script on a small cell array.
    CellDemo {
        script: PathBuf,
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
    },
    /// Simulated retention measurement of a written '1' and a stored '0'.
    Retention {
        #[arg(long, value_enum, default_value = "unipolar")]
        mode: Mode,
        /// First hold time (s).
        #[arg(long, default_value_t = 10.0)]
        t_min: f64,
        /// Last hold time (s).
        #[arg(long, default_value_t = 1e4)]
        t_max: f64,
        #[arg(long, default_value_t = 13)]
        points: usize,
    },
    /// Simulated endurance measurement: memory window after stress cycling.
    Endurance {
        #[arg(long, value_enum, default_value = "bipolar")]
        mode: Mode,
        #[arg(long, default_value_t = 1e8)]
        n_max: f64,
        #[arg(long, default_value_t = 9)]
        points: usize,
    },
    /// Log-time extrapolation of a retention or endurance CSV.
    Fit {
        #[arg(value_enum)]
        kind: FitKind,
        data: PathBuf,
        /// Minimum readable ON/OFF ratio (retention).
        #[arg(long, default_value_t = calibration::RATIO_MIN)]
        ratio_min: f64,
        /// Fresh memory window (V); the first row is used when omitted (endurance).
        #[arg(long)]
        mw0: Option<f64>,
    },
    /// Retention power and refresh occupancy of SRAM, eDRAM and 2T1AF arrays.
    ArrayCompare {
        /// Array sizes in bits (1 Kb to 256 Kb in powers of four when omitted).
        #[arg(long, value_delimiter = ',')]
        bits: Vec<usize>,
    },
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let text = render(cli)?;
    match &cli.common.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Output {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Output text of a command.
pub fn render(cli: &Cli) -> Result<String, CliError> {
    let c = &cli.common;
    if c.parallel == 0 {
        return Err(CliError::Usage("--parallel must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.parallel)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::PvLoop { amplitude, step } => pv_loop(c, *amplitude, *step),
        Command::Idvg {
            ar,
            v_low,
            v_high,
            step,
            v_m,
        } => idvg(c, ar, *v_low, *v_high, *step, *v_m),
        Command::VmStudy { from, to, step } => vm_study(c, *from, *to, *step),
        Command::CellDemo { script, rows, cols } => cell_demo(c, script, *rows, *cols),
        Command::Retention {
            mode,
            t_min,
            t_max,
            points,
        } => retention(c, *mode, *t_min, *t_max, *points),
        Command::Endurance { mode, n_max, points } => endurance(c, *mode, *n_max, *points),
        Command::Fit {
            kind,
            data,
            ratio_min,
            mw0,
        } => fit(c, *kind, data, *ratio_min, *mw0),
        Command::ArrayCompare { bits } => array_compare(c, bits),
    })
}

fn device_file(c: &Common) -> Result<DeviceFile, CliError> {
    match &c.config {
        Some(p) => Ok(config::load(p)?),
        None => Ok(calibration::device_file().clone()),
    }
}

fn device(c: &Common) -> Result<Device, CliError> {
    let file = device_file(c)?;
    let origin = c.config.as_ref().map_or("device.toml".into(), |p| p.display().to_string());
    file.device().map_err(|e| {
        CliError::Config(ConfigError::Invalid {
            path: origin,
            message: e.to_string(),
        })
    })
}

fn cell(c: &Common) -> Result<Cell, CliError> {
    let origin = c.config.as_ref().map_or("device.toml".into(), |p| p.display().to_string());
    Ok(device_file(c)?.cell(&origin)?)
}

fn check_step(step: f64) -> Result<(), CliError> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("step must be positive, got {step}")))
    }
}

fn check_range(start: f64, stop: f64) -> Result<(), CliError> {
    if start.is_finite() && stop.is_finite() && start != stop {
        Ok(())
    } else {
        Err(CliError::Usage(format!("sweep start {start} and stop {stop} must differ")))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(model)?;
    }
    let bytes = w.into_inner().map_err(model)?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn emit<T: Serialize>(c: &Common, rows: &[T]) -> Result<String, CliError> {
    match c.format {
        Format::Csv => to_csv(rows),
        Format::Json => Ok(to_json(&rows)),
    }
}

#[derive(Debug, Serialize)]
struct PvRow {
    #[serde(rename = "v_afe_V")]
    v_afe_v: f64,
    #[serde(rename = "e_V_per_m")]
    e_v_per_m: f64,
    #[serde(rename = "p_C_per_m2")]
    p_c_per_m2: f64,
    switching: u8,
}

#[derive(Debug, Serialize)]
struct PvSample {
    v_afe: f64,
    e: f64,
    p: f64,
    switching: bool,
}

fn pv_loop(c: &Common, amplitude: f64, step: f64) -> Result<String, CliError> {
    check_step(step)?;
    if !(amplitude > 0.0 && amplitude.is_finite()) {
        return Err(CliError::Usage(format!("amplitude must be positive, got {amplitude}")));
    }
    let (lgd, t_afe): (LgdParams, f64) = match &c.config {
        Some(p) => {
            let f: LgdFile = config::load(p)?;
            f.lgd.validate().map_err(|e| ConfigError::Invalid {
                path: p.display().to_string(),
                message: e.to_string(),
            })?;
            (f.lgd, f.t_afe().unwrap_or(DEFAULT_T_AFE))
        }
        None => {
            let d = calibration::device_file();
            (d.lgd, d.stack.t_afe)
        }
    };
    let volts = triangle_wave(amplitude, step);
    let fields: Vec<f64> = volts.iter().map(|v| v / t_afe / lgd.e_scale).collect();
    let start = AfeBranchState::virgin(&lgd).map_err(model)?;
    let trace = trace_pe_loop(&lgd, &fields, start);
    let samples = volts.iter().zip(&trace).map(|(&v, s)| PvSample {
        v_afe: v,
        e: v / t_afe,
        p: s.p * lgd.p_scale,
        switching: s.switched,
    });
    match c.format {
        Format::Csv => to_csv(
            &samples
                .map(|s| PvRow {
                    v_afe_v: s.v_afe,
                    e_v_per_m: s.e,
                    p_c_per_m2: s.p,
                    switching: u8::from(s.switching),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => Ok(to_json(&samples.collect::<Vec<_>>())),
    }
}

#[derive(Debug, Serialize)]
struct IdvgRow {
    ar: f64,
    #[serde(rename = "v_gs_V")]
    v_gs_v: f64,
    #[serde(rename = "i_d_A")]
    i_d_a: f64,
    #[serde(rename = "c_gg_F_per_m2")]
    c_gg_f_per_m2: f64,
    #[serde(rename = "p_C_per_m2")]
    p_c_per_m2: f64,
    #[serde(rename = "v_int_V")]
    v_int_v: f64,
    branch: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdvgSummary {
    pub ar: f64,
    pub mw: Option<f64>,
    pub on_off: Option<f64>,
    pub v_th_p: Option<f64>,
    pub v_th_e: Option<f64>,
}

#[derive(Debug, Serialize)]
struct IdvgTrace<'a> {
    ar: f64,
    trace: &'a SweepTrace,
}

#[derive(Debug, Serialize)]
struct IdvgJson<'a> {
    summary: &'a [IdvgSummary],
    traces: Vec<IdvgTrace<'a>>,
}

fn idvg(c: &Common, ars: &[f64], v_low: f64, v_high: f64, step: f64, v_m: f64) -> Result<String, CliError> {
    check_step(step)?;
    check_range(v_high, v_low)?;
    if ars.is_empty() || ars.iter().any(|a| !(*a > 0.0)) {
        return Err(CliError::Usage("--ar needs positive area ratios".into()));
    }
    let base = device(c)?;
    let results: Vec<(SweepTrace, IdvgSummary)> = ars
        .par_iter()
        .map(|&ar| {
            let d = base.with_ar(ar).map_err(model)?;
            let (_, top) = d.solve_stack(&d.fresh_state(), v_high).map_err(model)?;
            let mut w = vec![v_high];
            w.extend(ramp(v_high, v_low, step));
            w.extend(ramp(v_low, v_high, step));
            let (trace, _) = d.sweep(&top, &w, V_DS).map_err(model)?;
            let m = extract_window_metrics(&trace, v_m, I_CRIT_PER_WIDTH).ok();
            let summary = IdvgSummary {
                ar,
                mw: m.map(|m| m.mw),
                on_off: m.map(|m| m.on_off),
                v_th_p: m.map(|m| m.v_th_p),
                v_th_e: m.map(|m| m.v_th_e),
            };
            Ok((trace, summary))
        })
        .collect::<Result<_, CliError>>()?;
    let summary: Vec<IdvgSummary> = results.iter().map(|r| r.1).collect();
    for s in &summary {
        let f = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.4}"));
        eprintln!(
            "ar {:>5}  mw {} V  on_off {}  v_th_p {} V  v_th_e {} V",
            s.ar,
            f(s.mw),
            s.on_off.map_or("n/a".to_string(), |v| format!("{v:.4e}")),
            f(s.v_th_p),
            f(s.v_th_e)
        );
    }
    match c.format {
        Format::Json => Ok(to_json(&IdvgJson {
            summary: &summary,
            traces: results.iter().map(|(t, s)| IdvgTrace { ar: s.ar, trace: t }).collect(),
        })),
        Format::Csv => {
            let rows: Vec<IdvgRow> = results
                .iter()
                .flat_map(|(t, s)| {
                    t.samples.iter().map(move |x| IdvgRow {
                        ar: s.ar,
                        v_gs_v: x.v_gs,
                        i_d_a: x.i_d,
                        c_gg_f_per_m2: x.c_gg,
                        p_c_per_m2: x.p,
                        v_int_v: x.v_int,
                        branch: x.branch.as_str(),
                    })
                })
                .collect();
            to_csv(&rows)
        }
    }
}

#[derive(Debug, Serialize)]
struct VmRow {
    #[serde(rename = "v_m_V")]
    v_m_v: f64,
    on_off_unipolar: f64,
    on_off_bipolar: f64,
    #[serde(rename = "hold_leakage_32x32_W")]
    hold_leakage_32x32_w: f64,
}

/// Number of grid points from `from` to `to` inclusive at spacing `step`.
fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    check_step(step)?;
    if !(to >= from) {
        return Err(CliError::Usage(format!("range {from}..{to} is empty")));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| from + k as f64 * step).collect())
}

fn vm_study(c: &Common, from: f64, to: f64, step: f64) -> Result<String, CliError> {
    let vms = grid(from, to, step)?;
    let d = device(c)?;
    let traces: Vec<SweepTrace> = [calibration::V_LOW_UNIPOLAR, calibration::V_LOW_BIPOLAR]
        .par_iter()
        .map(|&v_low| calibration::characterize(&d, v_low, calibration::SWEEP_STEP).map_err(model))
        .collect::<Result<_, _>>()?;
    let law = calibration::leak_law();
    let arr = ArrayConfig::new(32, 32).expect("valid shape");
    let rows = vms
        .iter()
        .map(|&v| {
            let m = |t: &SweepTrace| extract_window_metrics(t, v, I_CRIT_PER_WIDTH).map(|m| m.on_off).map_err(model);
            Ok(VmRow {
                v_m_v: v,
                on_off_unipolar: m(&traces[0])?,
                on_off_bipolar: m(&traces[1])?,
                hold_leakage_32x32_w: crate::array::vm_leakage(&arr, v, &law),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    emit(c, &rows)
}

fn cell_demo(c: &Common, script: &Path, rows: usize, cols: usize) -> Result<String, CliError> {
    let text = fs::read_to_string(script).map_err(|e| ConfigError::Io {
        path: script.display().to_string(),
        message: e.to_string(),
    })?;
    let ops = parse_script(&text).map_err(|e| ConfigError::Parse {
        path: script.display().to_string(),
        message: e.to_string(),
    })?;
    let cell = cell(c)?;
    let mut arr = CellArray::new(&cell, rows, cols).map_err(|e| CliError::Usage(e.to_string()))?;
    let log = arr.run(&ops).map_err(model)?;
    match c.format {
        Format::Json => Ok(to_json(&log)),
        Format::Csv => {
            #[derive(Default, Serialize)]
            struct Row {
                op: String,
                row: Option<usize>,
                col: Option<usize>,
                #[serde(rename = "node_v_V")]
                node_v_v: f64,
                #[serde(rename = "p_C_per_m2")]
                p_c_per_m2: Option<f64>,
                bit_read: Option<u8>,
                #[serde(rename = "hold_power_W")]
                hold_power_w: Option<f64>,
            }
            let rows: Vec<Row> = log
                .into_iter()
                .map(|e| Row {
                    op: e.op,
                    row: e.row,
                    col: e.col,
                    node_v_v: e.node_v,
                    p_c_per_m2: e.p,
                    bit_read: e.bit_read.map(u8::from),
                    hold_power_w: e.hold_power,
                })
                .collect();
            if rows.is_empty() {
                let header = to_csv(&[Row::default()])?;
                return Ok(header.lines().next().map(|h| format!("{h}\n")).unwrap_or_default());
            }
            to_csv(&rows)
        }
    }
}

/// One retention measurement row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RetentionRow {
    pub t_seconds: f64,
    #[serde(rename = "current_A")]
    pub current_a: f64,
    pub state: StoredLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StoredLevel {
    On,
    Off,
}

/// One endurance measurement row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnduranceRow {
    pub cycles: f64,
    #[serde(rename = "mw_V")]
    pub mw_v: f64,
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || points < 2 {
        return Err(CliError::Usage(format!("need 0 < {lo} < {hi} and at least 2 points")));
    }
    let (a, b) = (lo.log10(), hi.log10());
    Ok((0..points)
        .map(|k| 10f64.powf(a + (b - a) * k as f64 / (points - 1) as f64))
        .collect())
}

/// Current of a written '1' and of a stored '0' (ground-written for
/// unipolar, erased for bipolar) after each hold time.
pub fn retention_rows(cell: &Cell, mode: Mode, times: &[f64]) -> Result<Vec<RetentionRow>, CliError> {
    let fresh = cell.fresh();
    let one = cell.write(&fresh, true).map_err(model)?;
    let zero = match mode {
        Mode::Unipolar => cell.write(&one, false),
        Mode::Bipolar => cell.erase(&one),
    }
    .map_err(model)?;
    let read_after = |s: &CellState, t: f64| -> Result<f64, CliError> {
        let held = cell.hold(s, t, None).map_err(model)?;
        cell.current(&held.state).map_err(model)
    };
    let mut rows = Vec::with_capacity(2 * times.len());
    for (state, level) in [(&one, StoredLevel::On), (&zero, StoredLevel::Off)] {
        let currents: Vec<f64> = times.par_iter().map(|&t| read_after(state, t)).collect::<Result<_, _>>()?;
        rows.extend(times.iter().zip(currents).map(|(&t_seconds, current_a)| RetentionRow { t_seconds, current_a, state: level }));
    }
    Ok(rows)
}

fn retention(c: &Common, mode: Mode, t_min: f64, t_max: f64, points: usize) -> Result<String, CliError> {
    let times = log_grid(t_min, t_max, points)?;
    emit(c, &retention_rows(&cell(c)?, mode, &times)?)
}

/// Memory window of the device after each stress count, swept over the
/// mode's voltage range.
pub fn endurance_rows(file: &DeviceFile, mode: Mode, cycles: &[f64]) -> Result<Vec<EnduranceRow>, CliError> {
    let d = file.device().map_err(model)?;
    let section = file
        .cycling
        .ok_or_else(|| CliError::Config(ConfigError::Invalid {
            path: "device file".into(),
            message: "missing [cycling.unipolar] / [cycling.bipolar] sections".into(),
        }))?;
    let (stress, v_low) = match mode {
        Mode::Unipolar => (section.unipolar, calibration::V_LOW_UNIPOLAR),
        Mode::Bipolar => (section.bipolar, calibration::V_LOW_BIPOLAR),
    };
    cycles
        .par_iter()
        .map(|&n| {
            let aged = cycling_stress(&d, n, &stress).map_err(model)?;
            let m: WindowMetrics = calibration::window(&aged, v_low, calibration::V_M).map_err(model)?;
            Ok(EnduranceRow { cycles: n, mw_v: m.mw })
        })
        .collect()
}

fn endurance(c: &Common, mode: Mode, n_max: f64, points: usize) -> Result<String, CliError> {
    let cycles = log_grid(1.0, n_max, points)?;
    emit(c, &endurance_rows(&device_file(c)?, mode, &cycles)?)
}

fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, CliError> {
    let origin = path.display().to_string();
    let mut r = csv::Reader::from_path(path).map_err(|e| ConfigError::Io {
        path: origin.clone(),
        message: e.to_string(),
    })?;
    r.deserialize()
        .map(|row| {
            row.map_err(|e| {
                let line = e.position().map_or(String::new(), |p| format!("line {}: ", p.line()));
                CliError::Config(ConfigError::Parse {
                    path: origin.clone(),
                    message: format!("{line}{e}"),
                })
            })
        })
        .collect()
}

/// Fit of a retention dataset.
pub fn fit_retention_rows(rows: &[RetentionRow], ratio_min: f64) -> Result<FitResult, CliError> {
    let pick = |level| {
        rows.iter()
            .filter(|r| r.state == level)
            .map(|r| (r.t_seconds, r.current_a))
            .collect::<Vec<_>>()
    };
    fit_retention(&pick(StoredLevel::On), &pick(StoredLevel::Off), ratio_min).map_err(model)
}

/// Fit of an endurance dataset; `mw0` defaults to the first row's window.
pub fn fit_endurance_rows(rows: &[EnduranceRow], mw0: Option<f64>) -> Result<FitResult, CliError> {
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.cycles, r.mw_v)).collect();
    let mw0 = mw0.or(rows.first().map(|r| r.mw_v)).unwrap_or(f64::NAN);
    fit_endurance(&points, mw0).map_err(model)
}

fn fit(c: &Common, kind: FitKind, data: &Path, ratio_min: f64, mw0: Option<f64>) -> Result<String, CliError> {
    if !(ratio_min > 0.0) {
        return Err(CliError::Usage(format!("--ratio-min must be positive, got {ratio_min}")));
    }
    let result = match kind {
        FitKind::Retention => fit_retention_rows(&read_rows(data)?, ratio_min)?,
        FitKind::Endurance => fit_endurance_rows(&read_rows(data)?, mw0)?,
    };
    match c.format {
        Format::Json => Ok(to_json(&result)),
        Format::Csv => to_csv(&[result]),
    }
}

#[derive(Debug, Serialize)]
struct PowerCsvRow {
    n_bits: usize,
    rows: usize,
    cols: usize,
    tech: &'static str,
    #[serde(rename = "power_W")]
    power_w: f64,
    inaccessible_fraction: f64,
    ratio_vs_af2t1: Option<f64>,
}

fn array_compare(c: &Common, bits: &[usize]) -> Result<String, CliError> {
    let techs: Vec<TechParams> = match &c.config {
        Some(p) => {
            let f: TechFile = config::load(p)?;
            for t in &f.tech {
                t.validate().map_err(|e| ConfigError::Invalid {
                    path: p.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            f.tech
        }
        None => calibration::tech(),
    };
    let sizes = if bits.is_empty() {
        standard_sizes()
    } else {
        bits.iter()
            .map(|&n| ArrayConfig::with_bits(n).map_err(|e| CliError::Usage(e.to_string())))
            .collect::<Result<_, _>>()?
    };
    let report: PowerReport = compare(&sizes, &techs);
    match c.format {
        Format::Json => Ok(to_json(&report)),
        Format::Csv => {
            let rows: Vec<PowerCsvRow> = report
                .rows
                .iter()
                .map(|r| PowerCsvRow {
                    n_bits: r.n_bits,
                    rows: r.rows,
                    cols: r.cols,
                    tech: r.tech.key(),
                    power_w: r.power,
                    inaccessible_fraction: r.inaccessible_fraction,
                    ratio_vs_af2t1: r.ratio_vs_af2t1,
                })
                .collect();
            to_csv(&rows)
        }
    }
}
