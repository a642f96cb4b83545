use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LgdError {
    #[error("invalid Landau coefficients: {0}")]
    InvalidParams(String),
    #[error("root solver failed at e = {e}: max residual {residual:e}")]
    RootSolve { e: f64, residual: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeviceError {
    #[error("invalid device parameter: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Lgd(#[from] LgdError),
    #[error("stack solve did not converge at v_gs = {v_gs} V after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        v_gs: f64,
        iterations: usize,
        residual: f64,
    },
    #[error("empty waveform")]
    EmptyWaveform,
    #[error("no threshold crossing on the {0} branch")]
    NoCrossing(&'static str),
    #[error("v_m = {0} V outside the swept range")]
    OutOfRange(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CellError {
    #[error("invalid operating voltages: {0}")]
    Config(String),
    #[error(transparent)]
    Device(#[from] DeviceError),
    #[error("cell ({row}, {col}) outside a {rows}x{cols} array")]
    Address {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("sample abscissae must be positive and strictly increasing")]
    NotIncreasing,
    #[error("degenerate fit: all abscissae equal")]
    Degenerate,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArrayError {
    #[error("invalid technology parameters: {0}")]
    InvalidParams(String),
    #[error("calibration needs at least {need} endpoints, got {got}")]
    TooFewEndpoints { need: usize, got: usize },
    #[error("singular calibration system")]
    Singular,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}
