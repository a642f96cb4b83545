//! Simulated retention of the calibrated cell and the extrapolated time at
//! which the ON/OFF ratio reaches 10.

use lfvm::calibration::{self, RATIO_MIN};
use lfvm::cli::{fit_retention_rows, retention_rows, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cell = calibration::cell();
    let times: Vec<f64> = (0..=12).map(|k| 10f64.powf(1.0 + 0.25 * k as f64)).collect();
    for mode in [Mode::Unipolar, Mode::Bipolar] {
        let rows = retention_rows(&cell, mode, &times)?;
        let fit = fit_retention_rows(&rows, RATIO_MIN)?;
        match fit.crossing {
            Some(t) if !fit.exceeds_horizon => println!("{mode:?}: ratio {RATIO_MIN} reached at {t:.3e} s"),
            _ => println!("{mode:?}: ratio stays above {RATIO_MIN} beyond the horizon"),
        }
    }
    Ok(())
}
