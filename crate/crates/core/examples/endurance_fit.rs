//! Memory window under cycling stress and the extrapolated cycle count at
//! which it halves.

use lfvm::calibration;
use lfvm::cli::{endurance_rows, fit_endurance_rows, Mode};
use lfvm::reliability::fit_endurance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let line: Vec<(f64, f64)> = (0..=8).map(|k| (10f64.powi(k), 1.0 - 0.05 * k as f64)).collect();
    let fit = fit_endurance(&line, 1.0)?;
    println!("mw = 1 - 0.05 log10(n): halves at {:.6e} cycles", fit.crossing.unwrap_or(f64::NAN));

    let file = calibration::device_file();
    let cycles: Vec<f64> = (0..=8).map(|k| 10f64.powi(k)).collect();
    for mode in [Mode::Unipolar, Mode::Bipolar] {
        let rows = endurance_rows(file, mode, &cycles)?;
        let fit = fit_endurance_rows(&rows, None)?;
        println!("{mode:?}: MW {:.3} V -> {:.3} V, halves at {:.3e} cycles", rows[0].mw_v, rows[rows.len() - 1].mw_v, fit.crossing.unwrap_or(f64::NAN));
    }
    Ok(())
}
