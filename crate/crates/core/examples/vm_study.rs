//! ON/OFF ratio versus hold voltage for 0 V and -2 V erase, together with
//! the hold leakage of a 32x32 array.

use lfvm::array::{vm_leakage, ArrayConfig};
use lfvm::calibration::{self, V_LOW_BIPOLAR, V_LOW_UNIPOLAR};
use lfvm::device::extract_window_metrics;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = calibration::device();
    let uni = calibration::characterize(&d, V_LOW_UNIPOLAR, calibration::SWEEP_STEP)?;
    let bi = calibration::characterize(&d, V_LOW_BIPOLAR, calibration::SWEEP_STEP)?;
    let law = calibration::leak_law();
    let arr = ArrayConfig::new(32, 32)?;
    println!("{:>5} {:>12} {:>12} {:>12}", "v_m", "0 V erase", "-2 V erase", "leak (W)");
    for k in 0..=10 {
        let v_m = 1.0 + 0.1 * k as f64;
        let u = extract_window_metrics(&uni, v_m, calibration::I_CRIT_PER_WIDTH)?;
        let b = extract_window_metrics(&bi, v_m, calibration::I_CRIT_PER_WIDTH)?;
        println!("{v_m:>5.2} {:>12.3e} {:>12.3e} {:>12.3e}", u.on_off, b.on_off, vm_leakage(&arr, v_m, &law));
    }
    Ok(())
}
