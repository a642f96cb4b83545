//! Memory window and ON/OFF ratio of the calibrated AFeFET across area ratios.

use lfvm::calibration::{self, V_LOW_BIPOLAR, V_LOW_UNIPOLAR, V_M};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = calibration::device();
    println!("{:>4} {:>10} {:>10} {:>10}", "AR", "sweep", "MW (V)", "ON/OFF");
    for ar in [8.0, 16.0, 24.0] {
        let d = base.with_ar(ar)?;
        for (label, v_low) in [("0 V", V_LOW_UNIPOLAR), ("-2 V", V_LOW_BIPOLAR)] {
            let m = calibration::window(&d, v_low, V_M)?;
            println!("{ar:>4} {label:>10} {:>10.3} {:>10.3e}", m.mw, m.on_off);
        }
    }
    Ok(())
}
