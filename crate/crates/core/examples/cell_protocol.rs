//! Runs a short write/read/hold/erase script on a 2x2 array of calibrated
//! 2T1AF cells.

use lfvm::calibration;
use lfvm::cell::{parse_script, CellArray};

const SCRIPT: &str = "
WRITE 0 0 1
WRITE 0 1 0
ERASE 1 1
READ 0 0
READ 0 1
HOLD 1e3
READ 0 0
HOLD 1 0.0   # drop the clamp to ground
READ 0 0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cell = calibration::cell();
    let w = cell.hold_window();
    println!("hold window [{:.3}, {:.3}] V, v_m = {} V", w.lo, w.hi, cell.volts().v_m);

    let ops = parse_script(SCRIPT)?;
    let mut arr = CellArray::new(&cell, 2, 2)?;
    for entry in arr.run(&ops)? {
        let bit = entry.bit_read.map(|b| if b { "1" } else { "0" }).unwrap_or("-");
        let p = entry.p.map(|p| format!("{p:+.4}")).unwrap_or_default();
        println!("{:<16} bit {bit}  p {p}", entry.op);
    }
    Ok(())
}
