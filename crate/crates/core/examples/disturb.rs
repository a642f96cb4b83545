//! Checks that programming one cell leaves its half-selected neighbours intact.

use lfvm::calibration;
use lfvm::cell::{check_disturb, CellOp};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cell = calibration::cell();
    let mut pattern = Vec::new();
    for col in 0..4 {
        pattern.push(CellOp::Write { row: 0, col, bit: col % 2 == 0 });
    }
    for _ in 0..5 {
        pattern.push(CellOp::Write { row: 1, col: 1, bit: true });
        pattern.push(CellOp::Erase { row: 1, col: 1 });
    }
    let report = check_disturb(&cell, 4, 4, &pattern)?;
    println!("max node excursion: {:.3} V", report.max_excursion);
    println!("switched neighbours: {:?}", report.switched_cells);
    println!("read-back mismatches: {:?}", report.mismatched_cells);
    println!("disturbed: {}", report.disturbed);
    Ok(())
}
