//! Retention power of SRAM, eDRAM and 2T1AF arrays from 1 Kb to 256 Kb.

use lfvm::array::{compare, standard_sizes, Tech};
use lfvm::calibration;

fn main() {
    let techs = calibration::tech();
    let report = compare(&standard_sizes(), &techs);
    println!("{:>8} {:>8} {:>12} {:>10} {:>12}", "bits", "tech", "power (W)", "busy", "vs 2T1AF");
    for r in &report.rows {
        let ratio = r.ratio_vs_af2t1.map(|x| format!("{x:.1}")).unwrap_or_default();
        println!("{:>8} {:>8} {:>12.4e} {:>10.3e} {:>12}", r.n_bits, r.tech.label(), r.power, r.inaccessible_fraction, ratio);
    }
    if let (Some(e), Some(a)) = (report.find(262_144, Tech::Edram2T), report.find(262_144, Tech::Af2T1)) {
        println!("256 Kb eDRAM / 2T1AF: {:.0}x (quoted {:.0}x)", e.power / a.power, calibration::CLAIMED_RATIO_256KB);
    }
}
