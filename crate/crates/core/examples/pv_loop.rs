//! Traces the polarization loop of the reference antiferroelectric and
//! prints where it switches.

use lfvm::lgd::{equilibria, trace_pe_loop, triangle_wave, AfeBranchState, LgdParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = LgdParams::reference_afe();
    println!("regime: {:?}", params.regime());

    let roots = equilibria(&params, 0.0)?;
    let stable: Vec<_> = roots.iter().filter(|r| r.stable).collect();
    println!("stable roots at e = 0: {}", stable.len());

    let wave = triangle_wave(0.6, 1e-3);
    let samples = trace_pe_loop(&params, &wave, AfeBranchState::virgin(&params)?);
    for s in samples.iter().filter(|s| s.switched) {
        println!("switch at e = {:+.5}, p = {:+.5}", s.e, s.p);
    }
    let back = samples.last().map(|s| s.p).unwrap_or(f64::NAN);
    println!("p after the loop: {back:+.3e}");
    Ok(())
}
