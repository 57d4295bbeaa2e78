//! Autocorrelation of the d-sequence and a chi-squared scan over moduli.
//!
//!     cargo run --release --example period_scan -- 150

use chomp4::analysis::{d_autocorrelation, mod_chi2_scan, TripleUniverse};
use chomp4::report::{autocorr_max_lag, SCAN_MODULI};
use chomp4::store::DSequence;
use chomp4::{build_triple_index, solve, SolveConfig};

fn main() -> chomp4::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(150);
    let pset = solve(&SolveConfig::new(n, 4))?;

    let d = DSequence::from_pset(&pset);
    let ac = d_autocorrelation(d.values(), autocorr_max_lag(d.len()))?;
    println!("strongest autocorrelation peaks in [2, 336]:");
    for (rank, lag) in ac.peaks_up_to(336).into_iter().take(12).enumerate() {
        println!("  {:2}. lag {lag:3}  r={:.4}", rank + 1, ac.r[lag]);
    }

    let u = TripleUniverse::from_index(&build_triple_index(&pset), n);
    println!("chi-squared of (a-b) mod m against extension:");
    for m in mod_chi2_scan(&u, &SCAN_MODULI) {
        println!("  m={:3}  chi2={:10.1}  dof={}", m.modulus, m.chi2, m.dof);
    }
    Ok(())
}
