//! Estimate the limiting ratios b/a, c/a, d/a three ways.
//!
//!     cargo run --release --example ratio_limits -- 150

use chomp4::analysis::{ratio_powerlaw_fit, ratio_rolling, ratio_windowed_median};
use chomp4::{solve, SolveConfig};

fn main() -> chomp4::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(150);
    let pset = solve(&SolveConfig::new(n, 4))?;

    let w = ratio_windowed_median(&pset, 0.9)?;
    println!("windowed median  {:.4} {:.4} {:.4}", w.l1(), w.l2(), w.l3());
    let p = ratio_powerlaw_fit(&pset)?;
    println!("power law        {:.4} {:.4} {:.4}", p.l1(), p.l2(), p.l3());
    for (i, f) in p.power_law.iter().flatten().enumerate() {
        println!("  L{}: K={:.3} p={:.2}", i + 1, f.scale, f.exponent);
    }
    println!("rolling medians (width 25):");
    for (centre, f) in ratio_rolling(&pset, 25)? {
        println!("  a~{centre:<6} {:.4} {:.4} {:.4}", f.l1(), f.l2(), f.l3());
    }
    Ok(())
}
