//! Look for a small integer cubic with the ratio limits as roots, and
//! compare L3 with cos(3 pi / 7).
//!
//!     cargo run --release --example cubic_search -- 0.762 0.499 0.224

use chomp4::analysis::{cubic_search, trig_proximity_report};

fn main() {
    let given: Vec<f64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let limits = match given[..] {
        [a, b, c] => [a, b, c],
        _ => [0.762, 0.499, 0.224],
    };
    let found = cubic_search(limits, 12, 0.002);
    println!("{} monic cubics with |coefficients| <= 12 match {limits:?}", found.len());
    for c in found {
        println!("  {c}  roots {:?}", c.roots);
    }
    let t = trig_proximity_report(limits[2]);
    println!("|L3 - cos(3pi/7)| = {:.4}", t.difference);
}
