//! Width of the extending band along a-b at fixed c.
//!
//!     cargo run --release --example extension_cone -- 150

use chomp4::analysis::{cone, TripleUniverse};
use chomp4::{build_triple_index, solve, SolveConfig};

fn main() -> chomp4::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(150);
    let pset = solve(&SolveConfig::new(n, 4))?;
    let u = TripleUniverse::from_index(&build_triple_index(&pset), n);
    let fit = cone::cone_fit(u.extending(), &cone::slice_values(5, n.min(300)), Some(n))?;
    for &(c, w) in &fit.slices {
        println!("c={c:3} width={w:3} {}", "#".repeat(w as usize / 4));
    }
    for &(c, w) in &fit.censored {
        println!("c={c:3} width={w:3} (board edge)");
    }
    println!("slope {:.3}, intercept {:.2}", fit.slope, fit.intercept);
    Ok(())
}
