//! How many fourth rows complete each (a, b, c)?
//!
//!     cargo run --release --example unique_extension -- 150

use chomp4::analysis::audit_unique_extension;
use chomp4::{build_triple_index, solve, SolveConfig};

fn main() -> chomp4::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let pset = solve(&SolveConfig::new(n, 4))?;
    let audit = audit_unique_extension(&build_triple_index(&pset), n);
    println!("triples:   {}", audit.triples_total);
    println!("extending: {} ({:.1}%)", audit.triples_extending, 100.0 * audit.fraction);
    println!("violations: {}", audit.violations.len());
    println!(
        "3-row P-positions (a <= {}): {}, all extending: {}",
        audit.three_row_bound,
        audit.three_row_p_count,
        audit.three_row_not_extending.is_empty()
    );
    println!(
        "extending triples there that are 3-row N-positions: {} of {}",
        audit.extending_three_row_n, audit.extending_within_bound
    );
    Ok(())
}
