//! Smallest P-positions of four-row Chomp and the start of the d-sequence.
//!
//!     cargo run --release --example table_one

use chomp4::store::DSequence;
use chomp4::{solve, SolveConfig};

fn main() -> chomp4::Result<()> {
    let pset = solve(&SolveConfig::new(8, 4).threads(1))?;
    println!("  a  b  c  d");
    for r in pset.sorted_rows().iter().take(10) {
        println!("{:3}{:3}{:3}{:3}", r[0], r[1], r[2], r[3]);
    }
    let d = DSequence::from_pset(&pset);
    let head: Vec<String> = d.values().iter().take(30).map(u32::to_string).collect();
    println!("d: {}", head.join(","));
    Ok(())
}
