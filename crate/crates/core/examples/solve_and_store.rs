//! Solve up to n_max, save as CSV and binary cache, and reload both.
//!
//!     cargo run --release --example solve_and_store -- 150

use chomp4::{solve, store, SolveConfig};

fn main() -> chomp4::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(60);
    let t = std::time::Instant::now();
    let pset = solve(&SolveConfig::new(n, 4))?;
    println!("n_max={n}: {} P-positions in {:.2?}", pset.count(), t.elapsed());

    let dir = std::env::temp_dir();
    let csv = dir.join(format!("chomp4_p{n}.csv"));
    let bin = dir.join(format!("chomp4_p{n}.bin"));
    store::write_csv(&pset, &csv)?;
    store::write_cache(&pset, &bin)?;
    let from_csv = store::read_any(&csv)?;
    let from_bin = store::read_any(&bin)?;
    assert!(from_csv == pset && from_bin == pset);
    for p in [&csv, &bin] {
        let len = std::fs::metadata(p).map(|m| m.len()).unwrap_or(0);
        println!("{} ({len} bytes) reloads identically", p.display());
    }
    Ok(())
}
