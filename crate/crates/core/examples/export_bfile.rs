//! Write the d-sequence as an `index value` b-file.
//!
//!     cargo run --release --example export_bfile -- 100 /tmp/b.txt

use chomp4::store::{write_bfile, DSequence};
use chomp4::{solve, SolveConfig};

fn main() -> chomp4::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let path = args.next().unwrap_or_else(|| format!("b_chomp4_{n}.txt"));
    let d = DSequence::from_pset(&solve(&SolveConfig::new(n, 4))?);
    write_bfile(&d, &path, 1)?;
    println!("{} terms written to {path}", d.len());
    Ok(())
}
