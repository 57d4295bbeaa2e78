//! Cross-check the solver against closed forms and the brute-force oracle.
//!
//!     cargo run --release --example verify_oracles

use chomp4::cli::{verify, VerifyMode};
use chomp4::{solve, SolveConfig};

fn main() -> chomp4::Result<()> {
    let pset = solve(&SolveConfig::new(60, 4))?;
    let mut ok = true;
    for mode in [VerifyMode::TwoRow, VerifyMode::ThreeRow, VerifyMode::Oracle4] {
        let out = verify(&pset, mode, None)?;
        println!("{}", out.summary);
        ok &= out.mismatches.is_empty();
    }
    println!("{}", if ok { "all agree" } else { "MISMATCH" });
    Ok(())
}
