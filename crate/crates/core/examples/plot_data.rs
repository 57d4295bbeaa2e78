//! Write the x,y series behind the ratio-convergence and autocorrelation
//! figures.
//!
//!     cargo run --release --example plot_data -- 150 /tmp

use std::path::PathBuf;

use chomp4::report::{plotdata, PlotKind};
use chomp4::{solve, SolveConfig};

fn main() -> chomp4::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(150);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));
    let pset = solve(&SolveConfig::new(n, 4))?;
    for (kind, name) in [(PlotKind::Ratios, "ratios.csv"), (PlotKind::Autocorr, "autocorr.csv")] {
        let path = dir.join(name);
        std::fs::write(&path, plotdata(kind, &pset)?).expect("write plot data");
        println!("{}", path.display());
    }
    Ok(())
}
