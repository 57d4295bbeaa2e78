//! Logistic model for extension from c and (a-b) mod 112.
//!
//!     cargo run --release --example mask_classifier -- 150 [seed]

use chomp4::analysis::{train_mask_classifier, ClassifierConfig, TripleUniverse};
use chomp4::{build_triple_index, solve, SolveConfig};

fn main() -> chomp4::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(150);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let pset = solve(&SolveConfig::new(n, 4))?;
    let u = TripleUniverse::from_index(&build_triple_index(&pset), n);

    for balance in [true, false] {
        let cfg = ClassifierConfig {
            balance_classes: balance,
            ..ClassifierConfig::default().seed(seed)
        };
        let m = train_mask_classifier(&u, &cfg)?.metrics;
        println!(
            "class weights {balance:5}: raw {:.3}  balanced {:.3}  (majority baseline {:.3})",
            m.raw_accuracy, m.balanced_accuracy, m.majority_baseline
        );
    }
    Ok(())
}
