//! Compare the two solver engines and several thread counts on one size.
//!
//!     cargo run --release --example solver_engines -- 80

use std::time::Instant;

use chomp4::{solve, Engine, MoveOrder, SolveConfig};

fn main() -> chomp4::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(80);
    let reference = solve(&SolveConfig::new(n, 4))?.sorted_codes();
    for engine in [Engine::Indexed, Engine::MoveScan] {
        for order in MoveOrder::ALL {
            for threads in [1, 4] {
                let t = Instant::now();
                let p = solve(&SolveConfig::new(n, 4).engine(engine).move_order(order).threads(threads))?;
                let same = p.sorted_codes() == reference;
                println!("{engine:?} {order:?} threads={threads}: {:.2?} identical={same}", t.elapsed());
            }
        }
    }
    Ok(())
}
