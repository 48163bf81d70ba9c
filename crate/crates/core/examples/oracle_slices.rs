//! Builds the ideal slices for a range of ranks and prints their sizes.
//!
//!     cargo run --release --example oracle_slices -- 7

use std::time::Instant;

use peterson::oracle::{IdealSlice, Oracle};
use peterson::RingContext;

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    println!(
        "{:>3} {:>3} {:>10} {:>10} {:>10}",
        "n", "d", "rank", "expected", "ms"
    );
    for n in 2..=max_n {
        let ctx = RingContext::new(n).unwrap();
        let oracle = Oracle::new(ctx);
        for d in 1..=n {
            let t = Instant::now();
            let slice = oracle.slice(d);
            println!(
                "{:>3} {:>3} {:>10} {:>10} {:>10.1}",
                n,
                d,
                slice.rank(),
                IdealSlice::expected_rank(ctx, d),
                t.elapsed().as_secs_f64() * 1e3
            );
        }
    }
}
