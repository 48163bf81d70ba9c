//! Checks every product `x_J · x_K` against the independent oracle and
//! reports integrality, for `n` up to the argument.
//!
//!     cargo run --release --example verify_products -- 6

use std::time::Instant;

use peterson::structure::{verify_exhaustive, DEFAULT_MAX_N};
use peterson::RingContext;

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    for n in 2..=max_n {
        let t = Instant::now();
        let reports =
            verify_exhaustive(RingContext::new(n).unwrap(), DEFAULT_MAX_N.max(max_n)).unwrap();
        let bad = reports.iter().filter(|r| !r.is_ok()).count();
        println!(
            "n = {n}: {} pairs, {bad} failures, {:.1} ms",
            reports.len(),
            t.elapsed().as_secs_f64() * 1e3
        );
    }
}
