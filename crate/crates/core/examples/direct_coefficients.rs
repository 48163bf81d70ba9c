//! The direct-coefficient form of a consecutive square, whose first sum has
//! no overlapping monomials, compared against the theorem form over every
//! admissible `(a, c, b)` for small `n`.
//!
//!     cargo run --release --example direct_coefficients -- 7

use peterson::expansion::{expand_consecutive_square, expand_consecutive_square_direct};
use peterson::RingContext;

fn main() {
    let ctx = RingContext::new(7).unwrap();
    let ex = expand_consecutive_square_direct(3, 4, 5, ctx).unwrap();
    println!("first-sum coefficients of x_4 * x_{{3,4,5}} at n = 7:");
    for (i, c) in &ex.first_sum_coefficients {
        println!("  i = {i}: {c}");
    }
    println!("  expansion: {}\n", ex.class);

    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    for n in 3..=max_n {
        let ctx = RingContext::new(n).unwrap();
        let (mut cases, mut agree, mut min_coeff) = (0, 0, None);
        for a in 1..n - 1 {
            for c in a..n - 1 {
                for b in c..n - 1 {
                    let d = expand_consecutive_square_direct(a, c, b, ctx).unwrap();
                    cases += 1;
                    agree +=
                        usize::from(d.class == expand_consecutive_square(a, c, b, ctx).unwrap());
                    let low = d
                        .first_sum_coefficients
                        .iter()
                        .map(|(_, v)| v.clone())
                        .min();
                    min_coeff = min_coeff.into_iter().chain(low).min();
                }
            }
        }
        let min = min_coeff
            .map(|v| v.to_string())
            .unwrap_or_else(|| "-".into());
        println!("n = {n}: {agree}/{cases} shapes agree, smallest first-sum coefficient {min}");
    }
}
