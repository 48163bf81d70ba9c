//! Resolves `x_c · (x_a ⋯ x_b)` into square-free monomials and checks the
//! result against the oracle normal form of the raw monomial.
//!
//!     cargo run --release --example consecutive_square -- 7 3 4 5

use peterson::expansion::{
    decorated_square_monomial, expand_consecutive_square, expand_right_square,
};
use peterson::oracle::Oracle;
use peterson::{IndexSet, RingContext};

fn arg(i: usize, default: usize) -> usize {
    std::env::args()
        .nth(i)
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

fn main() {
    let (n, a, c, b) = (arg(1, 7), arg(2, 3), arg(3, 4), arg(4, 5));
    let ctx = RingContext::new(n).expect("n in range");

    if c == b {
        let right = expand_right_square(a, b, ctx).expect("valid block");
        println!("right-square form (may mention x_{n}):\n  {right}\n");
    }

    let class = expand_consecutive_square(a, c, b, ctx).expect("valid block");
    println!("x_{c} * x_{{{a}..{b}}} at n = {n}:");
    println!("  {class}");

    let raw =
        decorated_square_monomial(IndexSet::empty(), a, c, b, IndexSet::empty(), ctx).unwrap();
    let reference = Oracle::shared(ctx).normal_form(&raw).unwrap();
    println!("oracle agrees: {}", reference == class);
}
