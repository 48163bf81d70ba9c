//! Arithmetic in the generators `w_k = x_1 + ... + x_k`: the block rewriting
//! rule, the quadratic relations, and conversion back to the `x` basis.
//!
//!     cargo run --release --example omega_calculus -- 5

use peterson::omega::{
    omega_multiply, omega_multiply_generator, omega_to_taut, tail_product_omega,
};
use peterson::oracle::Oracle;
use peterson::{IndexSet, OmegaClass, RingContext, Scalar};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let ctx = RingContext::new(n).unwrap();
    let oracle = Oracle::shared(ctx);
    let w = |k: usize| OmegaClass::basis_element(ctx, IndexSet::singleton(k)).unwrap();

    for k in 1..n {
        let sq = omega_multiply(&w(k), &w(k)).unwrap();
        println!("w_{k}^2 = {sq}");
    }

    println!();
    for k in 1..n {
        let mut rel = w(k).scale(&Scalar::from(2));
        if k > 1 {
            rel = rel.sub(&w(k - 1)).unwrap();
        }
        if k + 1 < n {
            rel = rel.sub(&w(k + 1)).unwrap();
        }
        let prod = omega_multiply_generator(k, &rel).unwrap();
        println!("w_{k} * ({rel}) = {prod}");
    }

    println!();
    for i in 2..=n {
        let tail = tail_product_omega(i, ctx).unwrap();
        println!(
            "x_{i}..x_{n} = {tail} = {}",
            omega_to_taut(&tail, &oracle).unwrap()
        );
    }
}
