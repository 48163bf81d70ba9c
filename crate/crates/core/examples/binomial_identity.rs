//! The alternating binomial sum that underlies the top-case expansion equals
//! one whenever `d > b >= 0`.
//!
//!     cargo run --release --example binomial_identity -- 12

use peterson::scalar::alternating_binomial_sum;

fn main() {
    let d_max: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    for d in 1..=d_max {
        let row: Vec<String> = (0..d)
            .map(|b| alternating_binomial_sum(d, b).unwrap().to_string())
            .collect();
        println!("d = {d:>2}: {}", row.join(" "));
    }
    println!(
        "{:?}",
        alternating_binomial_sum(3, 3).unwrap_err().to_string()
    );
}
