//! Computes every structure constant of the ring for one `n`, reports the
//! range of values, and writes the CSV table to stdout when asked.
//!
//!     cargo run --release --example structure_table -- 5 --csv

use peterson::format::write_table_csv;
use peterson::structure::full_table;
use peterson::{IndexSet, RingContext};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(5);
    let ctx = RingContext::new(n).unwrap();
    let table = full_table(ctx).expect("within PETERSON_MAX_N");

    if args.iter().any(|a| a == "--csv") {
        write_table_csv(&table, std::io::stdout().lock()).unwrap();
        return;
    }
    let rows = table.rows();
    let lo = rows.iter().map(|r| &r.3).min().unwrap();
    let hi = rows.iter().map(|r| &r.3).max().unwrap();
    let negative = rows.iter().filter(|r| r.3 < 0.into()).count();
    println!(
        "n = {n}: {} nonzero constants over ordered pairs",
        rows.len()
    );
    println!("values range over [{lo}, {hi}], {negative} negative");

    let tail = ctx.basis_support().without(1);
    println!("x_{{2..{}}} * x_1:", n - 1);
    for (l, c) in table
        .product(tail, IndexSet::singleton(1))
        .into_iter()
        .flatten()
    {
        println!("  {c:>4} x_{l}");
    }
}
