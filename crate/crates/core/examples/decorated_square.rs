//! A single square inside a block, with prefix variables on the left and
//! spectators on the right: `x_1 x_3 x_5² x_6 x_8 x_10` at `n = 12`, then the
//! top case `x_1 x_3 x_5² x_6` at `n = 7`.
//!
//!     cargo run --release --example decorated_square

use peterson::expansion::{expand_general_square, GenElemSpec};
use peterson::format::class_to_text;
use peterson::{IndexSet, RingContext};

fn set(v: &[usize]) -> IndexSet {
    IndexSet::new(v).unwrap()
}

fn main() {
    let spec = GenElemSpec::new(1, set(&[1, 3]), 4).unwrap();
    let mut pieces: Vec<String> = spec
        .evaluate()
        .terms()
        .map(|(s, v)| format!("{v}*x{s}"))
        .collect();
    pieces.sort();
    println!("e_1^(1,3)(x_1..x_4) = {}\n", pieces.join(" + "));

    let c12 = RingContext::new(12).unwrap();
    let wide = expand_general_square(set(&[1, 3]), 5, 5, 6, set(&[8, 10]), c12).unwrap();
    println!(
        "x_1 x_3 x_5^2 x_6 x_8 x_10, n = 12:\n{}",
        class_to_text(&wide)
    );

    let c7 = RingContext::new(7).unwrap();
    let top = expand_general_square(set(&[1, 3]), 5, 5, 6, IndexSet::empty(), c7).unwrap();
    println!(
        "x_1 x_3 x_5^2 x_6, n = 7 (block reaches n-1):\n{}",
        class_to_text(&top)
    );

    match expand_general_square(set(&[4]), 5, 5, 6, IndexSet::empty(), c7) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected shape: {e}"),
    }
}
