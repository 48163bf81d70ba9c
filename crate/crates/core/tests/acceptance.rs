//! Acceptance gate. Each criterion prints one PASS/FAIL line; any failure
//! makes the process exit nonzero.

use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use peterson::expansion::{
    decorated_square_monomial, expand_consecutive_square, expand_consecutive_square_direct,
    expand_general_square, expand_right_square,
};
use peterson::omega::{
    consecutive_product_as_elementary, omega_generator_as_x, omega_to_taut, tail_product_omega,
};
use peterson::oracle::{IdealSlice, Oracle};
use peterson::scalar::alternating_binomial_sum;
use peterson::structure::{multiply, multiply_by_sequence, random_basis_index, verify_exhaustive};
use peterson::{IndexSet, RingContext, Scalar, SquareFreePoly, TautClass, XPolynomial};

const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ctx(n: usize) -> RingContext {
    RingContext::new(n).unwrap()
}

fn set(v: &[usize]) -> IndexSet {
    IndexSet::new(v).unwrap()
}

fn taut(n: usize, terms: &[(i64, &[usize])]) -> TautClass {
    TautClass::from_terms(
        ctx(n),
        terms.iter().map(|(v, s)| (set(s), Scalar::from(*v))),
    )
    .unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_examples() -> Outcome {
    let right = expand_right_square(3, 5, ctx(7)).map_err(|e| e.to_string())?;
    let mut expect = SquareFreePoly::zero();
    for s in [[1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5]] {
        expect.add_term(set(&s), &Scalar::from(-1));
    }
    for s in [
        [1, 2, 3, 6],
        [1, 2, 4, 6],
        [1, 3, 4, 6],
        [2, 3, 4, 6],
        [3, 4, 5, 6],
    ] {
        expect.add_term(set(&s), &Scalar::one());
    }
    ensure(right == expect.to_xpoly(ctx(7)).unwrap(), || {
        format!("(a) right square: {right}")
    })?;

    let exxsq = taut(
        7,
        &[
            (2, &[1, 2, 3, 5]),
            (3, &[1, 2, 4, 5]),
            (3, &[1, 3, 4, 5]),
            (3, &[2, 3, 4, 5]),
            (-2, &[1, 2, 3, 6]),
            (-2, &[1, 2, 4, 6]),
            (-1, &[1, 2, 5, 6]),
            (-2, &[1, 3, 4, 6]),
            (-1, &[1, 3, 5, 6]),
            (-2, &[2, 3, 4, 6]),
            (-1, &[2, 3, 5, 6]),
            (1, &[3, 4, 5, 6]),
        ],
    );
    let got = multiply(&taut(7, &[(1, &[3, 4, 5])]), &taut(7, &[(1, &[4])])).unwrap();
    ensure(got == exxsq, || format!("(b) x_4 x_345 at n=7: {got}"))?;

    let nsqu = taut(
        6,
        &[
            (3, &[1, 2, 3, 4]),
            (5, &[1, 2, 3, 5]),
            (6, &[1, 2, 4, 5]),
            (6, &[1, 3, 4, 5]),
            (6, &[2, 3, 4, 5]),
        ],
    );
    let got = multiply(&taut(6, &[(1, &[3, 4, 5])]), &taut(6, &[(1, &[4])])).unwrap();
    ensure(got == nsqu, || format!("(c) x_4 x_345 at n=6: {got}"))?;

    let ex45 = taut(
        12,
        &[
            (-3, &[1, 2, 3, 5, 6, 8, 10]),
            (-6, &[1, 2, 4, 5, 6, 8, 10]),
            (-5, &[1, 3, 4, 5, 6, 8, 10]),
            (3, &[1, 2, 3, 5, 7, 8, 10]),
            (4, &[1, 2, 4, 5, 7, 8, 10]),
            (2, &[1, 2, 4, 6, 7, 8, 10]),
            (3, &[1, 3, 4, 5, 7, 8, 10]),
            (2, &[1, 3, 4, 6, 7, 8, 10]),
            (1, &[1, 3, 5, 6, 7, 8, 10]),
        ],
    );
    let got = expand_general_square(set(&[1, 3]), 5, 5, 6, set(&[8, 10]), ctx(12)).unwrap();
    ensure(got == ex45, || format!("(d) decorated n=12: {got}"))?;
    let via_product = multiply(
        &taut(12, &[(1, &[1, 3, 5, 6, 8, 10])]),
        &taut(12, &[(1, &[5])]),
    )
    .unwrap();
    ensure(via_product == ex45, || {
        format!("(d) as a product: {via_product}")
    })?;

    let top = taut(
        7,
        &[
            (-4, &[1, 2, 3, 4, 6]),
            (-9, &[1, 2, 3, 5, 6]),
            (-12, &[1, 2, 4, 5, 6]),
            (-9, &[1, 3, 4, 5, 6]),
        ],
    );
    let got = expand_general_square(set(&[1, 3]), 5, 5, 6, IndexSet::empty(), ctx(7)).unwrap();
    ensure(got == top, || format!("(e) top case: {got}"))?;

    let direct = expand_consecutive_square_direct(3, 4, 5, ctx(7)).unwrap();
    let coeffs: Vec<BigInt> = direct
        .first_sum_coefficients
        .iter()
        .map(|(_, v)| v.clone())
        .collect();
    ensure(coeffs == [3, 3, 3, 2].map(BigInt::from), || {
        format!("(f) coefficients {coeffs:?}")
    })?;
    ensure(direct.class == exxsq, || {
        format!("(f) direct expansion {}", direct.class)
    })?;
    Ok("6 worked examples reproduced exactly".into())
}

fn identity_suite() -> Outcome {
    let mut count = 0;
    for d in 1..=30 {
        for b in 0..d {
            let v = alternating_binomial_sum(d, b).map_err(|e| e.to_string())?;
            ensure(v == BigInt::from(1), || format!("d={d} b={b} gives {v}"))?;
            count += 1;
        }
    }
    ensure(count == 465, || format!("{count} cases"))?;
    Ok(format!("{count} cases equal 1"))
}

fn random_decorated_shape(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> (IndexSet, usize, usize, usize, IndexSet) {
    let b = rng.gen_range(1..n);
    let a = rng.gen_range(1..=b);
    let c = rng.gen_range(a..=b);
    let pick = |rng: &mut ChaCha8Rng, pool: Vec<usize>| {
        let k = rng.gen_range(0..=pool.len().min(2));
        pool.choose_multiple(rng, k).copied().collect::<IndexSet>()
    };
    let prefix = pick(rng, (1..a.saturating_sub(1)).collect());
    let m = if b + 1 == n {
        IndexSet::empty()
    } else {
        pick(rng, (b + 2..n).collect())
    };
    (prefix, a, c, b, m)
}

fn oracle_sweep() -> Outcome {
    let mut triples = 0;
    for n in 2..=7 {
        let c_ = ctx(n);
        let oracle = Oracle::shared(c_);
        for a in 1..n {
            for c in a..n {
                for b in c..n {
                    let ours = expand_consecutive_square(a, c, b, c_).map_err(|e| e.to_string())?;
                    let raw = decorated_square_monomial(
                        IndexSet::empty(),
                        a,
                        c,
                        b,
                        IndexSet::empty(),
                        c_,
                    )
                    .unwrap();
                    let reference = oracle.normal_form(&raw).unwrap();
                    ensure(ours == reference, || {
                        format!("n={n} (a,c,b)=({a},{c},{b}): {ours} vs {reference}")
                    })?;
                    triples += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut decorated = 0;
    let mut nontrivial = 0;
    for n in [5, 6, 7] {
        let c_ = ctx(n);
        let oracle = Oracle::shared(c_);
        for _ in 0..200 {
            let (prefix, a, c, b, m) = random_decorated_shape(&mut rng, n);
            let ours = expand_general_square(prefix, a, c, b, m, c_).map_err(|e| e.to_string())?;
            let raw = decorated_square_monomial(prefix, a, c, b, m, c_).unwrap();
            let reference = oracle.normal_form(&raw).unwrap();
            ensure(ours == reference, || {
                format!("n={n} prefix={prefix} (a,c,b)=({a},{c},{b}) M={m}: {ours} vs {reference}")
            })?;
            decorated += 1;
            nontrivial += usize::from(!prefix.is_empty() || !m.is_empty());
        }
    }
    Ok(format!("{triples} consecutive triples and {decorated} decorated shapes ({nontrivial} with decoration) match"))
}

fn direct_formula() -> Outcome {
    let mut cases = 0;
    for n in 3..=7 {
        let c_ = ctx(n);
        for a in 1..n - 1 {
            for c in a..n - 1 {
                for b in c..n - 1 {
                    let d =
                        expand_consecutive_square_direct(a, c, b, c_).map_err(|e| e.to_string())?;
                    let t = expand_consecutive_square(a, c, b, c_).unwrap();
                    ensure(d.class == t, || {
                        format!("n={n} (a,c,b)=({a},{c},{b}): {} vs {t}", d.class)
                    })?;
                    let negative = d
                        .first_sum_coefficients
                        .iter()
                        .find(|(_, v)| *v < BigInt::from(0));
                    ensure(negative.is_none(), || {
                        format!("negative coefficient {negative:?}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!(
        "{cases} shapes agree, all first-sum coefficients >= 0"
    ))
}

fn integrality() -> Outcome {
    let mut pairs = 0;
    for n in 2..=6 {
        for r in verify_exhaustive(ctx(n), 7).map_err(|e| e.to_string())? {
            ensure(r.is_ok(), || format!("n={n}: {r:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs integral and equal to the oracle"))
}

fn random_class(rng: &mut ChaCha8Rng, c_: RingContext) -> TautClass {
    let terms = rng.gen_range(1..=3);
    let items: Vec<(IndexSet, Scalar)> = (0..terms)
        .map(|_| {
            (
                random_basis_index(c_, rng),
                Scalar::from(rng.gen_range(-4i64..=4)),
            )
        })
        .collect();
    TautClass::from_terms(c_, items).unwrap()
}

fn ring_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let triples = 240;
    for t in 0..triples {
        let n = 2 + t % 5;
        let c_ = ctx(n);
        let (x, y, z) = (
            random_class(&mut rng, c_),
            random_class(&mut rng, c_),
            random_class(&mut rng, c_),
        );
        let xy = multiply(&x, &y).unwrap();
        ensure(xy == multiply(&y, &x).unwrap(), || {
            format!("commutativity n={n}: {x} | {y}")
        })?;
        let lhs = multiply(&xy, &z).unwrap();
        let rhs = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        ensure(lhs == rhs, || {
            format!("associativity n={n}: {x} | {y} | {z}")
        })?;

        let j = random_basis_index(c_, &mut rng);
        let k = random_basis_index(c_, &mut rng);
        let mut order = k.to_vec();
        order.shuffle(&mut rng);
        let x_j = TautClass::basis_element(c_, j).unwrap();
        let folded = multiply_by_sequence(&x_j, &order).unwrap();
        let ascending = multiply(&x_j, &TautClass::basis_element(c_, k).unwrap()).unwrap();
        ensure(folded == ascending, || {
            format!("fold order n={n} J={j} order={order:?}")
        })?;
    }
    Ok(format!(
        "{triples} random triples satisfy fold-order independence, commutativity, associativity"
    ))
}

fn presentation_checks() -> Outcome {
    let mut relations = 0;
    let mut identities = 0;
    let mut slices = 0;
    for n in 2..=7 {
        let c_ = ctx(n);
        let oracle = Oracle::shared(c_);
        let w = |k: usize| -> XPolynomial {
            if k == 0 || k == n {
                XPolynomial::zero(c_)
            } else {
                omega_generator_as_x(k, c_).unwrap()
            }
        };
        for k in 1..n {
            let inner = w(k)
                .scale(&Scalar::from(2))
                .sub(&w(k - 1))
                .unwrap()
                .sub(&w(k + 1))
                .unwrap();
            let rel = oracle
                .normal_form(&w(k).multiply_raw(&inner).unwrap())
                .unwrap();
            ensure(rel.is_zero(), || format!("n={n} relation k={k}: {rel}"))?;
            relations += 1;
        }
        for a in 1..n {
            for b in a..n {
                let raw = (a..=b).fold(XPolynomial::one(c_), |acc, k| {
                    acc.multiply_raw(&w(k)).unwrap()
                });
                let lhs = oracle.normal_form(&raw).unwrap();
                let rhs = oracle
                    .normal_form(&consecutive_product_as_elementary(a, b, c_).unwrap())
                    .unwrap();
                ensure(lhs == rhs, || format!("n={n} w_{a}..w_{b}: {lhs} vs {rhs}"))?;
                identities += 1;
            }
        }
        for i in 1..=n {
            let raw = (i..=n).fold(XPolynomial::one(c_), |acc, j| {
                acc.multiply_raw(&XPolynomial::variable(c_, j).unwrap())
                    .unwrap()
            });
            let lhs = oracle.normal_form(&raw).unwrap();
            let rhs = omega_to_taut(&tail_product_omega(i, c_).unwrap(), &oracle).unwrap();
            ensure(lhs == rhs, || {
                format!("n={n} tail from {i}: {lhs} vs {rhs}")
            })?;
            identities += 1;
        }
        for d in 0..=n {
            oracle.slice(d);
        }
        for slice in oracle.built_slices() {
            let expect = IdealSlice::expected_rank(c_, slice.degree());
            ensure(*slice.rank() == expect, || {
                format!("n={n} d={}: rank {}", slice.degree(), slice.rank())
            })?;
            slices += 1;
        }
    }
    Ok(format!("{relations} relations vanish, {identities} block/tail identities hold, {slices} slice ranks match"))
}

fn main() {
    let criteria: [(&str, Check); 7] = [
        ("golden examples", golden_examples),
        ("binomial identity suite", identity_suite),
        ("oracle equivalence sweep", oracle_sweep),
        ("direct-coefficient formula", direct_formula),
        ("integrality of structure constants", integrality),
        ("ring axioms", ring_axioms),
        ("presentation cross-checks", presentation_checks),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({ms:.0} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({ms:.0} ms)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
