//! Calculus in the generators `ϖ_k = x_1 + ... + x_k`.
//!
//! Square-free `ϖ`-monomials form a basis as well. Multiplying a basis
//! element by one generator `ϖ_i` either inserts `i` (when `i` is absent) or
//! rewrites the maximal consecutive block `[a, b]` containing `i`:
//!
//! ```text
//! ϖ_i · ϖ_a⋯ϖ_b = (b-i+1)/(b-a+2) · ϖ_{a-1}ϖ_a⋯ϖ_b + (i-a+1)/(b-a+2) · ϖ_a⋯ϖ_{b+1}
//! ```
//!
//! with `ϖ_0 = ϖ_n = 0`. The other blocks ride along unchanged; maximality of
//! `[a, b]` means `a-1` and `b+1` are not already present, so both results
//! stay square-free.

use crate::error::Result;
use crate::index_set::{IndexSet, RingContext};
use crate::oracle::Oracle;
use crate::poly::{elementary_range_sf, OmegaClass, TautClass, XPolynomial};
use crate::scalar::{factorial, sign, Scalar};

/// `ϖ_i · c`, `1 <= i <= n-1`.
pub fn omega_multiply_generator(i: usize, c: &OmegaClass) -> Result<OmegaClass> {
    let ctx = c.context();
    let n = ctx.n();
    ctx.check_index(i, 1, n.saturating_sub(1))?;
    let mut out = OmegaClass::zero(ctx);
    for (s, v) in c.terms() {
        let Some((a, b)) = s.block_containing(i) else {
            out.add_term_unchecked(s.with(i), v);
            continue;
        };
        assert!(
            !s.contains(a - 1) && !s.contains(b + 1),
            "block [{a},{b}] of {s} is not maximal"
        );
        let denom = (b - a + 2) as i64;
        if a > 1 {
            let w = Scalar::ratio((b - i + 1) as i64, denom);
            out.add_term_unchecked(s.with(a - 1), &(v * &w));
        }
        if b + 1 < n {
            let w = Scalar::ratio((i - a + 1) as i64, denom);
            out.add_term_unchecked(s.with(b + 1), &(v * &w));
        }
    }
    Ok(out)
}

/// Ring product in square-free `ϖ`-form.
pub fn omega_multiply(a: &OmegaClass, b: &OmegaClass) -> Result<OmegaClass> {
    a.context().check_same(b.context())?;
    let ctx = a.context();
    let mut out = OmegaClass::zero(ctx);
    for (s, v) in b.terms() {
        let mut acc = a.clone();
        for i in s.iter() {
            acc = omega_multiply_generator(i, &acc)?;
        }
        out.add_scaled(&acc, v)?;
    }
    Ok(out)
}

/// `ϖ_a⋯ϖ_b = k! e_k(x_1, ..., x_b)` with `k = b - a + 1`, `1 <= a <= b <= n-1`.
pub fn consecutive_product_as_elementary(
    a: usize,
    b: usize,
    ctx: RingContext,
) -> Result<XPolynomial> {
    ctx.check_index(a, 1, ctx.n().saturating_sub(1))?;
    ctx.check_index(b, a, ctx.n().saturating_sub(1))?;
    let k = (b - a + 1) as u64;
    let e = elementary_range_sf(k as i64, 1, b as i64);
    Ok(e.to_xpoly(ctx)?.scale(&Scalar::from(factorial(k))))
}

/// `x_i x_{i+1} ⋯ x_n = (-1)^{n-i+1} / (n-i+1)! · ϖ_{i-1} ϖ_i ⋯ ϖ_{n-1}`,
/// `1 <= i <= n`. Zero for `i = 1`, where `ϖ_0` appears.
pub fn tail_product_omega(i: usize, ctx: RingContext) -> Result<OmegaClass> {
    let n = ctx.n();
    ctx.check_index(i, 1, n)?;
    if i == 1 {
        return Ok(OmegaClass::zero(ctx));
    }
    let len = (n - i + 1) as u64;
    let c = Scalar::from(sign(len as i64)) / Scalar::from(factorial(len));
    OmegaClass::from_terms(ctx, [(IndexSet::range(i - 1, n - 1), c)])
}

/// `x_i = ϖ_i - ϖ_{i-1}`, dropping `ϖ_0` and `ϖ_n`.
pub fn omega_of_x_generator(i: usize, ctx: RingContext) -> Result<OmegaClass> {
    let n = ctx.n();
    ctx.check_index(i, 1, n)?;
    let mut out = OmegaClass::zero(ctx);
    if i < n {
        out.add_term(IndexSet::singleton(i), &Scalar::one())?;
    }
    if i > 1 {
        out.add_term(IndexSet::singleton(i - 1), &Scalar::from(-1))?;
    }
    Ok(out)
}

/// `ϖ_k = x_1 + ... + x_k` as a raw polynomial, `1 <= k <= n`.
pub fn omega_generator_as_x(k: usize, ctx: RingContext) -> Result<XPolynomial> {
    ctx.check_index(k, 1, ctx.n())?;
    elementary_range_sf(1, 1, k as i64).to_xpoly(ctx)
}

/// Raw `x`-polynomial of a `ϖ`-class: each maximal block `ϖ_a⋯ϖ_b` becomes
/// `k! e_k(x_1..x_b)` and the blocks are multiplied out.
pub fn omega_to_raw(c: &OmegaClass) -> XPolynomial {
    let ctx = c.context();
    let mut out = XPolynomial::zero(ctx);
    for (s, v) in c.terms() {
        let mut p = XPolynomial::constant(ctx, v.clone());
        for (a, b) in s.blocks() {
            let block = consecutive_product_as_elementary(a, b, ctx).expect("block inside 1..n-1");
            p = p.multiply_raw(&block).expect("same context");
        }
        out = out.add(&p).expect("same context");
    }
    out
}

/// Converts to the tautological basis through the oracle.
pub fn omega_to_taut(c: &OmegaClass, oracle: &Oracle) -> Result<TautClass> {
    oracle.normal_form(&omega_to_raw(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> RingContext {
        RingContext::new(n).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v).unwrap()
    }

    fn w(c: RingContext, terms: &[(&[usize], Scalar)]) -> OmegaClass {
        OmegaClass::from_terms(c, terms.iter().map(|(s, v)| (set(s), v.clone()))).unwrap()
    }

    #[test]
    fn generator_rule_examples() {
        let c = ctx(4);
        let got = omega_multiply_generator(2, &w(c, &[(&[2], Scalar::one())])).unwrap();
        assert_eq!(
            got,
            w(
                c,
                &[
                    (&[1, 2], Scalar::ratio(1, 2)),
                    (&[2, 3], Scalar::ratio(1, 2))
                ]
            )
        );

        let c5 = ctx(5);
        let got = omega_multiply_generator(1, &w(c5, &[(&[3], Scalar::one())])).unwrap();
        assert_eq!(got, w(c5, &[(&[1, 3], Scalar::one())]));

        let got = omega_multiply_generator(3, &w(c, &[(&[3], Scalar::one())])).unwrap();
        assert_eq!(got, w(c, &[(&[2, 3], Scalar::ratio(1, 2))]));
        assert!(omega_multiply_generator(4, &w(c, &[(&[3], Scalar::one())])).is_err());
        assert!(omega_multiply_generator(0, &w(c, &[(&[3], Scalar::one())])).is_err());
    }

    #[test]
    fn generator_rule_with_spectators() {
        // ϖ_5 · ϖ_{1,2,5,6} at n = 8: block [5,6], spectators {1,2}
        let c = ctx(8);
        let got = omega_multiply_generator(5, &w(c, &[(&[1, 2, 5, 6], Scalar::one())])).unwrap();
        let expect = w(
            c,
            &[
                (&[1, 2, 4, 5, 6], Scalar::ratio(2, 3)),
                (&[1, 2, 5, 6, 7], Scalar::ratio(1, 3)),
            ],
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn products() {
        let c = ctx(4);
        let w2 = w(c, &[(&[2], Scalar::one())]);
        assert_eq!(
            omega_multiply(&w2, &w2).unwrap(),
            w(
                c,
                &[
                    (&[1, 2], Scalar::ratio(1, 2)),
                    (&[2, 3], Scalar::ratio(1, 2))
                ]
            )
        );
        let any = w(
            c,
            &[(&[1, 3], Scalar::from(3)), (&[2], Scalar::ratio(-1, 5))],
        );
        assert_eq!(omega_multiply(&any, &OmegaClass::one(c)).unwrap(), any);

        let c3 = ctx(3);
        let w1 = w(c3, &[(&[1], Scalar::one())]);
        assert_eq!(
            omega_multiply(&w1, &w1).unwrap(),
            w(c3, &[(&[1, 2], Scalar::ratio(1, 2))])
        );
        assert!(omega_multiply(&w1, &w2).is_err());
    }

    #[test]
    fn defining_relations_vanish() {
        for n in 2..=8 {
            let c = ctx(n);
            for k in 1..n {
                let mut rel = OmegaClass::zero(c);
                rel.add_term(set(&[k]), &Scalar::from(2)).unwrap();
                if k > 1 {
                    rel.add_term(set(&[k - 1]), &Scalar::from(-1)).unwrap();
                }
                if k + 1 < n {
                    rel.add_term(set(&[k + 1]), &Scalar::from(-1)).unwrap();
                }
                let prod = omega_multiply_generator(k, &rel).unwrap();
                assert!(prod.is_zero(), "n={n} k={k}: {prod}");
            }
        }
    }

    #[test]
    fn consecutive_products() {
        let c = ctx(5);
        let p = consecutive_product_as_elementary(2, 3, c).unwrap();
        let expect = elementary_range_sf(2, 1, 3)
            .to_xpoly(c)
            .unwrap()
            .scale(&Scalar::from(2));
        assert_eq!(p, expect);
        for k in 1..5 {
            assert_eq!(
                consecutive_product_as_elementary(k, k, c).unwrap(),
                omega_generator_as_x(k, c).unwrap()
            );
        }
        let top = consecutive_product_as_elementary(1, 4, c).unwrap();
        assert_eq!(top.coeff(&[1, 1, 1, 1, 0]), Scalar::from(24));
        assert!(consecutive_product_as_elementary(3, 2, c).is_err());
        assert!(consecutive_product_as_elementary(1, 5, c).is_err());
    }

    #[test]
    fn tail_products() {
        let c = ctx(4);
        assert_eq!(
            tail_product_omega(4, c).unwrap(),
            w(c, &[(&[3], Scalar::from(-1))])
        );
        assert!(tail_product_omega(1, c).unwrap().is_zero());
        assert_eq!(
            tail_product_omega(3, c).unwrap(),
            w(c, &[(&[2, 3], Scalar::ratio(1, 2))])
        );
        assert!(tail_product_omega(5, c).is_err());
    }

    #[test]
    fn x_generators_in_omega() {
        let c = ctx(5);
        assert_eq!(
            omega_of_x_generator(1, c).unwrap(),
            w(c, &[(&[1], Scalar::one())])
        );
        assert_eq!(
            omega_of_x_generator(5, c).unwrap(),
            w(c, &[(&[4], Scalar::from(-1))])
        );
        assert_eq!(
            omega_of_x_generator(3, c).unwrap(),
            w(c, &[(&[3], Scalar::one()), (&[2], Scalar::from(-1))])
        );
    }

    #[test]
    fn tail_product_matches_oracle() {
        for n in 2..=6 {
            let c = ctx(n);
            let oracle = Oracle::shared(c);
            for i in 1..=n {
                let mut raw = XPolynomial::one(c);
                for j in i..=n {
                    raw = raw
                        .multiply_raw(&XPolynomial::variable(c, j).unwrap())
                        .unwrap();
                }
                let lhs = oracle.normal_form(&raw).unwrap();
                let rhs = omega_to_taut(&tail_product_omega(i, c).unwrap(), &oracle).unwrap();
                assert_eq!(lhs, rhs, "n={n} i={i}");
            }
        }
    }
}
