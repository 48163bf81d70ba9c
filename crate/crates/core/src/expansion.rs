//! Closed-form square-free expansions of monomials with a single square.
//!
//! The central object is `x_c · (x_a ⋯ x_b)` with `a <= c <= b`, optionally
//! decorated by a prefix `x_{l_1} ⋯ x_{l_s}` (all `l_t < a - 1`) on the left
//! and a spectator monomial `x_M` (`M ⊆ [b+2, n-1]`) on the right. Every
//! expansion here is assembled term by term as a [`SquareFreePoly`] and only
//! then read as a tautological class.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::index_set::{IndexSet, RingContext};
use crate::poly::{elementary_range_sf, SquareFreePoly, TautClass, XPolynomial};
use crate::scalar::{binom, sign, Scalar};

fn signed_binom(sign_exp: i64, h: i64, m: i64) -> Scalar {
    Scalar::from(binom(h, m) * sign(sign_exp))
}

fn e(k: usize, lo: usize, hi: usize) -> SquareFreePoly {
    elementary_range_sf(k as i64, lo as i64, hi as i64)
}

fn check_block(a: usize, c: usize, b: usize, ctx: RingContext) -> Result<()> {
    let top = ctx.n().saturating_sub(1);
    ctx.check_index(a, 1, top)?;
    ctx.check_index(c, a, top)?;
    ctx.check_index(b, c, top)?;
    Ok(())
}

fn into_basis(p: SquareFreePoly, ctx: RingContext) -> TautClass {
    p.into_taut(ctx)
        .expect("expansion produced a term outside the tautological basis")
}

/// `x_l · e_k(x_1..x_m) = e_k(x_1..x_m) · x_{m+1}` for `m-k+1 <= l <= m`.
/// Returns the right side.
pub fn lemma_shift(l: usize, k: usize, m: usize, ctx: RingContext) -> Result<XPolynomial> {
    if k == 0 {
        return Err(Error::shape("lemma_shift needs k >= 1"));
    }
    ctx.check_index(m, 1, ctx.n().saturating_sub(1))?;
    if k > m {
        return Err(Error::shape(format!("k = {k} exceeds m = {m}")));
    }
    ctx.check_index(l, m - k + 1, m)?;
    e(k, 1, m)
        .times_set(IndexSet::singleton(m + 1))
        .to_xpoly(ctx)
}

/// Right side of `e_i(x_1..x_{t-1}) x_t² = -e_{i+1}(x_1..x_{t-1}) x_t + e_{i+1}(x_1..x_t) x_{t+1}`.
pub fn lemma_square_step(i: usize, t: usize, ctx: RingContext) -> Result<XPolynomial> {
    ctx.check_index(t, 1, ctx.n().saturating_sub(1))?;
    let mut out = SquareFreePoly::zero();
    out.add_scaled(
        &e(i + 1, 1, t - 1).times_set(IndexSet::singleton(t)),
        &Scalar::from(-1),
    );
    out.add_scaled(
        &e(i + 1, 1, t).times_set(IndexSet::singleton(t + 1)),
        &Scalar::one(),
    );
    out.to_xpoly(ctx)
}

/// `x_b · (x_a ⋯ x_b)` in square-free form. For `b = n-1` the result
/// contains `x_n` and is therefore returned as a raw polynomial.
pub fn expand_right_square(a: usize, b: usize, ctx: RingContext) -> Result<XPolynomial> {
    check_block(a, b, b, ctx)?;
    let len = (b - a) as i64;
    let head = e(b - a + 1, 1, b - 1);
    let mut out = SquareFreePoly::zero();
    out.add_scaled(
        &head.times_set(IndexSet::singleton(b)),
        &Scalar::from(sign(len - 1)),
    );
    out.add_scaled(
        &head.times_set(IndexSet::singleton(b + 1)),
        &Scalar::from(sign(len)),
    );
    out.add_term(IndexSet::range(a, b + 1), &Scalar::one());
    out.to_xpoly(ctx)
}

/// `x_c · (x_a ⋯ x_b)` in the tautological basis, `1 <= a <= c <= b <= n-1`.
pub fn expand_consecutive_square(
    a: usize,
    c: usize,
    b: usize,
    ctx: RingContext,
) -> Result<TautClass> {
    expand_general_square(IndexSet::empty(), a, c, b, IndexSet::empty(), ctx)
}

/// The direct-coefficient form of [`expand_consecutive_square`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectExpansion {
    pub class: TautClass,
    /// `(i, C(b-a+1, c-a+1) - C(i-a, c-a+1))` for `i = a-1..=b`.
    pub first_sum_coefficients: Vec<(usize, BigInt)>,
}

/// `x_c · (x_a ⋯ x_b)` via the direct-coefficient formula, whose first sum
/// has no overlapping monomials. Only `b <= n-2` is supported.
///
/// `x_0` is read as zero, so for `a = 1` the `i = 0` term drops out.
pub fn expand_consecutive_square_direct(
    a: usize,
    c: usize,
    b: usize,
    ctx: RingContext,
) -> Result<DirectExpansion> {
    check_block(a, c, b, ctx)?;
    if b + 1 >= ctx.n() {
        return Err(Error::shape("direct formula requires b <= n-2"));
    }
    let (ai, ci, bi) = (a as i64, c as i64, b as i64);
    let sgn = sign(ci - ai - 1);
    let full = binom(bi - ai + 1, ci - ai + 1);
    let mut out = SquareFreePoly::zero();
    let mut coefficients = Vec::with_capacity(b + 2 - a);
    for i in (a - 1)..=b {
        let coeff = &full - binom(i as i64 - ai, ci - ai + 1);
        assert!(
            !coeff.is_negative(),
            "direct formula coefficient {coeff} < 0 at i={i} (a={a}, c={c}, b={b})"
        );
        coefficients.push((i, coeff.clone()));
        if i == 0 {
            continue;
        }
        let k = i + 1 - a;
        let factor = if i >= 2 { e(k, 1, i - 2) } else { e(k, 1, 0) };
        out.add_scaled(
            &factor.times_set(IndexSet::range(i, b)),
            &Scalar::from(coeff * sgn),
        );
    }
    for i in c..=b {
        let w = signed_binom(ci - ai, i as i64 - ai, ci - ai);
        out.add_scaled(
            &e(i + 1 - a, 1, i - 1).times_set(IndexSet::range(i + 1, b + 1)),
            &w,
        );
    }
    out.add_term(IndexSet::range(a, b + 1), &Scalar::one());
    Ok(DirectExpansion {
        class: into_basis(out, ctx),
        first_sum_coefficients: coefficients,
    })
}

/// Parameters of the prefix-decorated elementary symmetric polynomial
/// `e_k^{(l_1, ..., l_s)}(x_1, ..., x_m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenElemSpec {
    pub k: usize,
    pub prefix: IndexSet,
    pub m: usize,
}

impl GenElemSpec {
    pub fn new(k: usize, prefix: IndexSet, m: usize) -> Result<Self> {
        if let Some(l) = prefix.last() {
            if l > m {
                return Err(Error::shape(format!("prefix element {l} exceeds m = {m}")));
            }
        }
        Ok(GenElemSpec { k, prefix, m })
    }

    /// Evaluates the nested sum over `0 <= j_1 <= ... <= j_s <= k`.
    ///
    /// Writing `d_t = l_t + j_t` and `d_0 = 0`, the summand is
    ///
    /// ```text
    /// Π_{t<s} e_{j_{t+1}-j_t}(x_{d_t+1} .. x_{d_{t+1}-1}) x_{d_{t+1}} · e_{k-j_s}(x_{d_s+1} .. x_m)
    /// ```
    ///
    /// and it vanishes once some `d_t` exceeds `m`.
    pub fn evaluate(&self) -> SquareFreePoly {
        let prefix = self.prefix.to_vec();
        let mut out = SquareFreePoly::zero();
        self.accumulate(&prefix, 0, 0, SquareFreePoly::one(), &mut out);
        out
    }

    fn accumulate(
        &self,
        prefix: &[usize],
        prev_d: usize,
        prev_j: usize,
        acc: SquareFreePoly,
        out: &mut SquareFreePoly,
    ) {
        let Some((&l, rest)) = prefix.split_first() else {
            let tail = e(self.k - prev_j, prev_d + 1, self.m);
            out.add_scaled(&acc.times_disjoint(&tail), &Scalar::one());
            return;
        };
        for j in prev_j..=self.k {
            let d = l + j;
            if d > self.m {
                break;
            }
            let factor = e(j - prev_j, prev_d + 1, d - 1).times_set(IndexSet::singleton(d));
            self.accumulate(rest, d, j, acc.times_disjoint(&factor), out);
        }
    }
}

/// `e_k^{(l_1..l_s)}(x_1..x_m)` as a raw polynomial; `m <= n-1`.
pub fn generalized_elementary(spec: &GenElemSpec, ctx: RingContext) -> Result<XPolynomial> {
    ctx.check_index(spec.m, 1, ctx.n().saturating_sub(1))?;
    spec.evaluate().to_xpoly(ctx)
}

/// `x_l · e_k(x_1..x_m) = Σ_{i=0}^{k} e_i(x_1..x_{l+i-1}) x_{l+i} e_{k-i}(x_{l+i+1}..x_m)`
/// for `1 <= l < m-k+1`.
pub fn prefix_multiply_elementary(
    l: usize,
    k: usize,
    m: usize,
    ctx: RingContext,
) -> Result<XPolynomial> {
    ctx.check_index(m, 1, ctx.n().saturating_sub(1))?;
    if l == 0 || l + k > m {
        return Err(Error::shape(format!(
            "prefix multiplication needs 1 <= l < m-k+1, got l={l}, k={k}, m={m}"
        )));
    }
    let mut out = SquareFreePoly::zero();
    for i in 0..=k {
        let piece = e(i, 1, l + i - 1)
            .times_set(IndexSet::singleton(l + i))
            .times_disjoint(&e(k - i, l + i + 1, m));
        out.add_scaled(&piece, &Scalar::one());
    }
    out.to_xpoly(ctx)
}

/// The raw monomial `x_prefix · x_a ⋯ x_{c-1} x_c² x_{c+1} ⋯ x_b · x_M`.
pub fn decorated_square_monomial(
    prefix: IndexSet,
    a: usize,
    c: usize,
    b: usize,
    m_set: IndexSet,
    ctx: RingContext,
) -> Result<XPolynomial> {
    let support = prefix.union(IndexSet::range(a, b)).union(m_set);
    let mono = XPolynomial::from_index_set(ctx, support, Scalar::one())?;
    mono.multiply_raw(&XPolynomial::variable(ctx, c)?)
}

fn check_decoration(prefix: IndexSet, a: usize, b: usize, m_set: IndexSet, n: usize) -> Result<()> {
    if let Some(l) = prefix.last() {
        if l + 1 >= a {
            return Err(Error::shape(format!(
                "prefix element must be < a-1 (got {l} with a = {a})"
            )));
        }
    }
    if let Some(lo) = m_set.first() {
        if lo <= b + 1 {
            return Err(Error::shape(format!(
                "M element must be >= b+2 (got {lo} with b = {b})"
            )));
        }
    }
    if let Some(hi) = m_set.last() {
        if hi >= n {
            return Err(Error::shape(format!("M element must be <= n-1 (got {hi})")));
        }
    }
    if b + 1 == n && !m_set.is_empty() {
        return Err(Error::shape("M must be empty when b = n-1"));
    }
    Ok(())
}

/// `x_prefix · x_a ⋯ x_c² ⋯ x_b · x_M` in the tautological basis.
///
/// Requires `prefix < a-1` elementwise, `a <= c <= b <= n-1` and
/// `M ⊆ [b+2, n-1]`; when `b = n-1`, `M` must be empty and the top-case
/// formula (which never produces `x_n`) is used.
pub fn expand_general_square(
    prefix: IndexSet,
    a: usize,
    c: usize,
    b: usize,
    m_set: IndexSet,
    ctx: RingContext,
) -> Result<TautClass> {
    check_block(a, c, b, ctx)?;
    let n = ctx.n();
    check_decoration(prefix, a, b, m_set, n)?;
    let (ai, ci) = (a as i64, c as i64);
    let weight = |i: usize, sign_exp: i64| signed_binom(sign_exp, i as i64 - ai, ci - ai);
    let decorated = |i: usize| {
        GenElemSpec {
            k: i + 1 - a,
            prefix,
            m: i - 1,
        }
        .evaluate()
    };

    let mut out = SquareFreePoly::zero();
    if b + 1 == n {
        for i in c..=n {
            let term = decorated(i).times_set(IndexSet::range(i, n - 1));
            out.add_scaled(&term, &weight(i, ci - ai - 1));
        }
    } else {
        for i in c..=b {
            let head = decorated(i);
            out.add_scaled(
                &head.times_set(IndexSet::range(i, b)),
                &weight(i, ci - ai - 1),
            );
            out.add_scaled(
                &head.times_set(IndexSet::range(i + 1, b + 1)),
                &weight(i, ci - ai),
            );
        }
        out.add_term(prefix.union(IndexSet::range(a, b + 1)), &Scalar::one());
        out = out.times_set(m_set);
    }
    Ok(into_basis(out, ctx))
}
