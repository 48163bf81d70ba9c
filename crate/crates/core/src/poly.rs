//! Polynomials in `x_1, ..., x_n`.
//!
//! Three representations live here:
//!
//! * [`XPolynomial`]: arbitrary sparse polynomials keyed by dense exponent
//!   vectors. This is the raw, unreduced layer fed to the oracle.
//! * [`SquareFreePoly`]: linear combinations of square-free monomials in
//!   `x_1, ..., x_n` keyed by [`IndexSet`]. The expansion formulas produce
//!   these; `x_n` may still occur.
//! * [`Class`]: canonical ring elements, square-free over `{1, ..., n-1}`,
//!   either in the `x` generators ([`TautClass`]) or the `ϖ` generators
//!   ([`OmegaClass`]).

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::index_set::{subsets_of_size, IndexSet, RingContext};
use crate::scalar::Scalar;

/// Dense exponent vector; entry `i - 1` is the exponent of `x_i`.
pub type Exponents = Vec<u32>;

fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A sparse polynomial in `x_1, ..., x_n` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XPolynomial {
    ctx: RingContext,
    terms: BTreeMap<Exponents, Scalar>,
}

impl XPolynomial {
    pub fn zero(ctx: RingContext) -> Self {
        XPolynomial {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: RingContext, c: Scalar) -> Self {
        let mut p = XPolynomial::zero(ctx);
        p.add_term(vec![0; ctx.n()], &c);
        p
    }

    pub fn one(ctx: RingContext) -> Self {
        XPolynomial::constant(ctx, Scalar::one())
    }

    /// The single variable `x_i`, `1 <= i <= n`.
    pub fn variable(ctx: RingContext, i: usize) -> Result<Self> {
        ctx.check_index(i, 1, ctx.n())?;
        let mut e = vec![0; ctx.n()];
        e[i - 1] = 1;
        let mut p = XPolynomial::zero(ctx);
        p.add_term(e, &Scalar::one());
        Ok(p)
    }

    /// `c * x_S`.
    pub fn from_index_set(ctx: RingContext, set: IndexSet, c: Scalar) -> Result<Self> {
        let mut p = XPolynomial::zero(ctx);
        p.add_term(set_exponents(ctx, set)?, &c);
        Ok(p)
    }

    /// Builds from `(exponents, coefficient)` pairs; like terms are merged.
    pub fn from_terms(
        ctx: RingContext,
        terms: impl IntoIterator<Item = (Exponents, Scalar)>,
    ) -> Result<Self> {
        let mut p = XPolynomial::zero(ctx);
        for (e, c) in terms {
            if e.len() != ctx.n() {
                return Err(Error::Parse(format!(
                    "exponent vector of length {} for n = {}",
                    e.len(),
                    ctx.n()
                )));
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: &Scalar) {
        debug_assert_eq!(e.len(), self.ctx.n());
        add_into(&mut self.terms, e, c);
    }

    pub fn add(&self, other: &XPolynomial) -> Result<XPolynomial> {
        self.ctx.check_same(other.ctx)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &XPolynomial) -> Result<XPolynomial> {
        self.add(&other.scale(&Scalar::from(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> XPolynomial {
        let mut out = XPolynomial::zero(self.ctx);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    /// Exact polynomial product; exponent vectors add componentwise.
    pub fn multiply_raw(&self, other: &XPolynomial) -> Result<XPolynomial> {
        self.ctx.check_same(other.ctx)?;
        let mut out = XPolynomial::zero(self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> XPolynomial {
        let mut acc = XPolynomial::one(self.ctx);
        for _ in 0..k {
            acc = acc.multiply_raw(self).expect("same context");
        }
        acc
    }

    /// Total degrees occurring, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Splits into homogeneous components keyed by total degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, XPolynomial> {
        let mut parts: BTreeMap<u32, XPolynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.iter().sum();
            parts
                .entry(d)
                .or_insert_with(|| XPolynomial::zero(self.ctx))
                .add_term(e.clone(), c);
        }
        parts
    }

    pub fn is_square_free(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x <= 1))
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, x)
                    }
                })
                .collect();
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == Scalar::one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

fn set_exponents(ctx: RingContext, set: IndexSet) -> Result<Exponents> {
    let mut e = vec![0; ctx.n()];
    for i in set {
        ctx.check_index(i, 1, ctx.n())?;
        e[i - 1] = 1;
    }
    Ok(e)
}

/// A linear combination of square-free monomials `x_S`, `S ⊆ {1, ..., n}`.
///
/// Unlike [`TautClass`] this may mention `x_n`; it is the shape in which
/// the closed-form expansion sums are assembled.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SquareFreePoly {
    terms: BTreeMap<IndexSet, Scalar>,
}

impl SquareFreePoly {
    pub fn zero() -> Self {
        SquareFreePoly::default()
    }

    pub fn one() -> Self {
        SquareFreePoly::monomial(IndexSet::empty(), Scalar::one())
    }

    pub fn monomial(set: IndexSet, c: Scalar) -> Self {
        let mut p = SquareFreePoly::zero();
        p.add_term(set, &c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, set: IndexSet) -> Scalar {
        self.terms.get(&set).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, set: IndexSet, c: &Scalar) {
        add_into(&mut self.terms, set, c);
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SquareFreePoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (s, v) in &other.terms {
            self.add_term(*s, &(v * c));
        }
    }

    /// `self * x_set`. The set must be disjoint from every term.
    pub fn times_set(&self, set: IndexSet) -> SquareFreePoly {
        let mut out = SquareFreePoly::zero();
        for (s, c) in &self.terms {
            assert!(s.is_disjoint(set), "product {s} * {set} is not square-free");
            out.add_term(s.union(set), c);
        }
        out
    }

    /// Product of two square-free polynomials whose supports never overlap.
    pub fn times_disjoint(&self, other: &SquareFreePoly) -> SquareFreePoly {
        let mut out = SquareFreePoly::zero();
        for (s, c) in &self.terms {
            for (t, d) in &other.terms {
                assert!(s.is_disjoint(*t), "product {s} * {t} is not square-free");
                out.add_term(s.union(*t), &(c * d));
            }
        }
        out
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(|s| s.last()).max()
    }

    /// Sizes of the occurring index sets, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|s| s.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn to_xpoly(&self, ctx: RingContext) -> Result<XPolynomial> {
        let mut p = XPolynomial::zero(ctx);
        for (s, c) in &self.terms {
            p.add_term(set_exponents(ctx, *s)?, c);
        }
        Ok(p)
    }

    /// Reinterprets as a tautological class; fails if any term contains `x_n`.
    pub fn into_taut(self, ctx: RingContext) -> Result<TautClass> {
        TautClass::from_terms(ctx, self.terms)
    }
}

/// `e_k(x_lo, ..., x_hi)` as a square-free polynomial.
///
/// Follows the usual conventions: `e_0 = 1` for every range (the empty one
/// included), `e_k = 0` for `k < 0` or `k` larger than the range length.
pub fn elementary_range_sf(k: i64, lo: i64, hi: i64) -> SquareFreePoly {
    if k < 0 {
        return SquareFreePoly::zero();
    }
    if k == 0 {
        return SquareFreePoly::one();
    }
    assert!(lo >= 1, "variable range starts at x_{lo}");
    let len = hi - lo + 1;
    if k > len {
        return SquareFreePoly::zero();
    }
    let mut out = SquareFreePoly::zero();
    for s in subsets_of_size(IndexSet::range(lo as usize, hi as usize), k as usize) {
        out.add_term(s, &Scalar::one());
    }
    out
}

/// `e_k(x_1, ..., x_m)`, `0 <= m <= n`.
pub fn elementary_symmetric(k: i64, m: usize, ctx: RingContext) -> Result<XPolynomial> {
    if k < 0 {
        return Err(Error::shape(format!(
            "elementary symmetric degree must be >= 0, got {k}"
        )));
    }
    ctx.check_index(m, 0, ctx.n())?;
    elementary_range_sf(k, 1, m as i64).to_xpoly(ctx)
}

/// `e_k(x_lo, ..., x_hi)`; an empty range (`lo > hi`) is allowed.
pub fn elementary_symmetric_range(
    k: i64,
    lo: usize,
    hi: usize,
    ctx: RingContext,
) -> Result<XPolynomial> {
    if k < 0 {
        return Err(Error::shape(format!(
            "elementary symmetric degree must be >= 0, got {k}"
        )));
    }
    if lo == 0 {
        return Err(Error::shape("variable ranges start at x_1"));
    }
    if hi > ctx.n() {
        return Err(Error::IndexOutOfRange {
            index: hi as i64,
            lo: 0,
            hi: ctx.n() as i64,
        });
    }
    elementary_range_sf(k, lo as i64, hi as i64).to_xpoly(ctx)
}

/// Marker for the generator system a [`Class`] is written in.
pub trait Generators: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    /// Printed variable name.
    const SYMBOL: &'static str;
    /// Value of the `"system"` field in the JSON term list, if any.
    const SYSTEM_TAG: Option<&'static str>;
}

/// The tautological generators `x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tautological;

/// The generators `ϖ_k = x_1 + ... + x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega;

impl Generators for Tautological {
    const SYMBOL: &'static str = "x";
    const SYSTEM_TAG: Option<&'static str> = None;
}

impl Generators for Omega {
    const SYMBOL: &'static str = "w";
    const SYSTEM_TAG: Option<&'static str> = Some("omega");
}

/// A ring element written in a square-free basis over `{1, ..., n-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Class<G: Generators> {
    ctx: RingContext,
    terms: BTreeMap<IndexSet, Scalar>,
    _gens: PhantomData<G>,
}

pub type TautClass = Class<Tautological>;
pub type OmegaClass = Class<Omega>;

impl<G: Generators> Class<G> {
    pub fn zero(ctx: RingContext) -> Self {
        Class {
            ctx,
            terms: BTreeMap::new(),
            _gens: PhantomData,
        }
    }

    pub fn one(ctx: RingContext) -> Self {
        Class::basis_element(ctx, IndexSet::empty()).expect("empty set is a basis index")
    }

    pub fn basis_element(ctx: RingContext, set: IndexSet) -> Result<Self> {
        Class::from_terms(ctx, [(set, Scalar::one())])
    }

    /// Builds from `(index set, coefficient)` pairs, merging like terms.
    /// Every set must lie in `{1, ..., n-1}`.
    pub fn from_terms(
        ctx: RingContext,
        terms: impl IntoIterator<Item = (IndexSet, Scalar)>,
    ) -> Result<Self> {
        let mut c = Class::zero(ctx);
        for (s, v) in terms {
            c.check_set(s)?;
            add_into(&mut c.terms, s, &v);
        }
        Ok(c)
    }

    fn check_set(&self, s: IndexSet) -> Result<()> {
        match s.last() {
            Some(m) if m >= self.ctx.n() => Err(Error::ContainsTopVariable(m)),
            _ => Ok(()),
        }
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    /// Terms in lexicographic order of their index sets.
    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, set: IndexSet) -> Scalar {
        self.terms.get(&set).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term_unchecked(&mut self, set: IndexSet, c: &Scalar) {
        debug_assert!(set.last().is_none_or(|m| m < self.ctx.n()));
        add_into(&mut self.terms, set, c);
    }

    pub fn add_term(&mut self, set: IndexSet, c: &Scalar) -> Result<()> {
        self.check_set(set)?;
        add_into(&mut self.terms, set, c);
        Ok(())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Class<G>, c: &Scalar) -> Result<()> {
        self.ctx.check_same(other.ctx)?;
        if c.is_zero() {
            return Ok(());
        }
        for (s, v) in &other.terms {
            add_into(&mut self.terms, *s, &(v * c));
        }
        Ok(())
    }

    pub fn add(&self, other: &Class<G>) -> Result<Class<G>> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &Class<G>) -> Result<Class<G>> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from(-1))?;
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Class<G> {
        let mut out = Class::zero(self.ctx);
        for (s, v) in &self.terms {
            add_into(&mut out.terms, *s, &(v * c));
        }
        out
    }

    /// True when every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Scalar::is_integer)
    }

    /// Sizes of the occurring index sets, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|s| s.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }
}

impl TautClass {
    /// The class as a raw polynomial, `x_S` for each basis term.
    pub fn to_poly(&self) -> XPolynomial {
        let mut p = XPolynomial::zero(self.ctx);
        for (s, c) in &self.terms {
            p.add_term(set_exponents(self.ctx, *s).expect("basis index"), c);
        }
        p
    }

    /// Reads a polynomial that is already in basis form: square-free, no `x_n`.
    pub fn from_poly(p: &XPolynomial) -> Result<TautClass> {
        let ctx = p.context();
        let mut c = TautClass::zero(ctx);
        for (e, v) in p.terms() {
            let mut set = IndexSet::empty();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => set = set.with(i + 1),
                    _ => return Err(Error::NotSquareFree),
                }
            }
            c.add_term(set, v)?;
        }
        Ok(c)
    }
}

/// Representation change from class to raw polynomial.
pub fn class_to_poly(c: &TautClass) -> XPolynomial {
    c.to_poly()
}

/// Representation change from raw polynomial (already in basis form) to class.
pub fn poly_to_class(p: &XPolynomial) -> Result<TautClass> {
    TautClass::from_poly(p)
}

impl<G: Generators> fmt::Display for Class<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if s.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != Scalar::one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{}_{{{}}}", G::SYMBOL, s.comma_joined())?;
        }
        Ok(())
    }
}

impl<G: Generators> fmt::Debug for Class<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] {}", self.ctx.n(), self)
    }
}
