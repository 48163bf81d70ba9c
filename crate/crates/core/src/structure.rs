//! Products in the tautological basis and their structure constants.
//!
//! A product `x_J · x_K` is computed by folding the generators of `K` into
//! `x_J` one at a time. A square-free term times one generator has at most a
//! single square, sitting inside one maximal block, which is exactly the shape
//! [`expand_general_square`] resolves.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::expand_general_square;
use crate::index_set::{IndexSet, RingContext};
use crate::oracle::Oracle;
use crate::poly::{TautClass, XPolynomial};
use crate::scalar::Scalar;

/// Default bound on `n` for exhaustive tables and sweeps.
pub const DEFAULT_MAX_N: usize = 7;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "PETERSON_MAX_N";

/// `g · c` for a generator `x_g`, `1 <= g <= n-1`.
pub fn multiply_generator(c: &TautClass, g: usize) -> Result<TautClass> {
    let ctx = c.context();
    let n = ctx.n();
    ctx.check_index(g, 1, n.saturating_sub(1))?;
    let mut out = TautClass::zero(ctx);
    for (s, v) in c.terms() {
        let Some((a, b)) = s.block_containing(g) else {
            out.add_term_unchecked(s.with(g), v);
            continue;
        };
        let prefix = s.intersection(IndexSet::range(1, a.saturating_sub(2)));
        let m_set = s.intersection(IndexSet::range(b + 2, n - 1));
        let expansion = expand_general_square(prefix, a, g, b, m_set, ctx)?;
        out.add_scaled(&expansion, v)?;
    }
    Ok(out)
}

/// `x_S · c`, folding the elements of `S` in the given order.
pub fn multiply_by_sequence(c: &TautClass, order: &[usize]) -> Result<TautClass> {
    let mut acc = c.clone();
    for &g in order {
        acc = multiply_generator(&acc, g)?;
    }
    Ok(acc)
}

/// Ring product. Each basis monomial of `right` is folded in ascending order.
pub fn multiply(left: &TautClass, right: &TautClass) -> Result<TautClass> {
    left.context().check_same(right.context())?;
    let mut out = TautClass::zero(left.context());
    for (k, v) in right.terms() {
        let part = multiply_by_sequence(left, &k.to_vec())?;
        out.add_scaled(&part, v)?;
    }
    Ok(out)
}

/// The coefficients `c_{J,K}^L` of `x_J · x_K`.
///
/// A non-integral coefficient is reported as [`Error::NonIntegral`].
pub fn structure_constants(
    j: IndexSet,
    k: IndexSet,
    ctx: RingContext,
) -> Result<BTreeMap<IndexSet, BigInt>> {
    let left = TautClass::basis_element(ctx, j)?;
    let right = TautClass::basis_element(ctx, k)?;
    integral_terms(j, k, &multiply(&left, &right)?)
}

fn integral_terms(
    j: IndexSet,
    k: IndexSet,
    product: &TautClass,
) -> Result<BTreeMap<IndexSet, BigInt>> {
    product
        .terms()
        .map(|(l, v)| match v.to_integer() {
            Some(z) => Ok((*l, z)),
            None => Err(Error::NonIntegral {
                j: j.to_string(),
                k: k.to_string(),
                l: l.to_string(),
                value: v.to_string(),
            }),
        })
        .collect()
}

/// Size limit for exhaustive work: `PETERSON_MAX_N` if set, else [`DEFAULT_MAX_N`].
pub fn size_limit() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

pub fn check_size(ctx: RingContext, limit: usize) -> Result<()> {
    if ctx.n() > limit {
        return Err(Error::SizeGuard { n: ctx.n(), limit });
    }
    Ok(())
}

/// All structure constants of one ring, stored for `J <= K` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    ctx: RingContext,
    entries: BTreeMap<(IndexSet, IndexSet), BTreeMap<IndexSet, BigInt>>,
}

impl StructureTable {
    pub fn new(ctx: RingContext) -> Self {
        StructureTable {
            ctx,
            entries: BTreeMap::new(),
        }
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    /// Records `c_{J,K}^L`. Zero values are dropped.
    pub fn insert(&mut self, j: IndexSet, k: IndexSet, l: IndexSet, c: BigInt) -> Result<()> {
        if l.len() != j.len() + k.len() {
            return Err(Error::shape(format!(
                "|L| != |J| + |K| for J={j}, K={k}, L={l}"
            )));
        }
        let key = if j <= k { (j, k) } else { (k, j) };
        let row = self.entries.entry(key).or_default();
        if c == BigInt::from(0) {
            row.remove(&l);
        } else {
            row.insert(l, c);
        }
        Ok(())
    }

    /// `c_{J,K}^L`, read symmetrically.
    pub fn get(&self, j: IndexSet, k: IndexSet, l: IndexSet) -> BigInt {
        self.product(j, k)
            .and_then(|row| row.get(&l).cloned())
            .unwrap_or_default()
    }

    /// The nonzero constants of `x_J · x_K`, read symmetrically.
    pub fn product(&self, j: IndexSet, k: IndexSet) -> Option<&BTreeMap<IndexSet, BigInt>> {
        let key = if j <= k { (j, k) } else { (k, j) };
        self.entries.get(&key)
    }

    /// Number of stored nonzero constants (`J <= K` half).
    pub fn len(&self) -> usize {
        self.entries.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every nonzero `(J, K, L, c)` over ordered pairs, sorted by `(J, K, L)`.
    pub fn rows(&self) -> Vec<(IndexSet, IndexSet, IndexSet, BigInt)> {
        let mut rows = Vec::with_capacity(2 * self.len());
        for ((j, k), row) in &self.entries {
            for (l, c) in row {
                rows.push((*j, *k, *l, c.clone()));
                if j != k {
                    rows.push((*k, *j, *l, c.clone()));
                }
            }
        }
        rows.sort();
        rows
    }
}

/// Computes every `x_J · x_K`, `J <= K`, in parallel. Guarded by `limit`.
pub fn full_table_with_limit(ctx: RingContext, limit: usize) -> Result<StructureTable> {
    check_size(ctx, limit)?;
    let basis = ctx.basis();
    let pairs: Vec<(IndexSet, IndexSet)> = basis
        .iter()
        .enumerate()
        .flat_map(|(p, j)| basis[p..].iter().map(move |k| (*j, *k)))
        .collect();
    let rows: Vec<_> = pairs
        .par_iter()
        .map(|&(j, k)| structure_constants(j, k, ctx).map(|row| ((j, k), row)))
        .collect::<Result<_>>()?;
    let mut table = StructureTable::new(ctx);
    for (key, row) in rows {
        if !row.is_empty() {
            table.entries.insert(key, row);
        }
    }
    Ok(table)
}

/// [`full_table_with_limit`] with the limit from [`size_limit`].
pub fn full_table(ctx: RingContext) -> Result<StructureTable> {
    full_table_with_limit(ctx, size_limit())
}

/// Coefficient disagreement between expansion and oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub l: IndexSet,
    pub expansion: Scalar,
    pub oracle: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub j: IndexSet,
    pub k: IndexSet,
    pub integral: bool,
    pub discrepancies: Vec<Discrepancy>,
}

impl PairReport {
    pub fn is_ok(&self) -> bool {
        self.integral && self.discrepancies.is_empty()
    }
}

/// Raw polynomial `x_J · x_K`, before any reduction.
pub fn raw_product(j: IndexSet, k: IndexSet, ctx: RingContext) -> Result<XPolynomial> {
    let left = XPolynomial::from_index_set(ctx, j, Scalar::one())?;
    left.multiply_raw(&XPolynomial::from_index_set(ctx, k, Scalar::one())?)
}

/// Compares [`multiply`] against the oracle normal form of the raw product.
pub fn verify_pair(j: IndexSet, k: IndexSet, oracle: &Oracle) -> Result<PairReport> {
    let ctx = oracle.context();
    let ours = multiply(
        &TautClass::basis_element(ctx, j)?,
        &TautClass::basis_element(ctx, k)?,
    )?;
    let reference = oracle.normal_form(&raw_product(j, k, ctx)?)?;
    let mut support: Vec<IndexSet> = ours
        .terms()
        .chain(reference.terms())
        .map(|(l, _)| *l)
        .collect();
    support.sort();
    support.dedup();
    let discrepancies = support
        .into_iter()
        .filter_map(|l| {
            let (x, y) = (ours.coeff(l), reference.coeff(l));
            (x != y).then_some(Discrepancy {
                l,
                expansion: x,
                oracle: y,
            })
        })
        .collect();
    Ok(PairReport {
        j,
        k,
        integral: ours.is_integral(),
        discrepancies,
    })
}

/// Verifies every ordered pair `(J, K)`; reports come back in basis order.
pub fn verify_exhaustive(ctx: RingContext, limit: usize) -> Result<Vec<PairReport>> {
    check_size(ctx, limit)?;
    let oracle = Oracle::shared(ctx);
    let basis = ctx.basis();
    let pairs: Vec<(IndexSet, IndexSet)> = basis
        .iter()
        .flat_map(|j| basis.iter().map(move |k| (*j, *k)))
        .collect();
    pairs
        .par_iter()
        .map(|&(j, k)| verify_pair(j, k, &oracle))
        .collect()
}

/// A uniformly random subset of `{1, ..., n-1}`.
pub fn random_basis_index<R: Rng + ?Sized>(ctx: RingContext, rng: &mut R) -> IndexSet {
    let support = ctx.basis_support().bits();
    IndexSet::from_bits(rng.gen::<u64>() & support)
}

/// Verifies `samples` random pairs drawn from `rng`.
pub fn verify_random<R: Rng + ?Sized>(
    ctx: RingContext,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<PairReport>> {
    let oracle = Oracle::shared(ctx);
    let pairs: Vec<(IndexSet, IndexSet)> = (0..samples)
        .map(|_| (random_basis_index(ctx, rng), random_basis_index(ctx, rng)))
        .collect();
    pairs
        .par_iter()
        .map(|&(j, k)| verify_pair(j, k, &oracle))
        .collect()
}
