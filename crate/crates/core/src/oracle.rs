//! Brute-force normal forms by exact linear algebra.
//!
//! The defining ideal `J_x` is generated by the quadrics
//! `(x_1 + ... + x_k)(x_k - x_{k+1})`, `1 <= k <= n-1`, and the linear form
//! `x_1 + ... + x_n`. It is homogeneous, so the quotient splits by degree and
//! each degree can be handled with finite-dimensional elimination:
//!
//! 1. The linear-form multiples `(x_1 + ... + x_n) * m` are already in
//!    echelon form with pivots on the monomials divisible by `x_n`; reducing
//!    against them is the substitution `x_n = -(x_1 + ... + x_{n-1})`.
//! 2. What remains is the degree-`d` slice spanned by `m * q_k` in the
//!    variables `x_1, ..., x_{n-1}`. It is echelonized with fraction-free
//!    integer elimination, columns ordered so that square-free monomials come
//!    last. Since square-free monomials span a complement of the ideal, every
//!    other monomial becomes a pivot and the reduced rows give its normal form
//!    directly.
//!
//! Nothing here uses the closed-form expansion formulas; the only input is
//! the ideal and the size of the quotient in each degree, which is asserted.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::index_set::{IndexSet, RingContext};
use crate::poly::{TautClass, XPolynomial};
use crate::scalar::{binom, Scalar};

type Mono = Vec<u32>;
type Row = Vec<(u32, BigInt)>;

/// Generators of `J_x`: the `n - 1` quadrics followed by the linear form.
pub fn ideal_generators(ctx: RingContext) -> Vec<XPolynomial> {
    let n = ctx.n();
    let var = |i| XPolynomial::variable(ctx, i).expect("in range");
    let partial_sum = |k: usize| {
        (1..=k).fold(XPolynomial::zero(ctx), |acc, i| {
            acc.add(&var(i)).expect("same ctx")
        })
    };
    let mut gens = Vec::with_capacity(n);
    for k in 1..n {
        let diff = var(k).sub(&var(k + 1)).expect("same ctx");
        gens.push(partial_sum(k).multiply_raw(&diff).expect("same ctx"));
    }
    gens.push(partial_sum(n));
    gens
}

/// Echelonized degree-`d` slice of the ideal.
#[derive(Debug)]
pub struct IdealSlice {
    ctx: RingContext,
    degree: usize,
    rank: BigInt,
    reduced_rank: usize,
    /// normal form of every non-square-free monomial in `x_1..x_{n-1}`
    normal_forms: HashMap<Mono, Vec<(IndexSet, Scalar)>>,
}

impl IdealSlice {
    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of the degree-`d` part of `J_x` inside all degree-`d`
    /// polynomials in `x_1, ..., x_n`.
    pub fn rank(&self) -> &BigInt {
        &self.rank
    }

    /// Rank of the slice after eliminating `x_n`.
    pub fn reduced_rank(&self) -> usize {
        self.reduced_rank
    }

    /// `C(n+d-1, d) - C(n-1, d)`: the rank the quotient dimension forces.
    pub fn expected_rank(ctx: RingContext, d: usize) -> BigInt {
        let (n, d) = (ctx.n() as i64, d as i64);
        binom(n + d - 1, d) - binom(n - 1, d)
    }
}

/// All degree-`d` exponent vectors in `vars` variables.
fn monomials(vars: usize, d: u32) -> Vec<Mono> {
    fn go(prefix: &mut Mono, vars: usize, left: u32, out: &mut Vec<Mono>) {
        if prefix.len() + 1 == vars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            go(prefix, vars, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(&mut Vec::with_capacity(vars), vars, d, &mut out);
    out
}

fn is_square_free(m: &[u32]) -> bool {
    m.iter().all(|&e| e <= 1)
}

fn mono_set(m: &[u32]) -> IndexSet {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e == 1)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Sparse polynomial in the reduced variables `x_1..x_{n-1}`.
type Reduced = HashMap<Mono, Scalar>;

fn reduced_mul(a: &Reduced, b: &Reduced) -> Reduced {
    let mut out: Reduced = HashMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Mono = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_default();
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Integer row operations for fraction-free elimination.
fn content_normalize(row: &mut Row) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `row := (lead_p / g) * row - (row[col] / g) * pivot`, eliminating `col`.
fn eliminate(row: &Row, at: usize, pivot: &Row) -> Row {
    let a = &row[at].1;
    let p = &pivot[0].1;
    let g = a.gcd(p);
    let fr = p / &g;
    let fp = a / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0);
        let cj = pivot.get(j).map(|e| e.0);
        match (ci, cj) {
            (Some(x), Some(y)) if x == y => {
                let v = &row[i].1 * &fr - &pivot[j].1 * &fp;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, &row[i].1 * &fr));
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, &row[i].1 * &fr));
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(&pivot[j].1 * &fp)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    content_normalize(&mut out);
    out
}

/// Builds and verifies the degree-`d` slice, `2 <= d`.
fn build_reduced_slice(ctx: RingContext, d: usize) -> IdealSlice {
    let n = ctx.n();
    let vars = n - 1;

    // columns: non-square-free monomials first, square-free last
    let mut cols = monomials(vars, d as u32);
    cols.sort_by(|a, b| {
        is_square_free(a)
            .cmp(&is_square_free(b))
            .then_with(|| b.cmp(a))
    });
    let col_of: HashMap<&Mono, u32> = cols
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i as u32))
        .collect();
    let non_basis = cols.iter().filter(|m| !is_square_free(m)).count();

    // quadrics with x_n eliminated
    let quadrics = reduced_quadrics(ctx);

    let to_row = |p: &Reduced| -> Row {
        let mut r: Row = p
            .iter()
            .map(|(e, c)| {
                let v = c
                    .to_integer()
                    .expect("generator multiples have integer coefficients");
                (col_of[e], v)
            })
            .collect();
        r.sort_by_key(|e| e.0);
        content_normalize(&mut r);
        r
    };

    let multipliers = monomials(vars, d as u32 - 2);
    let mut rows = multipliers.iter().flat_map(|m| {
        let mono: Reduced = HashMap::from([(m.clone(), Scalar::one())]);
        quadrics.iter().map(move |q| reduced_mul(&mono, q))
    });

    let mut pivots: Vec<Option<Row>> = vec![None; cols.len()];
    let mut found = 0usize;
    while found < non_basis {
        let Some(gen) = rows.next() else {
            panic!(
                "ideal slice n={n} d={d} has rank {found} < {non_basis}: \
                 the quotient is larger than the square-free basis"
            );
        };
        let mut r = to_row(&gen);
        let mut i = 0;
        while i < r.len() {
            let c = r[i].0 as usize;
            match &pivots[c] {
                Some(p) => r = eliminate(&r, i, p),
                None => i += 1,
            }
        }
        if let Some(&(lead, _)) = r.first() {
            assert!(
                (lead as usize) < non_basis,
                "ideal slice n={n} d={d} meets the span of square-free monomials"
            );
            pivots[lead as usize] = Some(r);
            found += 1;
        }
    }

    // back substitution, highest column first, straight into rationals
    let mut normal_forms: HashMap<Mono, Vec<(IndexSet, Scalar)>> =
        HashMap::with_capacity(non_basis);
    let mut nf_by_col: Vec<Vec<(IndexSet, Scalar)>> = vec![Vec::new(); non_basis];
    for c in (0..non_basis).rev() {
        let row = pivots[c]
            .as_ref()
            .expect("every non-square-free column is a pivot");
        let lead = Scalar::from(row[0].1.clone());
        let mut acc: HashMap<IndexSet, Scalar> = HashMap::new();
        for (col, v) in &row[1..] {
            let v = Scalar::from(v.clone());
            let col = *col as usize;
            if col >= non_basis {
                *acc.entry(mono_set(&cols[col])).or_default() += &v;
            } else {
                for (s, w) in &nf_by_col[col] {
                    *acc.entry(*s).or_default() += &v * w;
                }
            }
        }
        let neg_inv = -lead.recip().expect("pivot is nonzero");
        let mut nf: Vec<(IndexSet, Scalar)> = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, v)| (s, v * &neg_inv))
            .collect();
        nf.sort_by_key(|a| a.0);
        nf_by_col[c] = nf;
    }

    // the unused generator multiples must reduce to zero, or the rank is too big
    let nf_of = |col: usize| -> Vec<(IndexSet, Scalar)> {
        if col < non_basis {
            nf_by_col[col].clone()
        } else {
            vec![(mono_set(&cols[col]), Scalar::one())]
        }
    };
    for gen in rows {
        let mut acc: HashMap<IndexSet, Scalar> = HashMap::new();
        for (e, v) in &gen {
            for (s, w) in nf_of(col_of[e] as usize) {
                *acc.entry(s).or_default() += v * &w;
            }
        }
        assert!(
            acc.values().all(Scalar::is_zero),
            "ideal slice n={n} d={d} has rank above {non_basis}: square-free monomials are dependent"
        );
    }

    for (c, nf) in nf_by_col.into_iter().enumerate() {
        normal_forms.insert(cols[c].clone(), nf);
    }

    // rank inside all of degree d in x_1..x_n: the x_n-divisible monomials
    // (pivots of the linear-form rows) plus the reduced slice
    let rank = binom((n + d - 2) as i64, (d - 1) as i64) + BigInt::from(non_basis);
    let expected = IdealSlice::expected_rank(ctx, d);
    assert_eq!(rank, expected, "slice rank mismatch for n={n} d={d}");

    IdealSlice {
        ctx,
        degree: d,
        rank,
        reduced_rank: non_basis,
        normal_forms,
    }
}

/// Degree 0 and 1: nothing but the linear form.
fn trivial_slice(ctx: RingContext, d: usize) -> IdealSlice {
    let n = ctx.n() as i64;
    let rank = if d == 0 {
        BigInt::zero()
    } else {
        binom(n + d as i64 - 2, d as i64 - 1)
    };
    assert_eq!(rank, IdealSlice::expected_rank(ctx, d));
    IdealSlice {
        ctx,
        degree: d,
        rank,
        reduced_rank: 0,
        normal_forms: HashMap::new(),
    }
}

fn reduced_quadrics(ctx: RingContext) -> Vec<Reduced> {
    let n = ctx.n();
    let vars = n - 1;
    let unit = |i: usize| {
        let mut e = vec![0u32; vars];
        e[i - 1] = 1;
        e
    };
    // x_i for i < n, and x_n = -(x_1 + ... + x_{n-1})
    let var = |i: usize| -> Reduced {
        if i < n {
            HashMap::from([(unit(i), Scalar::one())])
        } else {
            (1..n).map(|j| (unit(j), Scalar::from(-1))).collect()
        }
    };
    let add = |a: &Reduced, b: &Reduced, sign: i64| -> Reduced {
        let mut out = a.clone();
        for (e, c) in b {
            *out.entry(e.clone()).or_default() += c * &Scalar::from(sign);
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    (1..n)
        .map(|k| {
            let partial = (1..=k).fold(HashMap::new(), |acc, i| add(&acc, &var(i), 1));
            let diff = add(&var(k), &var(k + 1), -1);
            reduced_mul(&partial, &diff)
        })
        .collect()
}

/// Normal-form oracle for one ring; slices are built on first use and cached.
pub struct Oracle {
    ctx: RingContext,
    slices: Vec<OnceLock<Arc<IdealSlice>>>,
}

static SHARED: OnceLock<Mutex<HashMap<usize, Arc<Oracle>>>> = OnceLock::new();

impl Oracle {
    pub fn new(ctx: RingContext) -> Self {
        Oracle {
            ctx,
            slices: (0..=ctx.n()).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Process-wide oracle for `ctx`, so repeated sweeps share slices.
    pub fn shared(ctx: RingContext) -> Arc<Oracle> {
        let map = SHARED.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = map.lock().expect("oracle registry poisoned");
        map.entry(ctx.n())
            .or_insert_with(|| Arc::new(Oracle::new(ctx)))
            .clone()
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    /// The slice in degree `d <= n`. Beyond `n` the quotient is zero (it is
    /// zero in degree `n` and generated in degree 1), so no slice is needed.
    pub fn slice(&self, d: usize) -> Arc<IdealSlice> {
        assert!(d <= self.ctx.n(), "slices are built up to degree n");
        self.slices[d]
            .get_or_init(|| {
                Arc::new(if d < 2 {
                    trivial_slice(self.ctx, d)
                } else {
                    build_reduced_slice(self.ctx, d)
                })
            })
            .clone()
    }

    /// Built slices so far.
    pub fn built_slices(&self) -> Vec<Arc<IdealSlice>> {
        self.slices
            .iter()
            .filter_map(|s| s.get().cloned())
            .collect()
    }

    /// The unique expansion of `p` in the tautological basis.
    pub fn normal_form(&self, p: &XPolynomial) -> Result<TautClass> {
        self.ctx.check_same(p.context())?;
        let n = self.ctx.n();
        let vars = n - 1;

        // x_n = -(x_1 + ... + x_{n-1})
        let neg_sum: Reduced = (1..n)
            .map(|j| {
                let mut e = vec![0u32; vars];
                e[j - 1] = 1;
                (e, Scalar::from(-1))
            })
            .collect();
        let mut powers: Vec<Reduced> = vec![HashMap::from([(vec![0u32; vars], Scalar::one())])];

        let mut by_degree: HashMap<u32, Reduced> = HashMap::new();
        for (e, c) in p.terms() {
            let top = e[n - 1] as usize;
            while powers.len() <= top {
                let next = reduced_mul(powers.last().expect("nonempty"), &neg_sum);
                powers.push(next);
            }
            let rest: Mono = e[..vars].to_vec();
            let deg: u32 = e.iter().sum();
            let part = by_degree.entry(deg).or_default();
            for (pe, pc) in &powers[top] {
                let m: Mono = rest.iter().zip(pe).map(|(a, b)| a + b).collect();
                *part.entry(m).or_default() += c * pc;
            }
        }

        let mut out = TautClass::zero(self.ctx);
        let mut degrees: Vec<u32> = by_degree.keys().copied().collect();
        degrees.sort_unstable();
        for d in degrees {
            let part = &by_degree[&d];
            if part.values().all(Scalar::is_zero) {
                continue;
            }
            let d = d as usize;
            if d >= n {
                // forces the degree-n check before trusting the vanishing
                let _ = self.slice(n);
                continue;
            }
            let slice = self.slice(d);
            for (m, c) in part {
                if c.is_zero() {
                    continue;
                }
                if is_square_free(m) {
                    out.add_term_unchecked(mono_set(m), c);
                } else {
                    for (s, w) in &slice.normal_forms[m] {
                        out.add_term_unchecked(*s, &(c * w));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Normal form through the shared oracle for `p`'s ring.
pub fn normal_form(p: &XPolynomial) -> Result<TautClass> {
    Oracle::shared(p.context()).normal_form(p)
}
