//! Index sets and the ring context.
//!
//! An [`IndexSet`] is a finite set of positive variable indices stored as a
//! bitmask. It keys every square-free monomial in the crate: `x_J` and
//! `ϖ_J` are both indexed by `J`. Ordering is lexicographic on the
//! increasing index list, so `{1,2} < {1,2,3} < {1,3} < {2}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The largest variable index an [`IndexSet`] can hold.
pub const MAX_INDEX: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const fn empty() -> Self {
        IndexSet(0)
    }

    /// Builds a set from a strictly increasing list of indices in `1..=63`.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        let mut prev = 0usize;
        for &i in indices {
            if i == 0 || i > MAX_INDEX {
                return Err(Error::IndexOutOfRange {
                    index: i as i64,
                    lo: 1,
                    hi: MAX_INDEX as i64,
                });
            }
            if i <= prev {
                return Err(Error::NotIncreasing(
                    indices.iter().map(|&x| x as i64).collect(),
                ));
            }
            bits |= 1 << i;
            prev = i;
        }
        Ok(IndexSet(bits))
    }

    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_INDEX).contains(&i), "index {i} out of range");
        IndexSet(1 << i)
    }

    /// `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        let lo = lo.max(1);
        if lo > hi {
            return IndexSet(0);
        }
        assert!(hi <= MAX_INDEX, "index {hi} out of range");
        let upper = if hi == 63 {
            u64::MAX
        } else {
            (1u64 << (hi + 1)) - 1
        };
        IndexSet(upper & !((1u64 << lo) - 1))
    }

    pub fn from_bits(bits: u64) -> Self {
        assert!(bits & 1 == 0, "index 0 is not a variable");
        IndexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i <= MAX_INDEX && self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | IndexSet::singleton(i).0)
    }

    pub fn without(self, i: usize) -> Self {
        if i > MAX_INDEX {
            return self;
        }
        IndexSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The maximal run `[a, b]` of consecutive members containing `i`.
    pub fn block_containing(self, i: usize) -> Option<(usize, usize)> {
        if !self.contains(i) {
            return None;
        }
        let mut a = i;
        while a > 1 && self.contains(a - 1) {
            a -= 1;
        }
        let mut b = i;
        while self.contains(b + 1) {
            b += 1;
        }
        Some((a, b))
    }

    /// Maximal consecutive runs, in increasing order.
    pub fn blocks(self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut rest = self;
        while let Some(lo) = rest.first() {
            let (a, b) = rest.block_containing(lo).expect("member");
            out.push((a, b));
            rest = rest.difference(IndexSet::range(a, b));
        }
        out
    }

    /// Indices joined by `-`, the empty set as the empty string.
    pub fn dash_joined(self) -> String {
        self.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }

    /// Indices joined by `,`.
    pub fn comma_joined(self) -> String {
        self.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses `"1,3,5"`, `"1-3-5"` or the empty string.
    pub fn parse_list(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(IndexSet::empty());
        }
        let indices = s
            .split([',', '-'])
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSet::new(&indices)
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.comma_joined())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.comma_joined())
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(IndexSet::empty(), |s, i| s.with(i))
    }
}

impl IntoIterator for IndexSet {
    type Item = usize;
    type IntoIter = Indices;
    fn into_iter(self) -> Indices {
        self.iter()
    }
}

/// Iterator over the members of an [`IndexSet`], in increasing order.
#[derive(Clone)]
pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

/// Fixes `n`: the ring has generators `x_1, ..., x_n` and its tautological
/// basis is indexed by subsets of `{1, ..., n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingContext {
    n: usize,
}

impl RingContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank);
        }
        if n > MAX_INDEX {
            return Err(Error::IndexOutOfRange {
                index: n as i64,
                lo: 1,
                hi: MAX_INDEX as i64,
            });
        }
        Ok(RingContext { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Largest index allowed in a tautological basis element, `n - 1`.
    pub fn top(self) -> usize {
        self.n - 1
    }

    pub fn basis_support(self) -> IndexSet {
        IndexSet::range(1, self.n - 1)
    }

    pub fn check_same(self, other: RingContext) -> Result<()> {
        if self != other {
            return Err(Error::ContextMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub(crate) fn check_index(self, i: usize, lo: usize, hi: usize) -> Result<()> {
        if i < lo || i > hi {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                lo: lo as i64,
                hi: hi as i64,
            });
        }
        Ok(())
    }

    /// All basis index sets, in lexicographic order.
    pub fn basis(self) -> Vec<IndexSet> {
        let top = self.n - 1;
        let mut all: Vec<IndexSet> = (0u64..1 << top)
            .map(|m| IndexSet::from_bits(m << 1))
            .collect();
        all.sort();
        all
    }

    /// Basis index sets of size `d`, in lexicographic order.
    pub fn basis_of_degree(self, d: usize) -> Vec<IndexSet> {
        subsets_of_size(IndexSet::range(1, self.n - 1), d)
    }
}

/// All `k`-element subsets of `universe`, in lexicographic order.
pub fn subsets_of_size(universe: IndexSet, k: usize) -> Vec<IndexSet> {
    use itertools::Itertools;
    universe
        .iter()
        .combinations(k)
        .map(|c| c.into_iter().collect())
        .collect()
}
