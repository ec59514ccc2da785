//! Affine subspaces ("flats") of F2^n.
//!
//! A flat is stored canonically: its direction space by a basis in reduced
//! row echelon form (the pivot of a row is its lowest set bit, pivots
//! strictly increase, and every pivot column is clear in the other rows),
//! and its offset with every pivot bit cleared. Two flats are equal as
//! point sets iff their canonical forms are equal.
//!
//! Enumeration walks pivot-column sets in lexicographic order, then the
//! free entries of the echelon basis (a binary counter over the free
//! positions, row by row), then the `2^(n-k)` reduced offsets. Every flat
//! therefore has a stable index `subspace_index * 2^(n-k) + offset_index`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::boolfun::{used_mask, word_count, TruthTable, MAX_VARS};
use crate::error::{Error, Result};

/// Default cap on the number of flats a single enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    n: u32,
    basis: Vec<u32>,
    offset: u32,
}

fn check_mask(mask: u32, n: u32) -> Result<()> {
    if n < 32 && (mask as u64) >> n != 0 {
        Err(Error::MaskOutOfRange {
            mask: mask as u64,
            n,
        })
    } else {
        Ok(())
    }
}

/// Canonical form of the flat `offset + span(basis)` in `F2^n`.
pub fn canonicalize(n: u32, basis: &[u32], offset: u32) -> Result<Flat> {
    if n > MAX_VARS {
        return Err(Error::VariableCount(n));
    }
    for &b in basis {
        check_mask(b, n)?;
    }
    check_mask(offset, n)?;

    let mut rows: Vec<u32> = basis.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let bit = 1u32 << col;
        // pivot = lowest set bit, so only rows with no lower bits qualify
        let Some(found) = (rank..rows.len()).find(|&r| rows[r] & bit != 0 && rows[r] & (bit - 1) == 0) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    if rank != rows.len() {
        return Err(Error::DependentBasis);
    }

    let mut offset = offset;
    for &row in &rows {
        if offset & (1 << row.trailing_zeros()) != 0 {
            offset ^= row;
        }
    }
    Ok(Flat {
        n,
        basis: rows,
        offset,
    })
}

impl Flat {
    /// The whole space `F2^n`.
    pub fn full_space(n: u32) -> Result<Self> {
        let basis: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        canonicalize(n, &basis, 0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    /// Points in the order `offset ^ (y1 b1 ^ ... ^ yk bk)` for `y = 0..2^k`.
    pub fn points(&self) -> Vec<u32> {
        span(&self.basis)
            .into_iter()
            .map(|v| v ^ self.offset)
            .collect()
    }

    pub fn contains(&self, point: u32) -> bool {
        reduce(&self.basis, point) == self.offset
    }

    /// Text form `n=<n> k=<k> basis=<hex>,... offset=<hex>`.
    pub fn to_text(&self) -> String {
        let basis: Vec<String> = self.basis.iter().map(|b| format!("{b:x}")).collect();
        format!(
            "n={} k={} basis={} offset={:x}",
            self.n,
            self.k(),
            basis.join(","),
            self.offset
        )
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Flat {
    type Err = Error;

    /// Parses the text form; the flat is canonicalized on the way in.
    fn from_str(s: &str) -> Result<Self> {
        let syntax = |message: &str| Error::Syntax {
            position: 0,
            message: message.to_string(),
        };
        let mut n = None;
        let mut k = None;
        let mut basis = None;
        let mut offset = None;
        for field in s.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| syntax("expected key=value fields"))?;
            let hex = |v: &str| u32::from_str_radix(v, 16).map_err(|_| syntax("invalid hex mask"));
            match key {
                "n" => n = Some(value.parse::<u32>().map_err(|_| syntax("invalid n"))?),
                "k" => k = Some(value.parse::<u32>().map_err(|_| syntax("invalid k"))?),
                "basis" if value.is_empty() => basis = Some(Vec::new()),
                "basis" => basis = Some(value.split(',').map(hex).collect::<Result<Vec<_>>>()?),
                "offset" => offset = Some(hex(value)?),
                _ => return Err(syntax("unknown field")),
            }
        }
        let (Some(n), Some(k), Some(basis), Some(offset)) = (n, k, basis, offset) else {
            return Err(syntax("missing field"));
        };
        if basis.len() as u32 != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                actual: basis.len() as u32,
            });
        }
        canonicalize(n, &basis, offset)
    }
}

/// All `2^k` linear combinations of `basis`, indexed by coefficient vector.
pub(crate) fn span(basis: &[u32]) -> Vec<u32> {
    let len = 1usize << basis.len();
    let mut out = vec![0u32; len];
    for y in 1..len {
        out[y] = out[y & (y - 1)] ^ basis[y.trailing_zeros() as usize];
    }
    out
}

/// Clears the pivot bits of `point` using an echelon basis.
fn reduce(basis: &[u32], mut point: u32) -> u32 {
    for &row in basis {
        if point & (1 << row.trailing_zeros()) != 0 {
            point ^= row;
        }
    }
    point
}

/// Exact number of k-flats of `F2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCount {
    pub n: u32,
    pub k: u32,
    pub count: BigUint,
}

/// Gaussian binomial `[n choose k]_2`: the number of k-dimensional linear
/// subspaces.
pub fn count_subspaces(n: u32, k: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::invalid(format!("k = {k} exceeds n = {n}")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= (BigUint::one() << (n - i) as usize) - 1u32;
        den *= (BigUint::one() << (k - i) as usize) - 1u32;
    }
    Ok(num / den)
}

pub fn count_flats(n: u32, k: u32) -> Result<FlatCount> {
    let count = count_subspaces(n, k)? << (n - k) as usize;
    Ok(FlatCount { n, k, count })
}

fn within_budget(count: &BigUint, budget: u64) -> Result<u64> {
    match count.to_u64() {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded {
            required: count.to_string(),
            budget,
        }),
    }
}

#[derive(Clone, Debug)]
struct PivotBlock {
    pivots: Vec<u8>,
    // (row, column) of each free echelon entry; counter bit t drives free[t]
    free: Vec<(u8, u8)>,
    non_pivots: Vec<u8>,
    start: u64,
}

impl PivotBlock {
    fn basis(&self, counter: u64, out: &mut Vec<u32>) {
        out.clear();
        out.extend(self.pivots.iter().map(|&p| 1u32 << p));
        for (t, &(row, col)) in self.free.iter().enumerate() {
            if counter >> t & 1 == 1 {
                out[row as usize] |= 1 << col;
            }
        }
    }

    fn offset(&self, index: u64) -> u32 {
        let mut out = 0;
        for (t, &c) in self.non_pivots.iter().enumerate() {
            if index >> t & 1 == 1 {
                out |= 1 << c;
            }
        }
        out
    }
}

fn pivot_sets(n: u32, k: u32) -> Vec<Vec<u8>> {
    fn rec(n: u8, k: usize, from: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = (k - cur.len()) as u8;
        for c in from..=(n - remaining) {
            cur.push(c);
            rec(n, k, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u8, k as usize, 0, &mut Vec::new(), &mut out);
    out
}

/// The set of all k-flats of `F2^n` with stable, index-addressable order.
#[derive(Clone, Debug)]
pub struct FlatSpace {
    n: u32,
    k: u32,
    blocks: Vec<PivotBlock>,
    subspaces: u64,
}

impl FlatSpace {
    /// Fails with `BudgetExceeded` when there are more than `budget` flats.
    pub fn new(n: u32, k: u32, budget: u64) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::VariableCount(n));
        }
        let total = count_flats(n, k)?;
        within_budget(&total.count, budget)?;
        Self::build(n, k)
    }

    /// Like [`FlatSpace::new`], but the budget only bounds the number of
    /// linear subspaces (one flat per subspace is visited by the
    /// "through a point" walks).
    pub fn for_point_walks(n: u32, k: u32, budget: u64) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::VariableCount(n));
        }
        within_budget(&count_subspaces(n, k)?, budget)?;
        Self::build(n, k)
    }

    fn build(n: u32, k: u32) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut start = 0u64;
        for pivots in pivot_sets(n, k) {
            let mut is_pivot = vec![false; n as usize];
            for &p in &pivots {
                is_pivot[p as usize] = true;
            }
            let non_pivots: Vec<u8> = (0..n as u8).filter(|&c| !is_pivot[c as usize]).collect();
            let mut free = Vec::new();
            for (row, &p) in pivots.iter().enumerate() {
                for &c in &non_pivots {
                    if c > p {
                        free.push((row as u8, c));
                    }
                }
            }
            let size = 1u64 << free.len();
            blocks.push(PivotBlock {
                pivots,
                free,
                non_pivots,
                start,
            });
            start += size;
        }
        Ok(Self {
            n,
            k,
            blocks,
            subspaces: start,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn subspace_count(&self) -> u64 {
        self.subspaces
    }

    pub fn offsets_per_subspace(&self) -> u64 {
        1u64 << (self.n - self.k)
    }

    pub fn flat_count(&self) -> u64 {
        self.subspaces << (self.n - self.k)
    }

    fn block_of(&self, subspace: u64) -> &PivotBlock {
        let i = self.blocks.partition_point(|b| b.start <= subspace) - 1;
        &self.blocks[i]
    }

    /// Echelon basis of the linear subspace with the given index.
    pub fn subspace_basis(&self, subspace: u64) -> Vec<u32> {
        let block = self.block_of(subspace);
        let mut out = Vec::with_capacity(self.k as usize);
        block.basis(subspace - block.start, &mut out);
        out
    }

    /// The flat with the given enumeration index.
    pub fn flat(&self, index: u64) -> Flat {
        let shift = self.n - self.k;
        let subspace = index >> shift;
        let block = self.block_of(subspace);
        let mut basis = Vec::with_capacity(self.k as usize);
        block.basis(subspace - block.start, &mut basis);
        Flat {
            n: self.n,
            basis,
            offset: block.offset(index & ((1u64 << shift) - 1)),
        }
    }

    /// All flats in enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = Flat> + '_ {
        let mut basis = Vec::new();
        self.visit_subspaces(0..self.subspaces)
            .flat_map(move |(_, block, counter)| {
                block.basis(counter, &mut basis);
                let basis = basis.clone();
                let n = self.n;
                (0..self.offsets_per_subspace()).map(move |o| Flat {
                    n,
                    basis: basis.clone(),
                    offset: block.offset(o),
                })
            })
    }

    /// The flats containing `point`, one per linear subspace, in subspace
    /// order.
    pub fn through(&self, point: u32) -> impl Iterator<Item = Flat> + '_ {
        let mut basis = Vec::new();
        self.visit_subspaces(0..self.subspaces)
            .map(move |(_, block, counter)| {
                block.basis(counter, &mut basis);
                Flat {
                    n: self.n,
                    basis: basis.clone(),
                    offset: reduce(&basis, point),
                }
            })
    }

    fn visit_subspaces(
        &self,
        range: Range<u64>,
    ) -> impl Iterator<Item = (u64, &PivotBlock, u64)> + '_ {
        let first = if range.start < self.subspaces {
            self.blocks.partition_point(|b| b.start <= range.start) - 1
        } else {
            self.blocks.len()
        };
        self.blocks[first..]
            .iter()
            .take_while(move |b| b.start < range.end)
            .flat_map(move |b| {
                let size = 1u64 << b.free.len();
                let lo = range.start.max(b.start);
                let hi = range.end.min(b.start + size);
                (lo..hi).map(move |s| (s, b, s - b.start))
            })
    }

    /// Splits the subspace indices into at most `parts` contiguous ranges.
    pub fn partition(&self, parts: usize) -> Vec<Range<u64>> {
        let parts = parts.max(1) as u64;
        let chunk = self.subspaces.div_ceil(parts).max(1);
        (0..self.subspaces)
            .step_by(chunk as usize)
            .map(|s| s..(s + chunk).min(self.subspaces))
            .collect()
    }

    /// Calls `visit(subspace_index, basis, span, non_pivot_offsets)` for each
    /// subspace in `range`; `span[y]` is the combination with coefficient
    /// vector `y`, and `non_pivot_offsets` lists the `2^(n-k)` reduced
    /// offsets in offset-index order.
    pub(crate) fn for_each_subspace(
        &self,
        range: Range<u64>,
        mut visit: impl FnMut(u64, &[u32], &[u32], &[u32]),
    ) {
        let mut basis = Vec::with_capacity(self.k as usize);
        let mut spans = vec![0u32; 1usize << self.k];
        let mut offsets = vec![0u32; self.offsets_per_subspace() as usize];
        let mut last_block = None;
        for (s, block, counter) in self.visit_subspaces(range) {
            block.basis(counter, &mut basis);
            for y in 1..spans.len() {
                spans[y] = spans[y & (y - 1)] ^ basis[y.trailing_zeros() as usize];
            }
            if last_block != Some(block.start) {
                for (o, slot) in offsets.iter_mut().enumerate() {
                    *slot = block.offset(o as u64);
                }
                last_block = Some(block.start);
            }
            visit(s, &basis, &spans, &offsets);
        }
    }
}

/// Every canonical k-flat of `F2^n`, in enumeration order.
pub fn enumerate_flats(n: u32, k: u32, budget: u64) -> Result<Vec<Flat>> {
    Ok(FlatSpace::new(n, k, budget)?.iter().collect())
}

/// The canonical k-flats containing `point`.
pub fn enumerate_flats_through(n: u32, k: u32, point: u32, budget: u64) -> Result<Vec<Flat>> {
    check_mask(point, n)?;
    let space = FlatSpace::for_point_walks(n, k, budget)?;
    Ok(space.through(point).collect())
}

/// Packs `tt(offset ^ span[y])` for `y = 0..span.len()` into `out`.
#[inline]
pub(crate) fn gather(tt: &[u64], offset: u32, span: &[u32], out: &mut [u64]) {
    for w in out.iter_mut() {
        *w = 0;
    }
    for (y, &v) in span.iter().enumerate() {
        let p = (offset ^ v) as usize;
        let bit = (tt[p >> 6] >> (p & 63)) & 1;
        out[y >> 6] |= bit << (y & 63);
    }
}

/// Restriction along an arbitrary (not necessarily canonical) basis:
/// `g(y) = tt(offset ^ y1 b1 ^ ... ^ yk bk)`.
pub fn restrict_affine(tt: &TruthTable, basis: &[u32], offset: u32) -> Result<TruthTable> {
    let n = tt.n();
    for &b in basis {
        check_mask(b, n)?;
    }
    check_mask(offset, n)?;
    let k = basis.len() as u32;
    if k > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: k,
        });
    }
    let mut words = vec![0u64; word_count(k)];
    gather(tt.words(), offset, &span(basis), &mut words);
    words[0] &= used_mask(k);
    TruthTable::from_words(k, words)
}

/// The function on `F2^k` obtained by restricting `tt` to `flat`.
pub fn restrict(tt: &TruthTable, flat: &Flat) -> Result<TruthTable> {
    if flat.n != tt.n() {
        return Err(Error::DimensionMismatch {
            expected: tt.n(),
            actual: flat.n,
        });
    }
    restrict_affine(tt, &flat.basis, flat.offset)
}

/// XOR of `tt` over the points of `flat` (`k >= 1`).
pub fn flat_parity(tt: &TruthTable, flat: &Flat) -> Result<bool> {
    if flat.n != tt.n() {
        return Err(Error::DimensionMismatch {
            expected: tt.n(),
            actual: flat.n,
        });
    }
    if flat.k() == 0 {
        return Err(Error::invalid("parity test needs a flat of dimension at least 1"));
    }
    Ok(flat
        .points()
        .into_iter()
        .fold(false, |acc, p| acc ^ tt.get(p as usize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{degree, nonlinearity};
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeSet;

    fn count(n: u32, k: u32) -> u64 {
        count_flats(n, k).unwrap().count.to_u64().unwrap()
    }

    #[test]
    fn canonical_examples() {
        let f = canonicalize(2, &[0b11, 0b01], 0b10).unwrap();
        assert_eq!(f.basis(), &[0b01, 0b10]);
        assert_eq!(f.offset(), 0);
        let f = canonicalize(3, &[0b110], 0b110).unwrap();
        assert_eq!(f.basis(), &[0b110]);
        assert_eq!(f.offset(), 0);
        assert_eq!(canonicalize(3, &[0b11, 0b11], 0), Err(Error::DependentBasis));
        assert_eq!(canonicalize(3, &[0b11, 0b101, 0b110], 0), Err(Error::DependentBasis));
        assert!(matches!(canonicalize(3, &[0b1000], 0), Err(Error::MaskOutOfRange { .. })));
        assert!(matches!(canonicalize(3, &[1], 8), Err(Error::MaskOutOfRange { .. })));
    }

    #[test]
    fn canonical_form_matches_point_sets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut by_points = std::collections::HashMap::new();
        for _ in 0..3000 {
            let basis: Vec<u32> = (0..3).map(|_| rng.gen_range(1..64)).collect();
            let offset = rng.gen_range(0..64);
            let Ok(flat) = canonicalize(6, &basis, offset) else { continue };
            let pts: BTreeSet<u32> = span(&basis).into_iter().map(|v| v ^ offset).collect();
            assert_eq!(pts.len(), 8);
            assert_eq!(pts, flat.points().into_iter().collect());
            let prev = by_points.entry(pts).or_insert_with(|| flat.clone());
            assert_eq!(*prev, flat);
            assert_eq!(canonicalize(6, flat.basis(), flat.offset()).unwrap(), flat);
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count(4, 2), 140);
        assert_eq!(count(5, 3), 620);
        assert_eq!(count(6, 4), 2604);
        assert_eq!(count(7, 5), 10668);
        assert_eq!(count(7, 4), 94488);
        assert_eq!(count(8, 5), 777240);
        for n in 0..10 {
            assert_eq!(count(n, n), 1);
            assert_eq!(count(n, 0), 1 << n);
        }
        assert!(count_flats(3, 4).is_err());
    }

    #[test]
    fn count_formula_matches_direct_evaluation() {
        // 2^(n-k) * prod (2^(n-i) - 1) / (2^(k-i) - 1), evaluated in u128
        for n in 0..=12u32 {
            for k in 0..=n {
                let mut num: u128 = 1;
                let mut den: u128 = 1;
                for i in 0..k {
                    num *= (1u128 << (n - i)) - 1;
                    den *= (1u128 << (k - i)) - 1;
                }
                assert_eq!(num % den, 0);
                let expected = (num / den) << (n - k);
                assert_eq!(count_flats(n, k).unwrap().count, BigUint::from(expected));
            }
        }
    }

    #[test]
    fn enumeration_small_cases() {
        let lines = enumerate_flats(2, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(lines.len(), 6);
        let points = enumerate_flats(3, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            points.iter().map(|f| f.offset()).collect::<Vec<_>>(),
            (0..8).collect::<Vec<_>>()
        );
        let all = enumerate_flats(5, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 620);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 620);
        for f in &all {
            assert_eq!(&canonicalize(5, f.basis(), f.offset()).unwrap(), f);
        }
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for n in 0..=6 {
            for k in 0..=n {
                let space = FlatSpace::new(n, k, DEFAULT_BUDGET).unwrap();
                let flats: Vec<Flat> = space.iter().collect();
                assert_eq!(flats.len() as u64, count(n, k));
                let set: BTreeSet<_> = flats.iter().cloned().collect();
                assert_eq!(set.len(), flats.len());
                for (i, f) in flats.iter().enumerate().step_by(7) {
                    assert_eq!(&space.flat(i as u64), f);
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            FlatSpace::new(12, 6, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(FlatSpace::new(5, 3, 619).is_err());
        assert!(FlatSpace::new(5, 3, 620).is_ok());
    }

    #[test]
    fn flats_through_a_point() {
        assert_eq!(enumerate_flats_through(4, 2, 0, DEFAULT_BUDGET).unwrap().len(), 35);
        let full = enumerate_flats_through(3, 3, 5, DEFAULT_BUDGET).unwrap();
        assert_eq!(full, vec![Flat::full_space(3).unwrap()]);
        let (n, k) = (5, 2);
        let mut multiset = std::collections::HashMap::new();
        for p in 0..(1u32 << n) {
            for f in enumerate_flats_through(n, k, p, DEFAULT_BUDGET).unwrap() {
                assert!(f.contains(p));
                *multiset.entry(f).or_insert(0u32) += 1;
            }
        }
        assert_eq!(multiset.len() as u64, count(n, k));
        assert!(multiset.values().all(|&m| m == 1 << k));
        assert!(enumerate_flats_through(3, 1, 8, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn partition_covers_everything_once() {
        let space = FlatSpace::new(6, 3, DEFAULT_BUDGET).unwrap();
        for parts in [1, 3, 8, 10_000] {
            let ranges = space.partition(parts);
            let mut next = 0;
            for r in &ranges {
                assert_eq!(r.start, next);
                next = r.end;
            }
            assert_eq!(next, space.subspace_count());
        }
        let mut seen = 0;
        space.for_each_subspace(0..space.subspace_count(), |s, basis, spans, offsets| {
            assert_eq!(space.subspace_basis(s), basis);
            assert_eq!(spans.len(), 8);
            assert_eq!(offsets.len(), 8);
            seen += 1;
        });
        assert_eq!(seen, space.subspace_count());
    }

    #[test]
    fn text_round_trip() {
        let f = canonicalize(6, &[0b110100, 0b000011], 0b101000).unwrap();
        let text = f.to_text();
        assert_eq!(text, "n=6 k=2 basis=3,34 offset=28");
        assert_eq!(text.parse::<Flat>().unwrap(), f);
        let point: Flat = "n=3 k=0 basis= offset=5".parse().unwrap();
        assert_eq!(point.points(), vec![5]);
        assert!("n=3 k=2 basis=1 offset=0".parse::<Flat>().is_err());
    }

    #[test]
    fn restriction_basics() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let tt = TruthTable::from_fn(5, |_| rng.gen()).unwrap();
        assert_eq!(restrict(&tt, &Flat::full_space(5).unwrap()).unwrap(), tt);
        let one = TruthTable::one(5).unwrap();
        for f in enumerate_flats(5, 2, DEFAULT_BUDGET).unwrap() {
            assert_eq!(restrict(&one, &f).unwrap(), TruthTable::one(2).unwrap());
        }
        let f4 = Flat::full_space(4).unwrap();
        assert!(matches!(restrict(&tt, &f4), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn restriction_is_basis_independent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let tt = TruthTable::from_fn(6, |_| rng.gen()).unwrap();
            let k = rng.gen_range(1..=5);
            let space = FlatSpace::new(6, k, DEFAULT_BUDGET).unwrap();
            let flat = space.flat(rng.gen_range(0..space.flat_count()));
            // random invertible k x k transform applied to the basis, random
            // point of the flat as offset
            let rebased = loop {
                let cand: Vec<u32> = (0..k)
                    .map(|_| {
                        let c: u32 = rng.gen_range(0..1 << k);
                        (0..k as usize)
                            .filter(|j| c >> j & 1 == 1)
                            .fold(0, |acc, j| acc ^ flat.basis()[j])
                    })
                    .collect();
                if canonicalize(6, &cand, 0).is_ok() {
                    break cand;
                }
            };
            let pts = flat.points();
            let offset = pts[rng.gen_range(0..pts.len())];
            assert_eq!(canonicalize(6, &rebased, offset).unwrap(), flat);
            let a = restrict(&tt, &flat).unwrap();
            let b = restrict_affine(&tt, &rebased, offset).unwrap();
            assert_eq!(degree(&a), degree(&b));
            assert_eq!(nonlinearity(&a).unwrap(), nonlinearity(&b).unwrap());
        }
    }

    #[test]
    fn parity_examples() {
        for n in 1..8 {
            let top = TruthTable::from_fn(n, |x| x == (1 << n) - 1).unwrap();
            assert!(flat_parity(&top, &Flat::full_space(n).unwrap()).unwrap());
        }
        let zero = TruthTable::zero(4).unwrap();
        for f in enumerate_flats(4, 2, DEFAULT_BUDGET).unwrap() {
            assert!(!flat_parity(&zero, &f).unwrap());
        }
        let point = Flat::full_space(0).unwrap();
        assert!(flat_parity(&TruthTable::zero(0).unwrap(), &point).is_err());
    }
}
