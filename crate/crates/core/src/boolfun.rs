//! Bit-packed truth tables and the standard transforms on them.
//!
//! A function `f: F2^n -> F2` is stored as `2^n` bits packed into `u64`
//! words. The bit at index `idx(x) = x1 + 2 x2 + ... + 2^(n-1) xn` holds
//! `f(x)`, so `x1` is the least significant coordinate everywhere in the
//! crate. Tables with fewer than 64 entries live in one word whose unused
//! high bits are always zero.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of variables (a 2 MiB table).
pub const MAX_VARS: u32 = 24;

/// Masks selecting table positions whose bit `i` is clear, for `i < 6`.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// `WEIGHT_AT_LEAST[w]` has bit `i` set iff `popcount(i) >= w`, for `i < 64`.
const WEIGHT_AT_LEAST: [u64; 8] = weight_masks();

const fn weight_masks() -> [u64; 8] {
    let mut out = [0u64; 8];
    let mut w = 0;
    while w < 8 {
        let mut i = 0;
        while i < 64 {
            if (i as u64).count_ones() >= w as u32 {
                out[w] |= 1u64 << i;
            }
            i += 1;
        }
        w += 1;
    }
    out
}

pub(crate) fn word_count(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1usize << (n - 6)
    }
}

pub(crate) fn used_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

/// In-place binary Möbius transform over a packed table of `2^n` bits.
///
/// The transform is its own inverse.
pub fn mobius_words(words: &mut [u64], n: u32) {
    for (i, &mask) in LOW_HALF.iter().enumerate().take(n.min(6) as usize) {
        let shift = 1u32 << i;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    for i in 6..n {
        let stride = 1usize << (i - 6);
        for block in words.chunks_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
    }
}

/// Maximum monomial weight of an ANF given as packed coefficient bits.
/// Zero for the empty ANF.
pub fn anf_degree_words(anf: &[u64]) -> u32 {
    if anf.len() == 1 {
        let w = anf[0];
        for d in (1..=6u32).rev() {
            if w & WEIGHT_AT_LEAST[d as usize] != 0 {
                return d;
            }
        }
        return 0;
    }
    let mut best = 0;
    for (j, &w) in anf.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let hi = (j as u32).count_ones();
        if hi + 6 <= best {
            continue;
        }
        let mut rest = w;
        while rest != 0 {
            let b = rest.trailing_zeros();
            best = best.max(hi + b.count_ones());
            rest &= rest - 1;
        }
    }
    best
}

/// Algebraic degree of a packed table, consuming it as scratch space.
pub fn degree_words(words: &mut [u64], n: u32) -> u32 {
    mobius_words(words, n);
    anf_degree_words(words)
}

/// XOR of all bits of a packed table.
pub fn parity_words(words: &[u64]) -> bool {
    words.iter().fold(0u32, |acc, w| acc ^ w.count_ones()) & 1 == 1
}

/// In-place fast Walsh–Hadamard transform (unnormalized).
pub fn fwht(values: &mut [i32]) {
    let len = values.len();
    let mut h = 1;
    while h < len {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h <<= 1;
    }
}

fn signs_into(words: &[u64], n: u32, out: &mut Vec<i32>) {
    let len = 1usize << n;
    out.clear();
    out.extend((0..len).map(|i| {
        if (words[i >> 6] >> (i & 63)) & 1 == 1 {
            -1
        } else {
            1
        }
    }));
}

/// Nonlinearity of a packed table with `n >= 1`, using `scratch` for the
/// spectrum.
pub fn nonlinearity_words(words: &[u64], n: u32, scratch: &mut Vec<i32>) -> u64 {
    signs_into(words, n, scratch);
    fwht(scratch);
    let max_abs = scratch.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0) as u64;
    (1u64 << (n - 1)) - max_abs / 2
}

/// A Boolean function `F2^n -> F2` as a packed truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

impl TruthTable {
    /// The constant-zero function in `n` variables.
    pub fn zero(n: u32) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::VariableCount(n));
        }
        Ok(Self {
            n,
            words: vec![0; word_count(n)],
        })
    }

    pub fn one(n: u32) -> Result<Self> {
        let mut tt = Self::zero(n)?;
        for w in tt.words.iter_mut() {
            *w = u64::MAX;
        }
        tt.words[0] &= used_mask(n);
        Ok(tt)
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut tt = Self::zero(n)?;
        for x in 0..(1u32 << n) {
            if f(x) {
                tt.set(x as usize, true);
            }
        }
        Ok(tt)
    }

    /// Builds a table from packed words; bits beyond `2^n` must be zero.
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::VariableCount(n));
        }
        if words.len() != word_count(n) {
            return Err(Error::invalid(format!(
                "expected {} words for n = {n}, got {}",
                word_count(n),
                words.len()
            )));
        }
        if words[0] & !used_mask(n) != 0 {
            return Err(Error::invalid("bits set beyond the table length"));
        }
        Ok(Self { n, words })
    }

    /// The affine function `x -> <linear, x> + constant`.
    pub fn affine(n: u32, linear: u32, constant: bool) -> Result<Self> {
        if n < 32 && (linear as u64) >> n != 0 {
            return Err(Error::MaskOutOfRange {
                mask: linear as u64,
                n,
            });
        }
        Self::from_fn(n, |x| ((x & linear).count_ones() & 1 == 1) ^ constant)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> usize {
        1usize << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        (self.words[index >> 6] >> (index & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        let bit = 1u64 << (index & 63);
        if value {
            self.words[index >> 6] |= bit;
        } else {
            self.words[index >> 6] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        self.words[index >> 6] ^= 1u64 << (index & 63);
    }

    /// Hamming weight of the table.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        let w = self.weight();
        w == 0 || w == self.len() as u64
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.words[0] &= used_mask(self.n);
        out
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self { n: self.n, words })
    }

    /// The bit-level Möbius transform of the table (an involution).
    pub fn mobius_transform(&self) -> Self {
        let mut out = self.clone();
        mobius_words(&mut out.words, self.n);
        out
    }

    /// Parses the packed hex format: byte `j` holds indices `8j..8j+8`,
    /// least significant bit first. A single byte is ambiguous for
    /// `n <= 3`, so `n` must then be given.
    pub fn from_hex(text: &str, n: Option<u32>) -> Result<Self> {
        let text = text.trim();
        let digits = text.len();
        if digits == 0 || !digits.is_multiple_of(2) {
            return Err(Error::Syntax {
                position: digits,
                message: "hex table must have an even, nonzero number of digits".into(),
            });
        }
        let bytes = digits / 2;
        let inferred = if bytes == 1 {
            None
        } else if bytes.is_power_of_two() {
            Some(bytes.trailing_zeros() + 3)
        } else {
            return Err(Error::Syntax {
                position: digits,
                message: format!("{bytes} bytes is not a valid table length"),
            });
        };
        let n = match (n, inferred) {
            (Some(n), Some(m)) if n != m => {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: m,
                })
            }
            (Some(n), None) if n > 3 => {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: 3,
                })
            }
            (Some(n), _) => n,
            (None, Some(m)) => m,
            (None, None) => {
                return Err(Error::invalid(
                    "a single-byte table needs an explicit number of variables",
                ))
            }
        };
        let mut tt = Self::zero(n)?;
        for j in 0..bytes {
            let pair = &text[2 * j..2 * j + 2];
            let byte = u8::from_str_radix(pair, 16).map_err(|_| Error::Syntax {
                position: 2 * j,
                message: format!("invalid hex digits {pair:?}"),
            })?;
            tt.words[j / 8] |= (byte as u64) << (8 * (j % 8));
        }
        if tt.words[0] & !used_mask(n) != 0 {
            return Err(Error::invalid(format!(
                "bits set beyond the 2^{n} table entries"
            )));
        }
        Ok(tt)
    }

    pub fn to_hex(&self) -> String {
        let bytes = if self.n < 3 { 1 } else { 1usize << (self.n - 3) };
        let mut out = String::with_capacity(2 * bytes);
        for j in 0..bytes {
            let byte = (self.words[j / 8] >> (8 * (j % 8))) & 0xff;
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, self.to_hex())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Algebraic normal form as a set of monomial masks.
///
/// Mask `m` stands for the product of the variables `x_i` with bit `i - 1`
/// set; mask 0 is the constant-1 monomial and the empty set is the zero
/// function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Anf {
    n: u32,
    monomials: BTreeSet<u32>,
}

impl Anf {
    pub fn new(n: u32, monomials: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::VariableCount(n));
        }
        let mut set = BTreeSet::new();
        for m in monomials {
            if (m as u64) >> n != 0 {
                return Err(Error::MaskOutOfRange { mask: m as u64, n });
            }
            // coefficients live in F2
            if !set.insert(m) {
                set.remove(&m);
            }
        }
        Ok(Self { n, monomials: set })
    }

    pub fn zero(n: u32) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn monomials(&self) -> &BTreeSet<u32> {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.monomials.contains(&mask)
    }

    /// Highest monomial weight, 0 for constants.
    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Same monomials, viewed in `n` variables (`n` may only grow or shrink
    /// down to the highest variable used).
    pub fn with_vars(&self, n: u32) -> Result<Self> {
        Self::new(n, self.monomials.iter().copied())
    }
}

/// Walsh–Hadamard spectrum: entry `a` is `sum_x (-1)^(f(x) + <a, x>)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    pub n: u32,
    pub coefficients: Vec<i32>,
}

impl WalshSpectrum {
    pub fn max_abs(&self) -> u32 {
        self.coefficients
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

/// ANF of a truth table.
pub fn mobius(tt: &TruthTable) -> Anf {
    let transformed = tt.mobius_transform();
    let mut monomials = BTreeSet::new();
    for (j, &w) in transformed.words.iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            let b = rest.trailing_zeros();
            monomials.insert((j as u32) * 64 + b);
            rest &= rest - 1;
        }
    }
    Anf {
        n: tt.n,
        monomials,
    }
}

/// Truth table of an ANF; the inverse of [`mobius`].
pub fn anf_to_tt(anf: &Anf) -> TruthTable {
    let mut tt = TruthTable::zero(anf.n).expect("Anf arity is validated on construction");
    for &m in &anf.monomials {
        tt.set(m as usize, true);
    }
    mobius_words(&mut tt.words, anf.n);
    tt
}

/// Algebraic degree; both constant functions have degree 0.
pub fn degree(tt: &TruthTable) -> u32 {
    let mut words = tt.words.clone();
    degree_words(&mut words, tt.n)
}

pub fn walsh(tt: &TruthTable) -> WalshSpectrum {
    let mut coefficients = Vec::new();
    signs_into(&tt.words, tt.n, &mut coefficients);
    fwht(&mut coefficients);
    WalshSpectrum {
        n: tt.n,
        coefficients,
    }
}

/// Minimum Hamming distance to an affine function.
pub fn nonlinearity(tt: &TruthTable) -> Result<u64> {
    if tt.n == 0 {
        return Err(Error::invalid("nonlinearity needs at least one variable"));
    }
    let mut scratch = Vec::new();
    Ok(nonlinearity_words(&tt.words, tt.n, &mut scratch))
}

/// XOR of the table bits at the given indices.
pub fn parity_over(tt: &TruthTable, indices: impl IntoIterator<Item = u64>) -> Result<bool> {
    let len = tt.len() as u64;
    let mut acc = false;
    for i in indices {
        if i >= len {
            return Err(Error::IndexOutOfRange { index: i, n: tt.n });
        }
        acc ^= tt.get(i as usize);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rand_tt(n: u32, seed: u64) -> TruthTable {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        TruthTable::from_fn(n, |_| rng.gen()).unwrap()
    }

    #[test]
    fn single_monomial_anf() {
        let tt = TruthTable::from_hex("08", Some(2)).unwrap();
        let anf = mobius(&tt);
        assert_eq!(anf.monomials().iter().copied().collect::<Vec<_>>(), vec![0b11]);
    }

    #[test]
    fn zero_table_has_empty_anf() {
        for n in 0..9 {
            assert!(mobius(&TruthTable::zero(n).unwrap()).is_empty());
        }
    }

    #[test]
    fn anf_to_tt_small_cases() {
        let tt = anf_to_tt(&Anf::zero(3).unwrap());
        assert_eq!(tt, TruthTable::zero(3).unwrap());
        let one = anf_to_tt(&Anf::new(2, [0]).unwrap());
        assert_eq!(one, TruthTable::one(2).unwrap());
    }

    #[test]
    fn anf_to_tt_matches_pointwise_evaluation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let monos: Vec<u32> = (0..32u32).filter(|_| rng.gen()).collect();
            let anf = Anf::new(5, monos.iter().copied()).unwrap();
            let tt = anf_to_tt(&anf);
            for x in 0..32u32 {
                let v = monos.iter().filter(|&&m| m & x == m).count() % 2 == 1;
                assert_eq!(tt.get(x as usize), v);
            }
            assert_eq!(mobius(&tt), anf);
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&TruthTable::one(4).unwrap()), 0);
        assert_eq!(degree(&TruthTable::zero(4).unwrap()), 0);
        let t = TruthTable::from_fn(2, |x| (x & 1) ^ (x >> 1 & 1) ^ 1 == 1).unwrap();
        assert_eq!(degree(&t), 1);
        for n in 1..12 {
            let top = TruthTable::from_fn(n, |x| x == (1 << n) - 1).unwrap();
            assert_eq!(degree(&top), n);
        }
    }

    #[test]
    fn multiword_degree_matches_anf() {
        for n in 6..11 {
            for s in 0..5 {
                let tt = rand_tt(n, s);
                assert_eq!(degree(&tt), mobius(&tt).degree());
            }
        }
    }

    #[test]
    fn walsh_examples() {
        assert_eq!(walsh(&TruthTable::zero(2).unwrap()).coefficients, vec![4, 0, 0, 0]);
        let x1 = TruthTable::from_fn(1, |x| x == 1).unwrap();
        assert_eq!(walsh(&x1).coefficients, vec![0, 2]);
    }

    #[test]
    fn walsh_matches_double_loop() {
        let bent = TruthTable::from_fn(4, |x| ((x & x >> 1 & 1) ^ (x >> 2 & x >> 3 & 1)) == 1).unwrap();
        let fast = walsh(&bent);
        for a in 0..16u32 {
            let direct: i32 = (0..16u32)
                .map(|x| {
                    let e = bent.get(x as usize) as u32 ^ ((a & x).count_ones() & 1);
                    if e == 1 {
                        -1
                    } else {
                        1
                    }
                })
                .sum();
            assert_eq!(fast.coefficients[a as usize], direct);
            assert_eq!(direct.abs(), 4);
        }
        assert_eq!(nonlinearity(&bent).unwrap(), 6);
    }

    #[test]
    fn nonlinearity_matches_affine_distance() {
        for seed in 0..40 {
            let tt = rand_tt(4, seed);
            let mut best = u64::MAX;
            for a in 0..16u32 {
                for c in [false, true] {
                    let aff = TruthTable::affine(4, a, c).unwrap();
                    best = best.min(tt.xor(&aff).unwrap().weight());
                }
            }
            assert_eq!(nonlinearity(&tt).unwrap(), best);
        }
        for a in 0..32u32 {
            let aff = TruthTable::affine(5, a, a % 3 == 0).unwrap();
            assert_eq!(nonlinearity(&aff).unwrap(), 0);
        }
        assert!(nonlinearity(&TruthTable::zero(0).unwrap()).is_err());
    }

    #[test]
    fn parity_over_examples() {
        let tt = rand_tt(5, 1);
        assert!(!parity_over(&tt, []).unwrap());
        let top = TruthTable::from_fn(5, |x| x == 31).unwrap();
        assert!(parity_over(&top, 0..32).unwrap());
        let even = TruthTable::from_fn(5, |x| x < 6).unwrap();
        assert!(!parity_over(&even, 0..32).unwrap());
        assert!(matches!(
            parity_over(&tt, [32]),
            Err(Error::IndexOutOfRange { index: 32, n: 5 })
        ));
    }

    #[test]
    fn hex_layout() {
        // x1 on three variables: indices 1,3,5,7 -> 0b1010_1010
        let x1 = TruthTable::from_fn(3, |x| x & 1 == 1).unwrap();
        assert_eq!(x1.to_hex(), "aa");
        let t = TruthTable::from_fn(4, |x| x == 8).unwrap();
        assert_eq!(t.to_hex(), "0001");
        let t = TruthTable::from_fn(2, |x| x == 0).unwrap();
        assert_eq!(t.to_hex(), "01");
        assert_eq!(TruthTable::from_hex("0001", None).unwrap(), TruthTable::from_fn(4, |x| x == 8).unwrap());
        assert!(TruthTable::from_hex("01", None).is_err());
        assert!(TruthTable::from_hex("f0", Some(2)).is_err());
        assert!(TruthTable::from_hex("0g", Some(3)).is_err());
        assert!(TruthTable::from_hex("000000", None).is_err());
        let big = rand_tt(9, 3);
        assert_eq!(TruthTable::from_hex(&big.to_hex(), None).unwrap(), big);
    }

    #[test]
    fn arity_cap() {
        assert!(matches!(TruthTable::zero(25), Err(Error::VariableCount(25))));
        assert!(TruthTable::zero(24).is_ok());
    }
}
