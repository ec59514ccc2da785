//! Closed-form bounds on `g(n, k)` (maximum over functions of the minimum
//! restricted degree) and `g'(n, k)` (the same for nonlinearity), a small
//! database of imported values, and the interval resolution that combines
//! them into the reference tables.
//!
//! Every inequality is decided in exact integer arithmetic.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::analysis::Metric;
use crate::boolfun::MAX_VARS;
use crate::error::{Error, Result};

/// Largest `k` for which the nonlinearity counting bound is evaluated; the
/// binomial sums involve `2^k`-bit integers.
pub const MAX_NL_K: u32 = 16;

fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Whether the counting inequality
/// `(k+1)(n-k) + 2 <= C(k,0) + ... + C(k,k-d-1)` holds, which forces a
/// function with minimum restricted degree above `d`.
pub fn counting_bound_holds(n: u32, k: u32, d: u32) -> Result<bool> {
    if !(n > k && k > d) {
        return Err(Error::invalid(format!("need n > k > d >= 0, got ({n}, {k}, {d})")));
    }
    let lhs = BigUint::from((k as u64 + 1) * (n - k) as u64 + 2);
    let rhs: BigUint = (0..k - d).map(|i| binomial(k as u64, i as u64)).sum();
    Ok(lhs <= rhs)
}

/// `1 + max { d : counting_bound_holds(n, k, d) }`, or 0 if no `d` passes.
pub fn counting_lower(n: u32, k: u32) -> Result<u64> {
    if !(n > k && k >= 1) {
        return Err(Error::invalid(format!("need n > k >= 1, got ({n}, {k})")));
    }
    let mut best = 0;
    for d in 0..k {
        if counting_bound_holds(n, k, d)? {
            best = d as u64 + 1;
        }
    }
    Ok(best)
}

/// Closed-form consequences of the counting bound for `k >= 5`:
/// `k - 2` when `k + 2 <= n <= (3k - 1)/2`, `k - 3` when
/// `3k/2 <= n <= (k + 1)(k + 4)/6`, else 0.
pub fn corollary_lower(n: u32, k: u32) -> Result<u64> {
    if k < 5 {
        return Err(Error::invalid(format!("the closed-form clauses need k >= 5, got {k}")));
    }
    let (n, k) = (n as u64, k as u64);
    if k + 2 <= n && 2 * n < 3 * k {
        Ok(k - 2)
    } else if 3 * k <= 2 * n && 6 * n <= (k + 1) * (k + 4) {
        Ok(k - 3)
    } else {
        Ok(0)
    }
}

/// `1 + max m` over `m < 2^(k-2)` with
/// `C(2^k,0) + ... + C(2^k,m) <= 2^(2^k - (k+1)(n-k+1) - 2)`, or 0.
pub fn counting_nl_lower(n: u32, k: u32) -> Result<u64> {
    if !(n > k && k >= 2) {
        return Err(Error::invalid(format!("need n > k >= 2, got ({n}, {k})")));
    }
    if k > MAX_NL_K {
        return Err(Error::invalid(format!("nonlinearity counting bound supports k <= {MAX_NL_K}")));
    }
    let points = 1u64 << k;
    let exponent = points as i64 - (k as i64 + 1) * (n as i64 - k as i64 + 1) - 2;
    if exponent < 0 {
        return Ok(0);
    }
    let cap = BigUint::one() << exponent as usize;
    let mut term = BigUint::one();
    let mut sum = BigUint::zero();
    let mut best = 0;
    // the partial sums grow with m, so the first failure ends the sweep
    for m in 0..(1u64 << (k - 2)) {
        if m > 0 {
            term *= points - m + 1;
            term /= m;
        }
        sum += &term;
        if sum > cap {
            break;
        }
        best = m + 1;
    }
    Ok(best)
}

/// `2^(a+b-c)`, which equals `ceil(2^a (2^b - 1) / (2^c - 1))` whenever
/// `max(a + 1, b) <= c <= a + b`.
pub fn ceil_identity(a: u32, b: u32, c: u32) -> Result<BigUint> {
    if !((a + 1).max(b) <= c && c <= a + b) {
        return Err(Error::invalid(format!(
            "need max(a + 1, b) <= c <= a + b, got ({a}, {b}, {c})"
        )));
    }
    Ok(BigUint::one() << (a + b - c) as usize)
}

/// Smallest `d < k` with `n >= 2^(k-1) + k - floor(2^(d-1))`, or `k` when
/// no `d` qualifies.
pub fn merging_upper(n: u32, k: u32) -> Result<u64> {
    if !(1 <= k && k <= n) {
        return Err(Error::invalid(format!("need 1 <= k <= n, got ({n}, {k})")));
    }
    let base = (1u64 << (k - 1)) + k as u64;
    for d in 0..k {
        let half = if d == 0 { 0 } else { 1u64 << (d - 1) };
        if n as u64 + half >= base {
            return Ok(d as u64);
        }
    }
    Ok(k as u64)
}

/// Exact value on hyperplanes: `g(n, n-1) = n - 2`.
pub fn codim_one_exact(n: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::invalid("hyperplane value needs n >= 2"));
    }
    Ok(n as u64 - 2)
}

/// Covering-radius cap `floor(2^(k-1) - 2^(k/2-1))` on the nonlinearity
/// of any function of `k` variables.
pub fn nonlinearity_cap(k: u32) -> u64 {
    match k {
        0 => 0,
        1 => 0,
        _ if k.is_multiple_of(2) => (1u64 << (k - 1)) - (1u64 << (k / 2 - 1)),
        _ => (1u64 << (k - 1)) - ((1u64 << (k - 2)).sqrt() + 1),
    }
}

/// log2 of the heuristic expected number of functions in `k + 2`
/// variables whose restrictions to every k-flat have degree at least
/// `k - 1`: `2^(k+2) + M log2(1 - 2^-(k+1))` with `M` the number of
/// k-flats, `4 (2^(k+2) - 1)(2^(k+1) - 1) / 3`.
pub fn codim_two_heuristic_log2(k: u32) -> Result<f64> {
    if !(2..=40).contains(&k) {
        return Err(Error::invalid(format!("heuristic needs 2 <= k <= 40, got {k}")));
    }
    let flats: u128 = 4 * ((1u128 << (k + 2)) - 1) * ((1u128 << (k + 1)) - 1) / 3;
    let p = (-(2f64.powi(-(k as i32 + 1)))).ln_1p() / std::f64::consts::LN_2;
    Ok(2f64.powi(k as i32 + 2) + flats as f64 * p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KnownKind {
    Exact,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownValue {
    pub n: u32,
    pub k: u32,
    pub metric: Metric,
    pub kind: KnownKind,
    pub value: u64,
    pub source: String,
}

const BUNDLED_KNOWN: &str = include_str!("../data/known_values.txt");

/// Parses records `metric n k kind value source...`.
pub fn parse_known_values(text: &str) -> Result<Vec<KnownValue>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::Resource(format!("known values line {}: {what}", i + 1));
        let mut parts = line.splitn(6, char::is_whitespace);
        let mut field = |name: &str| parts.next().ok_or_else(|| bad(&format!("missing {name}")));
        let metric: Metric = field("metric")?.parse()?;
        let n = field("n")?.parse().map_err(|_| bad("invalid n"))?;
        let k = field("k")?.parse().map_err(|_| bad("invalid k"))?;
        let kind = match field("kind")? {
            "exact" => KnownKind::Exact,
            "lower" => KnownKind::Lower,
            _ => return Err(bad("kind must be exact or lower")),
        };
        let value = field("value")?.parse().map_err(|_| bad("invalid value"))?;
        let source = field("source")?.trim().to_string();
        out.push(KnownValue {
            n,
            k,
            metric,
            kind,
            value,
            source,
        });
    }
    Ok(out)
}

pub fn known_values() -> Vec<KnownValue> {
    parse_known_values(BUNDLED_KNOWN).expect("bundled known-values file is well formed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// One bound that contributed to an interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub bound: String,
    pub side: Side,
    pub value: u64,
}

/// Interval `[lo, hi]` for `g(n, k)` or `g'(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsResult {
    pub n: u32,
    pub k: u32,
    pub metric: Metric,
    pub lo: u64,
    pub hi: u64,
    pub provenance: Vec<Contribution>,
}

pub const MONOTONE: &str = "monotone-n";

impl BoundsResult {
    fn new(n: u32, k: u32, metric: Metric, hi: u64) -> Self {
        let mut r = Self {
            n,
            k,
            metric,
            lo: 0,
            hi,
            provenance: Vec::new(),
        };
        r.lower("trivial", 0);
        r.upper("trivial", hi);
        r
    }

    fn lower(&mut self, bound: impl Into<String>, value: u64) {
        self.lo = self.lo.max(value);
        self.provenance.push(Contribution {
            bound: bound.into(),
            side: Side::Lower,
            value,
        });
    }

    fn upper(&mut self, bound: impl Into<String>, value: u64) {
        self.hi = self.hi.min(value);
        self.provenance.push(Contribution {
            bound: bound.into(),
            side: Side::Upper,
            value,
        });
    }

    /// Best upper bound from sources other than the smaller-`n` chain.
    pub fn local_hi(&self) -> u64 {
        self.provenance
            .iter()
            .filter(|c| c.side == Side::Upper && c.bound != MONOTONE)
            .map(|c| c.value)
            .min()
            .unwrap_or(u64::MAX)
    }

    /// Table cell: `v` when settled, `lo or hi` when a bound at this very
    /// cell leaves two values, `≥ lo` otherwise.
    pub fn cell(&self) -> String {
        if self.lo == self.hi {
            self.lo.to_string()
        } else if self.hi == self.lo + 1 && self.local_hi() == self.hi {
            format!("{} or {}", self.lo, self.hi)
        } else {
            format!("≥ {}", self.lo)
        }
    }
}

/// Degree interval and, for `k <= MAX_NL_K`, the nonlinearity interval.
type PairedBounds = (BoundsResult, Option<BoundsResult>);

/// Combines the closed-form bounds with a known-values database.
/// Results are memoized per `(n, k)`.
pub struct BoundsOracle {
    known: Vec<KnownValue>,
    cache: RwLock<HashMap<(u32, u32), PairedBounds>>,
}

impl BoundsOracle {
    pub fn new(known: Vec<KnownValue>) -> Self {
        Self {
            known,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn known(&self) -> &[KnownValue] {
        &self.known
    }

    pub fn resolve(&self, n: u32, k: u32, metric: Metric) -> Result<BoundsResult> {
        if !(1 <= k && k <= n && n <= MAX_VARS) {
            return Err(Error::invalid(format!("need 1 <= k <= n <= {MAX_VARS}, got ({n}, {k})")));
        }
        if metric == Metric::Nonlinearity && k > MAX_NL_K {
            return Err(Error::invalid(format!("nonlinearity bounds support k <= {MAX_NL_K}")));
        }
        let (deg, nl) = self.resolve_pair(n, k)?;
        Ok(match metric {
            Metric::Degree => deg,
            Metric::Nonlinearity => nl.expect("k checked against MAX_NL_K"),
        })
    }

    fn resolve_pair(&self, n: u32, k: u32) -> Result<PairedBounds> {
        if let Some(hit) = self.cache.read().expect("bounds cache poisoned").get(&(n, k)) {
            return Ok(hit.clone());
        }
        let smaller = if n > k { Some(self.resolve_pair(n - 1, k)?) } else { None };

        let mut deg = BoundsResult::new(n, k, Metric::Degree, k as u64);
        if n == k {
            deg.lower("trivial", k as u64);
        } else {
            deg.lower("counting", counting_lower(n, k)?);
            if k >= 5 {
                deg.lower("counting-corollary", corollary_lower(n, k)?);
            }
        }
        if n >= 2 && k == n - 1 {
            let v = codim_one_exact(n)?;
            deg.lower("codim-one", v);
            deg.upper("codim-one", v);
        }
        deg.upper("flat-merging", merging_upper(n, k)?);
        if let Some((d, _)) = &smaller {
            deg.upper(MONOTONE, d.hi);
        }
        self.apply_known(&mut deg);

        let mut nl = (k <= MAX_NL_K).then(|| BoundsResult::new(n, k, Metric::Nonlinearity, nonlinearity_cap(k)));
        if let Some(nl) = nl.as_mut() {
            if n > k && k >= 2 {
                nl.lower("counting", counting_nl_lower(n, k)?);
            }
            if let Some((_, Some(s))) = &smaller {
                nl.upper(MONOTONE, s.hi);
            }
            self.apply_known(nl);
            // minimum restricted degree <= 1 iff every flat carries an
            // affine restriction, i.e. minimum nonlinearity 0
            if deg.hi <= 1 {
                nl.upper("weak-normality", 0);
            }
            if deg.lo >= 2 {
                nl.lower("weak-normality", 1);
            }
            if nl.lo >= 1 {
                deg.lower("weak-normality", 2);
            }
            if nl.hi == 0 {
                deg.upper("weak-normality", 1);
            }
        }

        for r in std::iter::once(&deg).chain(nl.as_ref()) {
            if r.lo > r.hi {
                return Err(Error::Resource(format!(
                    "inconsistent bounds for {} at (n={}, k={}): [{}, {}]",
                    r.metric, r.n, r.k, r.lo, r.hi
                )));
            }
        }
        let out = (deg, nl);
        self.cache
            .write()
            .expect("bounds cache poisoned")
            .insert((n, k), out.clone());
        Ok(out)
    }

    fn apply_known(&self, r: &mut BoundsResult) {
        let (n, k, metric) = (r.n, r.k, r.metric);
        for kv in self.known.iter().filter(|kv| kv.n == n && kv.k == k && kv.metric == metric) {
            let name = format!("known-value:{}", kv.source);
            r.lower(name.clone(), kv.value);
            if kv.kind == KnownKind::Exact {
                r.upper(name, kv.value);
            }
        }
    }

    pub fn render_tables(&self, max_n: u32, max_k: u32, metric: Metric) -> Result<BoundsTable> {
        let mut rows = Vec::new();
        for k in 1..=max_k {
            let mut row = Vec::new();
            for n in 1..=max_n {
                row.push(if n < k {
                    None
                } else {
                    Some(self.resolve(n, k, metric)?.cell())
                });
            }
            rows.push(row);
        }
        Ok(BoundsTable { metric, max_n, rows })
    }
}

fn global() -> &'static BoundsOracle {
    static ORACLE: OnceLock<BoundsOracle> = OnceLock::new();
    ORACLE.get_or_init(|| BoundsOracle::new(known_values()))
}

/// Interval for `g(n, k)` / `g'(n, k)` from the bundled database.
pub fn resolve_bounds(n: u32, k: u32, metric: Metric) -> Result<BoundsResult> {
    global().resolve(n, k, metric)
}

pub fn render_tables(max_n: u32, max_k: u32, metric: Metric) -> Result<BoundsTable> {
    global().render_tables(max_n, max_k, metric)
}

/// Grid of table cells, rows `k = 1..`, columns `n = 1..`; `None` where
/// `n < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsTable {
    pub metric: Metric,
    pub max_n: u32,
    pub rows: Vec<Vec<Option<String>>>,
}

impl BoundsTable {
    fn header(&self) -> Vec<String> {
        std::iter::once("k\\n".to_string())
            .chain((1..=self.max_n).map(|n| n.to_string()))
            .collect()
    }

    fn grid(&self) -> Vec<Vec<String>> {
        let mut out = vec![self.header()];
        for (i, row) in self.rows.iter().enumerate() {
            out.push(
                std::iter::once((i + 1).to_string())
                    .chain(row.iter().map(|c| c.clone().unwrap_or_default()))
                    .collect(),
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for line in self.grid() {
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    /// Right-aligned columns separated by two spaces.
    pub fn to_text(&self) -> String {
        let grid = self.grid();
        let width = |c: usize| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..grid[0].len()).map(width).collect();
        let mut s = String::new();
        for row in &grid {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
                .collect();
            let _ = writeln!(s, "{}", cells.join("  ").trim_end());
        }
        s
    }
}
