//! Minimum restricted degree / nonlinearity over all k-flats, bad-flat
//! counts, exhaustive maxima for tiny `n`, and claim verification.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::boolfun::{
    degree_words, nonlinearity_words, parity_words, used_mask, word_count, TruthTable,
};
use crate::corpus::{Claim, CorpusEntry};
use crate::error::{Error, Result};
use crate::flat::{gather, Flat, FlatSpace, DEFAULT_BUDGET};

/// Which quantity is minimized over the flats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Degree,
    Nonlinearity,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Degree => "degree",
            Metric::Nonlinearity => "nonlinearity",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" | "deg" => Ok(Metric::Degree),
            "nonlinearity" | "nl" => Ok(Metric::Nonlinearity),
            other => Err(Error::invalid(format!("unknown metric {other:?}"))),
        }
    }
}

impl Metric {
    /// Whether a restricted value counts as "bad" for the threshold: degree
    /// below `threshold`, or nonlinearity at most `threshold`.
    pub fn is_bad(self, value: u64, threshold: u64) -> bool {
        match self {
            Metric::Degree => value < threshold,
            Metric::Nonlinearity => value <= threshold,
        }
    }
}

/// Scan settings shared by the flat scans.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub budget: u64,
    /// Use the parity of `f` over a flat to settle "restricted degree = k"
    /// without a transform.
    pub parity_fast_path: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            parity_fast_path: true,
        }
    }
}

/// Evaluates the metric on packed restricted tables of dimension `k`.
pub(crate) struct Evaluator {
    k: u32,
    metric: Metric,
    parity_fast_path: bool,
    words: Vec<u64>,
    scratch: Vec<i32>,
}

impl Evaluator {
    pub(crate) fn new(k: u32, metric: Metric, parity_fast_path: bool) -> Self {
        Self {
            k,
            metric,
            parity_fast_path,
            words: vec![0; word_count(k)],
            scratch: Vec::new(),
        }
    }

    pub(crate) fn value(&mut self, restricted: &[u64]) -> u64 {
        match self.metric {
            Metric::Degree => {
                if self.parity_fast_path && self.k >= 1 && parity_words(restricted) {
                    return self.k as u64;
                }
                self.words.copy_from_slice(restricted);
                degree_words(&mut self.words, self.k) as u64
            }
            Metric::Nonlinearity => nonlinearity_words(restricted, self.k, &mut self.scratch),
        }
    }
}

fn check_k(tt: &TruthTable, k: u32, metric: Metric) -> Result<()> {
    if k == 0 || k > tt.n() {
        return Err(Error::invalid(format!(
            "k = {k} must lie in 1..={} for {metric}",
            tt.n()
        )));
    }
    Ok(())
}

fn chunk_count() -> usize {
    rayon::current_num_threads() * 4
}

/// Minimum of the metric over all k-flats, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisResult {
    pub value: u64,
    #[serde(serialize_with = "serialize_flat")]
    pub witness: Flat,
    pub flats_scanned: u64,
    pub metric: Metric,
}

pub(crate) fn serialize_flat<S: serde::Serializer>(flat: &Flat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&flat.to_text())
}

/// `α(f, k)` (degree) or `α'(f, k)` (nonlinearity).
pub fn alpha(tt: &TruthTable, k: u32, metric: Metric) -> Result<AnalysisResult> {
    alpha_with(tt, k, metric, ScanOptions::default())
}

/// Like [`alpha`] with explicit scan options. The witness is the first
/// minimizing flat in enumeration order, independent of how the scan is
/// partitioned.
pub fn alpha_with(tt: &TruthTable, k: u32, metric: Metric, opts: ScanOptions) -> Result<AnalysisResult> {
    check_k(tt, k, metric)?;
    let space = FlatSpace::new(tt.n(), k, opts.budget)?;
    let per = space.offsets_per_subspace();
    let (value, index) = space
        .partition(chunk_count())
        .into_par_iter()
        .map(|range| {
            let mut eval = Evaluator::new(k, metric, opts.parity_fast_path);
            let mut buf = vec![0u64; word_count(k)];
            let mut best = (u64::MAX, u64::MAX);
            space.for_each_subspace(range, |s, _, span, offsets| {
                for (o, &off) in offsets.iter().enumerate() {
                    gather(tt.words(), off, span, &mut buf);
                    let v = eval.value(&buf);
                    if v < best.0 {
                        best = (v, s * per + o as u64);
                    }
                }
            });
            best
        })
        .reduce(|| (u64::MAX, u64::MAX), |a, b| a.min(b));
    Ok(AnalysisResult {
        value,
        witness: space.flat(index),
        flats_scanned: space.flat_count(),
        metric,
    })
}

/// Number of flats on which the restriction is bad for `threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BadFlatReport {
    pub threshold: u64,
    pub bad_count: u64,
    pub total: u64,
}

pub fn bad_flat_count(tt: &TruthTable, k: u32, metric: Metric, threshold: u64) -> Result<BadFlatReport> {
    bad_flat_count_with(tt, k, metric, threshold, ScanOptions::default())
}

pub fn bad_flat_count_with(
    tt: &TruthTable,
    k: u32,
    metric: Metric,
    threshold: u64,
    opts: ScanOptions,
) -> Result<BadFlatReport> {
    check_k(tt, k, metric)?;
    let space = FlatSpace::new(tt.n(), k, opts.budget)?;
    let bad_count = space
        .partition(chunk_count())
        .into_par_iter()
        .map(|range| {
            let mut eval = Evaluator::new(k, metric, opts.parity_fast_path);
            let mut buf = vec![0u64; word_count(k)];
            let mut bad = 0u64;
            space.for_each_subspace(range, |_, _, span, offsets| {
                for &off in offsets {
                    gather(tt.words(), off, span, &mut buf);
                    if metric.is_bad(eval.value(&buf), threshold) {
                        bad += 1;
                    }
                }
            });
            bad
        })
        .sum();
    Ok(BadFlatReport {
        threshold,
        bad_count,
        total: space.flat_count(),
    })
}

/// Result of an exhaustive maximization over all functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveResult {
    pub value: u64,
    /// A maximizing function (the first in scan order).
    pub maximizer: TruthTable,
    /// Number of functions examined after symmetry reduction.
    pub functions_checked: u64,
}

/// Largest `n` accepted without the override flag.
pub const EXHAUSTIVE_DEFAULT_MAX_N: u32 = 4;
/// Hard limit with the override (2^32 tables already).
pub const EXHAUSTIVE_OVERRIDE_MAX_N: u32 = 5;

/// `g(n, k)` or `g'(n, k)` by scanning every function.
///
/// The degree scan fixes `f(0) = 0` (complementing `f` complements every
/// restriction). The nonlinearity scan only visits functions whose ANF
/// has no monomial of weight at most 1, since adding an affine function
/// adds an affine function to every restriction.
pub fn exhaustive_g(n: u32, k: u32, metric: Metric, allow_override: bool) -> Result<ExhaustiveResult> {
    let limit = if allow_override {
        EXHAUSTIVE_OVERRIDE_MAX_N
    } else {
        EXHAUSTIVE_DEFAULT_MAX_N
    };
    if n > limit {
        return Err(Error::BudgetExceeded {
            required: format!("2^{}", 1u64 << n),
            budget: 1u64 << (1u32 << limit).min(63),
        });
    }
    if k == 0 || k > n {
        return Err(Error::invalid(format!("k = {k} must lie in 1..={n}")));
    }

    let space = FlatSpace::new(n, k, DEFAULT_BUDGET)?;
    let flats: Vec<Vec<u32>> = space.iter().map(|f| f.points()).collect();

    let positions: Vec<u32> = match metric {
        Metric::Degree => (1..(1u32 << n)).collect(),
        Metric::Nonlinearity => (0..(1u32 << n)).filter(|m| m.count_ones() >= 2).collect(),
    };
    let codes = 1u64 << positions.len();
    let chunks = (codes / 4096).clamp(1, 1024);
    let chunk = codes.div_ceil(chunks);

    let table_of = |code: u64| -> u64 {
        let mut word = 0u64;
        for (t, &p) in positions.iter().enumerate() {
            if code >> t & 1 == 1 {
                word |= 1 << p;
            }
        }
        if metric == Metric::Nonlinearity {
            let mut w = [word];
            crate::boolfun::mobius_words(&mut w, n);
            word = w[0];
        }
        word
    };

    let (value, code) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lookup = (k <= 4).then(|| metric_lookup(k, metric));
            let mut eval = Evaluator::new(k, metric, true);
            let mut best: (i64, u64) = (-1, 0);
            for code in (c * chunk)..((c + 1) * chunk).min(codes) {
                let word = table_of(code);
                let mut min = i64::MAX;
                for pts in &flats {
                    let mut local = 0u64;
                    for (y, &p) in pts.iter().enumerate() {
                        local |= ((word >> p) & 1) << y;
                    }
                    let v = match &lookup {
                        Some(t) => t[local as usize] as i64,
                        None => eval.value(&[local]) as i64,
                    };
                    min = min.min(v);
                    if min <= best.0 {
                        break;
                    }
                }
                if min > best.0 {
                    best = (min, code);
                }
            }
            best
        })
        .reduce(
            || (-1, u64::MAX),
            |a, b| if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) { a } else { b },
        );
    let maximizer = TruthTable::from_words(n, vec![table_of(code) & used_mask(n)])?;
    Ok(ExhaustiveResult {
        value: value as u64,
        maximizer,
        functions_checked: codes,
    })
}

/// Metric value of every function of `k <= 4` variables.
fn metric_lookup(k: u32, metric: Metric) -> Vec<u8> {
    let mut eval = Evaluator::new(k, metric, false);
    (0..1u64 << (1u32 << k)).map(|w| eval.value(&[w]) as u8).collect()
}

/// Outcome of one checked claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub records: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }
}

/// Checks every claim of a corpus entry against the restriction scans.
/// Failures, including scan errors, are reported rather than raised.
pub fn verify_claim(entry: &CorpusEntry) -> VerificationReport {
    let tt = entry.truth_table();
    let mut records = Vec::new();
    let record = |claim: String, expected: String, computed: String, ok: bool, witness: Option<String>| ClaimRecord {
        id: entry.id.clone(),
        claim,
        expected,
        computed,
        status: if ok { Status::Pass } else { Status::Fail },
        witness,
    };
    for claim in &entry.claims {
        match *claim {
            Claim::Alpha { metric, k, value } => match alpha(&tt, k, metric) {
                Ok(r) => {
                    records.push(record(
                        format!("alpha[{metric}](k={k}) <= {value}"),
                        value.to_string(),
                        r.value.to_string(),
                        r.value <= value,
                        Some(r.witness.to_text()),
                    ));
                    records.push(record(
                        format!("alpha[{metric}](k={k}) >= {value}"),
                        value.to_string(),
                        format!("{} over {} flats", r.value, r.flats_scanned),
                        r.value >= value,
                        None,
                    ));
                }
                Err(e) => records.push(record(
                    format!("alpha[{metric}](k={k}) = {value}"),
                    value.to_string(),
                    format!("error: {e}"),
                    false,
                    None,
                )),
            },
            Claim::AlphaAtLeast { metric, k, value } => {
                let label = format!("alpha[{metric}](k={k}) >= {value}");
                match alpha(&tt, k, metric) {
                    Ok(r) => records.push(record(
                        label,
                        value.to_string(),
                        r.value.to_string(),
                        r.value >= value,
                        Some(r.witness.to_text()),
                    )),
                    Err(e) => records.push(record(label, value.to_string(), format!("error: {e}"), false, None)),
                }
            }
            Claim::BadFlats {
                metric,
                k,
                threshold,
                value,
                total,
            } => {
                let label = format!("bad_flats[{metric}](k={k}, threshold={threshold})");
                let expected = format!("{value} / {total}");
                match bad_flat_count(&tt, k, metric, threshold) {
                    Ok(r) => records.push(record(
                        label,
                        expected,
                        format!("{} / {}", r.bad_count, r.total),
                        r.bad_count == value && r.total == total,
                        None,
                    )),
                    Err(e) => records.push(record(label, expected, format!("error: {e}"), false, None)),
                }
            }
        }
    }
    VerificationReport {
        id: entry.id.clone(),
        records,
    }
}
