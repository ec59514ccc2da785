//! Bundled functions with claims about their restrictions.
//!
//! Each corpus file holds one function in ANF text, preceded by `#` lines
//! of `key=value` metadata:
//!
//! ```text
//! # id=conj_k2
//! # n=4
//! # claim=bad_flats metric=degree k=2 threshold=1 value=10 total=140
//! x1x2x3 ⊕ x1x4 ⊕ x2
//! ```
//!
//! Claim kinds are `alpha` (exact minimum), `alpha_at_least`, and
//! `bad_flats`. Comment lines without `=` are free text.

use std::path::Path;

use crate::analysis::Metric;
use crate::anf_text::parse_anf;
use crate::boolfun::{anf_to_tt, mobius, Anf, TruthTable};
use crate::error::{Error, Result};

const BUNDLED: [(&str, &str); 6] = [
    ("f_7_4.anf", include_str!("../corpus/f_7_4.anf")),
    ("f_8_5.anf", include_str!("../corpus/f_8_5.anf")),
    ("conj_k2.anf", include_str!("../corpus/conj_k2.anf")),
    ("conj_k3.anf", include_str!("../corpus/conj_k3.anf")),
    ("conj_k4.anf", include_str!("../corpus/conj_k4.anf")),
    ("conj_k5.anf", include_str!("../corpus/conj_k5.anf")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// The minimum over k-flats equals `value`.
    Alpha { metric: Metric, k: u32, value: u64 },
    AlphaAtLeast { metric: Metric, k: u32, value: u64 },
    /// `value` of the `total` k-flats are bad for `threshold`.
    BadFlats {
        metric: Metric,
        k: u32,
        threshold: u64,
        value: u64,
        total: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub n: u32,
    pub anf: Anf,
    pub claims: Vec<Claim>,
}

impl CorpusEntry {
    pub fn truth_table(&self) -> TruthTable {
        anf_to_tt(&self.anf)
    }
}

fn bad_meta(line: usize, message: impl Into<String>) -> Error {
    Error::Resource(format!("line {}: {}", line + 1, message.into()))
}

fn parse_claim(line: usize, text: &str) -> Result<Claim> {
    let mut words = text.split_whitespace();
    let kind = words.next().ok_or_else(|| bad_meta(line, "empty claim"))?;
    let mut metric = Metric::Degree;
    let (mut k, mut value, mut threshold, mut total) = (None, None, None, None);
    for word in words {
        let (key, v) = word
            .split_once('=')
            .ok_or_else(|| bad_meta(line, format!("expected key=value, got {word:?}")))?;
        let num = || v.parse::<u64>().map_err(|_| bad_meta(line, format!("invalid number {v:?}")));
        match key {
            "metric" => metric = v.parse()?,
            "k" => k = Some(num()? as u32),
            "value" => value = Some(num()?),
            "threshold" => threshold = Some(num()?),
            "total" => total = Some(num()?),
            _ => return Err(bad_meta(line, format!("unknown claim field {key:?}"))),
        }
    }
    let need = |x: Option<u64>, name: &str| x.ok_or_else(|| bad_meta(line, format!("claim needs {name}")));
    let k = k.ok_or_else(|| bad_meta(line, "claim needs k"))?;
    match kind {
        "alpha" => Ok(Claim::Alpha {
            metric,
            k,
            value: need(value, "value")?,
        }),
        "alpha_at_least" => Ok(Claim::AlphaAtLeast {
            metric,
            k,
            value: need(value, "value")?,
        }),
        "bad_flats" => Ok(Claim::BadFlats {
            metric,
            k,
            threshold: need(threshold, "threshold")?,
            value: need(value, "value")?,
            total: need(total, "total")?,
        }),
        other => Err(bad_meta(line, format!("unknown claim kind {other:?}"))),
    }
}

/// Parses one corpus file.
pub fn parse_corpus_file(text: &str) -> Result<CorpusEntry> {
    let mut id = None;
    let mut n = None;
    let mut claims = Vec::new();
    let mut body = String::new();
    for (i, line) in text.lines().enumerate() {
        let Some(meta) = line.trim_start().strip_prefix('#') else {
            body.push_str(line);
            body.push('\n');
            continue;
        };
        let meta = meta.trim();
        let Some((key, value)) = meta.split_once('=') else {
            continue;
        };
        match key.trim() {
            "id" => id = Some(value.trim().to_string()),
            "n" => {
                n = Some(
                    value
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| bad_meta(i, "invalid n"))?,
                )
            }
            "claim" => claims.push(parse_claim(i, value)?),
            _ => {}
        }
    }
    let id = id.ok_or_else(|| Error::Resource("corpus file has no id".into()))?;
    let n = n.ok_or_else(|| Error::Resource(format!("corpus entry {id} has no n")))?;
    let anf = parse_anf(&body, Some(n))?;
    Ok(CorpusEntry { id, n, anf, claims })
}

/// The bundled entries, parsed at call time.
pub fn corpus() -> Vec<CorpusEntry> {
    BUNDLED
        .iter()
        .map(|(name, text)| {
            parse_corpus_file(text).unwrap_or_else(|e| panic!("bundled corpus file {name} is malformed: {e}"))
        })
        .collect()
}

/// Loads every `*.anf` file of a directory, sorted by file name.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let read = std::fs::read_dir(dir).map_err(|e| Error::Resource(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "anf"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Resource(format!("no corpus files in {}", dir.display())));
    }
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Resource(format!("{}: {e}", p.display())))?;
            parse_corpus_file(&text).map_err(|e| match e {
                Error::Resource(m) => Error::Resource(format!("{}: {m}", p.display())),
                other => other,
            })
        })
        .collect()
}

/// The function that is 1 exactly on points of Hamming weight at most 1.
/// Its restrictions to hyperplanes all have degree at least `n - 2`.
pub fn weight_one_witness(n: u32) -> Result<TruthTable> {
    if n < 2 {
        return Err(Error::invalid("the weight-one witness needs n >= 2"));
    }
    TruthTable::from_fn(n, |x| x.count_ones() <= 1)
}

/// Corpus entry for [`weight_one_witness`] with its hyperplane claim.
pub fn witness_entry(n: u32) -> Result<CorpusEntry> {
    let tt = weight_one_witness(n)?;
    Ok(CorpusEntry {
        id: format!("weight1_witness_{n}"),
        n,
        anf: mobius(&tt),
        claims: vec![Claim::AlphaAtLeast {
            metric: Metric::Degree,
            k: n - 1,
            value: (n - 2) as u64,
        }],
    })
}
