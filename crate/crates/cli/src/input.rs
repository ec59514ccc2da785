use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use flatdeg::corpus::{corpus, parse_corpus_file, witness_entry, CorpusEntry};
use flatdeg::{anf_to_tt, parse_anf, Error, TruthTable};

/// One way of naming a Boolean function on the command line.
#[derive(Args, Debug, Clone)]
pub struct FunctionInput {
    /// Truth table in packed hex (byte j holds entries 8j..8j+7, LSB first)
    #[arg(long, group = "function")]
    pub tt: Option<String>,
    /// ANF text, e.g. "x1x2 ⊕ x3"
    #[arg(long, group = "function")]
    pub anf: Option<String>,
    /// File holding ANF text or a corpus entry
    #[arg(long, group = "function")]
    pub anf_file: Option<PathBuf>,
    /// Bundled corpus id (e.g. f_7_4, conj_k3, weight1_witness_5)
    #[arg(long, group = "function")]
    pub corpus: Option<String>,
    /// Number of variables; inferred when the input determines it
    #[arg(long)]
    pub n: Option<u32>,
}

pub struct Resolved {
    pub label: String,
    pub tt: TruthTable,
}

pub fn lookup_corpus(id: &str) -> Result<CorpusEntry> {
    if let Some(n) = id.strip_prefix("weight1_witness_") {
        let n: u32 = n.parse().map_err(|_| Error::InvalidArgument(format!("bad witness id {id:?}")))?;
        return Ok(witness_entry(n)?);
    }
    corpus()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::Resource(format!("no bundled corpus entry {id:?}")).into())
}

impl FunctionInput {
    pub fn resolve(&self) -> Result<Resolved> {
        let (label, tt) = if let Some(hex) = &self.tt {
            ("tt".to_string(), TruthTable::from_hex(hex, self.n)?)
        } else if let Some(text) = &self.anf {
            let anf = parse_anf(text, self.n)?;
            ("anf".to_string(), anf_to_tt(&anf))
        } else if let Some(path) = &self.anf_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Resource(format!("{}: {e}", path.display())))
                .with_context(|| "reading ANF file")?;
            let tt = if text.lines().any(|l| l.trim_start().starts_with("# id=")) {
                let entry = parse_corpus_file(&text)?;
                if let Some(n) = self.n {
                    if n != entry.n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            actual: entry.n,
                        }
                        .into());
                    }
                }
                entry.truth_table()
            } else {
                let body: String = text
                    .lines()
                    .filter(|l| !l.trim_start().starts_with('#'))
                    .collect::<Vec<_>>()
                    .join("\n");
                anf_to_tt(&parse_anf(&body, self.n)?)
            };
            (path.display().to_string(), tt)
        } else if let Some(id) = &self.corpus {
            let entry = lookup_corpus(id)?;
            (entry.id.clone(), entry.truth_table())
        } else {
            bail!(Error::InvalidArgument("give a function with --tt, --anf, --anf-file or --corpus".into()));
        };
        if let Some(n) = self.n {
            if tt.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: tt.n(),
                }
                .into());
            }
        }
        Ok(Resolved { label, tt })
    }
}
