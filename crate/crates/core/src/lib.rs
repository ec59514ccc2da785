//! Boolean functions restricted to affine subspaces of F2^n.
//!
//! The crate computes the minimum algebraic degree and the minimum
//! nonlinearity of a function over all k-dimensional flats, counts the
//! flats on which a function is "bad" for a threshold, searches for
//! functions without bad flats, and evaluates the known closed-form bounds
//! on the maxima of these quantities.

pub mod analysis;
pub mod anf_text;
pub mod boolfun;
pub mod bounds;
pub mod corpus;
pub mod error;
pub mod flat;
pub mod search;

pub use analysis::{alpha, bad_flat_count, exhaustive_g, verify_claim, AnalysisResult, BadFlatReport, Metric};
pub use anf_text::{parse_anf, print_anf};
pub use boolfun::{anf_to_tt, degree, mobius, nonlinearity, parity_over, walsh, Anf, TruthTable, WalshSpectrum};
pub use error::{Error, Result};
pub use flat::{canonicalize, count_flats, enumerate_flats, enumerate_flats_through, flat_parity, restrict, Flat, FlatSpace};
