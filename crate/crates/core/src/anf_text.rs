//! Text form of algebraic normal forms.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expression := term (('⊕' | '+' | '^') term)*
//! term       := '0' | '1' | variable+
//! variable   := 'x' index          (decimal, index >= 1)
//! ```
//!
//! Juxtaposed variables multiply, a repeated variable inside one term is
//! idempotent, and equal terms cancel in pairs.

use std::collections::BTreeSet;

use crate::boolfun::{Anf, MAX_VARS};
use crate::error::{Error, Result};

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn index(&mut self) -> Result<u32> {
        // no whitespace between 'x' and its digits
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a variable index after 'x'"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let value: u64 = digits.parse().map_err(|_| Error::Syntax {
            position: start,
            message: format!("variable index {digits} is too large"),
        })?;
        if value == 0 {
            return Err(Error::Syntax {
                position: start,
                message: "variable indices start at 1".into(),
            });
        }
        if value > MAX_VARS as u64 {
            return Err(Error::Syntax {
                position: start,
                message: format!("variable index {value} exceeds the limit of {MAX_VARS}"),
            });
        }
        Ok(value as u32)
    }

    /// Returns `None` for the term `0`, otherwise the monomial mask.
    fn term(&mut self) -> Result<Option<u32>> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(None)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Some(0))
            }
            Some('x') => {
                let mut mask = 0u32;
                while self.peek() == Some('x') {
                    self.pos += 1;
                    let i = self.index()?;
                    mask |= 1 << (i - 1);
                }
                Ok(Some(mask))
            }
            Some(c) => Err(self.err(format!("unexpected character {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an ANF expression. Without `declared_n` the number of variables
/// is the largest index used (0 for constants).
pub fn parse_anf(text: &str, declared_n: Option<u32>) -> Result<Anf> {
    if let Some(n) = declared_n {
        if n > MAX_VARS {
            return Err(Error::VariableCount(n));
        }
    }
    let mut lex = Lexer::new(text);
    let mut monomials = BTreeSet::new();
    loop {
        if let Some(mask) = lex.term()? {
            if !monomials.insert(mask) {
                monomials.remove(&mask);
            }
        }
        match lex.peek() {
            None => break,
            Some('⊕' | '+' | '^') => lex.pos += 1,
            Some(c) => return Err(lex.err(format!("expected an operator, found {c:?}"))),
        }
    }
    let used = monomials
        .iter()
        .map(|m| 32 - m.leading_zeros())
        .max()
        .unwrap_or(0);
    let n = match declared_n {
        Some(n) if used > n => {
            return Err(Error::VariableOutOfRange {
                index: used,
                declared: n,
            })
        }
        Some(n) => n,
        None => used,
    };
    Anf::new(n, monomials)
}

/// Canonical text: terms by ascending weight, then mask, joined by " ⊕ ".
pub fn print_anf(anf: &Anf) -> String {
    if anf.is_empty() {
        return "0".to_string();
    }
    let mut terms: Vec<u32> = anf.monomials().iter().copied().collect();
    terms.sort_by_key(|&m| (m.count_ones(), m));
    let rendered: Vec<String> = terms
        .into_iter()
        .map(|m| {
            if m == 0 {
                return "1".to_string();
            }
            (0..32)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| format!("x{}", i + 1))
                .collect()
        })
        .collect();
    rendered.join(" ⊕ ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn masks(anf: &Anf) -> Vec<u32> {
        anf.monomials().iter().copied().collect()
    }

    #[test]
    fn parses_small_listing() {
        let anf = parse_anf("x1x2x3 ⊕ x1x4 ⊕ x2", Some(4)).unwrap();
        assert_eq!(masks(&anf), vec![0b0010, 0b0111, 0b1001]);
        assert_eq!(anf.n(), 4);
    }

    #[test]
    fn constants_and_cancellation() {
        assert!(parse_anf("0", None).unwrap().is_empty());
        assert!(parse_anf("x1 ⊕ x1", None).unwrap().is_empty());
        assert_eq!(masks(&parse_anf("1 + 0", None).unwrap()), vec![0]);
        assert_eq!(masks(&parse_anf("x1x1x2", None).unwrap()), vec![0b11]);
        assert_eq!(masks(&parse_anf("1 ^ 1 ^ 1", None).unwrap()), vec![0]);
    }

    #[test]
    fn operator_spellings_agree() {
        let a = parse_anf("x1x2 ⊕ x3 ⊕ 1", None).unwrap();
        let b = parse_anf("x1x2 + x3 + 1", None).unwrap();
        let c = parse_anf("x1 x2^x3^1", None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn inferred_arity() {
        assert_eq!(parse_anf("x7", None).unwrap().n(), 7);
        assert_eq!(parse_anf("1", None).unwrap().n(), 0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_anf("x1 ⊕ x5", Some(4)),
            Err(Error::VariableOutOfRange { index: 5, declared: 4 })
        ));
        assert!(matches!(parse_anf("x25", None), Err(Error::Syntax { position: 1, .. })));
        assert!(matches!(parse_anf("x0", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_anf("x1 ⊕", None), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_anf("x1 x2 * x3", None), Err(Error::Syntax { position: 6, .. })));
        assert!(matches!(parse_anf("", None), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_anf("x", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_anf("1x1", None), Err(Error::Syntax { position: 1, .. })));
    }

    #[test]
    fn printing_order() {
        assert_eq!(print_anf(&Anf::zero(3).unwrap()), "0");
        let anf = Anf::new(3, [0b11, 0b100]).unwrap();
        assert_eq!(print_anf(&anf), "x3 ⊕ x1x2");
        let anf = Anf::new(3, [0b11, 0, 0b101, 0b10]).unwrap();
        assert_eq!(print_anf(&anf), "1 ⊕ x2 ⊕ x1x2 ⊕ x1x3");
    }
}
