//! Braid words and their text syntax.
//!
//! ```text
//! word   := token*            (whitespace separated)
//! token  := "B" digits suffix?
//! suffix := "'" | "^-1"
//! ```

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::BraidError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidLetter {
    /// Exchanges strands `generator` and `generator + 1`.
    pub generator: usize,
    /// +1 counterclockwise, −1 clockwise.
    pub exponent: i8,
}

impl BraidLetter {
    pub fn inverse(self) -> Self {
        Self { exponent: -self.exponent, ..self }
    }
}

/// Letters act in time order, first letter first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub n_strands: usize,
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(n_strands: usize, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        if n_strands < 2 {
            return Err(BraidError::TooFewStrands(n_strands));
        }
        for l in &letters {
            if l.generator == 0 || l.generator >= n_strands {
                return Err(BraidError::OutOfRange { generator: l.generator, n_strands, position: None });
            }
            if l.exponent.abs() != 1 {
                return Err(BraidError::BadExponent(l.exponent));
            }
        }
        Ok(Self { n_strands, letters })
    }

    pub fn identity(n_strands: usize) -> Result<Self, BraidError> {
        Self::new(n_strands, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word undoing this one: reversed letters, flipped exponents.
    pub fn inverse(&self) -> Self {
        Self {
            n_strands: self.n_strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self` followed in time by `other`.
    pub fn then(&self, other: &Self) -> Result<Self, BraidError> {
        if self.n_strands != other.n_strands {
            return Err(BraidError::StrandMismatch(self.n_strands, other.n_strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { n_strands: self.n_strands, letters })
    }

    pub fn random<R: Rng>(rng: &mut R, n_strands: usize, max_len: usize) -> Self {
        let len = rng.random_range(0..=max_len);
        let letters = (0..len)
            .map(|_| BraidLetter {
                generator: rng.random_range(1..n_strands),
                exponent: if rng.random::<bool>() { 1 } else { -1 },
            })
            .collect();
        Self { n_strands, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "B{}", l.generator)?;
            if l.exponent < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

pub fn parse_braid_word(text: &str, n_strands: usize) -> Result<BraidWord, BraidError> {
    if n_strands < 2 {
        return Err(BraidError::TooFewStrands(n_strands));
    }
    let mut letters = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let end = bytes[pos..]
            .iter()
            .position(|b| b.is_ascii_whitespace())
            .map_or(bytes.len(), |o| pos + o);
        let token = &text[start..end];
        letters.push(parse_token(token, start, n_strands)?);
        pos = end;
    }
    Ok(BraidWord { n_strands, letters })
}

fn parse_token(token: &str, position: usize, n_strands: usize) -> Result<BraidLetter, BraidError> {
    let malformed = || BraidError::Malformed { token: token.to_string(), position };
    let rest = token.strip_prefix('B').ok_or_else(malformed)?;
    let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
    let (digits, suffix) = rest.split_at(digits_end);
    if digits.is_empty() {
        return Err(malformed());
    }
    let exponent = match suffix {
        "" => 1,
        "'" | "^-1" => -1,
        _ => return Err(malformed()),
    };
    let generator: usize = digits.parse().map_err(|_| malformed())?;
    if generator == 0 || generator >= n_strands {
        return Err(BraidError::OutOfRange { generator, n_strands, position: Some(position) });
    }
    Ok(BraidLetter { generator, exponent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(generator: usize, exponent: i8) -> BraidLetter {
        BraidLetter { generator, exponent }
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse_braid_word("B1 B2", 5).unwrap().letters, vec![l(1, 1), l(2, 1)]);
        assert_eq!(parse_braid_word("B4^-1", 5).unwrap().letters, vec![l(4, -1)]);
        assert_eq!(parse_braid_word("B3'", 5).unwrap().letters, vec![l(3, -1)]);
        assert!(parse_braid_word("", 5).unwrap().is_empty());
        assert!(parse_braid_word("  \t\n", 5).unwrap().is_empty());
    }

    #[test]
    fn range_errors() {
        assert!(matches!(
            parse_braid_word("B0", 5),
            Err(BraidError::OutOfRange { generator: 0, position: Some(0), .. })
        ));
        assert!(matches!(
            parse_braid_word("B1 B5", 5),
            Err(BraidError::OutOfRange { generator: 5, position: Some(3), .. })
        ));
    }

    #[test]
    fn malformed_tokens_report_position() {
        for (text, at) in [("B1 X2", 3), ("B", 0), ("B1^-2", 0), ("B2 B1''", 3), ("b1", 0), ("B1B2", 0), ("B-1", 0)] {
            match parse_braid_word(text, 5) {
                Err(BraidError::Malformed { position, .. }) => assert_eq!(position, at, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trips() {
        let w = parse_braid_word("B1 B3' B2^-1 B4", 5).unwrap();
        assert_eq!(w.to_string(), "B1 B3^-1 B2^-1 B4");
        assert_eq!(parse_braid_word(&w.to_string(), 5).unwrap(), w);
    }

    #[test]
    fn inverse_reverses() {
        let w = parse_braid_word("B1 B2'", 3).unwrap();
        assert_eq!(w.inverse().to_string(), "B2 B1^-1");
    }

    #[test]
    fn too_few_strands() {
        assert!(matches!(parse_braid_word("", 1), Err(BraidError::TooFewStrands(1))));
    }
}
