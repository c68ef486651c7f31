//! Freely reduced words over a ranked alphabet.
//!
//! A [`Word`] is the universal currency of the engine: an immutable,
//! eagerly reduced sequence of signed generators. The token grammar is
//! `x<k>` for generator `k`, `X<k>` for its inverse (`k >= 1`), with an
//! optional `^<int>` repetition suffix; tokens are whitespace-separated
//! and the empty word prints as the empty string.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A free-group generator, identified by a positive index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator(u32);

impl Generator {
    /// Panics if `index` is zero; generators are numbered from 1.
    pub fn new(index: u32) -> Generator {
        assert!(index >= 1, "generator index must be >= 1");
        Generator(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// Sign of a letter: `Plus` is the generator itself, `Minus` its inverse.
///
/// The derived order (`Plus < Minus`) gives the letter order
/// `x1 < X1 < x2 < X2 < ...` used by shortlex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A single signed generator occurrence.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gen: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(gen: Generator, sign: Sign) -> Letter {
        Letter { gen, sign }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: self.sign.flip() }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign == other.sign.flip()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "x{}", self.gen.index()),
            Sign::Minus => write!(f, "X{}", self.gen.index()),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("generator index 0 in token `{0}`")]
    IndexZero(String),
    #[error("malformed power in token `{0}`")]
    MalformedPower(String),
}

/// A freely reduced word; the empty word is the group identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn generator(g: Generator) -> Word {
        Word { letters: vec![Letter::new(g, Sign::Plus)] }
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    /// Builds a word from a letter sequence, freely reducing it.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut reduced: Vec<Letter> = Vec::new();
        for l in letters {
            match reduced.last() {
                Some(&last) if last.is_inverse_of(l) => {
                    reduced.pop();
                }
                _ => reduced.push(l),
            }
        }
        Word { letters: reduced }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring in the word, 0 if empty.
    pub fn max_generator_index(&self) -> u32 {
        self.letters.iter().map(|l| l.gen.index()).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn invert(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Conjugation `g^h = h^-1 g h`.
    pub fn conjugate(&self, h: &Word) -> Word {
        h.invert().multiply(self).multiply(h)
    }

    /// Commutator `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, h: &Word) -> Word {
        self.invert().multiply(&h.invert()).multiply(self).multiply(h)
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Signed count of occurrences of `g`.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == g)
            .map(|l| l.sign.as_i32() as i64)
            .sum()
    }

    /// Splits `w` as `conjugator^-1 * core * conjugator` with `core`
    /// cyclically reduced. Returns `(core, conjugator)`.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let mut core = self.letters.clone();
        let mut conjugator: Vec<Letter> = Vec::new();
        while core.len() >= 2 {
            let first = core[0];
            let last = core[core.len() - 1];
            if first.is_inverse_of(last) {
                core.pop();
                core.remove(0);
                conjugator.insert(0, last);
            } else {
                break;
            }
        }
        (Word { letters: core }, Word { letters: conjugator })
    }

    /// Shortlex comparison: by length, then by the letter order
    /// `x1 < X1 < x2 < X2 < ...`.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(text: &str) -> Result<Word, WordParseError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (body, power) = match token.split_once('^') {
                Some((body, pow)) => {
                    let p: i64 = pow
                        .parse()
                        .map_err(|_| WordParseError::MalformedPower(token.to_string()))?;
                    (body, p)
                }
                None => (token, 1),
            };
            let mut chars = body.chars();
            let sign = match chars.next() {
                Some('x') => Sign::Plus,
                Some('X') => Sign::Minus,
                _ => return Err(WordParseError::MalformedToken(token.to_string())),
            };
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(WordParseError::MalformedToken(token.to_string()));
            }
            let index: u32 = digits
                .parse()
                .map_err(|_| WordParseError::MalformedToken(token.to_string()))?;
            if index == 0 {
                return Err(WordParseError::IndexZero(token.to_string()));
            }
            let letter = Letter::new(Generator::new(index), sign);
            let (rep, eff) = if power < 0 {
                (letter.inverse(), -power)
            } else {
                (letter, power)
            };
            for _ in 0..eff {
                letters.push(rep);
            }
        }
        Ok(Word::from_letters(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses a word, panicking on malformed input. Test and scenario helper.
pub fn word(text: &str) -> Word {
    text.parse().unwrap_or_else(|e| panic!("bad word literal `{text}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_cancels_inverse_pair() {
        assert_eq!(word("x1 X1"), Word::identity());
    }

    #[test]
    fn parse_expands_powers() {
        assert_eq!(word("x1 x2^3"), word("x1 x2 x2 x2"));
        assert_eq!(word("x1^-2"), word("X1 X1"));
    }

    #[test]
    fn parse_inner_cancellation() {
        assert_eq!(word("x2 X3 x3 x1"), word("x2 x1"));
    }

    #[test]
    fn parse_errors_name_the_token() {
        let e = "x0".parse::<Word>().unwrap_err();
        assert_eq!(e, WordParseError::IndexZero("x0".to_string()));
        let e = "y1".parse::<Word>().unwrap_err();
        assert_eq!(e, WordParseError::MalformedToken("y1".to_string()));
        let e = "x1^z".parse::<Word>().unwrap_err();
        assert_eq!(e, WordParseError::MalformedPower("x1^z".to_string()));
    }

    #[test]
    fn multiply_reduces() {
        assert_eq!(word("x1 x2").multiply(&word("X2 x3")), word("x1 x3"));
        let w = word("x1 X2 x1");
        assert_eq!(Word::identity().multiply(&w), w);
        assert_eq!(w.multiply(&w.invert()), Word::identity());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(word("x1 x2").invert(), word("X2 X1"));
        assert_eq!(Word::identity().invert(), Word::identity());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(word("x1").conjugate(&word("x2")), word("X2 x1 x2"));
        let g = word("x1 x2 X1");
        assert_eq!(g.conjugate(&Word::identity()), g);
        let h = word("x2 x1");
        assert_eq!(g.conjugate(&h).conjugate(&h.invert()), g);
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(word("x1").commutator(&word("x2")), word("X1 X2 x1 x2"));
        let g = word("x1 x2");
        assert_eq!(g.commutator(&g), Word::identity());
        assert_eq!(word("x1").commutator(&Word::identity()), Word::identity());
    }

    #[test]
    fn power_examples() {
        assert_eq!(word("x1 x2").power(2), word("x1 x2 x1 x2"));
        assert_eq!(word("x1 x2").power(0), Word::identity());
        assert_eq!(word("x1 x2").power(-1), word("x1 x2").invert());
    }

    #[test]
    fn exponent_sum_examples() {
        let g2 = Generator::new(2);
        assert_eq!(word("x1 x2 X1 x2").exponent_sum(g2), 2);
        assert_eq!(word("x1^5").exponent_sum(Generator::new(1)), 5);
        let c = word("x1 x2 X2 x1").commutator(&word("x2 X1"));
        assert_eq!(c.exponent_sum(Generator::new(1)), 0);
        assert_eq!(c.exponent_sum(g2), 0);
    }

    #[test]
    fn cyclic_reduction_examples() {
        assert_eq!(word("X1 x2 x1").cyclically_reduce(), (word("x2"), word("x1")));
        assert_eq!(word("x1 x2").cyclically_reduce(), (word("x1 x2"), Word::identity()));
        assert_eq!(
            Word::identity().cyclically_reduce(),
            (Word::identity(), Word::identity())
        );
        // recomposition
        let w = word("X2 X1 x2 x1 x2");
        let (core, conj) = w.cyclically_reduce();
        assert_eq!(core.conjugate(&conj), w);
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(word("x1 x2^2 X3").to_string(), "x1 x2 x2 X3");
        assert_eq!(Word::identity().to_string(), "");
    }

    #[test]
    fn shortlex_order() {
        assert!(word("x1").shortlex_cmp(&word("X1")).is_lt());
        assert!(word("X1").shortlex_cmp(&word("x2")).is_lt());
        assert!(word("x2").shortlex_cmp(&word("x1 x1")).is_lt());
    }
}
