//! Derived-series membership for free groups via Fox derivatives.
//!
//! The decision procedure is the recursive Magnus criterion: for the
//! normal subgroup `N = F^(n-1)`, a word lies in `[N, N] = F^(n)` iff it
//! lies in `N` and all of its Fox derivatives vanish in `Z[F/N]`. The
//! zero test in `Z[F/N]` merges supports by recursive membership of
//! their quotients, so the cost grows by a tower in the level; the
//! harness only exercises levels `n <= 3`.
//!
//! [`wreath`] holds an independent oracle for levels 1 and 2 that
//! simulates the Magnus embedding into a wreath product directly and
//! shares no code with the Fox-derivative path.

pub mod wreath;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::free_groups::{Generator, Letter, Sign, Word};
use crate::rng;

/// A level of the derived series: 0 is the whole group, `n` is `F^(n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DerivedLevel(pub u32);

/// Integer formal sum of freely reduced words: an element of the free
/// group ring, kept canonical (shortlex-sorted supports, no zero
/// coefficients, pairwise distinct supports).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupRingElement {
    terms: Vec<(BigInt, Word)>,
}

impl GroupRingElement {
    pub fn zero() -> GroupRingElement {
        GroupRingElement { terms: Vec::new() }
    }

    pub fn term(coefficient: i64, support: Word) -> GroupRingElement {
        GroupRingElement::from_terms(vec![(BigInt::from(coefficient), support)])
    }

    /// Canonicalizes: merges exactly equal supports, drops zeros, sorts.
    pub fn from_terms(terms: Vec<(BigInt, Word)>) -> GroupRingElement {
        let mut merged: Vec<(BigInt, Word)> = Vec::new();
        for (c, w) in terms {
            match merged.iter_mut().find(|(_, u)| *u == w) {
                Some((acc, _)) => *acc += c,
                None => merged.push((c, w)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        merged.sort_by(|(_, u), (_, v)| u.shortlex_cmp(v));
        GroupRingElement { terms: merged }
    }

    pub fn terms(&self) -> &[(BigInt, Word)] {
        &self.terms
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        GroupRingElement::from_terms(
            self.terms.iter().chain(other.terms.iter()).cloned().collect(),
        )
    }

    pub fn negate(&self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(c, w)| (-c, w.clone())).collect(),
        }
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, u: &Word) -> GroupRingElement {
        GroupRingElement::from_terms(
            self.terms
                .iter()
                .map(|(c, w)| (c.clone(), u.multiply(w)))
                .collect(),
        )
    }

    /// Sum of coefficients (augmentation map).
    pub fn augmentation(&self) -> BigInt {
        self.terms.iter().map(|(c, _)| c).sum()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, w)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{c}*ε")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Fox derivative `∂w/∂g`: satisfies `∂g/∂g = 1`, `∂h/∂g = 0` for
/// `h != g`, `∂g⁻¹/∂g = -g⁻¹` and the product rule
/// `∂(uv)/∂g = ∂u/∂g + u·∂v/∂g`.
pub fn fox_derivative(w: &Word, g: Generator) -> GroupRingElement {
    let mut terms: Vec<(BigInt, Word)> = Vec::new();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.gen == g {
            match l.sign {
                Sign::Plus => terms.push((BigInt::from(1), prefix.clone())),
                Sign::Minus => {
                    terms.push((BigInt::from(-1), prefix.multiply(&Word::letter(l))))
                }
            }
        }
        prefix = prefix.multiply(&Word::letter(l));
    }
    GroupRingElement::from_terms(terms)
}

fn exponent_vector(w: &Word) -> BTreeMap<u32, i64> {
    let mut v = BTreeMap::new();
    for &l in w.letters() {
        *v.entry(l.gen.index()).or_insert(0) += l.sign.as_i32() as i64;
    }
    v.retain(|_, c| *c != 0);
    v
}

/// Zero test in `Z[F / F^(level)]`: merges terms whose supports agree
/// modulo the level and requires every merged coefficient to vanish.
pub fn ring_is_zero_mod(e: &GroupRingElement, level: DerivedLevel) -> bool {
    if level.0 == 0 {
        return e.augmentation().is_zero();
    }
    // Exponent vectors classify F/F^(1) exactly and are a necessary
    // invariant at every deeper level, so bucket by them first.
    let mut buckets: BTreeMap<Vec<(u32, i64)>, Vec<(&BigInt, &Word)>> = BTreeMap::new();
    for (c, w) in e.terms() {
        let key: Vec<(u32, i64)> = exponent_vector(w).into_iter().collect();
        buckets.entry(key).or_default().push((c, w));
    }
    for bucket in buckets.values() {
        if level.0 == 1 {
            let total: BigInt = bucket.iter().map(|(c, _)| (*c).clone()).sum();
            if !total.is_zero() {
                return false;
            }
            continue;
        }
        // Group the bucket into classes by recursive membership of u·v⁻¹.
        let mut classes: Vec<(Word, BigInt)> = Vec::new();
        for (c, w) in bucket {
            match classes
                .iter_mut()
                .find(|(u, _)| derived_member(&w.multiply(&u.invert()), level))
            {
                Some((_, acc)) => *acc += *c,
                None => classes.push(((*w).clone(), (*c).clone())),
            }
        }
        if classes.iter().any(|(_, c)| !c.is_zero()) {
            return false;
        }
    }
    true
}

thread_local! {
    // Session memo for levels >= 2; semantically transparent.
    static MEMO: RefCell<HashMap<(Word, u32), bool>> = RefCell::new(HashMap::new());
}

/// Membership in the `level`-th derived subgroup of the ambient free
/// group (the ambient rank is immaterial: derivatives with respect to
/// absent generators vanish identically).
pub fn derived_member(w: &Word, level: DerivedLevel) -> bool {
    match level.0 {
        0 => true,
        1 => exponent_vector(w).is_empty(),
        n => {
            if let Some(hit) =
                MEMO.with(|m| m.borrow().get(&(w.clone(), n)).copied())
            {
                return hit;
            }
            let prev = DerivedLevel(n - 1);
            let result = derived_member(w, prev)
                && generators_of(w)
                    .into_iter()
                    .all(|g| ring_is_zero_mod(&fox_derivative(w, g), prev));
            MEMO.with(|m| m.borrow_mut().insert((w.clone(), n), result));
            result
        }
    }
}

fn generators_of(w: &Word) -> Vec<Generator> {
    let mut seen: Vec<Generator> = Vec::new();
    for &l in w.letters() {
        if !seen.contains(&l.gen) {
            seen.push(l.gen);
        }
    }
    seen
}

/// Depth of a word in the derived series, capped at `max`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Depth {
    Exactly(u32),
    AtLeast(u32),
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Exactly(n) => write!(f, "{n}"),
            Depth::AtLeast(n) => write!(f, "≥{n}"),
        }
    }
}

/// Largest `n <= max` with `derived_member(w, n)`, reported as
/// `AtLeast(max)` when membership still holds at the cap (in particular
/// for the identity).
pub fn derived_depth(w: &Word, max: u32) -> Depth {
    let mut depth = 0;
    for n in 1..=max {
        if derived_member(w, DerivedLevel(n)) {
            depth = n;
        } else {
            return Depth::Exactly(depth);
        }
    }
    Depth::AtLeast(max)
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FoxError {
    #[error("ambient rank must be >= 2 to sample derived elements, got {0}")]
    RankTooSmall(u32),
    #[error("retry budget exhausted: all sampled candidates reduced to the identity")]
    RetriesExhausted,
}

/// Seeded sampler for elements of `F^(level)`: a depth-`level` nested
/// commutator of pseudo-random words of length at most `size`.
/// Deterministic in the seed; membership at `level` is guaranteed by
/// construction, strictness below `level + 1` is not.
pub fn random_derived_element(
    rank: u32,
    level: DerivedLevel,
    size: usize,
    seed: u64,
) -> Result<Word, FoxError> {
    if rank < 2 {
        return Err(FoxError::RankTooSmall(rank));
    }
    let mut rng = rng::stream(seed, "random-derived-element");
    random_derived_element_with(&mut rng, rank, level, size)
}

/// Same sampler, drawing from a caller-owned stream.
pub fn random_derived_element_with(
    rng: &mut ChaCha8Rng,
    rank: u32,
    level: DerivedLevel,
    size: usize,
) -> Result<Word, FoxError> {
    if rank < 2 {
        return Err(FoxError::RankTooSmall(rank));
    }
    for _ in 0..64 {
        let w = nested_commutator(rng, rank, level.0, size.max(1));
        if !w.is_empty() {
            return Ok(w);
        }
    }
    Err(FoxError::RetriesExhausted)
}

fn nested_commutator(rng: &mut ChaCha8Rng, rank: u32, level: u32, size: usize) -> Word {
    if level == 0 {
        return random_word(rng, rank, size);
    }
    // Retry a few times so nested levels do not collapse to ε.
    for _ in 0..8 {
        let u = nested_commutator(rng, rank, level - 1, size);
        let v = nested_commutator(rng, rank, level - 1, size);
        let c = u.commutator(&v);
        if !c.is_empty() {
            return c;
        }
    }
    Word::identity()
}

/// Uniform nonempty reduced word of length at most `size`.
pub fn random_word(rng: &mut ChaCha8Rng, rank: u32, size: usize) -> Word {
    let len = rng.gen_range(1..=size.max(1));
    let mut letters: Vec<Letter> = Vec::new();
    while letters.len() < len {
        let gen = Generator::new(rng.gen_range(1..=rank));
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let l = Letter::new(gen, sign);
        if letters.last().is_some_and(|last| last.is_inverse_of(l)) {
            continue;
        }
        letters.push(l);
    }
    Word::from_letters(letters)
}
