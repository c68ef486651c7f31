//! Independent membership oracle for derived levels 1 and 2.
//!
//! Level 2 simulates the Magnus embedding of `F/F''` into the wreath-style
//! product `(Z[Z^r])^r ⋊ Z^r` with explicit finite-support coefficient
//! functions: a generator `x_i` maps to the pair `(e_i, x̄_i)` and
//! multiplication is `(m1, q1)(m2, q2) = (m1 + q1·m2, q1 + q2)` with
//! `q1` acting by translating Laurent monomials. A word lies in `F''`
//! exactly when its image is the identity. No Fox-derivative code is
//! shared with the main decision path.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::free_groups::{Sign, Word};

/// Monomial in the Laurent ring Z[Z^r]: exponent per generator index.
type Monomial = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct WreathElement {
    /// Image in the free abelian quotient Z^r.
    shift: Vec<i64>,
    /// Finite-support coefficient functions, one slot per generator:
    /// (slot, monomial) -> coefficient.
    coeffs: BTreeMap<(usize, Monomial), BigInt>,
}

impl WreathElement {
    fn identity(rank: usize) -> WreathElement {
        WreathElement { shift: vec![0; rank], coeffs: BTreeMap::new() }
    }

    fn generator(rank: usize, slot: usize, sign: Sign) -> WreathElement {
        let mut shift = vec![0; rank];
        let mut coeffs = BTreeMap::new();
        match sign {
            Sign::Plus => {
                shift[slot] = 1;
                coeffs.insert((slot, vec![0; rank]), BigInt::from(1));
            }
            Sign::Minus => {
                shift[slot] = -1;
                let mut monomial = vec![0; rank];
                monomial[slot] = -1;
                coeffs.insert((slot, monomial), BigInt::from(-1));
            }
        }
        WreathElement { shift, coeffs }
    }

    fn multiply(&self, other: &WreathElement) -> WreathElement {
        let mut coeffs = self.coeffs.clone();
        for ((slot, monomial), c) in &other.coeffs {
            let translated: Monomial = monomial
                .iter()
                .zip(&self.shift)
                .map(|(m, s)| m + s)
                .collect();
            let entry = coeffs.entry((*slot, translated)).or_insert_with(BigInt::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        let shift = self.shift.iter().zip(&other.shift).map(|(a, b)| a + b).collect();
        WreathElement { shift, coeffs }
    }

    fn is_identity(&self) -> bool {
        self.shift.iter().all(|&s| s == 0) && self.coeffs.is_empty()
    }
}

/// Membership oracle for `F^(level)`, `level` in {1, 2}.
///
/// Level 1 uses exponent sums only; level 2 multiplies out the wreath
/// image of the word and tests for the identity.
pub fn wreath_oracle_member(w: &Word, level: u32) -> bool {
    assert!(level == 1 || level == 2, "wreath oracle supports levels 1 and 2");
    let rank = w.max_generator_index() as usize;
    if level == 1 {
        let mut sums = vec![0i64; rank];
        for &l in w.letters() {
            sums[l.gen.index() as usize - 1] += l.sign.as_i32() as i64;
        }
        return sums.iter().all(|&s| s == 0);
    }
    let mut image = WreathElement::identity(rank);
    for &l in w.letters() {
        let g = WreathElement::generator(rank, l.gen.index() as usize - 1, l.sign);
        image = image.multiply(&g);
    }
    image.is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_groups::word;

    #[test]
    fn generator_times_inverse_is_identity() {
        let x = WreathElement::generator(2, 0, Sign::Plus);
        let xi = WreathElement::generator(2, 0, Sign::Minus);
        assert!(x.multiply(&xi).is_identity());
        assert!(xi.multiply(&x).is_identity());
    }

    #[test]
    fn oracle_examples() {
        assert!(!wreath_oracle_member(&word("x1 x2 X1 X2"), 2));
        let cc = word("x1")
            .commutator(&word("x2"))
            .commutator(&word("x1").commutator(&word("X2")));
        assert!(wreath_oracle_member(&cc, 2));
        assert!(wreath_oracle_member(&word(""), 2));
        assert!(wreath_oracle_member(&word("x1 x2 X1 X2"), 1));
        assert!(!wreath_oracle_member(&word("x1"), 1));
    }
}
