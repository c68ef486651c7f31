//! The group-oracle abstraction every higher module builds on.
//!
//! Concrete element values live in the [`Elem`] enum so oracles for
//! different carriers (permutations, free-group words, direct-product
//! pairs) can plug into the same extension machinery.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::free_groups::{SubgroupAutomaton, Word};

use super::perm::{Perm, PermutationGroup, FiniteQuotient};
use super::KernelError;

/// A group element, in whichever carrier its oracle uses.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Elem {
    Perm(Perm),
    Word(Word),
    Pair(Box<Elem>, Box<Elem>),
}

impl Elem {
    pub fn as_perm(&self) -> &Perm {
        match self {
            Elem::Perm(p) => p,
            other => panic!("expected a permutation element, got {other:?}"),
        }
    }

    pub fn as_word(&self) -> &Word {
        match self {
            Elem::Word(w) => w,
            other => panic!("expected a word element, got {other:?}"),
        }
    }

    pub fn as_pair(&self) -> (&Elem, &Elem) {
        match self {
            Elem::Pair(a, b) => (a, b),
            other => panic!("expected a pair element, got {other:?}"),
        }
    }
}

/// Abstract group interface: identity, multiplication, inversion, a
/// bounded enumeration when the group is finite, and print/parse hooks
/// for the external syntax.
pub trait GroupOracle: Send + Sync {
    fn identity(&self) -> Elem;
    fn multiply(&self, a: &Elem, b: &Elem) -> Elem;
    fn invert(&self, a: &Elem) -> Elem;

    fn is_identity(&self, a: &Elem) -> bool {
        *a == self.identity()
    }

    /// All elements, or an error for infinite/oversized groups.
    fn enumerate(&self, bound: usize) -> Result<Vec<Elem>, KernelError>;

    /// True when the value is a well-formed element of this group.
    fn validate(&self, _a: &Elem) -> bool {
        true
    }

    fn print_elem(&self, a: &Elem) -> String;
    fn parse_elem(&self, text: &str) -> Result<Elem, KernelError>;
    fn describe(&self) -> String;
}

/// Checks the group laws on every triple drawn from `elems`, capped at
/// `max_triples`. Returns the offending triple descriptions.
pub fn check_group_laws(
    oracle: &dyn GroupOracle,
    elems: &[Elem],
    max_triples: usize,
) -> Vec<String> {
    let mut violations = Vec::new();
    let id = oracle.identity();
    let mut count = 0usize;
    'outer: for a in elems {
        if oracle.multiply(a, &id) != *a || oracle.multiply(&id, a) != *a {
            violations.push(format!("identity law fails at {}", oracle.print_elem(a)));
        }
        if !oracle.is_identity(&oracle.multiply(a, &oracle.invert(a))) {
            violations.push(format!("inverse law fails at {}", oracle.print_elem(a)));
        }
        for b in elems {
            for c in elems {
                count += 1;
                if count > max_triples {
                    break 'outer;
                }
                let left = oracle.multiply(&oracle.multiply(a, b), c);
                let right = oracle.multiply(a, &oracle.multiply(b, c));
                if left != right {
                    violations.push(format!(
                        "associativity fails at ({}, {}, {})",
                        oracle.print_elem(a),
                        oracle.print_elem(b),
                        oracle.print_elem(c)
                    ));
                }
            }
        }
    }
    violations
}

impl GroupOracle for PermutationGroup {
    fn identity(&self) -> Elem {
        Elem::Perm(Perm::identity(self.degree()))
    }

    fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::Perm(a.as_perm().then(b.as_perm()))
    }

    fn invert(&self, a: &Elem) -> Elem {
        Elem::Perm(a.as_perm().inverse())
    }

    fn is_identity(&self, a: &Elem) -> bool {
        a.as_perm().is_identity()
    }

    fn enumerate(&self, bound: usize) -> Result<Vec<Elem>, KernelError> {
        Ok(self
            .enumerate_elements(bound)?
            .into_iter()
            .map(Elem::Perm)
            .collect())
    }

    fn validate(&self, a: &Elem) -> bool {
        matches!(a, Elem::Perm(p) if self.contains(p))
    }

    fn print_elem(&self, a: &Elem) -> String {
        a.as_perm().to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<Elem, KernelError> {
        Ok(Elem::Perm(Perm::parse(text, self.degree())?))
    }

    fn describe(&self) -> String {
        format!("permutation group of degree {}", self.degree())
    }
}

/// Free group of finite rank with [`Word`] elements.
#[derive(Clone, Debug)]
pub struct FreeOracle {
    pub rank: u32,
}

impl GroupOracle for FreeOracle {
    fn identity(&self) -> Elem {
        Elem::Word(Word::identity())
    }

    fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::Word(a.as_word().multiply(b.as_word()))
    }

    fn invert(&self, a: &Elem) -> Elem {
        Elem::Word(a.as_word().invert())
    }

    fn is_identity(&self, a: &Elem) -> bool {
        a.as_word().is_empty()
    }

    fn enumerate(&self, _bound: usize) -> Result<Vec<Elem>, KernelError> {
        Err(KernelError::NotEnumerable(self.describe()))
    }

    fn validate(&self, a: &Elem) -> bool {
        matches!(a, Elem::Word(w) if w.max_generator_index() <= self.rank)
    }

    fn print_elem(&self, a: &Elem) -> String {
        a.as_word().to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<Elem, KernelError> {
        let w: Word = text.parse().map_err(KernelError::WordSyntax)?;
        Ok(Elem::Word(w))
    }

    fn describe(&self) -> String {
        format!("free group of rank {}", self.rank)
    }
}

/// Infinite cyclic subgroup of a free group, generated by a fixed word.
#[derive(Clone, Debug)]
pub struct CyclicWordOracle {
    generator: Word,
    membership: SubgroupAutomaton,
}

impl CyclicWordOracle {
    pub fn new(generator: Word) -> CyclicWordOracle {
        let membership = SubgroupAutomaton::fold(std::slice::from_ref(&generator));
        CyclicWordOracle { generator, membership }
    }

    pub fn generator(&self) -> &Word {
        &self.generator
    }
}

impl GroupOracle for CyclicWordOracle {
    fn identity(&self) -> Elem {
        Elem::Word(Word::identity())
    }

    fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::Word(a.as_word().multiply(b.as_word()))
    }

    fn invert(&self, a: &Elem) -> Elem {
        Elem::Word(a.as_word().invert())
    }

    fn is_identity(&self, a: &Elem) -> bool {
        a.as_word().is_empty()
    }

    fn enumerate(&self, _bound: usize) -> Result<Vec<Elem>, KernelError> {
        Err(KernelError::NotEnumerable(self.describe()))
    }

    fn validate(&self, a: &Elem) -> bool {
        matches!(a, Elem::Word(w) if self.membership.contains(w))
    }

    fn print_elem(&self, a: &Elem) -> String {
        a.as_word().to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<Elem, KernelError> {
        let w: Word = text.parse().map_err(KernelError::WordSyntax)?;
        Ok(Elem::Word(w))
    }

    fn describe(&self) -> String {
        format!("cyclic group on {}", self.generator)
    }
}

impl GroupOracle for FiniteQuotient {
    fn identity(&self) -> Elem {
        Elem::Perm(Perm::identity(self.parent().degree()))
    }

    fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        let product = a.as_perm().then(b.as_perm());
        Elem::Perm(self.project(&product).expect("product stays in the parent"))
    }

    fn invert(&self, a: &Elem) -> Elem {
        Elem::Perm(
            self.project(&a.as_perm().inverse())
                .expect("inverse stays in the parent"),
        )
    }

    fn is_identity(&self, a: &Elem) -> bool {
        self.kernel().contains(a.as_perm())
    }

    fn enumerate(&self, bound: usize) -> Result<Vec<Elem>, KernelError> {
        if self.order() > bound {
            return Err(KernelError::BoundExceeded { order: self.order(), bound });
        }
        Ok(self.representatives().iter().cloned().map(Elem::Perm).collect())
    }

    fn validate(&self, a: &Elem) -> bool {
        matches!(a, Elem::Perm(p) if self.project(p).is_ok())
    }

    fn print_elem(&self, a: &Elem) -> String {
        match self.project(a.as_perm()) {
            Ok(rep) => format!("{rep}·N"),
            Err(_) => format!("{}·N", a.as_perm()),
        }
    }

    fn parse_elem(&self, text: &str) -> Result<Elem, KernelError> {
        let raw = Perm::parse(text.trim_end_matches("·N"), self.parent().degree())?;
        Ok(Elem::Perm(self.project(&raw)?))
    }

    fn describe(&self) -> String {
        format!(
            "quotient of order {} of a {}",
            self.order(),
            self.parent().describe()
        )
    }
}

/// Direct product with componentwise operations.
pub struct DirectProduct {
    pub left: Arc<dyn GroupOracle>,
    pub right: Arc<dyn GroupOracle>,
}

/// Componentwise product oracle of two groups.
pub fn direct_product(
    left: Arc<dyn GroupOracle>,
    right: Arc<dyn GroupOracle>,
) -> DirectProduct {
    DirectProduct { left, right }
}

impl DirectProduct {
    pub fn pair(&self, a: Elem, b: Elem) -> Elem {
        Elem::Pair(Box::new(a), Box::new(b))
    }
}

impl GroupOracle for DirectProduct {
    fn identity(&self) -> Elem {
        Elem::Pair(Box::new(self.left.identity()), Box::new(self.right.identity()))
    }

    fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        let (a1, a2) = a.as_pair();
        let (b1, b2) = b.as_pair();
        Elem::Pair(
            Box::new(self.left.multiply(a1, b1)),
            Box::new(self.right.multiply(a2, b2)),
        )
    }

    fn invert(&self, a: &Elem) -> Elem {
        let (a1, a2) = a.as_pair();
        Elem::Pair(Box::new(self.left.invert(a1)), Box::new(self.right.invert(a2)))
    }

    fn is_identity(&self, a: &Elem) -> bool {
        let (a1, a2) = a.as_pair();
        self.left.is_identity(a1) && self.right.is_identity(a2)
    }

    fn enumerate(&self, bound: usize) -> Result<Vec<Elem>, KernelError> {
        let lhs = self.left.enumerate(bound)?;
        let rhs = self.right.enumerate(bound)?;
        if lhs.len().saturating_mul(rhs.len()) > bound {
            return Err(KernelError::BoundExceeded {
                order: lhs.len() * rhs.len(),
                bound,
            });
        }
        let mut out = Vec::new();
        for a in &lhs {
            for b in &rhs {
                out.push(Elem::Pair(Box::new(a.clone()), Box::new(b.clone())));
            }
        }
        Ok(out)
    }

    fn validate(&self, a: &Elem) -> bool {
        matches!(a, Elem::Pair(x, y) if self.left.validate(x) && self.right.validate(y))
    }

    fn print_elem(&self, a: &Elem) -> String {
        let (a1, a2) = a.as_pair();
        format!("({}, {})", self.left.print_elem(a1), self.right.print_elem(a2))
    }

    fn parse_elem(&self, text: &str) -> Result<Elem, KernelError> {
        Err(KernelError::NotEnumerable(format!(
            "parsing direct-product elements is unsupported: `{text}`"
        )))
    }

    fn describe(&self) -> String {
        format!("({}) × ({})", self.left.describe(), self.right.describe())
    }
}

/// The trivial group, as a degree-1 permutation group.
pub fn trivial_oracle() -> Arc<dyn GroupOracle> {
    Arc::new(PermutationGroup::trivial())
}

/// Helper: the element set of a finite oracle as a `BTreeSet`.
pub fn element_set(oracle: &dyn GroupOracle, bound: usize) -> Result<BTreeSet<Elem>, KernelError> {
    Ok(oracle.enumerate(bound)?.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_kernel::perm::perm_group;

    fn c2() -> PermutationGroup {
        perm_group(vec![Perm::parse("(1 2)", 2).unwrap()]).unwrap()
    }

    fn c3() -> PermutationGroup {
        perm_group(vec![Perm::parse("(1 2 3)", 3).unwrap()]).unwrap()
    }

    #[test]
    fn direct_product_order() {
        let p = direct_product(Arc::new(c2()), Arc::new(c3()));
        assert_eq!(p.enumerate(100).unwrap().len(), 6);
        let id = p.identity();
        assert!(p.is_identity(&id));
    }

    #[test]
    fn product_with_trivial_group_acts_like_factor() {
        let p = direct_product(Arc::new(c3()), trivial_oracle());
        let g = p.pair(Elem::Perm(Perm::parse("(1 2 3)", 3).unwrap()), Elem::Perm(Perm::identity(1)));
        let g3 = p.multiply(&p.multiply(&g, &g), &g);
        assert!(p.is_identity(&g3));
    }

    #[test]
    fn group_laws_hold_on_oracles() {
        let p = direct_product(Arc::new(c2()), Arc::new(c3()));
        let elems = p.enumerate(100).unwrap();
        assert!(check_group_laws(&p, &elems, 500).is_empty());
        let f = FreeOracle { rank: 2 };
        let words: Vec<Elem> = ["x1", "x2 X1", "x1 x2"]
            .iter()
            .map(|t| f.parse_elem(t).unwrap())
            .collect();
        assert!(check_group_laws(&f, &words, 500).is_empty());
    }

    #[test]
    fn cyclic_word_oracle_membership() {
        let c = CyclicWordOracle::new("x1 x1".parse().unwrap());
        assert!(c.validate(&Elem::Word("x1 x1 x1 x1".parse().unwrap())));
        assert!(!c.validate(&Elem::Word("x1".parse().unwrap())));
        assert!(c.validate(&Elem::Word(Word::identity())));
    }
}
