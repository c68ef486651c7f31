//! Groups filtered by a descending chain of normal subgroups, with
//! checkers for the chain axioms and the substructure condition, plus
//! the chain combinators (shift, pad) and concrete instances.
//!
//! Chains are membership predicates, never materialized subgroups; that
//! is the only faithful finite representation of chains like the
//! derived series of a free group. All checkers are bounded refutation
//! searches over seeded samples (exhaustive for small finite groups) and
//! report violations with witnesses.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::fox_magnus::{self, DerivedLevel};
use crate::free_groups::{Letter, Word};
use crate::group_kernel::{
    direct_product, Elem, GroupOracle, Perm, PermutationGroup, ENUMERATION_BOUND,
};
use crate::report::{violation, Report};
use crate::rng;

pub type MemberFn = Arc<dyn Fn(u32, &Elem) -> bool + Send + Sync>;
pub type PredicateFn = Arc<dyn Fn(&Elem) -> bool + Send + Sync>;
pub type SamplerFn = Arc<dyn Fn(&mut ChaCha8Rng) -> Elem + Send + Sync>;
pub type EmbedFn = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;

/// An ambient group oracle plus level-membership predicates: one
/// structure of the filtered-group class. `member(0, g)` is true for
/// every ambient element.
#[derive(Clone)]
pub struct FilteredGroup {
    pub ambient: Arc<dyn GroupOracle>,
    /// Restriction predicate when the ambient carrier is a proper
    /// subgroup of the oracle's value space (as after a chain shift).
    pub ambient_member: PredicateFn,
    pub member: MemberFn,
    pub sampler: SamplerFn,
    pub description: String,
}

impl FilteredGroup {
    pub fn member(&self, level: u32, g: &Elem) -> bool {
        if level == 0 {
            return true;
        }
        (self.member)(level, g)
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Elem {
        (self.sampler)(rng)
    }

    /// Exhaustive ambient element list when the group is small enough.
    fn exhaustive(&self) -> Option<Vec<Elem>> {
        let all = self.ambient.enumerate(ENUMERATION_BOUND).ok()?;
        Some(all.into_iter().filter(|e| (self.ambient_member)(e)).collect())
    }

    fn draw(&self, count: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
        match self.exhaustive() {
            Some(all) if !all.is_empty() => all,
            _ => (0..count).map(|_| self.sample(rng)).collect(),
        }
    }
}

/// A map between filtered groups, expected to be a homomorphism
/// compatible with the chains.
#[derive(Clone)]
pub struct FilteredMap {
    pub source: FilteredGroup,
    pub target: FilteredGroup,
    pub map: EmbedFn,
}

/// Derived-series filtration of the free group of the given rank:
/// `member(n, w)` decides `w ∈ F^(n)`.
pub fn derived_filtration(rank: u32) -> FilteredGroup {
    assert!(rank >= 1, "rank must be >= 1");
    let oracle = Arc::new(crate::group_kernel::FreeOracle { rank });
    let sampler: SamplerFn = Arc::new(move |rng| {
        if rank < 2 {
            // F' of rank 1 is trivial; plain words cover the chain.
            return Elem::Word(fox_magnus::random_word(rng, rank, 4));
        }
        let roll: u32 = rng.gen_range(0..10);
        let (level, size) = match roll {
            0..=3 => return Elem::Word(fox_magnus::random_word(rng, rank, 6)),
            4..=6 => (DerivedLevel(1), 2),
            7..=8 => (DerivedLevel(2), 2),
            _ => (DerivedLevel(3), 1),
        };
        let w = fox_magnus::random_derived_element_with(rng, rank, level, size)
            .unwrap_or_else(|_| Word::identity());
        Elem::Word(w)
    });
    FilteredGroup {
        ambient: oracle,
        ambient_member: Arc::new(|_| true),
        member: Arc::new(|n, e| fox_magnus::derived_member(e.as_word(), DerivedLevel(n))),
        sampler,
        description: format!("free group of rank {rank} with its derived series"),
    }
}

/// Finite chain given explicitly: `chain[n]` is the element set of the
/// level-`n` subgroup (index 0 is the whole group) and the chain stays
/// at its last entry from there on.
pub fn finite_chain(
    group: Arc<PermutationGroup>,
    chain: Vec<std::collections::BTreeSet<Perm>>,
    description: &str,
) -> FilteredGroup {
    assert!(!chain.is_empty(), "chain needs at least level 0");
    let elements = group.elements();
    let sampler_elems = elements.clone();
    let sampler: SamplerFn = Arc::new(move |rng| {
        Elem::Perm(sampler_elems[rng.gen_range(0..sampler_elems.len())].clone())
    });
    FilteredGroup {
        ambient: group,
        ambient_member: Arc::new(|_| true),
        member: Arc::new(move |n, e| {
            let level = (n as usize).min(chain.len() - 1);
            chain[level].contains(e.as_perm())
        }),
        sampler,
        description: description.to_string(),
    }
}

/// Deliberately broken chain for negative controls: level >= 1
/// "membership" is "the word starts with x1", which is not a subgroup.
pub fn broken_chain_control(rank: u32) -> FilteredGroup {
    let base = derived_filtration(rank);
    FilteredGroup {
        member: Arc::new(|_, e| {
            e.as_word()
                .letters()
                .first()
                .is_some_and(|l: &Letter| l.gen.index() == 1)
        }),
        description: format!("broken chain control over rank {rank}"),
        ..base
    }
}

/// Componentwise filtration of the direct product: the direct-sum
/// construction for joint extensions.
pub fn direct_sum_filtration(a1: &FilteredGroup, a2: &FilteredGroup) -> FilteredGroup {
    let product = Arc::new(direct_product(a1.ambient.clone(), a2.ambient.clone()));
    let (m1, m2) = (a1.member.clone(), a2.member.clone());
    let (am1, am2) = (a1.ambient_member.clone(), a2.ambient_member.clone());
    let (s1, s2) = (a1.sampler.clone(), a2.sampler.clone());
    FilteredGroup {
        ambient: product,
        ambient_member: Arc::new(move |e| {
            let (x, y) = e.as_pair();
            am1(x) && am2(y)
        }),
        member: Arc::new(move |n, e| {
            let (x, y) = e.as_pair();
            m1(n, x) && m2(n, y)
        }),
        sampler: Arc::new(move |rng| Elem::Pair(Box::new(s1(rng)), Box::new(s2(rng)))),
        description: format!("({}) ⊕ ({})", a1.description, a2.description),
    }
}

/// The two coordinate injections into a direct sum, as filtered maps.
pub fn direct_sum_injections(
    a1: &FilteredGroup,
    a2: &FilteredGroup,
) -> (FilteredMap, FilteredMap) {
    let sum = direct_sum_filtration(a1, a2);
    let id2 = a2.ambient.identity();
    let id1 = a1.ambient.identity();
    let left = FilteredMap {
        source: a1.clone(),
        target: sum.clone(),
        map: Arc::new(move |e| Elem::Pair(Box::new(e.clone()), Box::new(id2.clone()))),
    };
    let right = FilteredMap {
        source: a2.clone(),
        target: sum,
        map: Arc::new(move |e| Elem::Pair(Box::new(id1.clone()), Box::new(e.clone()))),
    };
    (left, right)
}

/// Drops the first `k` levels: the ambient becomes the level-`k`
/// subgroup and `member'(n, g) = member(k + n, g)`.
pub fn chain_shift(a: &FilteredGroup, k: u32) -> FilteredGroup {
    let member = a.member.clone();
    let shifted_member = a.member.clone();
    let filter_member = a.member.clone();
    let sampler = a.sampler.clone();
    let ambient_member = a.ambient_member.clone();
    let identity = a.ambient.identity();
    FilteredGroup {
        ambient: a.ambient.clone(),
        ambient_member: Arc::new(move |e| ambient_member(e) && (k == 0 || member(k, e))),
        member: Arc::new(move |n, e| k + n == 0 || shifted_member(k + n, e)),
        sampler: Arc::new(move |rng| {
            // the underlying sampler mixes levels; keep only level-k hits
            for _ in 0..128 {
                let e = sampler(rng);
                if k == 0 || filter_member(k, &e) {
                    return e;
                }
            }
            identity.clone()
        }),
        description: format!("{} shifted by {k}", a.description),
    }
}

/// Prepends `k` copies of level 0: `member'(n, g)` is true for
/// `n <= k` and `member(n - k, g)` beyond.
pub fn chain_pad(a: &FilteredGroup, k: u32) -> FilteredGroup {
    let member = a.member.clone();
    FilteredGroup {
        ambient: a.ambient.clone(),
        ambient_member: a.ambient_member.clone(),
        member: Arc::new(move |n, e| n <= k || member(n - k, e)),
        sampler: a.sampler.clone(),
        description: format!("{} padded by {k}", a.description),
    }
}

/// Runs the four chain axioms at levels `<= levels` over `sample`
/// seeded elements (exhaustive when the ambient group is small and
/// finite): identity membership, closure under `x y^-1`, closure under
/// conjugation by arbitrary elements, and chain descent.
pub fn check_class_axioms(
    a: &FilteredGroup,
    levels: u32,
    sample: usize,
    seed: u64,
) -> Report {
    let mut report = Report::new("class-axioms", seed)
        .with_param("structure", &a.description)
        .with_param("levels", levels)
        .with_param("sample", sample);
    let mut rng = rng::stream(seed, "class-axioms");
    let elems = a.draw(sample, &mut rng);

    // membership table: elems x levels
    let table: Vec<Vec<bool>> = elems
        .iter()
        .map(|e| (0..=levels).map(|n| a.member(n, e)).collect())
        .collect();
    let print = |e: &Elem| a.ambient.print_elem(e);

    for n in 0..=levels {
        // (1) identity
        let id = a.ambient.identity();
        report.check(a.member(n, &id), || {
            violation("axioms.identity", Some(n), vec![print(&id)], "identity not a member")
        });

        let members: Vec<&Elem> = elems
            .iter()
            .zip(&table)
            .filter(|(_, row)| row[n as usize])
            .map(|(e, _)| e)
            .collect();

        // (2) closure under x y^-1 on member pairs
        if !members.is_empty() {
            let budget = sample.min(members.len() * members.len());
            for _ in 0..budget {
                let x = members[rng.gen_range(0..members.len())];
                let y = members[rng.gen_range(0..members.len())];
                let xy = a.ambient.multiply(x, &a.ambient.invert(y));
                report.check(a.member(n, &xy), || {
                    violation(
                        "axioms.closure",
                        Some(n),
                        vec![print(x), print(y), print(&xy)],
                        "x·y⁻¹ left the level",
                    )
                });
            }
        }

        // (3) conjugation closure by arbitrary sampled z
        if !members.is_empty() && !elems.is_empty() {
            let budget = sample.min(members.len() * elems.len());
            for _ in 0..budget {
                let x = members[rng.gen_range(0..members.len())];
                let z = &elems[rng.gen_range(0..elems.len())];
                let conj = a
                    .ambient
                    .multiply(&a.ambient.multiply(&a.ambient.invert(z), x), z);
                report.check(a.member(n, &conj), || {
                    violation(
                        "axioms.conjugation",
                        Some(n),
                        vec![print(x), print(z), print(&conj)],
                        "conjugate left the level",
                    )
                });
            }
        }
    }

    // (4) chain descent
    for (e, row) in elems.iter().zip(&table) {
        for n in 0..levels {
            report.check(
                !row[n as usize + 1] || row[n as usize],
                || {
                    violation(
                        "axioms.descent",
                        Some(n),
                        vec![print(e)],
                        "member of level n+1 escaped level n",
                    )
                },
            );
        }
    }
    report
}

/// Substructure check along an embedding: for sampled `a` and levels
/// `n <= levels`, membership in the source at `n` must coincide with
/// membership of the image in the target at `n`.
pub fn is_substructure(
    a: &FilteredGroup,
    b: &FilteredGroup,
    embed: &EmbedFn,
    levels: u32,
    sample: usize,
    seed: u64,
) -> Report {
    let mut report = Report::new("substructure", seed)
        .with_param("source", &a.description)
        .with_param("target", &b.description)
        .with_param("levels", levels)
        .with_param("sample", sample);
    let mut rng = rng::stream(seed, "substructure");
    let elems = a.draw(sample, &mut rng);
    for e in &elems {
        let image = embed(e);
        for n in 0..=levels {
            let src = a.member(n, e);
            let dst = b.member(n, &image);
            report.check(src == dst, || {
                violation(
                    "substructure.mismatch",
                    Some(n),
                    vec![a.ambient.print_elem(e), b.ambient.print_elem(&image)],
                    if src {
                        "source member maps outside the target level"
                    } else {
                        "image gained membership the source lacks"
                    },
                )
            });
        }
    }
    report
}

/// Homomorphism spot-check for a filtered map on sampled pairs.
pub fn check_filtered_map(map: &FilteredMap, sample: usize, seed: u64) -> Report {
    let mut report = Report::new("filtered-map", seed)
        .with_param("source", &map.source.description)
        .with_param("target", &map.target.description);
    let mut rng = rng::stream(seed, "filtered-map");
    let elems = map.source.draw(sample, &mut rng);
    for pair in elems.windows(2) {
        let (x, y) = (&pair[0], &pair[1]);
        let lhs = (map.map)(&map.source.ambient.multiply(x, y));
        let rhs = map
            .target
            .ambient
            .multiply(&(map.map)(x), &(map.map)(y));
        report.check(lhs == rhs, || {
            violation(
                "map.homomorphism",
                None,
                vec![
                    map.source.ambient.print_elem(x),
                    map.source.ambient.print_elem(y),
                ],
                "φ(xy) != φ(x)φ(y)",
            )
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_groups::word;
    use crate::group_kernel::{derived_subgroup_finite, perm_group};
    use std::collections::BTreeSet;

    fn s3_chain() -> FilteredGroup {
        let s3 = Arc::new(
            perm_group(vec![
                Perm::parse("(1 2)", 3).unwrap(),
                Perm::parse("(1 2 3)", 3).unwrap(),
            ])
            .unwrap(),
        );
        let a3 = derived_subgroup_finite(&s3);
        let whole: BTreeSet<Perm> = s3.elements().into_iter().collect();
        let trivial: BTreeSet<Perm> = [Perm::identity(3)].into_iter().collect();
        finite_chain(s3, vec![whole, a3, trivial], "S3 ⊵ A3 ⊵ 1")
    }

    #[test]
    fn derived_filtration_satisfies_axioms() {
        let a = derived_filtration(2);
        let report = check_class_axioms(&a, 2, 40, 7);
        assert!(report.passed(), "{:?}", report.violations);
        assert!(report.checks_run > 0);
    }

    #[test]
    fn finite_chain_satisfies_axioms_exhaustively() {
        let report = check_class_axioms(&s3_chain(), 3, 100, 7);
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn broken_chain_control_is_refuted() {
        let a = broken_chain_control(2);
        let report = check_class_axioms(&a, 2, 60, 7);
        assert!(!report.passed());
        assert!(report.violations.iter().all(|v| v.check.starts_with("axioms.")));
        // witnesses name concrete elements
        assert!(report.violations.iter().all(|v| !v.witnesses.is_empty()));
    }

    #[test]
    fn derived_membership_levels() {
        let a = derived_filtration(2);
        let c = Elem::Word(word("x1").commutator(&word("x2")));
        assert!(a.member(0, &c) && a.member(1, &c) && !a.member(2, &c));
        let x = Elem::Word(word("x1"));
        assert!(a.member(0, &x) && !a.member(1, &x));
    }

    #[test]
    fn chain_shift_drops_levels() {
        let a = derived_filtration(2);
        let shifted = chain_shift(&a, 1);
        let c = Elem::Word(word("x1").commutator(&word("x2")));
        let x = Elem::Word(word("x1"));
        // ambient restricts to the old level 1
        assert!((shifted.ambient_member)(&c));
        assert!(!(shifted.ambient_member)(&x));
        // new level n is old level n+1
        assert!(shifted.member(0, &c));
        assert!(!shifted.member(1, &c));
        let c2 = word("x1").commutator(&word("x2"));
        let c2b = word("x1").commutator(&word("X2"));
        let deep = Elem::Word(c2.commutator(&c2b));
        assert!(shifted.member(1, &deep));
        // sampled elements respect the restricted ambient
        let mut rng = rng::stream(5, "shift-test");
        for _ in 0..20 {
            assert!((shifted.ambient_member)(&shifted.sample(&mut rng)));
        }
        let report = check_class_axioms(&shifted, 1, 20, 11);
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn chain_pad_prepends_full_levels() {
        let a = derived_filtration(2);
        let padded = chain_pad(&a, 1);
        let x = Elem::Word(word("x1"));
        let c = Elem::Word(word("x1").commutator(&word("x2")));
        assert!(padded.member(1, &x));
        assert!(padded.member(2, &c));
        assert!(!padded.member(2, &x));
        let report = check_class_axioms(&padded, 2, 30, 11);
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn direct_sum_is_componentwise() {
        let a = s3_chain();
        let sum = direct_sum_filtration(&a, &a);
        let rot = Elem::Perm(Perm::parse("(1 2 3)", 3).unwrap());
        let flip = Elem::Perm(Perm::parse("(1 2)", 3).unwrap());
        let pair = Elem::Pair(Box::new(rot.clone()), Box::new(rot.clone()));
        assert!(sum.member(1, &pair));
        let mixed = Elem::Pair(Box::new(rot), Box::new(flip));
        assert!(!sum.member(1, &mixed));
        let report = check_class_axioms(&sum, 3, 80, 7);
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn direct_sum_injections_are_substructures() {
        let a = s3_chain();
        let (left, right) = direct_sum_injections(&a, &a);
        for inj in [&left, &right] {
            let sub = is_substructure(&inj.source, &inj.target, &inj.map, 3, 50, 7);
            assert!(sub.passed(), "{:?}", sub.violations);
            let hom = check_filtered_map(inj, 50, 7);
            assert!(hom.passed(), "{:?}", hom.violations);
        }
    }

    #[test]
    fn substructure_mismatch_is_detected() {
        let good = derived_filtration(2);
        let broken = broken_chain_control(2);
        let identity_embed: EmbedFn = Arc::new(|e| e.clone());
        let report = is_substructure(&good, &broken, &identity_embed, 1, 40, 7);
        assert!(!report.passed());
        assert_eq!(report.violations[0].check, "substructure.mismatch");
    }
}
