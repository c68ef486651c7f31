//! HNN extensions with Britton-reduction normal forms over plug-in base
//! oracles.
//!
//! A reduced word with at least one stable-letter syllable represents a
//! nontrivial element (Britton's lemma), so triviality testing reduces
//! to pinch elimination. Each reduction step rewrites only through the
//! defining relation `t⁻¹ a t = φ(a)` and is logged in a step trace.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::free_groups::{Generator, SubgroupAutomaton, Word};
use crate::group_kernel::{Elem, FreeOracle, GroupOracle};
use crate::report::{violation, Report};
use crate::rng;

use super::ExtensionError;

/// Membership-with-image hook: `Some(φ(g))` when `g` lies in the
/// associated subgroup, `None` otherwise.
pub type AssocMap = Arc<dyn Fn(&Elem) -> Option<Elem> + Send + Sync>;

/// An HNN extension `⟨ base, t | t⁻¹ a t = φ(a), a ∈ A ⟩`.
pub struct HnnExtension {
    pub base: Arc<dyn GroupOracle>,
    /// `A → B` along φ; doubles as the A-membership test.
    pub a_to_b: AssocMap,
    /// `B → A` along φ⁻¹; doubles as the B-membership test.
    pub b_to_a: AssocMap,
    pub description: String,
}

/// Syllable form `g₀ · t^{e₁} g₁ · … · t^{e_k} g_k` with unit exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HnnWord {
    pub head: Elem,
    pub tail: Vec<(i8, Elem)>,
}

impl HnnWord {
    pub fn base(g: Elem) -> HnnWord {
        HnnWord { head: g, tail: Vec::new() }
    }

    /// `t^n` conjugate wrapper: `h^{t^n} = t^{-n} h t^{n}`.
    pub fn conjugate_by_stable_power(h: Elem, n: i64, identity: Elem) -> HnnWord {
        let mut tail = Vec::new();
        let sign_in: i8 = if n >= 0 { -1 } else { 1 };
        for i in 0..n.unsigned_abs() {
            let g = if i + 1 == n.unsigned_abs() { h.clone() } else { identity.clone() };
            tail.push((sign_in, g));
        }
        for i in 0..n.unsigned_abs() {
            let _ = i;
            tail.push((-sign_in, identity.clone()));
        }
        if n == 0 {
            HnnWord::base(h)
        } else {
            HnnWord { head: identity, tail }
        }
    }

    pub fn t_syllable_count(&self) -> usize {
        self.tail.len()
    }
}

/// One Britton rewrite step, for the audit trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Tail index of the pinch `t^{e} g t^{-e}`.
    pub position: usize,
    /// `"t⁻¹·a·t ↦ φ(a)"` or `"t·b·t⁻¹ ↦ φ⁻¹(b)"`.
    pub rule: &'static str,
    pub pinched: String,
    pub image: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{} {}: {} ↦ {}", self.position, self.rule, self.pinched, self.image)
    }
}

impl HnnExtension {
    /// Flagship instance: base free of the given rank, `A = ⟨x⟩`,
    /// `B = ⟨y⟩`, `φ(x^k) = y^k`. Subgroup membership goes through the
    /// folded automaton with exponent extraction.
    pub fn cyclic_over_free(rank: u32, x: Generator, y: Generator) -> HnnExtension {
        let base = Arc::new(FreeOracle { rank });
        let a_to_b = Self::cyclic_power_map(x, y, 1);
        let b_to_a = Self::cyclic_power_map(y, x, 1);
        HnnExtension {
            base,
            a_to_b,
            b_to_a,
            description: format!(
                "HNN over free rank {rank} with x{}^t = x{}",
                x.index(),
                y.index()
            ),
        }
    }

    /// Negative-control instance with `φ(x^k) = y^{2k}` (so `B = ⟨y²⟩`).
    pub fn broken_phi_over_free(rank: u32, x: Generator, y: Generator) -> HnnExtension {
        let base = Arc::new(FreeOracle { rank });
        let a_to_b = Self::cyclic_power_map(x, y, 2);
        let y_sq = Word::generator(y).power(2);
        let b_membership = SubgroupAutomaton::fold(std::slice::from_ref(&y_sq));
        let b_to_a: AssocMap = Arc::new(move |e| {
            let w = e.as_word();
            if !b_membership.contains(w) {
                return None;
            }
            let k = w.exponent_sum(y) / 2;
            Some(Elem::Word(Word::generator(x).power(k)))
        });
        HnnExtension {
            base,
            a_to_b,
            b_to_a,
            description: format!(
                "broken-φ HNN over free rank {rank} with x{}^t = x{}²",
                x.index(),
                y.index()
            ),
        }
    }

    fn cyclic_power_map(from: Generator, to: Generator, stretch: i64) -> AssocMap {
        let gen_word = Word::generator(from);
        let membership = SubgroupAutomaton::fold(std::slice::from_ref(&gen_word));
        Arc::new(move |e| {
            let w = e.as_word();
            if !membership.contains(w) {
                return None;
            }
            let k = w.exponent_sum(from);
            Some(Elem::Word(Word::generator(to).power(k * stretch)))
        })
    }

    fn find_pinch(&self, w: &HnnWord) -> Option<(usize, Elem, &'static str)> {
        for i in 0..w.tail.len().saturating_sub(1) {
            let (e1, g) = &w.tail[i];
            let (e2, _) = &w.tail[i + 1];
            if *e2 != -*e1 {
                continue;
            }
            if *e1 == -1 {
                if let Some(img) = (self.a_to_b)(g) {
                    return Some((i, img, "t⁻¹·a·t ↦ φ(a)"));
                }
            } else if let Some(img) = (self.b_to_a)(g) {
                return Some((i, img, "t·b·t⁻¹ ↦ φ⁻¹(b)"));
            }
        }
        None
    }

    /// Leftmost-innermost pinch elimination; returns the reduced word
    /// and the audited step trace. The stable-letter count never
    /// increases and the group element is preserved.
    pub fn britton_reduce(&self, w: &HnnWord) -> (HnnWord, Vec<TraceStep>) {
        let mut current = w.clone();
        let mut trace = Vec::new();
        while let Some((i, img, rule)) = self.find_pinch(&current) {
            let pinched = self.base.print_elem(&current.tail[i].1);
            let image = self.base.print_elem(&img);
            // splice: ... t^{e_{i-1}} g_{i-1} [t^{e_i} g_i t^{e_{i+1}}] g_{i+1} ...
            let (_, after) = current.tail.remove(i + 1);
            let _ = current.tail.remove(i);
            // merged = φ±(g_i) · g_{i+1}; fold into the preceding base slot
            let merged = self.base.multiply(&img, &after);
            if i == 0 {
                current.head = self.base.multiply(&current.head, &merged);
            } else {
                let prev = &mut current.tail[i - 1].1;
                *prev = self.base.multiply(prev, &merged);
            }
            trace.push(TraceStep { position: i, rule, pinched, image });
        }
        (current, trace)
    }

    /// Stable-letter length of a reduced word; rejects unreduced input.
    pub fn t_length(&self, w: &HnnWord) -> Result<usize, ExtensionError> {
        if self.find_pinch(w).is_some() {
            return Err(ExtensionError::NotReduced);
        }
        Ok(w.t_syllable_count())
    }

    /// True iff the word represents the identity of the extension.
    pub fn is_trivial(&self, w: &HnnWord) -> bool {
        let (reduced, _) = self.britton_reduce(w);
        reduced.tail.is_empty() && self.base.is_identity(&reduced.head)
    }

    /// Concatenation of syllable words.
    pub fn concat(&self, words: &[HnnWord]) -> HnnWord {
        let mut out = HnnWord::base(self.base.identity());
        for w in words {
            if out.tail.is_empty() {
                out.head = self.base.multiply(&out.head, &w.head);
            } else {
                let last = out.tail.last_mut().unwrap();
                last.1 = self.base.multiply(&last.1, &w.head);
            }
            out.tail.extend(w.tail.iter().cloned());
        }
        out
    }

    /// Seeded product of `k` conjugates `h_i^{t^{n_i}}` with `h_i` from
    /// the sampler and `|n_i| <= n_bound`: an element of `H^{⟨t⟩}` by
    /// construction.
    pub fn sample_closure_element(
        &self,
        h_sampler: &mut dyn FnMut(&mut ChaCha8Rng) -> Elem,
        k: usize,
        n_bound: i64,
        rng: &mut ChaCha8Rng,
    ) -> HnnWord {
        let mut factors = Vec::new();
        for _ in 0..k.max(1) {
            let h = h_sampler(rng);
            let n = rng.gen_range(-n_bound..=n_bound);
            factors.push(HnnWord::conjugate_by_stable_power(h, n, self.base.identity()));
        }
        self.concat(&factors)
    }

    /// Randomized check of the normal-closure intersection law
    /// `H^{⟨t⟩} ∩ G = H`: every sampled closure element whose Britton
    /// reduction has no stable letters must land in `H`.
    ///
    /// The hypothesis `x^k ∈ H ⇔ y^k ∈ H` is prechecked for
    /// `|k| <= hypothesis_bound` and a failure aborts with the
    /// offending exponent.
    #[allow(clippy::too_many_arguments)]
    pub fn check_intersection_law(
        &self,
        x: &Elem,
        y: &Elem,
        h_member: &dyn Fn(&Elem) -> bool,
        h_sampler: &mut dyn FnMut(&mut ChaCha8Rng) -> Elem,
        trials: usize,
        k_max: usize,
        n_bound: i64,
        hypothesis_bound: i64,
        seed: u64,
    ) -> Result<Report, ExtensionError> {
        // smallest offending |k| first
        for k in (0..=hypothesis_bound).flat_map(|k| [k, -k]) {
            let xk = self.power(x, k);
            let yk = self.power(y, k);
            if h_member(&xk) != h_member(&yk) {
                return Err(ExtensionError::HypothesisFailed { exponent: k });
            }
        }
        let mut report = Report::new("hnn-intersection", seed)
            .with_param("extension", &self.description)
            .with_param("trials", trials)
            .with_param("k_max", k_max)
            .with_param("n_bound", n_bound);
        let mut rng = rng::stream(seed, "hnn-intersection");
        let mut reduced_to_base = 0u64;
        for _ in 0..trials {
            let k = rng.gen_range(1..=k_max.max(1));
            let w = self.sample_closure_element(h_sampler, k, n_bound, &mut rng);
            let (reduced, _) = self.britton_reduce(&w);
            if reduced.tail.is_empty() {
                reduced_to_base += 1;
                report.check(h_member(&reduced.head), || {
                    violation(
                        "hnn.base-intersection",
                        None,
                        vec![self.base.print_elem(&reduced.head)],
                        "closure element reduced into the base outside H",
                    )
                });
            } else {
                report.checks_run += 1; // Britton: nontrivial, nothing to refute
            }
        }
        report.param("reduced_to_base", reduced_to_base);
        Ok(report)
    }

    fn power(&self, g: &Elem, k: i64) -> Elem {
        let base = if k < 0 { self.base.invert(g) } else { g.clone() };
        let mut out = self.base.identity();
        for _ in 0..k.unsigned_abs() {
            out = self.base.multiply(&out, &base);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_groups::word;

    fn flagship() -> HnnExtension {
        HnnExtension::cyclic_over_free(2, Generator::new(1), Generator::new(2))
    }

    fn w(text: &str) -> Elem {
        Elem::Word(word(text))
    }

    #[test]
    fn defining_relation_reduces() {
        let e = flagship();
        // t⁻¹ x t  →  y
        let u = HnnWord {
            head: w(""),
            tail: vec![(-1, w("x1")), (1, w(""))],
        };
        let (r, trace) = e.britton_reduce(&u);
        assert_eq!(r, HnnWord::base(w("x2")));
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].rule, "t⁻¹·a·t ↦ φ(a)");
    }

    #[test]
    fn non_associated_element_is_irreducible() {
        let e = flagship();
        let u = HnnWord {
            head: w(""),
            tail: vec![(-1, w("x2")), (1, w(""))],
        };
        let (r, trace) = e.britton_reduce(&u);
        assert_eq!(r, u);
        assert!(trace.is_empty());
        assert_eq!(e.t_length(&r).unwrap(), 2);
    }

    #[test]
    fn t_length_rejects_unreduced() {
        let e = flagship();
        let u = HnnWord {
            head: w(""),
            tail: vec![(-1, w("x1")), (1, w(""))],
        };
        assert_eq!(e.t_length(&u), Err(ExtensionError::NotReduced));
        assert_eq!(e.t_length(&HnnWord::base(w("x1"))).unwrap(), 0);
        let t = HnnWord { head: w(""), tail: vec![(1, w(""))] };
        assert_eq!(e.t_length(&t).unwrap(), 1);
    }

    #[test]
    fn triviality_examples() {
        let e = flagship();
        // (t⁻¹ x t) y⁻¹ = ε
        let u = HnnWord {
            head: w(""),
            tail: vec![(-1, w("x1")), (1, w("X2"))],
        };
        assert!(e.is_trivial(&u));
        let t = HnnWord { head: w(""), tail: vec![(1, w(""))] };
        assert!(!e.is_trivial(&t));
        // t⁻¹ x2 t x2⁻¹ is Britton-irreducible, hence nontrivial
        let v = HnnWord {
            head: w(""),
            tail: vec![(-1, w("x2")), (1, w("X2"))],
        };
        assert!(!e.is_trivial(&v));
    }

    #[test]
    fn conjugate_wrapper_shapes() {
        let e = flagship();
        let h = w("x1 x2");
        let u = HnnWord::conjugate_by_stable_power(h.clone(), 0, e.base.identity());
        assert_eq!(u, HnnWord::base(h.clone()));
        let u = HnnWord::conjugate_by_stable_power(h.clone(), 2, e.base.identity());
        assert_eq!(u.t_syllable_count(), 4);
        assert_eq!(u.tail[0].0, -1);
        assert_eq!(u.tail[1].1, h);
        assert_eq!(u.tail[3].0, 1);
        // t^{-2} h t^{2} with h generic stays irreducible at t-length 4
        let (r, _) = e.britton_reduce(&u);
        assert_eq!(r.t_syllable_count(), 4);
    }

    #[test]
    fn pinch_insertion_round_trips() {
        let e = flagship();
        let mut rng = rng::stream(5, "round-trip");
        for _ in 0..50 {
            let g = Elem::Word(crate::fox_magnus::random_word(&mut rng, 2, 4));
            let original = HnnWord::base(g.clone());
            // insert a pinch t⁻¹ (x1^k) t and its unwind
            let k = rng.gen_range(-3i64..=3);
            let pinched = HnnWord {
                head: g,
                tail: vec![
                    (-1, Elem::Word(word("x1").power(k))),
                    (1, Elem::Word(word("x2").power(-k))),
                ],
            };
            let (r, _) = e.britton_reduce(&pinched);
            assert_eq!(r, e.britton_reduce(&original).0);
        }
    }

    #[test]
    fn intersection_law_hypothesis_abort() {
        let e = flagship();
        // H = ⟨x⟩ fails the hypothesis at k = 1: x ∈ H but y ∉ H.
        let automaton = SubgroupAutomaton::fold(&[word("x1")]);
        let h_member = move |g: &Elem| automaton.contains(g.as_word());
        let mut sampler = |_: &mut ChaCha8Rng| w("x1");
        let err = e
            .check_intersection_law(
                &w("x1"),
                &w("x2"),
                &h_member,
                &mut sampler,
                10,
                2,
                2,
                3,
                42,
            )
            .unwrap_err();
        assert!(matches!(err, ExtensionError::HypothesisFailed { exponent: -1 | 1 }));
    }
}
