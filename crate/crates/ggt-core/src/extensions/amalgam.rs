//! Free products with amalgamation: transversal normal forms, free
//! products as the trivial-amalgam special case, order evidence and
//! quotient triviality in free products.

use std::collections::HashMap;
use std::sync::Arc;

use crate::group_kernel::{Elem, GroupOracle, PermutationGroup};

use super::ExtensionError;

/// Which free factor a syllable lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Factor {
    One,
    Two,
}

impl Factor {
    pub fn index(self) -> usize {
        match self {
            Factor::One => 0,
            Factor::Two => 1,
        }
    }

    pub fn other(self) -> Factor {
        match self {
            Factor::One => Factor::Two,
            Factor::Two => Factor::One,
        }
    }
}

/// Input syllable, tagged with its declared carrier.
#[derive(Clone, Debug)]
pub enum Syllable {
    Factor(Factor, Elem),
    Amalgam(Elem),
}

/// Normal form `ψ(prefix) · r₁ ⋯ r_k`: an amalgam prefix followed by
/// alternating non-identity coset representatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmalgamWord {
    pub prefix: Elem,
    pub syllables: Vec<(Factor, Elem)>,
}

pub type EmbedFn = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;
pub type PreimageFn = Arc<dyn Fn(&Elem) -> Option<Elem> + Send + Sync>;
pub type TransversalFn = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;

/// A free product with amalgamation over plug-in factor oracles.
///
/// `preimage[i]` decides membership in the embedded amalgam image and
/// produces the amalgam preimage; `transversal[i]` picks the canonical
/// representative of the left coset `ψᵢ(A)·u` (any deterministic
/// transversal works, and determinism is what uniqueness of the normal
/// form rests on).
pub struct AmalgamatedProduct {
    pub amalgam: Arc<dyn GroupOracle>,
    pub factors: [Arc<dyn GroupOracle>; 2],
    pub embed: [EmbedFn; 2],
    pub preimage: [PreimageFn; 2],
    pub transversal: [TransversalFn; 2],
    pub description: String,
}

impl AmalgamatedProduct {
    /// Free product: amalgamation over the trivial group.
    pub fn free_product(
        g1: Arc<dyn GroupOracle>,
        g2: Arc<dyn GroupOracle>,
    ) -> AmalgamatedProduct {
        let trivial: Arc<dyn GroupOracle> = Arc::new(PermutationGroup::trivial());
        let description = format!("({}) * ({})", g1.describe(), g2.describe());
        let make_preimage = |factor: Arc<dyn GroupOracle>, amalgam: Arc<dyn GroupOracle>| {
            let f = factor;
            let a = amalgam;
            let pre: PreimageFn = Arc::new(move |u| {
                if f.is_identity(u) {
                    Some(a.identity())
                } else {
                    None
                }
            });
            pre
        };
        let embed1 = {
            let g = g1.clone();
            let e: EmbedFn = Arc::new(move |_| g.identity());
            e
        };
        let embed2 = {
            let g = g2.clone();
            let e: EmbedFn = Arc::new(move |_| g.identity());
            e
        };
        AmalgamatedProduct {
            amalgam: trivial.clone(),
            factors: [g1.clone(), g2.clone()],
            embed: [embed1, embed2],
            preimage: [
                make_preimage(g1, trivial.clone()),
                make_preimage(g2, trivial),
            ],
            transversal: [Arc::new(|u| u.clone()), Arc::new(|u| u.clone())],
            description,
        }
    }

    /// Amalgamated product of two finite (enumerable) groups along
    /// embeddings of a finite amalgam, with
    /// first-in-enumeration-order coset transversals.
    pub fn finite(
        b1: Arc<dyn GroupOracle>,
        b2: Arc<dyn GroupOracle>,
        amalgam: Arc<dyn GroupOracle>,
        psi1: HashMap<Elem, Elem>,
        psi2: HashMap<Elem, Elem>,
    ) -> Result<AmalgamatedProduct, ExtensionError> {
        let description = format!(
            "({}) *_({}) ({})",
            b1.describe(),
            amalgam.describe(),
            b2.describe()
        );
        let factors: [Arc<dyn GroupOracle>; 2] = [b1.clone(), b2.clone()];
        let psi = [psi1, psi2];
        let mut embed: Vec<EmbedFn> = Vec::new();
        let mut preimage: Vec<PreimageFn> = Vec::new();
        let mut transversal: Vec<TransversalFn> = Vec::new();
        let amalgam_elems = amalgam
            .enumerate(crate::group_kernel::ENUMERATION_BOUND)
            .map_err(ExtensionError::Kernel)?;
        for (i, factor) in factors.iter().enumerate() {
            let map = psi[i].clone();
            // validate: total injective homomorphism on the amalgam
            let mut seen = std::collections::BTreeSet::new();
            for a in &amalgam_elems {
                let fa = map.get(a).ok_or_else(|| {
                    ExtensionError::BadEmbedding(format!(
                        "ψ{} undefined at {}",
                        i + 1,
                        amalgam.print_elem(a)
                    ))
                })?;
                if !factor.validate(fa) || !seen.insert(fa.clone()) {
                    return Err(ExtensionError::BadEmbedding(format!(
                        "ψ{} not injective into the factor at {}",
                        i + 1,
                        amalgam.print_elem(a)
                    )));
                }
                for b in &amalgam_elems {
                    let fb = &map[b];
                    let fab = &map[&amalgam.multiply(a, b)];
                    if factor.multiply(fa, fb) != *fab {
                        return Err(ExtensionError::BadEmbedding(format!(
                            "ψ{} is not a homomorphism at ({}, {})",
                            i + 1,
                            amalgam.print_elem(a),
                            amalgam.print_elem(b)
                        )));
                    }
                }
            }
            let image: std::collections::BTreeSet<Elem> = map.values().cloned().collect();
            let inverse: HashMap<Elem, Elem> =
                map.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
            let factor_elems = factor
                .enumerate(crate::group_kernel::ENUMERATION_BOUND)
                .map_err(ExtensionError::Kernel)?;
            // left-coset transversal: first enumerated v with u·v⁻¹ ∈ ψ(A)
            let mut reps: HashMap<Elem, Elem> = HashMap::new();
            for u in &factor_elems {
                let rep = factor_elems
                    .iter()
                    .find(|v| {
                        image.contains(&factor.multiply(u, &factor.invert(v)))
                    })
                    .expect("u itself closes the search")
                    .clone();
                reps.insert(u.clone(), rep);
            }
            let emb: EmbedFn = {
                let map = map.clone();
                Arc::new(move |a| map[a].clone())
            };
            let pre: PreimageFn = Arc::new(move |u| inverse.get(u).cloned());
            let tr: TransversalFn = Arc::new(move |u| reps[u].clone());
            embed.push(emb);
            preimage.push(pre);
            transversal.push(tr);
        }
        let tr2 = transversal.pop().unwrap();
        let tr1 = transversal.pop().unwrap();
        let pre2 = preimage.pop().unwrap();
        let pre1 = preimage.pop().unwrap();
        let emb2 = embed.pop().unwrap();
        let emb1 = embed.pop().unwrap();
        Ok(AmalgamatedProduct {
            amalgam,
            factors,
            embed: [emb1, emb2],
            preimage: [pre1, pre2],
            transversal: [tr1, tr2],
            description,
        })
    }

    pub fn identity_form(&self) -> AmalgamWord {
        AmalgamWord { prefix: self.amalgam.identity(), syllables: Vec::new() }
    }

    /// Unique normal form of a syllable sequence. Two inputs spelling
    /// the same group element produce identical output.
    pub fn normal_form(&self, input: &[Syllable]) -> Result<AmalgamWord, ExtensionError> {
        // validate syllables against their declared carriers
        for s in input {
            match s {
                Syllable::Factor(f, e) => {
                    if !self.factors[f.index()].validate(e) {
                        return Err(ExtensionError::SyllableOutsideFactor(
                            self.factors[f.index()].print_elem(e),
                        ));
                    }
                }
                Syllable::Amalgam(a) => {
                    if !self.amalgam.validate(a) {
                        return Err(ExtensionError::SyllableOutsideFactor(
                            self.amalgam.print_elem(a),
                        ));
                    }
                }
            }
        }
        let mut form = self.identity_form();
        for s in input.iter().rev() {
            form = match s {
                Syllable::Amalgam(a) => AmalgamWord {
                    prefix: self.amalgam.multiply(a, &form.prefix),
                    syllables: form.syllables,
                },
                Syllable::Factor(f, e) => self.prepend(*f, e, form)?,
            };
        }
        Ok(form)
    }

    fn prepend(
        &self,
        factor: Factor,
        e: &Elem,
        form: AmalgamWord,
    ) -> Result<AmalgamWord, ExtensionError> {
        let i = factor.index();
        let oracle = &self.factors[i];
        let mut syllables = form.syllables;
        // u = e · ψᵢ(prefix) [· r₁ when r₁ lives in the same factor]
        let mut u = oracle.multiply(e, &(self.embed[i])(&form.prefix));
        if let Some((f0, _)) = syllables.first() {
            if *f0 == factor {
                let (_, r) = syllables.remove(0);
                u = oracle.multiply(&u, &r);
            }
        }
        if let Some(a) = (self.preimage[i])(&u) {
            return Ok(AmalgamWord { prefix: a, syllables });
        }
        let rep = (self.transversal[i])(&u);
        let a = (self.preimage[i])(&oracle.multiply(&u, &oracle.invert(&rep)))
            .ok_or_else(|| {
                ExtensionError::BadTransversal(oracle.print_elem(&rep))
            })?;
        syllables.insert(0, (factor, rep));
        Ok(AmalgamWord { prefix: a, syllables })
    }

    /// Syllable length of the normal form.
    pub fn syllable_length(&self, input: &[Syllable]) -> Result<usize, ExtensionError> {
        Ok(self.normal_form(input)?.syllables.len())
    }

    pub fn is_identity_form(&self, w: &AmalgamWord) -> bool {
        w.syllables.is_empty() && self.amalgam.is_identity(&w.prefix)
    }

    /// Multiplies two normal forms (by re-normalizing the concatenation).
    pub fn multiply_forms(
        &self,
        u: &AmalgamWord,
        v: &AmalgamWord,
    ) -> Result<AmalgamWord, ExtensionError> {
        let mut syllables: Vec<Syllable> = Vec::new();
        syllables.push(Syllable::Amalgam(u.prefix.clone()));
        for (f, e) in &u.syllables {
            syllables.push(Syllable::Factor(*f, e.clone()));
        }
        syllables.push(Syllable::Amalgam(v.prefix.clone()));
        for (f, e) in &v.syllables {
            syllables.push(Syllable::Factor(*f, e.clone()));
        }
        self.normal_form(&syllables)
    }
}

/// Order evidence for an element of a free product (trivial amalgam):
/// cyclically reduced syllable length at least 2 forces infinite order;
/// a single-factor element is powered out up to a bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderVerdict {
    Infinite,
    Finite(u64),
    Unknown,
}

impl std::fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderVerdict::Infinite => write!(f, "infinite"),
            OrderVerdict::Finite(k) => write!(f, "finite({k})"),
            OrderVerdict::Unknown => write!(f, "unknown"),
        }
    }
}

const ORDER_SEARCH_BOUND: u64 = 1024;

pub fn infinite_order_evidence(
    product: &AmalgamatedProduct,
    input: &[Syllable],
) -> Result<OrderVerdict, ExtensionError> {
    let form = product.normal_form(input)?;
    let mut syllables = form.syllables;
    // cyclic reduction: merge equal outer factors by conjugation
    while syllables.len() >= 2 {
        let first = syllables.first().unwrap().0;
        let last = syllables.last().unwrap().0;
        if first != last {
            break;
        }
        let (f, tail_elem) = syllables.pop().unwrap();
        let oracle = &product.factors[f.index()];
        let merged = oracle.multiply(&tail_elem, &syllables[0].1);
        if oracle.is_identity(&merged) || (product.preimage[f.index()])(&merged).is_some() {
            syllables.remove(0);
            // an amalgam remainder is order-irrelevant only because the
            // amalgam here is trivial; free products only
        } else {
            syllables[0].1 = merged;
        }
    }
    match syllables.len() {
        0 => Ok(OrderVerdict::Finite(1)),
        1 => {
            let (f, e) = &syllables[0];
            let oracle = &product.factors[f.index()];
            let mut acc = e.clone();
            for k in 1..=ORDER_SEARCH_BOUND {
                if oracle.is_identity(&acc) {
                    return Ok(OrderVerdict::Finite(k));
                }
                acc = oracle.multiply(&acc, e);
            }
            Ok(OrderVerdict::Unknown)
        }
        _ => Ok(OrderVerdict::Infinite),
    }
}

/// Triviality of a syllable word in a quotient free product: syllables
/// that are trivial under their factor predicate are deleted and
/// same-factor neighbors merged until the word alternates; the element
/// is trivial iff everything cancels.
pub fn quotient_triviality_in_free_product(
    oracles: [&dyn GroupOracle; 2],
    factor_trivial: [&dyn Fn(&Elem) -> bool; 2],
    input: &[(Factor, Elem)],
) -> bool {
    let mut syllables: Vec<(Factor, Elem)> = input.to_vec();
    loop {
        let before = syllables.len();
        syllables.retain(|(f, e)| !factor_trivial[f.index()](e));
        let mut merged: Vec<(Factor, Elem)> = Vec::new();
        for (f, e) in syllables.drain(..) {
            match merged.last_mut() {
                Some((lf, le)) if *lf == f => {
                    *le = oracles[f.index()].multiply(le, &e);
                }
                _ => merged.push((f, e)),
            }
        }
        syllables = merged;
        if syllables.len() == before {
            break;
        }
    }
    syllables.is_empty()
}
