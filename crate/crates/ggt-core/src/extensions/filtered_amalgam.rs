//! Amalgamated products of finite groups filtered by compatible chains
//! of normal subgroups, with level-wise quotient products and the
//! projection/kernel machinery they induce.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::group_kernel::{
    quotient, Elem, KernelError, Perm, PermutationGroup,
};

use super::amalgam::{AmalgamWord, AmalgamatedProduct, Factor, Syllable};
use super::ExtensionError;

/// `B₁ ∗_A B₂` where each factor carries a descending chain of normal
/// subgroups and the amalgam carries the induced chain. Index `n` of a
/// chain is the level-`n` member; levels past the end clamp to the last
/// entry, and level 0 must be the whole group.
pub struct FilteredAmalgam {
    pub factors: [Arc<PermutationGroup>; 2],
    pub amalgam: Arc<PermutationGroup>,
    pub psi: [HashMap<Perm, Perm>; 2],
    pub chains: [Vec<BTreeSet<Perm>>; 2],
    pub amalgam_chain: Vec<BTreeSet<Perm>>,
}

fn check_chain(
    group: &PermutationGroup,
    chain: &[BTreeSet<Perm>],
    label: &str,
) -> Result<(), ExtensionError> {
    let whole: BTreeSet<Perm> = group.elements().into_iter().collect();
    if chain.first() != Some(&whole) {
        return Err(ExtensionError::BadChain(format!(
            "{label}: level 0 must be the whole group"
        )));
    }
    for (n, level) in chain.iter().enumerate() {
        if !level.contains(&Perm::identity(group.degree())) {
            return Err(ExtensionError::BadChain(format!(
                "{label}: level {n} misses the identity"
            )));
        }
        for a in level {
            for b in level {
                if !level.contains(&a.then(b)) {
                    return Err(ExtensionError::BadChain(format!(
                        "{label}: level {n} is not closed at {a}·{b}"
                    )));
                }
            }
            for g in &group.elements() {
                if !level.contains(&g.inverse().then(a).then(g)) {
                    return Err(ExtensionError::BadChain(format!(
                        "{label}: level {n} is not normal, witness {a}^{g}"
                    )));
                }
            }
        }
        if n + 1 < chain.len() && !chain[n + 1].is_subset(level) {
            return Err(ExtensionError::BadChain(format!(
                "{label}: level {} is not contained in level {n}",
                n + 1
            )));
        }
    }
    Ok(())
}

impl FilteredAmalgam {
    pub fn new(
        factors: [Arc<PermutationGroup>; 2],
        amalgam: Arc<PermutationGroup>,
        psi: [HashMap<Perm, Perm>; 2],
        chains: [Vec<BTreeSet<Perm>>; 2],
        amalgam_chain: Vec<BTreeSet<Perm>>,
    ) -> Result<FilteredAmalgam, ExtensionError> {
        for (i, chain) in chains.iter().enumerate() {
            check_chain(&factors[i], chain, &format!("factor {}", i + 1))?;
        }
        check_chain(&amalgam, &amalgam_chain, "amalgam")?;
        let fa = FilteredAmalgam { factors, amalgam, psi, chains, amalgam_chain };
        // embedding validity is delegated to the amalgamated-product
        // constructor over the full (level-clamped) groups
        let _ = fa.quotient_product(fa.depth())?;
        // compatibility: a is in the level-n amalgam member iff its
        // image is in the level-n factor member
        for n in 0..=fa.depth() {
            let pa = fa.amalgam_level(n);
            for a in &fa.amalgam.elements() {
                for i in 0..2 {
                    let image = fa.psi[i].get(a).ok_or_else(|| {
                        ExtensionError::BadEmbedding(format!("ψ{} undefined at {a}", i + 1))
                    })?;
                    if pa.contains(a) != fa.factor_level(i, n).contains(image) {
                        return Err(ExtensionError::BadChain(format!(
                            "embedding is incompatible with the chains at level {n}, witness {a}"
                        )));
                    }
                }
            }
        }
        Ok(fa)
    }

    /// Deepest explicitly given level across all three chains.
    pub fn depth(&self) -> u32 {
        self.chains
            .iter()
            .map(|c| c.len())
            .chain([self.amalgam_chain.len()])
            .max()
            .unwrap_or(1) as u32
            - 1
    }

    pub fn factor_level(&self, i: usize, n: u32) -> &BTreeSet<Perm> {
        clamp(&self.chains[i], n)
    }

    pub fn amalgam_level(&self, n: u32) -> &BTreeSet<Perm> {
        clamp(&self.amalgam_chain, n)
    }

    /// The quotient product `G_n* = B₁/PₙB₁ ∗_{A/PₙA} B₂/PₙB₂`.
    pub fn quotient_product(&self, n: u32) -> Result<AmalgamatedProduct, ExtensionError> {
        let q1 = quotient(&self.factors[0], self.factor_level(0, n)).map_err(kernel)?;
        let q2 = quotient(&self.factors[1], self.factor_level(1, n)).map_err(kernel)?;
        let qa = quotient(&self.amalgam, self.amalgam_level(n)).map_err(kernel)?;
        let induce = |q: &crate::group_kernel::FiniteQuotient,
                      map: &HashMap<Perm, Perm>|
         -> Result<HashMap<Elem, Elem>, ExtensionError> {
            qa.representatives()
                .iter()
                .map(|rep| {
                    let image = map.get(rep).ok_or_else(|| {
                        ExtensionError::BadEmbedding(format!("ψ undefined at {rep}"))
                    })?;
                    let projected = q.project(image).map_err(kernel)?;
                    Ok((Elem::Perm(rep.clone()), Elem::Perm(projected)))
                })
                .collect()
        };
        let psi1 = induce(&q1, &self.psi[0])?;
        let psi2 = induce(&q2, &self.psi[1])?;
        AmalgamatedProduct::finite(Arc::new(q1), Arc::new(q2), Arc::new(qa), psi1, psi2)
    }

    /// Image of a syllable word of `C = B₁ ∗_A B₂` under the projection
    /// `π : C → G_n*`, in normal form.
    pub fn pi_projection(
        &self,
        n: u32,
        input: &[(Factor, Perm)],
    ) -> Result<AmalgamWord, ExtensionError> {
        let product = self.quotient_product(n)?;
        let mut syllables = Vec::new();
        for (f, g) in input {
            if !self.factors[f.index()].contains(g) {
                return Err(ExtensionError::SyllableOutsideFactor(g.to_string()));
            }
            syllables.push(Syllable::Factor(*f, Elem::Perm(g.clone())));
        }
        product.normal_form(&syllables)
    }

    /// Membership in `PₙC = ker π`, the normal closure of the level-`n`
    /// chain members inside the amalgamated product.
    pub fn pn_c_member(&self, n: u32, input: &[(Factor, Perm)]) -> Result<bool, ExtensionError> {
        let product = self.quotient_product(n)?;
        let form = self.pi_projection(n, input)?;
        Ok(product.is_identity_form(&form))
    }

    /// `S₃ ∗_{C₃} S₃` with the chain `S₃ ⊵ A₃ ⊵ 1` on both factors and
    /// the induced chain `C₃ ⊵ C₃ ⊵ 1` on the amalgam.
    pub fn s3_over_c3() -> FilteredAmalgam {
        let s3 = || {
            Arc::new(
                crate::group_kernel::perm_group(vec![
                    Perm::parse("(1 2)", 3).unwrap(),
                    Perm::parse("(1 2 3)", 3).unwrap(),
                ])
                .unwrap(),
            )
        };
        let c3 = Arc::new(
            crate::group_kernel::perm_group(vec![Perm::parse("(1 2 3)", 3).unwrap()]).unwrap(),
        );
        let inclusion: HashMap<Perm, Perm> =
            c3.elements().into_iter().map(|p| (p.clone(), p)).collect();
        let b1 = s3();
        let a3: BTreeSet<Perm> = crate::group_kernel::derived_subgroup_finite(&b1)
            .into_iter()
            .collect();
        let whole_s3: BTreeSet<Perm> = b1.elements().into_iter().collect();
        let trivial: BTreeSet<Perm> = [Perm::identity(3)].into_iter().collect();
        let whole_c3: BTreeSet<Perm> = c3.elements().into_iter().collect();
        let chain = vec![whole_s3, a3, trivial.clone()];
        FilteredAmalgam::new(
            [b1, s3()],
            c3,
            [inclusion.clone(), inclusion],
            [chain.clone(), chain],
            vec![whole_c3.clone(), whole_c3, trivial],
        )
        .expect("flagship instance is well-formed")
    }
}

fn clamp(chain: &[BTreeSet<Perm>], n: u32) -> &BTreeSet<Perm> {
    let i = (n as usize).min(chain.len() - 1);
    &chain[i]
}

fn kernel(e: KernelError) -> ExtensionError {
    ExtensionError::Kernel(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transposition() -> Perm {
        Perm::parse("(1 2)", 3).unwrap()
    }

    fn three_cycle() -> Perm {
        Perm::parse("(1 2 3)", 3).unwrap()
    }

    #[test]
    fn flagship_quotient_orders() {
        let fa = FilteredAmalgam::s3_over_c3();
        assert_eq!(fa.depth(), 2);
        // level 1: C2 * C2 over the trivial amalgam
        let g1 = fa.quotient_product(1).unwrap();
        let one = g1.factors[0].enumerate(100).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(g1.amalgam.enumerate(100).unwrap().len(), 1);
        // level 0: everything collapses
        let g0 = fa.quotient_product(0).unwrap();
        assert_eq!(g0.factors[0].enumerate(100).unwrap().len(), 1);
        // level 2: the full factors and amalgam survive
        let g2 = fa.quotient_product(2).unwrap();
        assert_eq!(g2.factors[1].enumerate(100).unwrap().len(), 6);
        assert_eq!(g2.amalgam.enumerate(100).unwrap().len(), 3);
    }

    #[test]
    fn projections_and_kernel_membership() {
        let fa = FilteredAmalgam::s3_over_c3();
        let x = transposition();
        let r = three_cycle();
        // a three-cycle dies at level 1 but not at level 2
        assert!(fa.pn_c_member(1, &[(Factor::One, r.clone())]).unwrap());
        assert!(!fa.pn_c_member(2, &[(Factor::One, r.clone())]).unwrap());
        // a transposition survives level 1
        assert!(!fa.pn_c_member(1, &[(Factor::One, x.clone())]).unwrap());
        // x₁·x₂ has syllable length 2 at level 1 (infinite order downstairs)
        let form = fa
            .pi_projection(1, &[(Factor::One, x.clone()), (Factor::Two, x.clone())])
            .unwrap();
        assert_eq!(form.syllables.len(), 2);
        // x₁·x₂⁻¹ with equal transpositions also survives: the factors
        // are distinct copies, so nothing cancels across them
        assert!(!fa
            .pn_c_member(1, &[(Factor::One, x.clone()), (Factor::Two, x.inverse())])
            .unwrap());
        // everything dies at level 0
        assert!(fa.pn_c_member(0, &[(Factor::One, x), (Factor::Two, r)]).unwrap());
    }

    #[test]
    fn amalgam_identification_in_normal_form() {
        let fa = FilteredAmalgam::s3_over_c3();
        let r = three_cycle();
        // r placed in factor 1 and r⁻¹ in factor 2 cancel through the
        // amalgam at full depth
        assert!(fa
            .pn_c_member(2, &[(Factor::One, r.clone()), (Factor::Two, r.inverse())])
            .unwrap());
    }

    #[test]
    fn incompatible_chain_is_rejected() {
        let fa = FilteredAmalgam::s3_over_c3();
        // drop the amalgam chain to trivial at level 1 while the
        // factor chains still hold A₃: compatibility must fail
        let trivial: BTreeSet<Perm> = [Perm::identity(3)].into_iter().collect();
        let whole_c3: BTreeSet<Perm> =
            fa.amalgam.elements().into_iter().collect();
        let bad = FilteredAmalgam::new(
            fa.factors.clone(),
            fa.amalgam.clone(),
            fa.psi.clone(),
            fa.chains.clone(),
            vec![whole_c3, trivial.clone(), trivial],
        );
        assert!(matches!(bad, Err(ExtensionError::BadChain(_))));
    }

    #[test]
    fn chain_must_start_at_the_whole_group() {
        let fa = FilteredAmalgam::s3_over_c3();
        let bad = FilteredAmalgam::new(
            fa.factors.clone(),
            fa.amalgam.clone(),
            fa.psi.clone(),
            [fa.chains[0][1..].to_vec(), fa.chains[1].clone()],
            fa.amalgam_chain.clone(),
        );
        assert!(matches!(bad, Err(ExtensionError::BadChain(_))));
    }
}
