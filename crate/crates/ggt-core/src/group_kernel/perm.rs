//! Finite permutation groups: closure enumeration, normal closures,
//! derived subgroups and quotients by canonical coset representatives.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use super::KernelError;

/// A permutation of `{1..degree}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, KernelError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(KernelError::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation like `(1 2 3)(4 5)`; `()` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Perm, KernelError> {
        let text = text.trim();
        let mut images: Vec<usize> = (0..degree).collect();
        let bad = || KernelError::BadCycleNotation(text.to_string());
        if !text.starts_with('(') || !text.ends_with(')') {
            return Err(bad());
        }
        for cycle in text[1..text.len() - 1].split(")(") {
            let points: Vec<usize> = cycle
                .split_whitespace()
                .map(|p| p.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if points.iter().any(|&p| p == 0 || p > degree) {
                return Err(bad());
            }
            for i in 0..points.len() {
                let from = points[i] - 1;
                if images[from] != from {
                    return Err(bad()); // point repeated across cycles
                }
                images[from] = points[(i + 1) % points.len()] - 1;
            }
        }
        Perm::from_images(images).map_err(|_| bad())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// Composition applying `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            loop {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.images[p];
                if p == start {
                    break;
                }
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Default cap on materialized group orders.
pub const ENUMERATION_BOUND: usize = 10_000;

/// A finite permutation group given by generators, with a lazily
/// computed element closure.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: OnceLock<Vec<Perm>>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> PermutationGroup {
        PermutationGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            elements: OnceLock::new(),
        }
    }
}

/// Group generated by the given permutations; they must share a degree.
pub fn perm_group(generators: Vec<Perm>) -> Result<PermutationGroup, KernelError> {
    let degree = generators.first().map(|p| p.degree()).unwrap_or(1);
    for g in &generators {
        if g.degree() != degree {
            return Err(KernelError::DegreeMismatch { expected: degree, got: g.degree() });
        }
    }
    Ok(PermutationGroup { degree, generators, elements: OnceLock::new() })
}

impl PermutationGroup {
    pub fn trivial() -> PermutationGroup {
        perm_group(Vec::new()).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Closure in breadth-first order over the fixed generator sequence
    /// (generators then their inverses). The order is deterministic and
    /// doubles as the "shortlex in the Cayley graph" element order.
    pub fn enumerate_elements(&self, bound: usize) -> Result<Vec<Perm>, KernelError> {
        if let Some(elems) = self.elements.get() {
            if elems.len() > bound {
                return Err(KernelError::BoundExceeded { order: elems.len(), bound });
            }
            return Ok(elems.clone());
        }
        let mut steps: Vec<Perm> = self.generators.clone();
        steps.extend(self.generators.iter().map(|g| g.inverse()));
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        let mut order: Vec<Perm> = Vec::new();
        let mut queue = VecDeque::new();
        let id = Perm::identity(self.degree);
        seen.insert(id.clone());
        order.push(id.clone());
        queue.push_back(id);
        while let Some(e) = queue.pop_front() {
            for s in &steps {
                let next = e.then(s);
                if seen.insert(next.clone()) {
                    if order.len() >= bound {
                        return Err(KernelError::BoundExceeded {
                            order: order.len() + 1,
                            bound,
                        });
                    }
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let _ = self.elements.set(order.clone());
        Ok(order)
    }

    pub fn elements(&self) -> Vec<Perm> {
        self.enumerate_elements(ENUMERATION_BOUND)
            .expect("group exceeds the default enumeration bound")
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.elements().contains(p)
    }
}

fn subgroup_closure(degree: usize, seed: &BTreeSet<Perm>) -> BTreeSet<Perm> {
    let mut set: BTreeSet<Perm> = BTreeSet::new();
    set.insert(Perm::identity(degree));
    let mut queue: VecDeque<Perm> = seed.iter().cloned().collect();
    for s in seed {
        set.insert(s.clone());
    }
    while let Some(e) = queue.pop_front() {
        let mut products: Vec<Perm> = Vec::new();
        products.push(e.inverse());
        for f in &set {
            products.push(e.then(f));
            products.push(f.then(&e));
        }
        for p in products {
            if !set.contains(&p) {
                set.insert(p.clone());
                queue.push_back(p);
            }
        }
    }
    set
}

/// Smallest normal subgroup of `group` containing `seed`.
pub fn normal_closure_finite(
    group: &PermutationGroup,
    seed: &[Perm],
) -> Result<BTreeSet<Perm>, KernelError> {
    let elements = group.elements();
    for s in seed {
        if !elements.contains(s) {
            return Err(KernelError::NotInGroup(s.to_string()));
        }
    }
    let mut conjugates: BTreeSet<Perm> = BTreeSet::new();
    for s in seed {
        for g in &elements {
            conjugates.insert(g.inverse().then(s).then(g));
        }
    }
    Ok(subgroup_closure(group.degree(), &conjugates))
}

/// Derived subgroup: normal closure of all generator commutators.
pub fn derived_subgroup_finite(group: &PermutationGroup) -> BTreeSet<Perm> {
    let mut commutators: Vec<Perm> = Vec::new();
    for a in group.generators() {
        for b in group.generators() {
            commutators.push(a.inverse().then(&b.inverse()).then(a).then(b));
        }
    }
    normal_closure_finite(group, &commutators).expect("generators lie in the group")
}

/// Quotient of a permutation group by a normal subgroup, with elements
/// identified by canonical coset representatives (first element of each
/// coset in the parent's breadth-first Cayley order).
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    parent: PermutationGroup,
    kernel: BTreeSet<Perm>,
    reps: HashMap<Perm, Perm>,
    rep_order: Vec<Perm>,
}

pub fn quotient(
    group: &PermutationGroup,
    kernel: &BTreeSet<Perm>,
) -> Result<FiniteQuotient, KernelError> {
    let elements = group.elements();
    for n in kernel {
        if !elements.contains(n) {
            return Err(KernelError::NotInGroup(n.to_string()));
        }
        for g in group.generators() {
            if !kernel.contains(&g.inverse().then(n).then(g)) {
                return Err(KernelError::NotNormal(n.to_string()));
            }
        }
    }
    if !kernel.contains(&Perm::identity(group.degree())) {
        return Err(KernelError::NotNormal("kernel misses the identity".to_string()));
    }
    let mut reps: HashMap<Perm, Perm> = HashMap::new();
    let mut rep_order: Vec<Perm> = Vec::new();
    for e in &elements {
        // right coset (kernel)·e; the first BFS element wins as rep
        if let Some(r) = rep_order.iter().find(|r| kernel.contains(&e.then(&r.inverse()))) {
            reps.insert(e.clone(), r.clone());
        } else {
            rep_order.push(e.clone());
            reps.insert(e.clone(), e.clone());
        }
    }
    Ok(FiniteQuotient {
        parent: group.clone(),
        kernel: kernel.clone(),
        reps,
        rep_order,
    })
}

impl FiniteQuotient {
    pub fn parent(&self) -> &PermutationGroup {
        &self.parent
    }

    pub fn kernel(&self) -> &BTreeSet<Perm> {
        &self.kernel
    }

    /// Canonical representative of the coset of `g`.
    pub fn project(&self, g: &Perm) -> Result<Perm, KernelError> {
        self.reps
            .get(g)
            .cloned()
            .ok_or_else(|| KernelError::NotInGroup(g.to_string()))
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.rep_order
    }

    pub fn order(&self) -> usize {
        self.rep_order.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermutationGroup {
        perm_group(vec![
            Perm::parse("(1 2)", 3).unwrap(),
            Perm::parse("(1 2 3)", 3).unwrap(),
        ])
        .unwrap()
    }

    fn c3() -> PermutationGroup {
        perm_group(vec![Perm::parse("(1 2 3)", 3).unwrap()]).unwrap()
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Perm::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert_eq!(Perm::parse("()", 3).unwrap(), Perm::identity(3));
        assert!(Perm::parse("(0 1)", 3).is_err());
        assert!(Perm::parse("(1 2)(2 3)", 3).is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(s3().order(), 6);
        assert_eq!(c3().order(), 3);
        assert_eq!(PermutationGroup::trivial().order(), 1);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = perm_group(vec![
            Perm::parse("(1 2)", 2).unwrap(),
            Perm::parse("(1 2 3)", 3).unwrap(),
        ]);
        assert!(err.is_err());
    }

    #[test]
    fn enumeration_bound() {
        assert!(c3().enumerate_elements(2).is_err());
        assert_eq!(s3().enumerate_elements(10).unwrap().len(), 6);
        assert_eq!(
            PermutationGroup::trivial().enumerate_elements(1).unwrap(),
            vec![Perm::identity(1)]
        );
    }

    #[test]
    fn normal_closures() {
        let a3 = normal_closure_finite(&s3(), &[Perm::parse("(1 2 3)", 3).unwrap()]).unwrap();
        assert_eq!(a3.len(), 3);
        let all = normal_closure_finite(&s3(), &[Perm::parse("(1 2)", 3).unwrap()]).unwrap();
        assert_eq!(all.len(), 6);
        let triv = normal_closure_finite(&s3(), &[]).unwrap();
        assert_eq!(triv.len(), 1);
    }

    #[test]
    fn derived_subgroups() {
        let a3 = derived_subgroup_finite(&s3());
        assert_eq!(a3.len(), 3);
        assert_eq!(derived_subgroup_finite(&c3()).len(), 1);
        let a3_group = perm_group(vec![Perm::parse("(1 2 3)", 3).unwrap()]).unwrap();
        assert_eq!(derived_subgroup_finite(&a3_group).len(), 1);
    }

    #[test]
    fn quotients() {
        let a3 = derived_subgroup_finite(&s3());
        let q = quotient(&s3(), &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.order() * a3.len(), s3().order());
        let id_only: BTreeSet<Perm> = [Perm::identity(3)].into_iter().collect();
        assert_eq!(quotient(&s3(), &id_only).unwrap().order(), 6);
        let whole: BTreeSet<Perm> = s3().elements().into_iter().collect();
        assert_eq!(quotient(&s3(), &whole).unwrap().order(), 1);
        // a transposition set is not normal
        let bad: BTreeSet<Perm> =
            [Perm::identity(3), Perm::parse("(1 2)", 3).unwrap()].into_iter().collect();
        assert!(quotient(&s3(), &bad).is_err());
    }

    #[test]
    fn quotient_projection_is_constant_on_cosets() {
        let a3 = derived_subgroup_finite(&s3());
        let q = quotient(&s3(), &a3).unwrap();
        let r1 = q.project(&Perm::parse("(1 2)", 3).unwrap()).unwrap();
        let r2 = q.project(&Perm::parse("(1 3)", 3).unwrap()).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(q.project(&Perm::parse("(1 2 3)", 3).unwrap()).unwrap(), Perm::identity(3));
    }
}
