use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use super::Permutation;
use crate::error::{invariant, Error, Result};

/// Default bound on the number of elements enumerated for any one group.
pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;

/// A finite permutation group with all elements enumerated.
///
/// Elements are kept sorted lexicographically, so every enumeration derived
/// from a group is reproducible. Equality, hashing and ordering only look at
/// the element set.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    label: String,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl Hash for PermGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for PermGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PermGroup {
    /// By order, then lexicographically on sorted element lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.elements).cmp(&(other.order(), &other.elements))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.label.is_empty() {
            return write!(f, "{}", self.label);
        }
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.short_label())
    }
}

/// Isomorphism invariants used to recognise small groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub exponent: u64,
    pub abelian: bool,
    pub cyclic: bool,
    pub involutions: usize,
}

impl Fingerprint {
    /// D_8: order 8, nonabelian, exponent 4, five involutions (Q_8 has one).
    pub fn is_dihedral_8(&self) -> bool {
        self.order == 8 && !self.abelian && self.exponent == 4 && !self.cyclic && self.involutions == 5
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub members: Vec<Permutation>,
}

/// The conjugacy classes of a group, ordered by their least elements.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub classes: Vec<ConjugacyClass>,
    /// Class index of each element, indexed like [`PermGroup::elements`].
    pub class_of: Vec<u32>,
}

fn closure(degree: usize, gens: &[Permutation], bound: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if !seen.contains(&y) {
                if seen.len() >= bound {
                    return Err(Error::GroupTooLarge(bound));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::from_generators_bounded(degree, gens, DEFAULT_MAX_ELEMENTS)
    }

    pub fn from_generators_bounded(
        degree: usize,
        gens: Vec<Permutation>,
        bound: usize,
    ) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let mut gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        gens.dedup();
        let elements = closure(degree, &gens, bound)?;
        Ok(PermGroup::assemble(degree, gens, elements))
    }

    fn assemble(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> PermGroup {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
            label: String::new(),
        }
    }

    /// A group from a sorted, closed element list; picks a small generating set greedily.
    fn from_closed_elements(degree: usize, elements: Vec<Permutation>) -> PermGroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for x in &elements {
            if !span.contains(x) {
                gens.push(x.clone());
                span = closure(degree, &gens, usize::MAX)
                    .expect("unbounded")
                    .into_iter()
                    .collect();
            }
        }
        debug_assert_eq!(span.len(), elements.len(), "element list is not closed");
        PermGroup::assemble(degree, gens, elements)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::assemble(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    pub fn symmetric(n: usize) -> Result<PermGroup> {
        if n == 0 {
            return Err(Error::Input("symmetric group needs n ≥ 1".into()));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2]])?);
            gens.push(Permutation::from_cycles(n, &[(1..=n).collect()])?);
        }
        Ok(PermGroup::from_generators(n, gens)?.with_label(format!("S{n}")))
    }

    /// Dihedral group of the given order 2N acting on N ≥ 3 points.
    pub fn dihedral(order: usize) -> Result<PermGroup> {
        if order % 2 != 0 || order < 6 {
            return Err(Error::Input(format!("dihedral order {order} must be even and at least 6")));
        }
        let n = order / 2;
        let rotation = Permutation::from_cycles(n, &[(1..=n).collect()])?;
        let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
        Ok(PermGroup::from_generators(n, vec![rotation, reflection])?.with_label(format!("D{order}")))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> PermGroup {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Greedy generating set from the sorted element list; depends only on the element set.
    pub fn canonical_generators(&self) -> Vec<Permutation> {
        let mut gens = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([self.identity()]);
        for x in &self.elements {
            if span.contains(x) {
                continue;
            }
            gens.push(x.clone());
            span = closure(self.degree, &gens, usize::MAX).expect("unbounded").into_iter().collect();
            if span.len() == self.order() {
                break;
            }
        }
        gens
    }

    /// `1` or `<g1,g2,…>` on canonical generators.
    pub fn short_label(&self) -> String {
        if self.is_trivial() {
            return "1".into();
        }
        let gens: Vec<String> = self.canonical_generators().iter().map(|g| g.to_string()).collect();
        format!("<{}>", gens.join(","))
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.order() <= other.order() && self.generators.iter().all(|g| other.contains(g))
    }

    /// Subgroup of `self` generated by `gens`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::NotInGroup(g.to_string()));
        }
        let h = PermGroup::from_generators(self.degree, gens)?;
        self.check_lagrange(&h)?;
        Ok(h)
    }

    /// Subgroup of `self` consisting of the elements satisfying `keep`.
    /// The caller guarantees the kept set is a subgroup.
    fn filtered_subgroup(&self, keep: impl Fn(&Permutation) -> bool) -> Result<PermGroup> {
        let elems: Vec<Permutation> = self.elements.iter().filter(|x| keep(x)).cloned().collect();
        let h = PermGroup::from_closed_elements(self.degree, elems);
        self.check_lagrange(&h)?;
        Ok(h)
    }

    fn check_lagrange(&self, h: &PermGroup) -> Result<()> {
        if self.order() % h.order() != 0 {
            return Err(invariant(
                "Lagrange",
                format!("subgroup of order {} in group of order {}", h.order(), self.order()),
            ));
        }
        Ok(())
    }

    pub fn centralizer(&self, s: &[Permutation]) -> Result<PermGroup> {
        if s.iter().all(Permutation::is_identity) {
            return Ok(self.clone());
        }
        self.filtered_subgroup(|x| s.iter().all(|y| x.commutes_with(y)))
    }

    pub fn centralizer_of(&self, h: &PermGroup) -> Result<PermGroup> {
        self.centralizer(&h.generators)
    }

    /// Whether every element of `self` normalizes `h`.
    pub fn normalizes(&self, h: &PermGroup) -> bool {
        self.generators
            .iter()
            .all(|g| h.generators.iter().all(|x| h.contains(&x.conj(g))))
    }

    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        self.filtered_subgroup(|g| h.generators.iter().all(|x| h.contains(&x.conj(g))))
    }

    /// `h^g = g⁻¹ h g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let mut elements: Vec<Permutation> = self.elements.iter().map(|x| x.conj(g)).collect();
        elements.sort();
        let gens = self.generators.iter().map(|x| x.conj(g)).collect();
        PermGroup::assemble(self.degree, gens, elements)
    }

    /// The least `g` in `self` with `h^g ⊆ k`, if any.
    pub fn conjugating_into(&self, h: &PermGroup, k: &PermGroup) -> Option<Permutation> {
        if k.order() % h.order() != 0 {
            return None;
        }
        self.elements
            .iter()
            .find(|g| h.generators.iter().all(|x| k.contains(&x.conj(g))))
            .cloned()
    }

    /// The least `g` in `self` with `h^g = k`, if any.
    pub fn conjugating_element(&self, h: &PermGroup, k: &PermGroup) -> Option<Permutation> {
        if h.order() != k.order() || h.class_profile() != k.class_profile() {
            return None;
        }
        self.conjugating_into(h, k)
    }

    /// Sorted multiset of element cycle types; a cheap conjugacy invariant.
    pub fn class_profile(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.elements.iter().map(|x| x.cycle_type()).collect();
        v.sort();
        v
    }

    pub fn conjugacy_classes(&self) -> ClassPartition {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start] = id;
            let mut members = vec![self.elements[start].clone()];
            let mut k = 0;
            while k < members.len() {
                let x = members[k].clone();
                for g in &self.generators {
                    let y = x.conj(g);
                    let j = self.index[&y] as usize;
                    if class_of[j] == u32::MAX {
                        class_of[j] = id;
                        members.push(y);
                    }
                }
                k += 1;
            }
            members.sort();
            classes.push(ConjugacyClass {
                representative: self.elements[start].clone(),
                members,
            });
        }
        ClassPartition { classes, class_of }
    }

    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .fold(1, |acc, x| num_integer::lcm(acc, x.order()))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|x| x.order() as usize == self.order())
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            order: self.order(),
            exponent: self.exponent(),
            abelian: self.is_abelian(),
            cyclic: self.is_cyclic(),
            involutions: self.elements.iter().filter(|x| x.order() == 2).count(),
        }
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.order();
        while n % p as usize == 0 {
            n /= p as usize;
        }
        n == 1
    }

    /// `(true, r)` when abelian of exponent dividing p with |Q| = p^r.
    pub fn is_elementary_abelian(&self, p: u32) -> (bool, u32) {
        if self.is_trivial() {
            return (true, 0);
        }
        if !self.is_abelian() || !self.generators.iter().all(|g| g.pow(p as u64).is_identity()) {
            return (false, 0);
        }
        let mut n = self.order();
        let mut r = 0;
        while n % p as usize == 0 {
            n /= p as usize;
            r += 1;
        }
        (n == 1, r)
    }

    /// A Sylow p-subgroup, grown one step at a time inside normalizers.
    pub fn sylow(&self, p: u32) -> Result<PermGroup> {
        let p = p as usize;
        let mut target = 1;
        let mut n = self.order();
        while n % p == 0 {
            n /= p;
            target *= p;
        }
        let mut h = PermGroup::trivial(self.degree);
        while h.order() < target {
            let norm = self.normalizer(&h)?;
            let x = norm
                .elements
                .iter()
                .find(|x| !h.contains(x) && h.contains(&x.pow(p as u64)))
                .cloned()
                .ok_or_else(|| invariant("Sylow growth", format!("stuck at {h}")))?;
            let mut gens = h.generators.clone();
            gens.push(x);
            h = self.subgroup(gens)?;
        }
        Ok(h)
    }

    /// All subgroups of order p, in element order.
    pub fn order_p_subgroups(&self, p: u32) -> Vec<PermGroup> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in &self.elements {
            if x.order() == p as u64 {
                let h = PermGroup::from_generators(self.degree, vec![x.clone()]).expect("cyclic");
                if seen.insert(h.elements.clone()) {
                    out.push(h);
                }
            }
        }
        out.sort();
        out
    }

    /// Every subgroup, found by adjoining one element at a time. Meant for small groups.
    pub fn all_subgroups(&self) -> Vec<PermGroup> {
        let trivial = PermGroup::trivial(self.degree);
        let mut seen: HashSet<Vec<Permutation>> = HashSet::from([trivial.elements.clone()]);
        let mut out = vec![trivial];
        let mut k = 0;
        while k < out.len() {
            let h = out[k].clone();
            for x in &self.elements {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(x.clone());
                let sub = PermGroup::from_generators(self.degree, gens).expect("subgroup");
                if seen.insert(sub.elements.clone()) {
                    out.push(sub);
                }
            }
            k += 1;
        }
        out.sort();
        out
    }

    /// Representatives of the conjugacy classes of p-subgroups, trivial group included.
    pub fn p_subgroups_up_to_conjugacy(&self, p: u32) -> Result<Vec<PermGroup>> {
        let sylow = self.sylow(p)?;
        let mut reps: Vec<(PermGroup, Vec<Vec<usize>>)> = Vec::new();
        for h in sylow.all_subgroups() {
            let profile = h.class_profile();
            let known = reps.iter().any(|(r, prof)| {
                r.order() == h.order() && *prof == profile && self.conjugating_into(&h, r).is_some()
            });
            if !known {
                reps.push((h, profile));
            }
        }
        Ok(reps.into_iter().map(|(h, _)| h).collect())
    }
}
