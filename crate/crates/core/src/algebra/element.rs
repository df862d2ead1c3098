use std::collections::BTreeMap;

use crate::field::{Fe, Field};
use crate::perm::Permutation;

/// A finite linear combination of permutations over a field. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    degree: usize,
    coeffs: BTreeMap<Permutation, Fe>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        GroupAlgebraElement {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::basis(&Permutation::identity(degree))
    }

    pub fn basis(x: &Permutation) -> Self {
        GroupAlgebraElement {
            degree: x.degree(),
            coeffs: BTreeMap::from([(x.clone(), Fe::ONE)]),
        }
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Permutation, Fe)>) -> Self {
        let mut out = Self::zero(degree);
        for (x, c) in terms {
            assert_eq!(x.degree(), degree, "degree mismatch");
            out.set(x, c);
        }
        out
    }

    fn set(&mut self, x: Permutation, c: Fe) {
        if c.is_zero() {
            self.coeffs.remove(&x);
        } else {
            self.coeffs.insert(x, c);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, x: &Permutation) -> Fe {
        self.coeffs.get(x).copied().unwrap_or(Fe::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, Fe)> {
        self.coeffs.iter().map(|(x, &c)| (x, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, f: &Field, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in other.terms() {
            let v = f.add(out.coeff(x), c);
            out.set(x.clone(), v);
        }
        out
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Self {
        Self::from_terms(self.degree, self.terms().map(|(x, a)| (x.clone(), f.mul(a, c))))
    }

    /// Convolution product; quadratic in the support sizes.
    pub fn mul(&self, f: &Field, other: &Self) -> Self {
        let mut acc: BTreeMap<Permutation, Fe> = BTreeMap::new();
        for (x, a) in self.terms() {
            for (y, b) in other.terms() {
                let e = acc.entry(x * y).or_insert(Fe::ZERO);
                *e = f.add(*e, f.mul(a, b));
            }
        }
        Self::from_terms(self.degree, acc)
    }

    /// Sum of coefficients.
    pub fn augmentation(&self, f: &Field) -> Fe {
        self.coeffs.values().fold(Fe::ZERO, |acc, &c| f.add(acc, c))
    }

    /// `g⁻¹ a g`.
    pub fn conjugate(&self, g: &Permutation) -> Self {
        Self::from_terms(self.degree, self.terms().map(|(x, c)| (x.conj(g), c)))
    }

    pub fn is_fixed_by(&self, g: &Permutation) -> bool {
        self.terms().all(|(x, c)| self.coeff(&x.conj(g)) == c)
    }

    /// Keeps the terms whose group element satisfies `keep`.
    pub fn truncate(&self, keep: impl Fn(&Permutation) -> bool) -> Self {
        GroupAlgebraElement {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(x, _)| keep(x))
                .map(|(x, &c)| (x.clone(), c))
                .collect(),
        }
    }
}
