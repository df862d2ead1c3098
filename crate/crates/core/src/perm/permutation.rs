use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1..n}`, stored 0-based as its image sequence.
///
/// Products compose left to right: `a * b` applies `a` first, then `b`.
/// Conjugation is `x^g = g⁻¹ x g`. Ordering is lexicographic on images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// From a 0-based image sequence.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// From 1-based disjoint or overlapping cycles, multiplied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            let mut seen = std::collections::HashSet::new();
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree || !seen.insert(pt) {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle {cycle:?} invalid on {degree} points"
                    )));
                }
                images[pt - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            acc = &acc * &Permutation::from_images(images)?;
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`; errors on degree mismatch.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv.into() }
    }

    /// `g⁻¹ self g`.
    pub fn conj(&self, g: &Permutation) -> Permutation {
        // (g⁻¹ x g)(g(i)) = g(x(i))
        let mut out = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out.into() }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let (mut base, mut acc) = (self.clone(), Permutation::identity(self.degree()));
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.image(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Sorted cycle lengths, fixed points included as 1s.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat(1).take(self.degree() - moved));
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] for a fallible product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn left_to_right_composition() {
        let a = cyc(3, &[&[1, 2]]);
        let b = cyc(3, &[&[2, 3]]);
        assert_eq!(a.compose(&b).unwrap(), cyc(3, &[&[1, 3, 2]]));
        assert_eq!(a.compose(&Permutation::identity(3)).unwrap(), a);
        assert!(a.compose(&a).unwrap().is_identity());
        assert_eq!(a.compose(&Permutation::identity(4)), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn conjugation_convention() {
        let x = cyc(6, &[&[3, 4]]);
        let g = cyc(6, &[&[3, 5], &[4, 6]]);
        assert_eq!(x.conj(&g), cyc(6, &[&[5, 6]]));
        assert_eq!(x.conj(&g), &(&g.inverse() * &x) * &g);
    }

    #[test]
    fn display_and_cycle_type() {
        let x = cyc(5, &[&[1, 2, 3], &[4, 5]]);
        assert_eq!(x.to_string(), "(1 2 3)(4 5)");
        assert_eq!(x.cycle_type(), vec![2, 3]);
        assert_eq!(x.order(), 6);
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 4]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 1]]).is_err());
    }

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in perm(6), b in perm(6), c in perm(6)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a * &a.inverse()).is_identity());
            prop_assert!((&a.inverse() * &a).is_identity());
            prop_assert_eq!(a.conj(&b), &(&b.inverse() * &a) * &b);
            prop_assert_eq!(a.commutes_with(&b), &a * &b == &b * &a);
        }
    }
}
