use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::poset::Poset;
use super::snf::{invariant_factors, rational_rank, SparseIntMatrix};
use crate::error::{invariant, Error, Result};

/// Default bound on the number of simplices of a generated complex.
pub const DEFAULT_MAX_SIMPLICES: usize = 1_000_000;

/// A finite abstract simplicial complex; faces are sorted vertex lists grouped by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    faces: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> SimplicialComplex {
        SimplicialComplex {
            faces: Vec::new(),
            index: Vec::new(),
        }
    }

    fn from_face_set(set: BTreeSet<Vec<u32>>) -> SimplicialComplex {
        let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
        for f in set {
            let d = f.len() - 1;
            if faces.len() <= d {
                faces.resize(d + 1, Vec::new());
            }
            faces[d].push(f);
        }
        for level in faces.iter_mut() {
            level.sort();
        }
        let index = faces
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        SimplicialComplex { faces, index }
    }

    /// The downward closure of `facets`.
    pub fn from_facets(facets: impl IntoIterator<Item = Vec<u32>>, max_simplices: usize) -> Result<SimplicialComplex> {
        let mut set = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            let k = f.len();
            if k >= 64 {
                return Err(Error::TooMany(k, "vertices in one facet"));
            }
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                set.insert(face);
                if set.len() > max_simplices {
                    return Err(Error::TooMany(max_simplices, "simplices"));
                }
            }
        }
        Ok(Self::from_face_set(set))
    }

    /// From an explicit face list, which must already be closed under subsets.
    pub fn from_faces(faces: impl IntoIterator<Item = Vec<u32>>) -> Result<SimplicialComplex> {
        let set: BTreeSet<Vec<u32>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        let c = Self::from_face_set(set);
        c.check_closed()?;
        Ok(c)
    }

    /// Order complex: the simplices are the chains `x_0 < … < x_n`.
    pub fn order_complex(poset: &Poset, max_simplices: usize) -> Result<SimplicialComplex> {
        let n = poset.len();
        let above: Vec<Vec<u32>> = (0..n)
            .map(|i| poset.up_set(i).ones().filter(|&j| j != i).map(|j| j as u32).collect())
            .collect();
        let mut set = BTreeSet::new();
        let mut stack: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().unwrap() as usize;
            for &j in &above[top] {
                let mut next = chain.clone();
                next.push(j);
                stack.push(next);
            }
            let mut face = chain;
            face.sort_unstable();
            set.insert(face);
            if set.len() > max_simplices {
                return Err(Error::TooMany(max_simplices, "simplices"));
            }
        }
        Ok(Self::from_face_set(set))
    }

    pub fn check_closed(&self) -> Result<()> {
        for level in self.faces.iter().skip(1) {
            for f in level {
                for skip in 0..f.len() {
                    let sub: Vec<u32> = f.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                    if !self.contains(&sub) {
                        return Err(invariant("closed under faces", format!("{f:?} lacks {sub:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        !face.is_empty()
            && self
                .index
                .get(face.len() - 1)
                .is_some_and(|m| m.contains_key(face))
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn faces(&self, dim: usize) -> &[Vec<u32>] {
        self.faces.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, f)| if d % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
            .sum()
    }

    /// Image under a vertex relabeling.
    pub fn relabeled(&self, map: impl Fn(u32) -> u32) -> SimplicialComplex {
        let set = self
            .faces
            .iter()
            .flatten()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|&v| map(v)).collect();
                g.sort_unstable();
                g
            })
            .collect();
        Self::from_face_set(set)
    }

    /// ∂_dim : C_dim → C_{dim-1}; rows index (dim-1)-faces, columns dim-faces.
    /// Removing the i-th vertex carries sign (-1)^i.
    pub fn boundary(&self, dim: usize) -> SparseIntMatrix {
        let cols = self.faces(dim).len();
        if dim == 0 {
            return SparseIntMatrix::zeros(0, cols);
        }
        let rows = self.faces(dim - 1).len();
        let mut data: Vec<Vec<(u32, i64)>> = vec![Vec::new(); rows];
        for (c, f) in self.faces(dim).iter().enumerate() {
            for skip in 0..f.len() {
                let sub: Vec<u32> = f.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                let r = self.index[dim - 1][&sub];
                data[r].push((c as u32, if skip % 2 == 0 { 1 } else { -1 }));
            }
        }
        SparseIntMatrix { rows, cols, data }
    }

    /// Checks ∂_{n} ∘ ∂_{n+1} = 0 in every degree.
    pub fn check_boundary_squared(&self) -> Result<()> {
        for d in 2..self.faces.len() {
            let prod = self.boundary(d - 1).mul(&self.boundary(d));
            if let Some((r, row)) = prod.iter().enumerate().find(|(_, r)| !r.is_empty()) {
                return Err(invariant(
                    "boundary squares to zero",
                    format!("degree {d}, face {:?}, column {}", self.faces[d - 2][r], row[0].0),
                ));
            }
        }
        Ok(())
    }
}

/// One homology group `Z^betti ⊕ ⨁ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Torsion coefficients, each > 1 and dividing the next.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Unreduced integral homology, degree 0 up to the dimension.
/// The empty complex has no groups at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub groups: Vec<HomologyGroup>,
}

impl Homology {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(d, g)| if d % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// Trailing zero groups dropped, so complexes of different dimension compare.
    pub fn trimmed(&self) -> Vec<HomologyGroup> {
        let mut g = self.groups.clone();
        while g.last().is_some_and(|h| h.betti == 0 && h.torsion.is_empty()) {
            g.pop();
        }
        g
    }

    pub fn same_groups(&self, other: &Homology) -> bool {
        self.trimmed() == other.trimmed()
    }

    /// Homology of a point.
    pub fn is_point(&self) -> bool {
        self.trimmed() == vec![HomologyGroup { betti: 1, torsion: Vec::new() }]
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "empty complex");
        }
        let parts: Vec<String> = self.groups.iter().enumerate().map(|(d, g)| format!("H{d} = {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

pub fn homology(c: &SimplicialComplex) -> Homology {
    let top = match c.dim() {
        Some(d) => d,
        None => return Homology { groups: Vec::new() },
    };
    // factors[d] = invariant factors of ∂_d
    let factors: Vec<Vec<BigInt>> = (0..=top + 1)
        .map(|d| if d == 0 || d > top { Vec::new() } else { invariant_factors(&c.boundary(d)) })
        .collect();
    let groups = (0..=top)
        .map(|d| {
            let n = c.faces(d).len();
            HomologyGroup {
                betti: n - factors[d].len() - factors[d + 1].len(),
                torsion: factors[d + 1].iter().filter(|t| !t.is_one()).cloned().collect(),
            }
        })
        .collect();
    Homology { groups }
}

/// Betti numbers from ranks over the rationals, independent of the integral reduction.
pub fn rational_betti(c: &SimplicialComplex) -> Vec<usize> {
    let Some(top) = c.dim() else { return Vec::new() };
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|d| if d == 0 || d > top { 0 } else { rational_rank(&c.boundary(d).to_dense()) })
        .collect();
    (0..=top).map(|d| c.faces(d).len() - ranks[d] - ranks[d + 1]).collect()
}
