use crate::field::{Fe, Field};
use crate::perm::{ClassPartition, PermGroup};

/// A commutative algebra given by structure constants on a basis,
/// `b_i b_j = Σ_k a[i][j][k] b_k`, with a distinguished identity basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralAlgebra {
    dim: usize,
    /// Sparse rows: `consts[i * dim + j]` lists the nonzero `(k, a[i][j][k])`.
    consts: Vec<Vec<(u32, Fe)>>,
    identity: usize,
}

impl CentralAlgebra {
    /// From dense constants `a[i][j][k]`.
    pub fn from_dense(consts: &[Vec<Vec<Fe>>], identity: usize) -> Self {
        let dim = consts.len();
        let mut sparse = Vec::with_capacity(dim * dim);
        for row in consts {
            for col in row {
                sparse.push(
                    col.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, &c)| (k as u32, c))
                        .collect(),
                );
            }
        }
        CentralAlgebra {
            dim,
            consts: sparse,
            identity,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Fe {
        self.consts[i * self.dim + j]
            .iter()
            .find(|(kk, _)| *kk as usize == k)
            .map_or(Fe::ZERO, |&(_, c)| c)
    }

    /// Nonzero `(i, j, k, a[i][j][k])`.
    pub fn nonzero_constants(&self) -> impl Iterator<Item = (usize, usize, usize, Fe)> + '_ {
        self.consts.iter().enumerate().flat_map(move |(ij, row)| {
            row.iter()
                .map(move |&(k, c)| (ij / self.dim, ij % self.dim, k as usize, c))
        })
    }

    pub fn one(&self) -> Vec<Fe> {
        self.basis(self.identity)
    }

    pub fn zero(&self) -> Vec<Fe> {
        vec![Fe::ZERO; self.dim]
    }

    pub fn basis(&self, i: usize) -> Vec<Fe> {
        let mut v = self.zero();
        v[i] = Fe::ONE;
        v
    }

    pub fn mul(&self, f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = f.mul(x, y);
                for &(k, c) in &self.consts[i * self.dim + j] {
                    out[k as usize] = f.add(out[k as usize], f.mul(xy, c));
                }
            }
        }
        out
    }

    pub fn pow(&self, f: &Field, a: &[Fe], mut e: u64) -> Vec<Fe> {
        let (mut base, mut acc) = (a.to_vec(), self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(f, &acc, &base);
            }
            base = self.mul(f, &base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let mut a = self.consts[i * self.dim + j].clone();
                let mut b = self.consts[j * self.dim + i].clone();
                a.sort();
                b.sort();
                a == b
            })
        })
    }

    /// The same algebra with basis vector `perm[i]` of the result being old vector `i`.
    pub fn permuted(&self, perm: &[usize]) -> CentralAlgebra {
        let n = self.dim;
        let mut dense = vec![vec![vec![Fe::ZERO; n]; n]; n];
        for (i, j, k, c) in self.nonzero_constants() {
            dense[perm[i]][perm[j]][perm[k]] = c;
        }
        CentralAlgebra::from_dense(&dense, perm[self.identity])
    }
}

/// Structure constants of Z(kG) on the class-sum basis:
/// `a[i][j][k] = #{(x, y) ∈ C_i × C_j : xy = z_k} mod p` for the representative `z_k`.
pub fn class_sum_algebra(g: &PermGroup, classes: &ClassPartition, f: &Field) -> CentralAlgebra {
    let n = classes.classes.len();
    let mut counts = vec![vec![vec![0u64; n]; n]; n];
    for (k, ck) in classes.classes.iter().enumerate() {
        let z = &ck.representative;
        for (i, ci) in classes.classes.iter().enumerate() {
            for x in &ci.members {
                let y = &x.inverse() * z;
                let j = classes.class_of[g.index_of(&y).expect("closed")] as usize;
                counts[i][j][k] += 1;
            }
        }
    }
    let dense: Vec<Vec<Vec<Fe>>> = counts
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| c.iter().map(|&v| f.from_int((v % f.p() as u64) as i64)).collect())
                .collect()
        })
        .collect();
    let identity = classes.class_of[g.index_of(&g.identity()).expect("identity")] as usize;
    CentralAlgebra::from_dense(&dense, identity)
}
