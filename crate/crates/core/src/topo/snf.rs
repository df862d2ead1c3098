//! Smith normal form over the integers.
//!
//! Boundary matrices are reduced sparsely first: unit pivots are eliminated
//! with machine integers (checked, restarting with big integers on overflow),
//! and whatever is left goes through a dense big-integer reduction.

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

/// Sparse integer matrix stored by rows, column indices increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> SparseIntMatrix {
        SparseIntMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(m: &[Vec<i64>]) -> SparseIntMatrix {
        let cols = m.first().map_or(0, Vec::len);
        SparseIntMatrix {
            rows: m.len(),
            cols,
            data: m
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, v)| **v != 0)
                        .map(|(j, &v)| (j as u32, v))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for &(j, v) in row {
                out[i][j as usize] = BigInt::from(v);
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    /// Matrix product with a sparse matrix (used for the boundary check).
    pub fn mul(&self, other: &SparseIntMatrix) -> Vec<Vec<(u32, i128)>> {
        assert_eq!(self.cols, other.rows);
        self.data
            .iter()
            .map(|row| {
                let mut acc = std::collections::BTreeMap::<u32, i128>::new();
                for &(k, a) in row {
                    for &(j, b) in &other.data[k as usize] {
                        *acc.entry(j).or_default() += a as i128 * b as i128;
                    }
                }
                acc.into_iter().filter(|(_, v)| *v != 0).collect()
            })
            .collect()
    }
}

/// Result of a dense reduction: `u · m · v = diag(diagonal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Length `min(rows, cols)`, nonnegative, each dividing the next (zeros last).
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Dense {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for r in v.iter_mut() {
                r.swap(i, j);
            }
        }
    }

    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        let add = |m: &mut Vec<Vec<BigInt>>| {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x += q * y;
            }
        };
        add(&mut self.a);
        if let Some(u) = &mut self.u {
            add(u);
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        let add = |m: &mut Vec<Vec<BigInt>>| {
            for r in m.iter_mut() {
                let y = r[j].clone();
                r[i] += q * y;
            }
        };
        add(&mut self.a);
        if let Some(v) = &mut self.v {
            add(v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    fn reduce(&mut self) -> Vec<BigInt> {
        let rows = self.a.len();
        let cols = self.a.first().map_or(0, Vec::len);
        let n = rows.min(cols);
        for t in 0..n {
            // smallest nonzero entry of the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !self.a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            self.swap_rows(t, bi);
            self.swap_cols(t, bj);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.add_row(i, t, &-q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.add_col(j, t, &-q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    // a smaller remainder now sits in row or column t
                    let mut best = (t, t);
                    for i in t + 1..rows {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..cols {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.a[i][j].is_multiple_of(&self.a[t][t]));
                match bad {
                    Some((i, _)) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        (0..n).map(|i| self.a[i][i].clone()).collect()
    }
}

/// Dense Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut d = Dense {
        a: m.to_vec(),
        u: Some(identity(rows)),
        v: Some(identity(cols)),
    };
    let diagonal = d.reduce();
    Snf {
        diagonal,
        u: d.u.unwrap(),
        v: d.v.unwrap(),
    }
}

fn dense_invariant_factors(m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let mut d = Dense { a: m, u: None, v: None };
    d.reduce().into_iter().filter(|x| !x.is_zero()).collect()
}

trait Entry: Clone + PartialEq + Zero + One + Signed + CheckedMul + CheckedSub + ToBigInt {}
impl Entry for i64 {}
impl Entry for BigInt {}

/// Eliminates unit pivots. Returns the number of pivots and the residual rows,
/// or `None` on overflow.
fn eliminate_units<T: Entry>(mut rows: Vec<Vec<(u32, T)>>, cols: usize) -> Option<(usize, Vec<Vec<(u32, T)>>)> {
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows[*j as usize].push(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut pivots = 0;
    loop {
        let mut progress = false;
        for c in 0..cols {
            col_rows[c].retain(|&i| alive[i] && rows[i].iter().any(|(j, _)| *j as usize == c));
            col_rows[c].sort_unstable();
            col_rows[c].dedup();
            let pivot = col_rows[c]
                .iter()
                .copied()
                .filter(|&i| {
                    rows[i]
                        .iter()
                        .any(|(j, v)| *j as usize == c && (v.is_one() || (-v.clone()).is_one()))
                })
                .min_by_key(|&i| rows[i].len());
            let Some(pr) = pivot else { continue };
            let prow = std::mem::take(&mut rows[pr]);
            alive[pr] = false;
            let pv = prow.iter().find(|(j, _)| *j as usize == c).unwrap().1.clone();
            for i in std::mem::take(&mut col_rows[c]) {
                if i == pr {
                    continue;
                }
                let coef = rows[i].iter().find(|(j, _)| *j as usize == c).unwrap().1.clone();
                // row_i -= coef · pv · prow  (pv = ±1 so pv = pv⁻¹)
                let factor = coef.checked_mul(&pv)?;
                let merged = sub_scaled(&rows[i], &prow, &factor)?;
                for (j, _) in &merged {
                    if !rows[i].iter().any(|(k, _)| k == j) {
                        col_rows[*j as usize].push(i);
                    }
                }
                rows[i] = merged;
            }
            pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let residual = rows
        .into_iter()
        .enumerate()
        .filter(|(i, r)| alive[*i] && !r.is_empty())
        .map(|(_, r)| r)
        .collect();
    Some((pivots, residual))
}

fn sub_scaled<T: Entry>(a: &[(u32, T)], b: &[(u32, T)], f: &T) -> Option<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, T::zero().checked_sub(&b[j].1.checked_mul(f)?)?));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(&b[j].1.checked_mul(f)?)?;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn residual_dense<T: Entry>(residual: &[Vec<(u32, T)>]) -> Vec<Vec<BigInt>> {
    let mut used: Vec<u32> = residual.iter().flat_map(|r| r.iter().map(|(j, _)| *j)).collect();
    used.sort_unstable();
    used.dedup();
    residual
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); used.len()];
            for (j, v) in r {
                row[used.binary_search(j).unwrap()] = v.to_bigint().unwrap();
            }
            row
        })
        .collect()
}

/// Nonzero invariant factors (each dividing the next).
pub fn invariant_factors(m: &SparseIntMatrix) -> Vec<BigInt> {
    let (units, residual) = match eliminate_units(m.data.clone(), m.cols) {
        Some((u, r)) => (u, residual_dense(&r)),
        None => {
            let big = m
                .data
                .iter()
                .map(|r| r.iter().map(|&(j, v)| (j, BigInt::from(v))).collect())
                .collect();
            let (u, r) = eliminate_units::<BigInt>(big, m.cols).expect("big integers do not overflow");
            (u, residual_dense(&r))
        }
    };
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_invariant_factors(residual));
    out
}

/// Rank over the rationals by fraction-exact Gaussian elimination.
pub fn rational_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                for j in c..cols {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|r| {
                (0..cols)
                    .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &r[k] * &b[k][j]))
                    .collect()
            })
            .collect()
    }

    fn det(m: &[Vec<BigInt>]) -> BigInt {
        let q: Vec<Vec<BigRational>> = m
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let mut a = q;
        let n = a.len();
        let mut d = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigInt::zero() };
            if p != c {
                a.swap(p, c);
                d = -d;
            }
            d *= a[c][c].clone();
            for i in c + 1..n {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
        d.to_integer()
    }

    fn check(m: &[Vec<BigInt>]) -> Snf {
        let s = smith_normal_form(m);
        let d = matmul(&matmul(&s.u, m), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(*x, expect);
            }
        }
        assert_eq!(det(&s.u).abs(), BigInt::one());
        assert_eq!(det(&s.v).abs(), BigInt::one());
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        s
    }

    #[test]
    fn diag_2_3() {
        assert_eq!(check(&big(&[&[2, 0], &[0, 3]])).diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(s.diagonal.iter().all(|x| x.is_one()));
        let s = check(&big(&[&[0, 0], &[0, 0], &[0, 0]]));
        assert!(s.diagonal.iter().all(|x| x.is_zero()));
        assert!(smith_normal_form(&[]).diagonal.is_empty());
    }

    #[test]
    fn known_forms() {
        let s = check(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = check(&big(&[&[6, 4], &[4, 6], &[2, 2]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn sparse_agrees_with_dense_on_hard_matrix() {
        let m = [vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![1, 0, 1]];
        let sparse = invariant_factors(&SparseIntMatrix::from_dense(&m));
        let dense: Vec<BigInt> = smith_normal_form(&SparseIntMatrix::from_dense(&m).to_dense())
            .diagonal
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect();
        assert_eq!(sparse, dense);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big_v = i64::MAX / 2;
        let m = [vec![1, big_v, 0], vec![big_v, 1, 0], vec![0, big_v, 3]];
        let sparse = invariant_factors(&SparseIntMatrix::from_dense(&m));
        let dense: Vec<BigInt> = smith_normal_form(&SparseIntMatrix::from_dense(&m).to_dense())
            .diagonal
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect();
        assert_eq!(sparse, dense);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sparse_matches_dense(m in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
                let sm = SparseIntMatrix::from_dense(&m);
                let dense = check(&sm.to_dense());
                let nz: Vec<BigInt> = dense.diagonal.into_iter().filter(|x| !x.is_zero()).collect();
                prop_assert_eq!(invariant_factors(&sm), nz.clone());
                prop_assert_eq!(rational_rank(&sm.to_dense()), nz.len());
            }
        }
    }
}
