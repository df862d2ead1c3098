use super::{Fe, Field};
use crate::error::{Error, Result};

/// Dense matrix over a finite field, row-major. Acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn from_columns(cols: &[Vec<Fe>]) -> Matrix {
        Matrix::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the column space, in reduced echelon form.
    pub fn image_basis(&self, f: &Field) -> Vec<Vec<Fe>> {
        let (r, piv) = self.transpose().rref(f);
        (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
    }

    /// Basis of the null space {v : Mv = 0}.
    pub fn kernel_basis(&self, f: &Field) -> Vec<Vec<Fe>> {
        let (r, piv) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[fc] = Fe::ONE;
                for (i, &pc) in piv.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution of Mx = b.
    pub fn solve(&self, f: &Field, b: &[Fe]) -> Result<Vec<Fe>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, piv) = aug.rref(f);
        if piv.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (i, &c) in piv.iter().enumerate() {
            x[c] = r.get(i, self.cols);
        }
        Ok(x)
    }

    /// Basis of the eventual image `M^n(V)`, n = dim V, of a square matrix.
    pub fn stable_image(&self, f: &Field) -> Vec<Vec<Fe>> {
        assert_eq!(self.rows, self.cols, "stable image needs a square matrix");
        let mut basis: Vec<Vec<Fe>> = Matrix::identity(self.rows).image_basis(f);
        loop {
            let images: Vec<Vec<Fe>> = basis.iter().map(|v| self.mul_vec(f, v)).collect();
            let next = if images.is_empty() {
                Vec::new()
            } else {
                Matrix::from_columns(&images).image_basis(f)
            };
            if next.len() == basis.len() {
                return next;
            }
            basis = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn m(f: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.iter().map(|&c| f.from_int(c)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn identity_rank() {
        let f = gf(3);
        for n in 0..5 {
            assert_eq!(Matrix::identity(n).rank(&f), n);
        }
    }

    #[test]
    fn stable_images() {
        let f = gf(2);
        let nil = m(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(nil.stable_image(&f).is_empty());
        let inv = m(&f, &[&[1, 1], &[0, 1]]);
        assert_eq!(inv.stable_image(&f).len(), 2);
        // projection plus nilpotent block
        let mixed = m(&f, &[&[1, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let img = mixed.stable_image(&f);
        assert_eq!(img, vec![vec![Fe(1), Fe(0), Fe(0)]]);
    }

    #[test]
    fn rank_nullity() {
        let f = gf(5);
        let a = m(&f, &[&[1, 2, 3, 4], &[2, 4, 1, 3], &[3, 1, 4, 2]]);
        assert_eq!(a.rank(&f) + a.kernel_basis(&f).len(), a.cols());
        for v in a.kernel_basis(&f) {
            assert!(a.mul_vec(&f, &v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn solve_and_inconsistency() {
        let f = gf(3);
        let a = m(&f, &[&[1, 1], &[1, 2]]);
        let b = vec![Fe(2), Fe(0)];
        let x = a.solve(&f, &b).unwrap();
        assert_eq!(a.mul_vec(&f, &x), b);
        let singular = m(&f, &[&[1, 1], &[1, 1]]);
        assert_eq!(singular.solve(&f, &[Fe(0), Fe(1)]), Err(Error::Inconsistent));
    }
}
