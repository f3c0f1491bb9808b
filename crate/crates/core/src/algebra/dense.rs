//! Small dense matrices over a field, used for local (per-simplex) linear algebra.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::algebra::Field;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        Ok(DenseMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Matrix whose columns are the given vectors, all of length `len`.
    pub fn from_columns(len: usize, columns: &[Vec<F>]) -> Result<Self> {
        let mut m = Self::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != len {
                return Err(Error::DimensionMismatch { expected: len, found: c.len() });
            }
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)] + a * other[(k, j)];
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for v in self.row_mut(r) {
                *v *= inv;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self[(i, j)] - f * self[(r, j)];
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self x = 0}`, one vector per free column, in increasing free-column order.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        (0..self.cols)
            .filter(|&f| is_pivot[f].is_none())
            .map(|f| {
                let mut x = vec![F::zero(); self.cols];
                x[f] = F::one();
                for (i, &c) in pivots.iter().enumerate() {
                    x[c] = -r[(i, f)];
                }
                x
            })
            .collect()
    }

    /// Some solution of `self x = b`, or `Error::Inconsistent`.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug[(i, self.cols)];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug[(i, n + i)] = F::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::LinearlyDependent);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Ok(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

impl<F> Index<(usize, usize)> for DenseMatrix<F> {
    type Output = F;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for DenseMatrix<F> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for DenseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format!("{:?}", self.data[i * self.cols + j])).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use crate::Gf3_9;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DenseMatrix<Gf3_9> {
        let mut m = DenseMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = Gf3_9::random(rng);
            }
        }
        m
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_matrix(6, 6, &mut rng);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), DenseMatrix::identity(6));
    }

    #[test]
    fn rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_matrix(4, 3, &mut rng);
        let b = random_matrix(3, 9, &mut rng);
        let m = a.mul(&b).unwrap();
        assert_eq!(m.rank(), 3);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 6);
        for v in &ns {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = DenseMatrix::<Gf3_9>::from_rows(&vec![vec![Gf3_9::one(), Gf3_9::one()]; 2]).unwrap();
        assert!(m.solve(&[Gf3_9::one(), Gf3_9::zero()]).is_err());
        let x = m.solve(&[Gf3_9::one(), Gf3_9::one()]).unwrap();
        assert_eq!(x[0] + x[1], Gf3_9::one());
    }
}
