//! Column reduction of sparse matrices over GF(2).
//!
//! A column is stored as the sorted list of its nonzero row indices. Reduction
//! repeatedly adds earlier columns with the same lowest (largest) row index, as
//! in persistent homology. Optionally the column operations are recorded so that
//! every reduced column `R_j` satisfies `R_j = M * V_j`.

use crate::algebra::Field;

pub type F2Column = Vec<u32>;

/// Symmetric difference of two sorted index lists.
pub fn xor_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Sparse GF(2) matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    n_rows: usize,
    cols: Vec<F2Column>,
}

impl F2Matrix {
    /// Columns must have strictly increasing entries below `n_rows`.
    pub fn new(n_rows: usize, cols: Vec<F2Column>) -> Self {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0] < w[1])
            && c.last().is_none_or(|&m| (m as usize) < n_rows)));
        F2Matrix { n_rows, cols }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.cols[j]
    }

    /// Apply to a vector over any field of characteristic 2.
    pub fn apply<F: Field>(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.n_rows];
        for (j, c) in self.cols.iter().enumerate() {
            let a = x[j];
            if a.is_zero() {
                continue;
            }
            for &i in c {
                out[i as usize] += a;
            }
        }
        out
    }

    /// Apply to a GF(2) vector given by its support.
    pub fn apply_support(&self, support: &[u32]) -> F2Column {
        let mut acc = Vec::new();
        let mut tmp = Vec::new();
        for &j in support {
            xor_into(&acc, &self.cols[j as usize], &mut tmp);
            std::mem::swap(&mut acc, &mut tmp);
        }
        acc
    }
}

const NONE: u32 = u32::MAX;

/// Result of reducing an [`F2Matrix`].
#[derive(Clone, Debug)]
pub struct F2Reduction {
    n_rows: usize,
    reduced: Vec<F2Column>,
    ops: Option<Vec<F2Column>>,
    pivot_of_row: Vec<u32>,
    skipped: Vec<bool>,
}

impl F2Reduction {
    /// Reduce `m`. Columns flagged in `skip` are known to reduce to zero and are left out
    /// (they keep `V_j = e_j` only when `track_ops` is set, which then may be wrong, so the
    /// caller should only skip columns whose operations it does not need).
    pub fn new(m: &F2Matrix, skip: Option<&[bool]>, track_ops: bool) -> Self {
        let n = m.n_cols();
        let mut reduced: Vec<F2Column> = Vec::with_capacity(n);
        let mut ops: Option<Vec<F2Column>> = track_ops.then(|| Vec::with_capacity(n));
        let mut pivot_of_row = vec![NONE; m.n_rows];
        let mut skipped = vec![false; n];
        let mut tmp = Vec::new();
        for j in 0..n {
            if skip.is_some_and(|s| s[j]) {
                skipped[j] = true;
                reduced.push(Vec::new());
                if let Some(o) = ops.as_mut() {
                    o.push(vec![j as u32]);
                }
                continue;
            }
            let mut col = m.cols[j].clone();
            let mut v: F2Column = vec![j as u32];
            while let Some(&low) = col.last() {
                let p = pivot_of_row[low as usize];
                if p == NONE {
                    break;
                }
                xor_into(&col, &reduced[p as usize], &mut tmp);
                std::mem::swap(&mut col, &mut tmp);
                if let Some(o) = ops.as_ref() {
                    xor_into(&v, &o[p as usize], &mut tmp);
                    std::mem::swap(&mut v, &mut tmp);
                }
            }
            if let Some(&low) = col.last() {
                pivot_of_row[low as usize] = j as u32;
            }
            reduced.push(col);
            if let Some(o) = ops.as_mut() {
                o.push(v);
            }
        }
        F2Reduction { n_rows: m.n_rows, reduced, ops, pivot_of_row, skipped }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.reduced.len()
    }

    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_empty()).count()
    }

    /// Whether row `i` is the lowest entry of some reduced column.
    pub fn is_low(&self, i: usize) -> bool {
        self.pivot_of_row[i] != NONE
    }

    pub fn lows(&self) -> Vec<bool> {
        self.pivot_of_row.iter().map(|&p| p != NONE).collect()
    }

    /// Columns that reduced to zero, skipped ones included.
    pub fn zero_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.reduced.len()).filter(|&j| self.reduced[j].is_empty())
    }

    pub fn is_skipped(&self, j: usize) -> bool {
        self.skipped[j]
    }

    pub fn reduced_column(&self, j: usize) -> &[u32] {
        &self.reduced[j]
    }

    /// Recorded column operations: `R_j = M V_j`.
    pub fn ops_column(&self, j: usize) -> Option<&[u32]> {
        self.ops.as_ref().map(|o| o[j].as_slice())
    }

    /// Reduce `v` (over a field of characteristic 2) modulo the column space, in place.
    ///
    /// The result is the unique representative of `v + colspace` supported away from
    /// the lows. If `solution` is given, the combination that was subtracted is
    /// accumulated into it, so that `v_in = v_out + M * solution` afterwards.
    pub fn normal_form<F: Field>(&self, v: &mut [F], mut solution: Option<&mut [F]>) {
        debug_assert_eq!(F::CHARACTERISTIC, 2);
        for i in (0..self.n_rows).rev() {
            let a = v[i];
            if a.is_zero() {
                continue;
            }
            let p = self.pivot_of_row[i];
            if p == NONE {
                continue;
            }
            for &k in &self.reduced[p as usize] {
                v[k as usize] += a;
            }
            if let Some(sol) = solution.as_deref_mut() {
                let ops = self.ops.as_ref().expect("column operations were not recorded");
                for &k in &ops[p as usize] {
                    sol[k as usize] += a;
                }
            }
        }
    }

    /// GF(2) version of [`F2Reduction::normal_form`] on a support list.
    pub fn normal_form_support(&self, v: &[u32]) -> F2Column {
        let mut col = v.to_vec();
        let mut out = Vec::new();
        let mut tmp = Vec::new();
        while let Some(&low) = col.last() {
            let p = self.pivot_of_row[low as usize];
            if p == NONE {
                out.push(low);
                col.pop();
                continue;
            }
            xor_into(&col, &self.reduced[p as usize], &mut tmp);
            std::mem::swap(&mut col, &mut tmp);
        }
        out.reverse();
        out
    }

    /// Some `x` with `M x = b`, or `None` when `b` is outside the column space.
    pub fn solve<F: Field>(&self, b: &[F]) -> Option<Vec<F>> {
        let mut v = b.to_vec();
        let mut x = vec![F::zero(); self.reduced.len()];
        self.normal_form(&mut v, Some(&mut x));
        v.iter().all(|a| a.is_zero()).then_some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use crate::algebra::SparseMatrix;
    use crate::{Gf2, Gf2_8};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_f2(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> F2Matrix {
        let c = (0..cols)
            .map(|_| (0..rows as u32).filter(|_| rng.gen_bool(0.15)).collect())
            .collect();
        F2Matrix::new(rows, c)
    }

    fn to_sparse(m: &F2Matrix) -> SparseMatrix<Gf2> {
        let t = (0..m.n_cols()).flat_map(|j| m.column(j).iter().map(move |&i| (i as usize, j, Gf2::one())));
        SparseMatrix::from_triplets(m.n_rows(), m.n_cols(), t.collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_agrees_with_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let m = random_f2(25, 35, &mut rng);
            let r = F2Reduction::new(&m, None, true);
            assert_eq!(r.rank(), to_sparse(&m).rank());
            for j in 0..m.n_cols() {
                assert_eq!(m.apply_support(r.ops_column(j).unwrap()), r.reduced_column(j));
            }
        }
    }

    #[test]
    fn solve_over_extension_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let m = random_f2(30, 20, &mut rng);
        let r = F2Reduction::new(&m, None, true);
        let x: Vec<Gf2_8> = (0..20).map(|_| Gf2_8::random(&mut rng)).collect();
        let b = m.apply(&x);
        let y = r.solve(&b).unwrap();
        assert_eq!(m.apply(&y), b);
        let mut nf = b.clone();
        r.normal_form(&mut nf, None);
        assert!(nf.iter().all(|a| a.is_zero()));
    }
}
