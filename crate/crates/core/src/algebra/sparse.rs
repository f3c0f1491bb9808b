//! Sparse vectors and matrices with exact Gaussian elimination.
//!
//! Elimination is right-looking with a Markowitz pivot rule: the active row with
//! the fewest nonzeros is taken next (ties by smallest row index), and inside that
//! row the column with the fewest active entries (ties by smallest column index).
//! Once the active block becomes dense it is finished with ordinary dense
//! elimination. Both phases are deterministic.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::algebra::{DenseMatrix, Field};
use crate::error::{Error, Result};

/// Density of the active block above which elimination switches to dense storage.
pub const DENSE_SWITCH_DENSITY: f64 = 0.2;
const DENSE_SWITCH_MIN_ROWS: usize = 8;
const DENSE_SWITCH_MAX_ENTRIES: usize = 1 << 25;

/// Sparse vector: strictly increasing indices with nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec<F> {
    entries: Vec<(u32, F)>,
}

impl<F> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Build from arbitrary `(index, value)` pairs; duplicates are summed and zeros dropped.
    pub fn from_pairs(mut pairs: Vec<(u32, F)>) -> Self {
        pairs.sort_by_key(|&(i, _)| i);
        let mut entries: Vec<(u32, F)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, &x)| (i as u32, x))
                .collect(),
        }
    }

    pub fn unit(i: u32) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for &(i, v) in &self.entries {
            out[i as usize] = v;
        }
        out
    }

    pub fn entries(&self) -> &[(u32, F)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: u32) -> F {
        match self.entries.binary_search_by_key(&i, |&(j, _)| j) {
            Ok(k) => self.entries[k].1,
            Err(_) => F::zero(),
        }
    }

    pub fn max_index(&self) -> Option<u32> {
        self.entries.last().map(|&(i, _)| i)
    }

    pub fn scale(&mut self, a: F) {
        if a.is_zero() {
            self.entries.clear();
        } else {
            for (_, v) in &mut self.entries {
                *v *= a;
            }
        }
    }

    /// `self + a * other`.
    pub fn add_scaled(&self, a: F, other: &Self) -> Self {
        let (x, y) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
                out.push(x[i]);
                i += 1;
            } else if i == x.len() || y[j].0 < x[i].0 {
                let v = a * y[j].1;
                if !v.is_zero() {
                    out.push((y[j].0, v));
                }
                j += 1;
            } else {
                let v = x[i].1 + a * y[j].1;
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot_dense(&self, v: &[F]) -> F {
        self.entries.iter().map(|&(i, a)| a * v[i as usize]).sum()
    }
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix { n_rows, n_cols, rows: vec![SparseVec::new(); n_rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { n_rows: n, n_cols: n, rows: (0..n as u32).map(SparseVec::unit).collect() }
    }

    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(u32, F)>> = vec![Vec::new(); n_rows];
        for (r, c, v) in triplets {
            if r >= n_rows {
                return Err(Error::DimensionMismatch { expected: n_rows, found: r + 1 });
            }
            if c >= n_cols {
                return Err(Error::DimensionMismatch { expected: n_cols, found: c + 1 });
            }
            buckets[r].push((c as u32, v));
        }
        Ok(SparseMatrix { n_rows, n_cols, rows: buckets.into_iter().map(SparseVec::from_pairs).collect() })
    }

    pub fn from_rows(n_cols: usize, rows: Vec<SparseVec<F>>) -> Result<Self> {
        for r in &rows {
            if let Some(m) = r.max_index() {
                if m as usize >= n_cols {
                    return Err(Error::DimensionMismatch { expected: n_cols, found: m as usize + 1 });
                }
            }
        }
        Ok(SparseMatrix { n_rows: rows.len(), n_cols, rows })
    }

    /// Matrix whose columns are the given vectors of length `n_rows`.
    pub fn from_columns(n_rows: usize, columns: &[SparseVec<F>]) -> Result<Self> {
        Self::from_triplets(
            n_rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(j, c)| c.entries().iter().map(move |&(i, v)| (i as usize, j, v))),
        )
    }

    pub fn from_dense(m: &DenseMatrix<F>) -> Self {
        SparseMatrix {
            n_rows: m.rows(),
            n_cols: m.cols(),
            rows: (0..m.rows()).map(|i| SparseVec::from_dense(m.row(i))).collect(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<F> {
        let mut d = DenseMatrix::zeros(self.n_rows, self.n_cols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r.entries() {
                d[(i, j as usize)] = v;
            }
        }
        d
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }

    pub fn row(&self, i: usize) -> &SparseVec<F> {
        &self.rows[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.rows[r].get(c as u32)
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(u32, F)>> = vec![Vec::new(); self.n_cols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r.entries() {
                buckets[j as usize].push((i as u32, v));
            }
        }
        SparseMatrix {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            rows: buckets.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    pub fn columns(&self) -> Vec<SparseVec<F>> {
        self.transpose().rows
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.n_cols {
            return Err(Error::DimensionMismatch { expected: self.n_cols, found: v.len() });
        }
        Ok(self.rows.iter().map(|r| r.dot_dense(v)).collect())
    }

    /// Keep only the listed columns, renumbered in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut map = vec![u32::MAX; self.n_cols];
        for (k, &c) in cols.iter().enumerate() {
            map[c] = k as u32;
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                SparseVec::from_pairs(
                    r.entries()
                        .iter()
                        .filter(|&&(j, _)| map[j as usize] != u32::MAX)
                        .map(|&(j, v)| (map[j as usize], v))
                        .collect(),
                )
            })
            .collect();
        SparseMatrix { n_rows: self.n_rows, n_cols: cols.len(), rows }
    }

    pub fn echelon(&self) -> Echelon<F> {
        eliminate(self.rows.clone(), self.n_cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }
}

/// Row echelon data produced by elimination.
///
/// Pivot rows are stored in elimination order. Each is normalised to 1 at its
/// pivot column and is zero at the pivot columns of all earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    n_cols: usize,
    rows: Vec<SparseVec<F>>,
    pivot_cols: Vec<u32>,
    source_rows: Vec<Option<usize>>,
    pivot_of_col: Vec<Option<u32>>,
}

impl<F: Field> Echelon<F> {
    pub fn empty(n_cols: usize) -> Self {
        Echelon {
            n_cols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            source_rows: Vec::new(),
            pivot_of_col: vec![None; n_cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Pivot columns in elimination order.
    pub fn pivot_columns(&self) -> &[u32] {
        &self.pivot_cols
    }

    pub fn is_pivot_column(&self, c: usize) -> bool {
        self.pivot_of_col[c].is_some()
    }

    /// Indices of the input rows that became pivots; together they span the row space.
    pub fn source_rows(&self) -> Vec<usize> {
        self.source_rows.iter().flatten().copied().collect()
    }

    pub fn pivot_rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    fn push(&mut self, row: SparseVec<F>, pivot: u32, source: Option<usize>) {
        self.pivot_of_col[pivot as usize] = Some(self.rows.len() as u32);
        self.rows.push(row);
        self.pivot_cols.push(pivot);
        self.source_rows.push(source);
    }

    /// Reduce `v` modulo the row space; afterwards `v` vanishes on every pivot column.
    pub fn reduce(&self, v: &mut [F]) {
        for (row, &c) in self.rows.iter().zip(&self.pivot_cols) {
            let a = v[c as usize];
            if a.is_zero() {
                continue;
            }
            for &(j, b) in row.entries() {
                v[j as usize] -= a * b;
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Add `v` to the row space if it is independent; returns whether the rank grew.
    pub fn insert(&mut self, v: &[F], source: Option<usize>) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let mut row = SparseVec::from_dense(&w);
        row.scale(w[p].inv().expect("nonzero"));
        self.push(row, p as u32, source);
        true
    }

    /// Basis of the right nullspace `{x : row . x = 0 for all rows}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<SparseVec<F>> {
        let free: Vec<usize> = (0..self.n_cols).filter(|&c| self.pivot_of_col[c].is_none()).collect();
        let mut x = vec![F::zero(); self.n_cols];
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            x[f] = F::one();
            let mut touched = vec![f as u32];
            for (row, &c) in self.rows.iter().zip(&self.pivot_cols).rev() {
                let s: F = row
                    .entries()
                    .iter()
                    .filter(|&&(j, _)| j != c)
                    .map(|&(j, a)| a * x[j as usize])
                    .sum();
                if !s.is_zero() {
                    x[c as usize] = -s;
                    touched.push(c);
                }
            }
            let vec = SparseVec::from_pairs(touched.iter().map(|&i| (i, x[i as usize])).collect());
            for &i in &touched {
                x[i as usize] = F::zero();
            }
            out.push(vec);
        }
        out
    }
}

/// Eliminate the given rows (each of length `n_cols`).
pub fn eliminate<F: Field>(rows: Vec<SparseVec<F>>, n_cols: usize) -> Echelon<F> {
    let n_rows = rows.len();
    let mut rows = rows;
    let mut active = vec![true; n_rows];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n_cols];
    let mut col_count = vec![0u32; n_cols];
    let mut heap = BinaryHeap::with_capacity(n_rows);
    let mut active_nnz = 0usize;
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r.entries() {
            col_rows[j as usize].push(i as u32);
            col_count[j as usize] += 1;
        }
        active_nnz += r.nnz();
        heap.push(Reverse((r.nnz(), i)));
    }
    let mut active_rows = n_rows;
    let mut active_cols = col_count.iter().filter(|&&c| c > 0).count();
    let mut ech = Echelon::empty(n_cols);

    while let Some(Reverse((nnz, r))) = heap.pop() {
        if !active[r] || rows[r].nnz() != nnz {
            continue;
        }
        if nnz == 0 {
            active[r] = false;
            active_rows -= 1;
            continue;
        }
        if active_rows >= DENSE_SWITCH_MIN_ROWS
            && active_rows.saturating_mul(active_cols) <= DENSE_SWITCH_MAX_ENTRIES
            && active_nnz as f64 > DENSE_SWITCH_DENSITY * (active_rows * active_cols) as f64
        {
            heap.push(Reverse((nnz, r)));
            break;
        }
        let (c, a) = rows[r]
            .entries()
            .iter()
            .min_by_key(|&&(j, _)| (col_count[j as usize], j))
            .copied()
            .expect("nonempty row");
        let mut pivot = std::mem::take(&mut rows[r]);
        pivot.scale(a.inv().expect("nonzero pivot"));
        for s in std::mem::take(&mut col_rows[c as usize]) {
            let s = s as usize;
            if s == r || !active[s] {
                continue;
            }
            let f = rows[s].get(c);
            if f.is_zero() {
                continue;
            }
            let old = std::mem::take(&mut rows[s]);
            let new = old.add_scaled(-f, &pivot);
            // Update column bookkeeping from the symmetric difference of supports.
            let (o, n) = (old.entries(), new.entries());
            let (mut i, mut k) = (0, 0);
            while i < o.len() || k < n.len() {
                if k == n.len() || (i < o.len() && o[i].0 < n[k].0) {
                    let j = o[i].0 as usize;
                    col_count[j] -= 1;
                    if col_count[j] == 0 {
                        active_cols -= 1;
                    }
                    i += 1;
                } else if i == o.len() || n[k].0 < o[i].0 {
                    let j = n[k].0 as usize;
                    if col_count[j] == 0 {
                        active_cols += 1;
                    }
                    col_count[j] += 1;
                    col_rows[j].push(s as u32);
                    k += 1;
                } else {
                    i += 1;
                    k += 1;
                }
            }
            active_nnz = active_nnz + n.len() - o.len();
            heap.push(Reverse((n.len(), s)));
            rows[s] = new;
        }
        for &(j, _) in pivot.entries() {
            col_count[j as usize] -= 1;
            if col_count[j as usize] == 0 {
                active_cols -= 1;
            }
        }
        active_nnz -= pivot.nnz();
        active[r] = false;
        active_rows -= 1;
        ech.push(pivot, c, Some(r));
    }

    let remaining: Vec<usize> = (0..n_rows).filter(|&i| active[i] && rows[i].nnz() > 0).collect();
    if !remaining.is_empty() {
        dense_finish(&mut ech, &rows, &remaining, &col_count);
    }
    ech
}

fn dense_finish<F: Field>(
    ech: &mut Echelon<F>,
    rows: &[SparseVec<F>],
    remaining: &[usize],
    col_count: &[u32],
) {
    let cols: Vec<u32> = (0..col_count.len() as u32).filter(|&j| col_count[j as usize] > 0).collect();
    let mut local = vec![u32::MAX; col_count.len()];
    for (k, &j) in cols.iter().enumerate() {
        local[j as usize] = k as u32;
    }
    let (m, n) = (remaining.len(), cols.len());
    let mut d = DenseMatrix::<F>::zeros(m, n);
    for (i, &r) in remaining.iter().enumerate() {
        for &(j, v) in rows[r].entries() {
            d[(i, local[j as usize] as usize)] = v;
        }
    }
    let mut origin: Vec<usize> = remaining.to_vec();
    let mut next = 0;
    for c in 0..n {
        if next == m {
            break;
        }
        let Some(p) = (next..m).find(|&i| !d[(i, c)].is_zero()) else {
            continue;
        };
        d.swap_rows(next, p);
        origin.swap(next, p);
        let inv = d[(next, c)].inv().expect("nonzero pivot");
        for v in &mut d.row_mut(next)[c..] {
            *v *= inv;
        }
        for i in next + 1..m {
            let f = d[(i, c)];
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = d[(i, j)] - f * d[(next, j)];
                d[(i, j)] = v;
            }
        }
        let row = SparseVec::from_pairs(
            (c..n).filter(|&j| !d[(next, j)].is_zero()).map(|j| (cols[j], d[(next, j)])).collect(),
        );
        ech.push(row, cols[c], Some(origin[next]));
        next += 1;
    }
}
