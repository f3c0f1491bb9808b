//! Subspaces of `F^n` given by explicit bases.

use crate::algebra::sparse::{eliminate, Echelon, SparseMatrix, SparseVec};
use crate::algebra::Field;
use crate::error::{Error, Result};

/// A linearly independent list of vectors in `F^ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis<F> {
    ambient: usize,
    vectors: Vec<SparseVec<F>>,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis { ambient, vectors: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceBasis { ambient, vectors: (0..ambient as u32).map(SparseVec::unit).collect() }
    }

    /// Fails with [`Error::LinearlyDependent`] unless the vectors are independent.
    pub fn from_vectors(ambient: usize, vectors: Vec<SparseVec<F>>) -> Result<Self> {
        for v in &vectors {
            if v.max_index().is_some_and(|m| m as usize >= ambient) {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.max_index().unwrap() as usize + 1 });
            }
        }
        let b = SubspaceBasis { ambient, vectors };
        if b.echelon().rank() != b.vectors.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(b)
    }

    pub fn from_dense_vectors(ambient: usize, vectors: &[Vec<F>]) -> Result<Self> {
        Self::from_vectors(ambient, vectors.iter().map(|v| SparseVec::from_dense(v)).collect())
    }

    pub(crate) fn from_independent(ambient: usize, vectors: Vec<SparseVec<F>>) -> Self {
        SubspaceBasis { ambient, vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[SparseVec<F>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<SparseVec<F>> {
        self.vectors
    }

    pub fn echelon(&self) -> Echelon<F> {
        eliminate(self.vectors.clone(), self.ambient)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.echelon().contains(v)
    }

    /// Whether every vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        let e = other.echelon();
        self.vectors.iter().all(|v| e.contains(&v.to_dense(self.ambient)))
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.is_subspace_of(other)
    }

    /// The basis as the columns of an `ambient x dim` matrix.
    pub fn as_matrix(&self) -> SparseMatrix<F> {
        SparseMatrix::from_columns(self.ambient, &self.vectors).expect("indices in range")
    }
}

/// Rank of `m` and a basis of its right nullspace.
pub fn rank_and_nullspace<F: Field>(m: &SparseMatrix<F>) -> (usize, SubspaceBasis<F>) {
    let e = m.echelon();
    let ns = e.nullspace();
    (e.rank(), SubspaceBasis::from_independent(m.n_cols(), ns))
}

/// Basis of the column space of `m`, made of a subset of its columns.
pub fn column_space<F: Field>(m: &SparseMatrix<F>) -> SubspaceBasis<F> {
    let cols = m.columns();
    let e = eliminate(cols.clone(), m.n_rows());
    let mut src = e.source_rows();
    src.sort_unstable();
    SubspaceBasis::from_independent(m.n_rows(), src.into_iter().map(|j| cols[j].clone()).collect())
}

/// Vectors of `sup` that extend a basis of `sub` to a basis of `span(sup)`.
///
/// Candidates are scanned in the order given; [`Error::NotASubspace`] if
/// `sub` is not contained in `span(sup)`.
pub fn complement_in<F: Field>(sub: &SubspaceBasis<F>, sup: &SubspaceBasis<F>) -> Result<SubspaceBasis<F>> {
    if sub.ambient != sup.ambient {
        return Err(Error::DimensionMismatch { expected: sup.ambient, found: sub.ambient });
    }
    if !sub.is_subspace_of(sup) {
        return Err(Error::NotASubspace);
    }
    let mut e = sub.echelon();
    let mut out = Vec::new();
    for v in &sup.vectors {
        if e.insert(&v.to_dense(sup.ambient), None) {
            out.push(v.clone());
        }
    }
    Ok(SubspaceBasis::from_independent(sup.ambient, out))
}
