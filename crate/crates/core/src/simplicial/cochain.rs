use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::simplicial::Complex;

/// A `q`-cochain: one value per `q`-face, indexed like [`Complex::face`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<F> {
    degree: usize,
    values: Vec<F>,
}

impl<F: Field> Cochain<F> {
    pub fn zero(c: &Complex, degree: usize) -> Self {
        Cochain { degree, values: vec![F::zero(); c.n_faces(degree)] }
    }

    pub fn new(c: &Complex, degree: usize, values: Vec<F>) -> Result<Self> {
        if values.len() != c.n_faces(degree) {
            return Err(Error::DimensionMismatch { expected: c.n_faces(degree), found: values.len() });
        }
        Ok(Cochain { degree, values })
    }

    /// Zero cochain of the same degree and length.
    pub fn zero_like(&self) -> Self {
        Cochain { degree: self.degree, values: vec![F::zero(); self.values.len()] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [F] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<F> {
        self.values
    }

    #[inline]
    pub fn get(&self, i: usize) -> F {
        self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Whether the cochain is nonzero on every face.
    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    /// Values on the faces with the given indices.
    pub fn restrict(&self, faces: &[u32]) -> Vec<F> {
        faces.iter().map(|&i| self.values[i as usize]).collect()
    }

    pub fn add_scaled(&mut self, a: F, other: &Self) {
        for (x, &y) in self.values.iter_mut().zip(&other.values) {
            *x += a * y;
        }
    }

    /// Image under a change of scalars (for example `GF(2) -> GF(2^k)`).
    pub fn map<G: Field>(&self, f: impl Fn(F) -> G) -> Cochain<G> {
        Cochain { degree: self.degree, values: self.values.iter().map(|&v| f(v)).collect() }
    }
}

/// `(delta x)(s) = sum_k (-1)^k x(s with its k-th vertex removed)`.
pub fn coboundary<F: Field>(c: &Complex, x: &Cochain<F>) -> Cochain<F> {
    let q = x.degree + 1;
    let values = (0..c.n_faces(q))
        .map(|i| {
            c.boundary_faces(q, i)
                .iter()
                .enumerate()
                .map(|(k, &b)| if k % 2 == 0 { x.values[b as usize] } else { -x.values[b as usize] })
                .sum()
        })
        .collect();
    Cochain { degree: q, values }
}

/// Coboundary of a cochain on a single `m`-simplex, faces in lexicographic order.
///
/// `x` lists the values on the `q`-faces of the standard `m`-simplex; the result
/// lists the values on its `(q+1)`-faces.
pub fn local_coboundary<F: Field>(m: usize, q: usize, x: &[F]) -> Vec<F> {
    let faces = crate::simplicial::combinations(m + 1, q + 1);
    let cofaces = crate::simplicial::combinations(m + 1, q + 2);
    cofaces
        .iter()
        .map(|s| {
            (0..s.len())
                .map(|k| {
                    let sub: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
                    let idx = faces.binary_search(&sub).expect("subface");
                    if k % 2 == 0 {
                        x[idx]
                    } else {
                        -x[idx]
                    }
                })
                .sum()
        })
        .collect()
}
