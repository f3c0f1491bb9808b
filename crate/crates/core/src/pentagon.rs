//! The three-dimensional case: colorings of triangles by 1-cocycles modulo
//! `omega_ij = z_i - z_j`, the resulting 2x2 transfer matrix on a tetrahedron and its
//! normalized orthogonal form.

use std::collections::BTreeMap;

use crate::algebra::{DenseMatrix, Field};
use crate::coloring::{check_full_polygon, face_subface_positions, permitted_with_bases, ColorBasis};
use crate::error::{Error, Result};
use crate::simplicial::combinations;

/// Vertex parameters `z_1, ..., z_n`, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonData<F> {
    z: Vec<F>,
}

impl<F: Field> PentagonData<F> {
    pub fn new(z: Vec<F>) -> Result<Self> {
        for i in 0..z.len() {
            for j in i + 1..z.len() {
                if z[i] == z[j] {
                    return Err(Error::ZeroParameter { simplex: vec![i as u32, j as u32] });
                }
            }
        }
        Ok(PentagonData { z })
    }

    pub fn z(&self) -> &[F] {
        &self.z
    }

    /// `omega_ij = z_i - z_j` on the edges of the simplex spanned by all vertices, lexicographic.
    pub fn omega(&self) -> Vec<F> {
        combinations(self.z.len(), 2).iter().map(|e| self.z[e[0]] - self.z[e[1]]).collect()
    }
}

/// The matrix sending `(x_123, x_134)` to `(x_124, x_234)` on the tetrahedron `1234`.
pub fn pentagon_matrix<F: Field>(data: &PentagonData<F>) -> Result<DenseMatrix<F>> {
    let z = data.z();
    if z.len() < 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: z.len() });
    }
    let d = |i: usize, j: usize| z[i - 1] - z[j - 1];
    let den = (d(3, 1) * d(4, 2)).try_inv()?;
    let r = d(3, 2) * d(3, 1).try_inv()?;
    DenseMatrix::from_rows(&[vec![d(3, 2) * d(4, 1) * den, d(2, 1) * d(4, 3) * den], vec![-r, r]])
}

/// `r_ijk = sqrt((z_k - z_j) / ((z_k - z_i)(z_j - z_i)))`, when the root exists (1-based).
pub fn normalization<F: Field>(data: &PentagonData<F>, i: usize, j: usize, k: usize) -> Result<Option<F>> {
    let z = data.z();
    let (zi, zj, zk) = (z[i - 1], z[j - 1], z[k - 1]);
    Ok(((zk - zj) * ((zk - zi) * (zj - zi)).try_inv()?).sqrt())
}

/// Matrix acting on normalized colors `y_ijk = r_ijk x_ijk`, or `None` without square roots.
pub fn normalized_matrix<F: Field>(data: &PentagonData<F>) -> Result<Option<DenseMatrix<F>>> {
    let m = pentagon_matrix(data)?;
    let r = |i, j, k| normalization(data, i, j, k);
    let (Some(r123), Some(r124), Some(r134), Some(r234)) = (r(1, 2, 3)?, r(1, 2, 4)?, r(1, 3, 4)?, r(2, 3, 4)?) else {
        return Ok(None);
    };
    let (i123, i134) = (r123.try_inv()?, r134.try_inv()?);
    Ok(Some(DenseMatrix::from_rows(&[
        vec![r124 * m[(0, 0)] * i123, r124 * m[(0, 1)] * i134],
        vec![r234 * m[(1, 0)] * i123, r234 * m[(1, 1)] * i134],
    ])?))
}

/// Whether a normalized matrix has the form `[[a, b], [-b, a]]` with `a^2 + b^2 = 1`, up to
/// the signs of the chosen square roots.
pub fn is_orthogonal_form<F: Field>(n: &DenseMatrix<F>) -> bool {
    let sq = |i, j| n[(i, j)] * n[(i, j)];
    sq(0, 0) == sq(1, 1) && sq(0, 1) == sq(1, 0) && sq(0, 0) + sq(0, 1) == F::one()
}

/// The same matrix derived from the permitted subspace of the tetrahedron with the
/// basis `(1, 1, 0)` on every triangle.
pub fn framework_matrix<F: Field>(data: &PentagonData<F>) -> Result<DenseMatrix<F>> {
    let z = &data.z()[..4];
    let sub = PentagonData::new(z.to_vec())?;
    let omega = sub.omega();
    let bases = face_subface_positions(3, 1)
        .iter()
        .map(|pos| {
            ColorBasis::with_reps(&pos.iter().map(|&i| omega[i]).collect::<Vec<_>>(), vec![vec![F::one(), F::one(), F::zero()]])
        })
        .collect::<Result<Vec<_>>>()?;
    let p = permitted_with_bases(3, &omega, bases)?;
    // Faces in lexicographic order are 123, 124, 134, 234.
    let rows = p.basis.row_vecs();
    let inputs = DenseMatrix::from_rows(&rows.iter().map(|r| vec![r[0], r[2]]).collect::<Vec<_>>())?;
    let outputs = DenseMatrix::from_rows(&rows.iter().map(|r| vec![r[1], r[3]]).collect::<Vec<_>>())?;
    // rows: inputs * M^T = outputs, so M^T = inputs^{-1} outputs.
    Ok(inputs.inverse()?.mul(&outputs)?.transpose())
}

/// The full pentagon relation for parameters on five vertices: every split of the
/// tetrahedra of the 4-simplex boundary gives equal boundary coloring spaces.
pub fn pentagon_relation_check<F: Field>(data: &PentagonData<F>) -> Result<bool> {
    if data.z().len() != 5 {
        return Err(Error::DimensionMismatch { expected: 5, found: data.z().len() });
    }
    let omega = data.omega();
    for m in 1..5 {
        if !check_full_polygon(3, &omega, m)?.iter().all(|c| c.equal) {
            return Ok(false);
        }
    }
    Ok(true)
}

type Poly = BTreeMap<[u32; 4], i64>;

fn linear(i: usize, j: usize) -> Poly {
    let mut p = Poly::new();
    let mut a = [0; 4];
    a[i - 1] = 1;
    p.insert(a, 1);
    let mut b = [0; 4];
    b[j - 1] = 1;
    *p.entry(b).or_insert(0) -= 1;
    p
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `(z3-z2)(z4-z1) + (z2-z1)(z4-z3) - (z3-z1)(z4-z2)` expanded over the integers; the
/// identity `a^2 + b^2 = 1` holds because this is the zero polynomial.
pub fn cross_ratio_residual() -> BTreeMap<[u32; 4], i64> {
    let mut out = mul(&linear(3, 2), &linear(4, 1));
    for (e, c) in mul(&linear(2, 1), &linear(4, 3)) {
        *out.entry(e).or_insert(0) += c;
    }
    for (e, c) in mul(&linear(3, 1), &linear(4, 2)) {
        *out.entry(e).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::seeded_rng;
    use crate::{Gf2_15, Gf3_9};

    fn random_z<F: Field>(n: usize, seed: u64) -> PentagonData<F> {
        let mut rng = seeded_rng(seed);
        loop {
            if let Ok(d) = PentagonData::new((0..n).map(|_| F::random(&mut rng)).collect()) {
                return d;
            }
        }
    }

    #[test]
    fn matrix_matches_framework() {
        for seed in 0..5 {
            let d = random_z::<Gf3_9>(4, seed);
            assert_eq!(pentagon_matrix(&d).unwrap(), framework_matrix(&d).unwrap());
            let d = random_z::<Gf2_15>(4, seed);
            assert_eq!(pentagon_matrix(&d).unwrap(), framework_matrix(&d).unwrap());
        }
    }

    #[test]
    fn normalized_form_is_orthogonal() {
        assert!(cross_ratio_residual().is_empty());
        let d = random_z::<Gf2_15>(4, 11);
        assert!(is_orthogonal_form(&normalized_matrix(&d).unwrap().unwrap()));
    }

    #[test]
    fn repeated_parameters_are_rejected() {
        let z = vec![Gf3_9::new(1), Gf3_9::new(2), Gf3_9::new(1), Gf3_9::new(4)];
        assert!(PentagonData::new(z).is_err());
    }

    #[test]
    fn relation_holds() {
        assert!(pentagon_relation_check(&random_z::<Gf2_15>(5, 1)).unwrap());
        assert!(pentagon_relation_check(&random_z::<Gf3_9>(5, 2)).unwrap());
    }
}
