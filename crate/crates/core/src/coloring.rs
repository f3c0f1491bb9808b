//! Colorings: per-face color spaces, permitted colorings of a simplex, and the global
//! spaces of permitted and gauge colorings.
//!
//! Throughout, `d` is the dimension of the top simplices and the parameter `omega` is a
//! nowhere-zero cocycle of degree `q = d - 2`. A color on a `(d-1)`-face `u` is an
//! element of `Z^q(u) / <omega|_u>`, written in coordinates with respect to a
//! [`ColorBasis`]. Local faces of a simplex are always listed in lexicographic order of
//! their vertex subsets, so face `i` of a `d`-simplex omits vertex `d - i`.

use crate::algebra::sparse::SparseVec;
use crate::algebra::subspace::complement_in;
use crate::algebra::{DenseMatrix, Field, SparseMatrix, SubspaceBasis};
use crate::error::{Error, Result};
use crate::simplicial::{combinations, Cochain, Complex};

/// Basis of `Z^q(Δ^m)` for the standard `m`-simplex, faces in lexicographic order.
pub fn local_cocycle_basis<F: Field>(m: usize, q: usize) -> Vec<Vec<F>> {
    let n = combinations(m + 1, q + 1).len();
    if q >= m {
        return (0..n)
            .map(|i| {
                let mut v = vec![F::zero(); n];
                v[i] = F::one();
                v
            })
            .collect();
    }
    local_coboundary_matrix::<F>(m, q).nullspace()
}

/// Matrix of `delta^q` on the standard `m`-simplex.
pub fn local_coboundary_matrix<F: Field>(m: usize, q: usize) -> DenseMatrix<F> {
    let lower = combinations(m + 1, q + 1);
    let upper = combinations(m + 1, q + 2);
    let mut d = DenseMatrix::zeros(upper.len(), lower.len());
    for (i, s) in upper.iter().enumerate() {
        for k in 0..s.len() {
            let sub: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
            let j = lower.binary_search(&sub).expect("subface");
            d[(i, j)] = if k % 2 == 0 { F::one() } else { -F::one() };
        }
    }
    d
}

/// For each lexicographic `(m-1)`-face of `Δ^m`, the positions of its own `r`-faces
/// inside the list of `r`-faces of `Δ^m` (both lexicographic).
pub fn face_subface_positions(m: usize, r: usize) -> Vec<Vec<usize>> {
    let all = combinations(m + 1, r + 1);
    combinations(m + 1, m)
        .iter()
        .map(|face| {
            combinations(m, r + 1)
                .iter()
                .map(|c| {
                    let sub: Vec<usize> = c.iter().map(|&k| face[k]).collect();
                    all.binary_search(&sub).expect("subface")
                })
                .collect()
        })
        .collect()
}

/// Coordinates on the color space of one face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorBasis<F> {
    omega: Vec<F>,
    reps: Vec<Vec<F>>,
    /// `(r+1) x n` matrix whose product with `[reps | omega]` is the identity.
    left_inverse: DenseMatrix<F>,
}

impl<F: Field> ColorBasis<F> {
    /// Canonical basis: the reduced echelon basis of the cocycles vanishing on the first face.
    ///
    /// `omega` holds the parameter on the faces of the simplex, lexicographic order.
    pub fn canonical(omega: &[F]) -> Result<Self> {
        let n = omega.len();
        if n < 2 {
            return Err(Error::Unsupported("color spaces need a simplex of dimension at least 1".into()));
        }
        let z = local_cocycle_basis::<F>(n - 1, n - 2);
        let mut rows = vec![omega.to_vec()];
        rows.extend(z);
        let (r, pivots) = DenseMatrix::from_rows(&rows)?.rref();
        let reps: Vec<Vec<F>> = pivots
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, _)| r.row(i).to_vec())
            .collect();
        Self::with_reps(omega, reps)
    }

    /// Basis given by explicit cocycle representatives.
    pub fn with_reps(omega: &[F], reps: Vec<Vec<F>>) -> Result<Self> {
        let n = omega.len();
        if omega.iter().any(|w| w.is_zero()) {
            return Err(Error::ZeroParameter { simplex: Vec::new() });
        }
        let m = n - 1;
        let delta = local_coboundary_matrix::<F>(m, m - 1);
        for v in reps.iter().chain(std::iter::once(&omega.to_vec())) {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
            if delta.mul_vec(v)?.iter().any(|x| !x.is_zero()) {
                return Err(Error::NotACocycle("color representative".into()));
            }
        }
        let expected = local_cocycle_basis::<F>(m, m - 1).len() - 1;
        if reps.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: reps.len() });
        }
        let mut cols = reps.clone();
        cols.push(omega.to_vec());
        let mat = DenseMatrix::from_columns(n, &cols)?;
        // Invert the square block on a maximal set of independent rows.
        let (_, rows) = mat.transpose().rref();
        if rows.len() != cols.len() {
            return Err(Error::LinearlyDependent);
        }
        let square = DenseMatrix::from_rows(&rows.iter().map(|&i| mat.row(i).to_vec()).collect::<Vec<_>>())?;
        let inv = square.inverse()?;
        let mut left_inverse = DenseMatrix::zeros(cols.len(), n);
        for (k, &i) in rows.iter().enumerate() {
            for a in 0..cols.len() {
                left_inverse[(a, i)] = inv[(a, k)];
            }
        }
        Ok(ColorBasis { omega: omega.to_vec(), reps, left_inverse })
    }

    /// Number of color coordinates.
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vec<F>] {
        &self.reps
    }

    pub fn omega(&self) -> &[F] {
        &self.omega
    }

    /// Coordinates of the color of the cocycle `nu` (values on the faces, lexicographic).
    pub fn coordinates(&self, nu: &[F]) -> Result<Vec<F>> {
        let full = self.left_inverse.mul_vec(nu)?;
        let mut back: Vec<F> = vec![F::zero(); nu.len()];
        for (a, v) in self.reps.iter().chain(std::iter::once(&self.omega)).enumerate() {
            for (b, x) in back.iter_mut().zip(v) {
                *b += full[a] * *x;
            }
        }
        if back != nu {
            return Err(Error::NotACocycle("value is not a cocycle on the face".into()));
        }
        Ok(full[..self.rank()].to_vec())
    }

    /// The representative cocycle `sum_i x_i reps_i` of a color.
    pub fn representative(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.omega.len()];
        for (r, &a) in self.reps.iter().zip(x) {
            if a.is_zero() {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(r) {
                *o += a * v;
            }
        }
        out
    }
}

/// Permitted colorings of one `d`-simplex.
#[derive(Clone, Debug)]
pub struct PermittedSubspace<F> {
    pub d: usize,
    /// Color bases of the `d + 1` faces, lexicographic.
    pub bases: Vec<ColorBasis<F>>,
    /// Basis rows of the permitted subspace of `F^{(d+1) r}`.
    pub basis: DenseMatrix<F>,
    /// Rows spanning the annihilator: `x` is permitted iff `constraints x = 0`.
    pub constraints: DenseMatrix<F>,
}

impl<F: Field> PermittedSubspace<F> {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, x: &[F]) -> bool {
        self.constraints.mul_vec(x).map(|v| v.iter().all(|a| a.is_zero())).unwrap_or(false)
    }
}

/// Colors of the restrictions of a cocycle on `Δ^d` to its faces, concatenated.
pub fn restrict_colors<F: Field>(bases: &[ColorBasis<F>], positions: &[Vec<usize>], nu: &[F]) -> Result<Vec<F>> {
    let mut out = Vec::new();
    for (b, pos) in bases.iter().zip(positions) {
        let local: Vec<F> = pos.iter().map(|&i| nu[i]).collect();
        out.extend(b.coordinates(&local)?);
    }
    Ok(out)
}

/// Permitted subspace of a `d`-simplex with parameter `omega` on its `(d-2)`-faces
/// (lexicographic), using the canonical color bases.
pub fn permitted_subspace_local<F: Field>(d: usize, omega: &[F]) -> Result<PermittedSubspace<F>> {
    let q = d - 2;
    let positions = face_subface_positions(d, q);
    let bases = positions
        .iter()
        .map(|pos| ColorBasis::canonical(&pos.iter().map(|&i| omega[i]).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    permitted_with_bases(d, omega, bases)
}

/// As [`permitted_subspace_local`] with the given face bases.
pub fn permitted_with_bases<F: Field>(d: usize, omega: &[F], bases: Vec<ColorBasis<F>>) -> Result<PermittedSubspace<F>> {
    let q = d - 2;
    let positions = face_subface_positions(d, q);
    let check = local_coboundary_matrix::<F>(d, q).mul_vec(omega)?;
    if check.iter().any(|x| !x.is_zero()) {
        return Err(Error::NotACocycle("parameter on the simplex".into()));
    }
    let gens = local_cocycle_basis::<F>(d, q)
        .iter()
        .map(|z| restrict_colors(&bases, &positions, z))
        .collect::<Result<Vec<_>>>()?;
    let g = DenseMatrix::from_rows(&gens)?;
    let (r, pivots) = g.rref();
    let basis = DenseMatrix::from_rows(&(0..pivots.len()).map(|i| r.row(i).to_vec()).collect::<Vec<_>>())?;
    let ns = g.nullspace();
    let constraints = if ns.is_empty() { DenseMatrix::zeros(0, g.cols()) } else { DenseMatrix::from_rows(&ns)? };
    Ok(PermittedSubspace { d, bases, basis, constraints })
}

/// Canonical color bases of every `(d-1)`-face of a complex.
pub fn color_bases<F: Field>(c: &Complex, omega: &Cochain<F>) -> Result<Vec<ColorBasis<F>>> {
    let d = c.dim();
    if omega.degree() + 2 != d {
        return Err(Error::DimensionMismatch { expected: d - 2, found: omega.degree() });
    }
    (0..c.n_faces(d - 1))
        .map(|u| {
            let ts = c.subfaces(d - 1, u, d - 2);
            ColorBasis::canonical(&omega.restrict(&ts)).map_err(|e| match e {
                Error::ZeroParameter { .. } => Error::ZeroParameter { simplex: c.face(d - 1, u).to_vec() },
                e => e,
            })
        })
        .collect()
}

/// Permitted subspace of facet `f` of `c`, built from the global face bases.
pub fn permitted_subspace<F: Field>(
    c: &Complex,
    omega: &Cochain<F>,
    bases: &[ColorBasis<F>],
    f: usize,
) -> Result<PermittedSubspace<F>> {
    let d = c.dim();
    let local_omega = omega.restrict(&c.subfaces(d, f, d - 2));
    let faces = facet_faces_lex(c, f);
    permitted_with_bases(d, &local_omega, faces.iter().map(|&u| bases[u as usize].clone()).collect())
}

/// Global indices of the `(d-1)`-faces of facet `f`, lexicographic.
pub fn facet_faces_lex(c: &Complex, f: usize) -> Vec<u32> {
    let mut b = c.boundary_faces(c.dim(), f).to_vec();
    b.reverse();
    b
}

/// Global coloring spaces computed directly by sparse elimination.
#[derive(Clone, Debug)]
pub struct ColoringSpaces<F> {
    /// Coordinates per face.
    pub rank: usize,
    pub n_faces: usize,
    pub permitted_dim: usize,
    pub gauge: SubspaceBasis<F>,
    /// Permitted colorings vanishing on the gauge pivot coordinates; a complement of the gauge space.
    pub complement: SubspaceBasis<F>,
}

impl<F: Field> ColoringSpaces<F> {
    pub fn gauge_dim(&self) -> usize {
        self.gauge.dim()
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.dim()
    }
}

/// Sparse matrix whose kernel is the space of globally permitted colorings.
pub fn global_constraints<F: Field>(c: &Complex, omega: &Cochain<F>, bases: &[ColorBasis<F>]) -> Result<SparseMatrix<F>> {
    let r = bases.first().map_or(0, |b| b.rank());
    let n_cols = c.n_faces(c.dim() - 1) * r;
    let mut rows = Vec::new();
    for f in 0..c.n_facets() {
        let p = permitted_subspace(c, omega, bases, f)?;
        let faces = facet_faces_lex(c, f);
        for h in p.constraints.row_vecs() {
            let pairs = h
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, &v)| (faces[k / r] * r as u32 + (k % r) as u32, v))
                .collect();
            rows.push(SparseVec::from_pairs(pairs));
        }
    }
    SparseMatrix::from_rows(n_cols, rows)
}

/// Gauge colorings: the colors of `delta(e_tau)` for every `(d-3)`-face `tau`.
pub fn gauge_generators<F: Field>(c: &Complex, bases: &[ColorBasis<F>]) -> Result<Vec<SparseVec<F>>> {
    let d = c.dim();
    let q = d - 2;
    let r = bases.first().map_or(0, |b| b.rank());
    let mut by_tau: Vec<Vec<u32>> = vec![Vec::new(); c.n_faces(q - 1)];
    let face_q: Vec<Vec<u32>> = (0..c.n_faces(d - 1)).map(|u| c.subfaces(d - 1, u, q)).collect();
    for u in 0..c.n_faces(d - 1) {
        for tau in c.subfaces(d - 1, u, q - 1) {
            by_tau[tau as usize].push(u as u32);
        }
    }
    let mut out = Vec::with_capacity(by_tau.len());
    for (tau, us) in by_tau.iter().enumerate() {
        let mut pairs = Vec::new();
        for &u in us {
            let local: Vec<F> = face_q[u as usize]
                .iter()
                .map(|&t| {
                    match c.boundary_faces(q, t as usize).iter().position(|&b| b as usize == tau) {
                        Some(k) if k % 2 == 0 => F::one(),
                        Some(_) => -F::one(),
                        None => F::zero(),
                    }
                })
                .collect();
            let x = bases[u as usize].coordinates(&local)?;
            for (i, v) in x.into_iter().enumerate() {
                pairs.push((u * r as u32 + i as u32, v));
            }
        }
        out.push(SparseVec::from_pairs(pairs));
    }
    Ok(out)
}

/// Permitted and gauge spaces by direct elimination, with a complement of the gauge space
/// obtained by fixing the gauge pivot coordinates to zero.
pub fn global_spaces<F: Field>(c: &Complex, omega: &Cochain<F>) -> Result<(Vec<ColorBasis<F>>, ColoringSpaces<F>)> {
    let bases = color_bases(c, omega)?;
    let r = bases.first().map_or(0, |b| b.rank());
    let n = c.n_faces(c.dim() - 1) * r;
    let constraints = global_constraints(c, omega, &bases)?;
    let gens = gauge_generators(c, &bases)?;
    let ge = crate::algebra::sparse::eliminate(gens.clone(), n);
    let mut src = ge.source_rows();
    src.sort_unstable();
    let gauge = SubspaceBasis::from_independent(n, src.into_iter().map(|i| gens[i].clone()).collect());
    let permitted_dim = n - constraints.rank();
    let free: Vec<usize> = (0..n).filter(|&j| !ge.is_pivot_column(j)).collect();
    let restricted = constraints.select_columns(&free);
    let ns = restricted.echelon().nullspace();
    let complement = SubspaceBasis::from_independent(
        n,
        ns.into_iter()
            .map(|v| SparseVec::from_pairs(v.entries().iter().map(|&(j, a)| (free[j as usize] as u32, a)).collect()))
            .collect(),
    );
    Ok((bases, ColoringSpaces { rank: r, n_faces: c.n_faces(c.dim() - 1), permitted_dim, gauge, complement }))
}

/// Colorings of the common boundary of a cluster of facets of `∂Δ^{d+1}` that extend to
/// permitted colorings of every facet in the cluster.
///
/// `omega` is a nowhere-zero `(d-2)`-cocycle on `Δ^{d+1}` (lexicographic faces);
/// `cluster` lists facets of `∂Δ^{d+1}` by their lexicographic index. The ambient space
/// is indexed by the boundary `(d-1)`-faces in lexicographic order, `r` coordinates each.
pub fn cluster_boundary_space<F: Field>(d: usize, omega: &[F], cluster: &[usize]) -> Result<SubspaceBasis<F>> {
    let (faces, boundary) = cluster_faces(d, cluster);
    let q = d - 2;
    let all_q = combinations(d + 2, q + 1);
    let face_basis = |face: &[usize]| -> Result<ColorBasis<F>> {
        let w: Vec<F> = combinations(d, q + 1)
            .iter()
            .map(|c| omega[all_q.binary_search(&c.iter().map(|&k| face[k]).collect::<Vec<_>>()).expect("face")])
            .collect();
        ColorBasis::canonical(&w)
    };
    let bases = faces.iter().map(|f| face_basis(f)).collect::<Result<Vec<_>>>()?;
    let r = bases[0].rank();
    let facets = combinations(d + 2, d + 1);
    let mut rows: Vec<Vec<F>> = Vec::new();
    for &k in cluster {
        let facet = &facets[k];
        let local_faces: Vec<usize> = combinations(d + 1, d)
            .iter()
            .map(|c| faces.binary_search(&c.iter().map(|&i| facet[i]).collect::<Vec<_>>()).expect("face"))
            .collect();
        let local_omega: Vec<F> = combinations(d + 1, q + 1)
            .iter()
            .map(|c| omega[all_q.binary_search(&c.iter().map(|&i| facet[i]).collect::<Vec<_>>()).expect("face")])
            .collect();
        let p = permitted_with_bases(d, &local_omega, local_faces.iter().map(|&u| bases[u].clone()).collect())?;
        for h in p.constraints.row_vecs() {
            let mut row = vec![F::zero(); faces.len() * r];
            for (j, &v) in h.iter().enumerate() {
                row[local_faces[j / r] * r + j % r] = v;
            }
            rows.push(row);
        }
    }
    let sol = if rows.is_empty() {
        (0..faces.len() * r).map(|i| { let mut v = vec![F::zero(); faces.len() * r]; v[i] = F::one(); v }).collect()
    } else {
        DenseMatrix::from_rows(&rows)?.nullspace()
    };
    let projected: Vec<Vec<F>> = sol
        .iter()
        .map(|v| boundary.iter().flat_map(|&u| v[u * r..(u + 1) * r].to_vec()).collect())
        .collect();
    let amb = boundary.len() * r;
    if projected.is_empty() {
        return Ok(SubspaceBasis::zero(amb));
    }
    let (red, piv) = DenseMatrix::from_rows(&projected)?.rref();
    SubspaceBasis::from_dense_vectors(amb, &(0..piv.len()).map(|i| red.row(i).to_vec()).collect::<Vec<_>>())
}

/// `(d-1)`-faces of a cluster (lexicographic) and the positions of those on its boundary.
fn cluster_faces(d: usize, cluster: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let facets = combinations(d + 2, d + 1);
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut count: Vec<usize> = Vec::new();
    let mut all: Vec<Vec<usize>> = cluster
        .iter()
        .flat_map(|&k| {
            let facet = &facets[k];
            combinations(d + 1, d).into_iter().map(move |c| c.iter().map(|&i| facet[i]).collect::<Vec<_>>())
        })
        .collect();
    all.sort();
    for f in all {
        if faces.last() == Some(&f) {
            *count.last_mut().expect("count") += 1;
        } else {
            faces.push(f);
            count.push(1);
        }
    }
    let boundary = (0..faces.len()).filter(|&i| count[i] == 1).collect();
    (faces, boundary)
}

/// Result of [`check_full_polygon`] for one split.
#[derive(Clone, Debug)]
pub struct PolygonCheck {
    pub initial: Vec<usize>,
    pub boundary_dim_initial: usize,
    pub boundary_dim_final: usize,
    pub equal: bool,
}

/// For every choice of `m` facets of `∂Δ^{d+1}` as the initial cluster, compare the
/// boundary colorings extendable over it with those extendable over the complement.
pub fn check_full_polygon<F: Field>(d: usize, omega: &[F], m: usize) -> Result<Vec<PolygonCheck>> {
    let n = d + 2;
    if m == 0 || m >= n {
        return Err(Error::Unsupported(format!("split {m}|{} is empty on one side", n.saturating_sub(m))));
    }
    combinations(n, m)
        .into_iter()
        .map(|ini| {
            let fin: Vec<usize> = (0..n).filter(|k| !ini.contains(k)).collect();
            let a = cluster_boundary_space(d, omega, &ini)?;
            let b = cluster_boundary_space(d, omega, &fin)?;
            Ok(PolygonCheck {
                boundary_dim_initial: a.dim(),
                boundary_dim_final: b.dim(),
                equal: a.same_span(&b),
                initial: ini,
            })
        })
        .collect()
}

/// Complement of the gauge space inside the permitted space, scanning permitted basis vectors.
pub fn gauge_complement<F: Field>(gauge: &SubspaceBasis<F>, permitted: &SubspaceBasis<F>) -> Result<SubspaceBasis<F>> {
    complement_in(gauge, permitted)
}
