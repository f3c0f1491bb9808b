//! The state sum over the facets of a 5-manifold and the invariant `(dim V_p/V_g, rank A)`.
//!
//! A coloring enters the state sum only through cocycle representatives of its colors on
//! the 4-faces, so every quotient basis is stored as [`FaceReps`]: for each 4-face `u` the
//! values of a representative on the five tetrahedra of `u`, entry `k` being the
//! tetrahedron that omits the `k`-th vertex of `u`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{DenseMatrix, Field};
use crate::cohomology::{
    embed_f2, enumerate_classes, lift_omega_nonzero, seeded_rng, ClassRep, F2Cohomology, OmegaCocycle,
    DEFAULT_LIFT_ATTEMPTS,
};
use crate::coloring::{global_spaces, ColorBasis};
use crate::error::{Error, Result};
use crate::heptagon::c_from_q;
use crate::simplicial::{Cochain, Complex};
use crate::Gf2;

/// Representatives of colorings on every 4-face; one flat vector of `5 n_4` values each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceReps<F> {
    n_faces: usize,
    vectors: Vec<Vec<F>>,
}

impl<F: Field> FaceReps<F> {
    pub fn new(n_faces: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != 5 * n_faces) {
            return Err(Error::DimensionMismatch { expected: 5 * n_faces, found: v.len() });
        }
        Ok(FaceReps { n_faces, vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn n_faces(&self) -> usize {
        self.n_faces
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    /// Representatives of a global cocycle of degree 3.
    pub fn from_cocycle(c: &Complex, nu: &[F]) -> Vec<F> {
        let mut out = Vec::with_capacity(5 * c.n_faces(4));
        for u in 0..c.n_faces(4) {
            out.extend(c.boundary_faces(4, u).iter().map(|&t| nu[t as usize]));
        }
        out
    }

    /// Representatives of a coloring given by per-face coordinates in `bases`.
    pub fn from_coloring(bases: &[ColorBasis<F>], x: &[F]) -> Vec<F> {
        let r = bases.first().map_or(0, |b| b.rank());
        let mut out = Vec::with_capacity(5 * bases.len());
        for (u, b) in bases.iter().enumerate() {
            let lex = b.representative(&x[u * r..(u + 1) * r]);
            out.extend(lex.iter().rev());
        }
        out
    }

    /// `sum_i a_i v_i`.
    pub fn combination(&self, a: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); 5 * self.n_faces];
        for (v, &ai) in self.vectors.iter().zip(a) {
            if ai.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(v) {
                *o += ai * x;
            }
        }
        out
    }
}

/// How the quotient basis was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Sparse elimination of the global permitted-coloring system.
    Direct,
    /// GF(2) cohomology: classes of degree 3 and twisted colorings from degree 1 (characteristic 2).
    Structured,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Direct => "direct",
            Route::Structured => "structured",
        })
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Route::Direct),
            "structured" => Ok(Route::Structured),
            _ => Err(Error::Unsupported(format!("unknown route `{s}`"))),
        }
    }
}

/// Representatives of a basis of `V_p / V_g`.
#[derive(Clone, Debug)]
pub struct QuotientSpace<F> {
    pub route: Route,
    /// `dim V_p`, known only on the direct route.
    pub permitted_dim: Option<usize>,
    pub gauge_dim: usize,
    pub reps: FaceReps<F>,
}

impl<F: Field> QuotientSpace<F> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

/// Quotient by direct elimination.
pub fn direct_quotient<F: Field>(c: &Complex, omega: &Cochain<F>) -> Result<QuotientSpace<F>> {
    let (bases, spaces) = global_spaces(c, omega)?;
    let n = spaces.rank * spaces.n_faces;
    let vectors = spaces
        .complement
        .vectors()
        .iter()
        .map(|v| FaceReps::from_coloring(&bases, &v.to_dense(n)))
        .collect();
    Ok(QuotientSpace {
        route: Route::Direct,
        permitted_dim: Some(spaces.permitted_dim),
        gauge_dim: spaces.gauge_dim(),
        reps: FaceReps::new(c.n_faces(4), vectors)?,
    })
}

/// `(phi ⌣ omega)(u) = phi(u0 u1) omega(u1 u2 u3 u4)` on every 4-face.
pub fn cup_1_3<F: Field>(c: &Complex, phi: &[F], omega: &[F]) -> Vec<F> {
    (0..c.n_faces(4))
        .map(|u| {
            let f = c.face(4, u);
            let e = c.face_index(&f[..2]).expect("edge");
            phi[e] * omega[c.boundary_faces(4, u)[0] as usize]
        })
        .collect()
}

/// Quotient from GF(2) cohomology in characteristic 2.
///
/// `h` must track degrees 1 and 3. The basis consists of the degree-3 classes other than
/// the first one on which `[omega]` has a nonzero coordinate, followed by one twisted
/// coloring per vector of the kernel of `phi ↦ [phi ⌣ omega]` on degree-1 classes.
pub fn structured_quotient<F: Field>(c: &Complex, h: &F2Cohomology, omega: &Cochain<F>) -> Result<QuotientSpace<F>> {
    if F::CHARACTERISTIC != 2 {
        return Err(Error::Unsupported("the structured route needs characteristic 2".into()));
    }
    if c.dim() != 5 {
        return Err(Error::DimensionMismatch { expected: 5, found: c.dim() });
    }
    let w = omega.values();
    let coords = h.class_coordinates::<F>(3, w)?;
    let skip = coords.iter().position(|a| !a.is_zero());
    let mut vectors = Vec::new();
    for (i, rep) in h.basis(c, 3)?.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        vectors.push(FaceReps::from_cocycle(c, embed_f2::<F>(rep)?.values()));
    }
    let phis: Vec<Vec<F>> = h.basis(c, 1)?.iter().map(|p| embed_f2::<F>(p).map(Cochain::into_values)).collect::<Result<_>>()?;
    if !phis.is_empty() {
        let nfs: Vec<Vec<F>> = phis
            .iter()
            .map(|p| {
                let mut v = cup_1_3(c, p, w);
                h.normal_form(4, &mut v);
                v
            })
            .collect();
        let kernel = DenseMatrix::from_columns(c.n_faces(4), &nfs)?.nullspace();
        for kappa in kernel {
            let mut phi = vec![F::zero(); c.n_faces(1)];
            for (p, &k) in phis.iter().zip(&kappa) {
                for (x, &y) in phi.iter_mut().zip(p) {
                    *x += k * y;
                }
            }
            let rhs = cup_1_3(c, &phi, w);
            let psi = h
                .solve_coboundary(4, &rhs)
                .ok_or(Error::Inconsistent)?;
            let mut v = FaceReps::from_cocycle(c, &psi);
            for u in 0..c.n_faces(4) {
                let f = c.face(4, u);
                let e = c.face_index(&f[..2]).expect("edge");
                let t0 = c.boundary_faces(4, u)[0] as usize;
                v[5 * u] += w[t0] * phi[e];
            }
            vectors.push(v);
        }
    }
    let exact = usize::from(skip.is_none());
    Ok(QuotientSpace {
        route: Route::Structured,
        permitted_dim: None,
        gauge_dim: h.coboundary_rank(2) - exact,
        reps: FaceReps::new(c.n_faces(4), vectors)?,
    })
}

/// Evaluates the state sum on a fixed complex and parameter.
#[derive(Clone, Debug)]
pub struct StateSum<'a, F> {
    complex: &'a Complex,
    /// `(-1)^k / omega` for the `k`-th tetrahedron of every 4-face.
    weights: Vec<F>,
}

impl<'a, F: Field> StateSum<'a, F> {
    pub fn new(c: &'a Complex, omega: &Cochain<F>) -> Result<Self> {
        if c.dim() != 5 || omega.degree() != 3 {
            return Err(Error::DimensionMismatch { expected: 5, found: c.dim() });
        }
        let mut weights = Vec::with_capacity(5 * c.n_faces(4));
        for u in 0..c.n_faces(4) {
            for (k, &t) in c.boundary_faces(4, u).iter().enumerate() {
                let inv = omega.values()[t as usize]
                    .inv()
                    .ok_or_else(|| Error::ZeroParameter { simplex: c.face(3, t as usize).to_vec() })?;
                weights.push(if k % 2 == 0 { inv } else { -inv });
            }
        }
        Ok(StateSum { complex: c, weights })
    }

    /// `Q_u(rho, sigma)` for every 4-face.
    pub fn q_table(&self, rho: &[F], sigma: &[F]) -> Vec<F> {
        rho.chunks_exact(5)
            .zip(sigma.chunks_exact(5))
            .zip(self.weights.chunks_exact(5))
            .map(|((a, b), w)| (0..5).map(|k| a[k] * b[k] * w[k]).sum())
            .collect()
    }

    /// `sum_w c_w` for per-face values of `Q`.
    pub fn sum_from_q(&self, q: &[F]) -> Result<F> {
        let c = self.complex;
        let mut total = F::zero();
        for f in 0..c.n_facets() {
            let b = c.boundary_faces(5, f);
            let qs = [q[b[0] as usize], q[b[1] as usize], q[b[2] as usize], q[b[3] as usize], q[b[4] as usize], q[b[5] as usize]];
            total += c_from_q(&qs)?;
        }
        Ok(total)
    }

    /// The state sum of a double coloring given by face representatives.
    pub fn value(&self, rho: &[F], sigma: &[F]) -> Result<F> {
        self.sum_from_q(&self.q_table(rho, sigma))
    }
}

/// State sum of a double coloring given by face representatives.
pub fn state_sum<F: Field>(c: &Complex, omega: &Cochain<F>, rho: &[F], sigma: &[F]) -> Result<F> {
    StateSum::new(c, omega)?.value(rho, sigma)
}

/// Checks that the state sum is `sum_ij A_ij x_i^2 y_j^2` with `A` symmetric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `f(e_i + e_j, e_l) = f(e_i, e_l) + f(e_j, e_l)` and the same in the second slot.
    pub cross_terms_vanish: bool,
    pub a_symmetric: bool,
    /// `f(x, y) = sum A_ij x_i^2 y_j^2` at seeded random points.
    pub random_points_agree: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.cross_terms_vanish && self.a_symmetric && self.random_points_agree
    }
}

/// Number of random points in the certificate.
pub const CERTIFICATE_POINTS: usize = 3;

/// The matrix `A_ij = f(e_i, e_j)` on a quotient basis, its rank and its certificate.
pub fn extract_matrix<F: Field>(
    sum: &StateSum<'_, F>,
    reps: &FaceReps<F>,
    seed: u64,
) -> Result<(DenseMatrix<F>, usize, Certificate)> {
    let n = reps.len();
    let v = reps.vectors();
    let mut q: Vec<Vec<Vec<F>>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            let t = if j < i { q[j][i].clone() } else { sum.q_table(&v[i], &v[j]) };
            q[i].push(t);
        }
    }
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = sum.sum_from_q(&q[i][j])?;
        }
    }
    let a_symmetric = a == a.transpose();
    let mut cross_terms_vanish = true;
    let mut buf = vec![F::zero(); sum.complex.n_faces(4)];
    'outer: for i in 0..n {
        for j in i + 1..n {
            for l in 0..n {
                for (first, second, expect) in [
                    (&q[i][l], &q[j][l], a[(i, l)] + a[(j, l)]),
                    (&q[l][i], &q[l][j], a[(l, i)] + a[(l, j)]),
                ] {
                    for ((b, &x), &y) in buf.iter_mut().zip(first).zip(second) {
                        *b = x + y;
                    }
                    if sum.sum_from_q(&buf)? != expect {
                        cross_terms_vanish = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut rng = seeded_rng(seed);
    let mut random_points_agree = true;
    if n > 0 {
        for _ in 0..CERTIFICATE_POINTS {
            let x: Vec<F> = (0..n).map(|_| F::random(&mut rng)).collect();
            let y: Vec<F> = (0..n).map(|_| F::random(&mut rng)).collect();
            let value = sum.value(&reps.combination(&x), &reps.combination(&y))?;
            let mut expect = F::zero();
            for i in 0..n {
                for j in 0..n {
                    expect += a[(i, j)] * x[i] * x[i] * y[j] * y[j];
                }
            }
            if value != expect {
                random_points_agree = false;
            }
        }
    }
    let rank = a.rank();
    Ok((a, rank, Certificate { cross_terms_vanish, a_symmetric, random_points_agree }))
}

/// The invariant of one class.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantResult {
    pub class_id: String,
    pub quotient_dim: usize,
    pub rank_a: usize,
    pub gauge_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permitted_dim: Option<usize>,
    /// Entries of `A` as field element representations, row by row.
    pub a: Vec<Vec<u32>>,
    pub seed: u64,
    pub omega_attempts: usize,
    pub route: Route,
    pub certificate: Certificate,
}

/// Invariant for a given nowhere-zero parameter.
pub fn compute_with_omega<F: Field>(
    c: &Complex,
    omega: &OmegaCocycle<F>,
    route: Route,
    h: Option<&F2Cohomology>,
) -> Result<InvariantResult> {
    let quotient = match route {
        Route::Direct => direct_quotient(c, &omega.cochain)?,
        Route::Structured => match h {
            Some(h) => structured_quotient(c, h, &omega.cochain)?,
            None => structured_quotient(c, &F2Cohomology::new(c, &[1, 3]), &omega.cochain)?,
        },
    };
    let sum = StateSum::new(c, &omega.cochain)?;
    let (a, rank_a, certificate) = extract_matrix(&sum, &quotient.reps, omega.seed)?;
    Ok(InvariantResult {
        class_id: crate::cohomology::class_label(&omega.class_id),
        quotient_dim: quotient.dim(),
        rank_a,
        gauge_dim: quotient.gauge_dim,
        permitted_dim: quotient.permitted_dim,
        a: a.row_vecs().iter().map(|r| r.iter().map(|x| x.repr()).collect()).collect(),
        seed: omega.seed,
        omega_attempts: omega.attempts,
        route,
        certificate,
    })
}

/// Lift a GF(2) class to a nowhere-zero parameter and compute its invariant.
pub fn compute_class<F: Field>(
    c: &Complex,
    class: &ClassRep,
    seed: u64,
    route: Route,
    h: Option<&F2Cohomology>,
) -> Result<InvariantResult> {
    let base = embed_f2::<F>(&class.rep)?;
    let omega = lift_omega_nonzero(c, &base, class.class_id.clone(), seed, DEFAULT_LIFT_ATTEMPTS)?;
    compute_with_omega(c, &omega, route, h)
}

/// One row of a class table summary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TableEntry {
    pub quotient_dim: usize,
    pub rank_a: usize,
    pub count: usize,
}

/// Field descriptor for output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub k: u32,
}

/// The invariants of every degree-3 class of a manifold.
#[derive(Clone, Debug, Serialize)]
pub struct ClassTable {
    pub manifold: String,
    pub field: FieldInfo,
    pub seed: u64,
    pub betti3: usize,
    pub classes: Vec<InvariantResult>,
}

impl ClassTable {
    pub fn zero_class(&self) -> Option<&InvariantResult> {
        self.classes.iter().find(|r| r.class_id.chars().all(|ch| ch == '0'))
    }

    /// Multiset of `(quotient_dim, rank_a)` over the nonzero classes.
    pub fn nonzero_summary(&self) -> Vec<TableEntry> {
        summarize(self.classes.iter().filter(|r| r.class_id.contains('1')))
    }

    /// Multiset over all classes.
    pub fn summary(&self) -> Vec<TableEntry> {
        summarize(self.classes.iter())
    }

    /// Aligned text table: zero class first, then nonzero classes grouped.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}  GF({}^{})  seed {}\n", self.manifold, self.field.p, self.field.k, self.seed);
        if let Some(z) = self.zero_class() {
            s.push_str(&format!("[omega] = 0: dim V_p/V_g = {}, rank A = {}\n", z.quotient_dim, z.rank_a));
        }
        let rows = self.nonzero_summary();
        if !rows.is_empty() {
            s.push_str(&format!("{:>14}  {:>6}  {:>9}\n", "dim V_p/V_g", "rank A", "classes"));
            for r in rows {
                s.push_str(&format!("{:>14}  {:>6}  {:>9}\n", r.quotient_dim, r.rank_a, r.count));
            }
        }
        s
    }
}

fn summarize<'a>(it: impl Iterator<Item = &'a InvariantResult>) -> Vec<TableEntry> {
    let mut m: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for r in it {
        *m.entry((r.quotient_dim, r.rank_a)).or_insert(0) += 1;
    }
    m.into_iter().map(|((quotient_dim, rank_a), count)| TableEntry { quotient_dim, rank_a, count }).collect()
}

/// Options for [`class_table`].
#[derive(Clone, Debug)]
pub struct TableOptions {
    pub seed: u64,
    pub route: Route,
    pub class_cap: usize,
    /// Restrict to these class ids; all classes when empty.
    pub only: Vec<Vec<u8>>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { seed: 0, route: Route::Structured, class_cap: crate::cohomology::DEFAULT_CLASS_CAP, only: Vec::new() }
    }
}

/// Invariants of every class of `H^3(M; GF(2))`, reporting progress through `progress`.
pub fn class_table<F: Field>(
    name: &str,
    c: &Complex,
    opts: &TableOptions,
    progress: impl Fn(&InvariantResult) + Sync,
) -> Result<ClassTable> {
    let h = F2Cohomology::new(c, &[1, 3]);
    let basis: Vec<Cochain<Gf2>> = h.basis(c, 3)?;
    let classes = if basis.is_empty() {
        vec![ClassRep { class_id: Vec::new(), rep: Cochain::zero(c, 3) }]
    } else {
        enumerate_classes(&basis, opts.class_cap)?
    };
    let selected: Vec<&ClassRep> =
        classes.iter().filter(|cl| opts.only.is_empty() || opts.only.contains(&cl.class_id)).collect();
    let out = selected
        .par_iter()
        .map(|class| {
            let r = compute_class::<F>(c, class, opts.seed, opts.route, Some(&h))?;
            progress(&r);
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassTable {
        manifold: name.to_string(),
        field: FieldInfo { p: F::CHARACTERISTIC, k: F::DEGREE },
        seed: opts.seed,
        betti3: basis.len(),
        classes: out,
    })
}
