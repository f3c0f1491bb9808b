//! Bistellar (Pachner) moves in any dimension, and transport of cocycles across them.
//!
//! An `m-n` move in dimension `d` (with `m + n = d + 2`) is located at a simplex `A`
//! with `d - m + 2` vertices whose star consists of exactly `m` facets. With `B`
//! the remaining vertices of the star (`|B| = m`, and `B` not already a face),
//! the facets `A ∪ (B \ b)` are replaced by `(A \ a) ∪ B`. The `1-(d+1)` move
//! inserts a new vertex as `B`; the `(d+1)-1` move deletes the vertex `A`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{DenseMatrix, Field};
use crate::cohomology::{embed_f2, lift_omega_nonzero, seeded_rng, F2Cohomology, OmegaCocycle, DEFAULT_LIFT_ATTEMPTS};
use crate::coloring::{color_bases, facet_faces_lex, permitted_subspace};
use crate::invariant::{compute_with_omega, Route};
use crate::Gf2;
use crate::error::{Error, Result};
use crate::simplicial::{combinations, Cochain, Complex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MoveKind {
    /// Number of facets removed.
    pub m: usize,
    /// Number of facets inserted.
    pub n: usize,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.m, self.n)
    }
}

impl std::str::FromStr for MoveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unsupported(format!("move kind `{s}` is not of the form m-n"));
        let (a, b) = s.split_once('-').ok_or_else(bad)?;
        let m = a.trim().parse().map_err(|_| bad())?;
        let n = b.trim().parse().map_err(|_| bad())?;
        if m == 0 || n == 0 {
            return Err(bad());
        }
        Ok(MoveKind { m, n })
    }
}

/// A move together with its location simplex `A` (sorted vertex labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveDescriptor {
    pub kind: MoveKind,
    pub location: Vec<u32>,
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let loc: Vec<String> = self.location.iter().map(|v| v.to_string()).collect();
        write!(f, "{}@{}", self.kind, loc.join("."))
    }
}

/// One step of a move script: a kind and either an explicit location or `auto`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub kind: MoveKind,
    pub location: Option<Vec<u32>>,
}

/// Parse a script like `2-5@0.1.2.3.4, 1-6@auto, 5-2@auto` (commas or whitespace separate steps).
pub fn parse_script(s: &str) -> Result<Vec<ScriptStep>> {
    s.split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (k, loc) = t.split_once('@').unwrap_or((t, "auto"));
            let kind: MoveKind = k.parse()?;
            let location = if loc == "auto" {
                None
            } else {
                let mut v = loc
                    .split('.')
                    .map(|x| x.parse::<u32>().map_err(|_| Error::Unsupported(format!("bad location `{loc}`"))))
                    .collect::<Result<Vec<u32>>>()?;
                v.sort_unstable();
                Some(v)
            };
            Ok(ScriptStep { kind, location })
        })
        .collect()
}

/// Outcome of applying a move.
#[derive(Clone, Debug)]
pub struct MoveResult {
    pub descriptor: MoveDescriptor,
    pub complex: Complex,
    /// Image of each old vertex in the new complex (`None` for a deleted vertex).
    pub vertex_map: Vec<Option<u32>>,
    /// Label of the inserted vertex, for `1-(d+1)` moves.
    pub new_vertex: Option<u32>,
    /// The vertices `A ∪ B` of the cluster simplex in increasing order, as old labels.
    /// An inserted vertex comes last, as `None`.
    pub cluster: Vec<Option<u32>>,
    /// Removed facets, in old labels.
    pub removed: Vec<Vec<u32>>,
    /// Inserted facets, in new labels.
    pub added: Vec<Vec<u32>>,
}

fn facets_containing(c: &Complex, a: &[u32]) -> Vec<usize> {
    (0..c.n_facets())
        .filter(|&f| {
            let s = c.face(c.dim(), f);
            a.iter().all(|v| s.binary_search(v).is_ok())
        })
        .collect()
}

fn check_move(c: &Complex, kind: MoveKind, a: &[u32]) -> Result<(Vec<usize>, Vec<u32>)> {
    let d = c.dim();
    let fail = |why: &str| {
        Error::MoveNotApplicable(format!("{}@{:?}: {why}", kind, a))
    };
    if kind.m + kind.n != d + 2 {
        return Err(fail(&format!("move kind does not exist in dimension {d}")));
    }
    if a.len() != d + 2 - kind.m {
        return Err(fail(&format!("location must have {} vertices", d + 2 - kind.m)));
    }
    if c.face_index(a).is_none() {
        return Err(fail("location is not a face"));
    }
    let star = facets_containing(c, a);
    if star.len() != kind.m {
        return Err(fail(&format!("star has {} facets, expected {}", star.len(), kind.m)));
    }
    let mut b: Vec<u32> = star
        .iter()
        .flat_map(|&f| c.face(d, f).iter().copied())
        .filter(|v| a.binary_search(v).is_err())
        .collect();
    b.sort_unstable();
    b.dedup();
    if kind.m == 1 {
        return Ok((star, b));
    }
    if b.len() != kind.m {
        return Err(fail("star is not a cluster"));
    }
    if c.face_index(&b).is_some() {
        return Err(fail("opposite simplex is already a face"));
    }
    Ok((star, b))
}

pub fn is_applicable(c: &Complex, kind: MoveKind, location: &[u32]) -> bool {
    check_move(c, kind, location).is_ok()
}

/// All locations at which a move of the given kind applies, in face order.
pub fn applicable_locations(c: &Complex, kind: MoveKind) -> Vec<Vec<u32>> {
    let d = c.dim();
    if kind.m + kind.n != d + 2 || kind.m > d + 1 {
        return Vec::new();
    }
    let q = d + 1 - kind.m;
    (0..c.n_faces(q))
        .map(|i| c.face(q, i).to_vec())
        .filter(|a| is_applicable(c, kind, a))
        .collect()
}

pub fn apply_move(c: &Complex, descriptor: &MoveDescriptor) -> Result<MoveResult> {
    let d = c.dim();
    let a = &descriptor.location;
    let (star, b) = check_move(c, descriptor.kind, a)?;
    let n_old = c.n_vertices() as u32;
    let (b_new, new_vertex, vertex_map): (Vec<u32>, Option<u32>, Vec<Option<u32>>) = if descriptor.kind.m == 1 {
        (vec![n_old], Some(n_old), (0..n_old).map(Some).collect())
    } else if descriptor.kind.m == d + 1 {
        let gone = a[0];
        let map: Vec<Option<u32>> =
            (0..n_old).map(|v| if v == gone { None } else if v > gone { Some(v - 1) } else { Some(v) }).collect();
        (b.iter().map(|&v| map[v as usize].expect("kept")).collect(), None, map)
    } else {
        (b.clone(), None, (0..n_old).map(Some).collect())
    };
    let removed: Vec<Vec<u32>> = star.iter().map(|&f| c.face(d, f).to_vec()).collect();
    let added: Vec<Vec<u32>> = a
        .iter()
        .map(|&x| {
            let mut f: Vec<u32> = a
                .iter()
                .filter(|&&y| y != x)
                .map(|&y| vertex_map[y as usize].expect("kept"))
                .chain(b_new.iter().copied())
                .collect();
            f.sort_unstable();
            f
        })
        .collect();
    let mut facets: Vec<Vec<u32>> = (0..c.n_facets())
        .filter(|f| star.binary_search(f).is_err())
        .map(|f| c.face(d, f).iter().map(|&v| vertex_map[v as usize].expect("kept")).collect())
        .collect();
    facets.extend(added.iter().cloned());
    let n_new = if descriptor.kind.m == 1 {
        n_old + 1
    } else if descriptor.kind.m == d + 1 {
        n_old - 1
    } else {
        n_old
    };
    let complex = Complex::new(n_new as usize, facets)?;
    let mut cluster_old: Vec<u32> = a.clone();
    if descriptor.kind.m != 1 {
        cluster_old.extend(b.iter().copied());
    }
    cluster_old.sort_unstable();
    let mut cluster: Vec<Option<u32>> = cluster_old.into_iter().map(Some).collect();
    if descriptor.kind.m == 1 {
        cluster.push(None);
    }
    Ok(MoveResult {
        descriptor: descriptor.clone(),
        complex,
        vertex_map,
        new_vertex,
        cluster,
        removed,
        added,
    })
}

/// Resolve a script step to a concrete move (first applicable location for `auto`).
pub fn resolve_step(c: &Complex, step: &ScriptStep) -> Result<MoveDescriptor> {
    let location = match &step.location {
        Some(l) => l.clone(),
        None => applicable_locations(c, step.kind)
            .into_iter()
            .next()
            .ok_or_else(|| Error::MoveNotApplicable(format!("{}@auto: no location", step.kind)))?,
    };
    Ok(MoveDescriptor { kind: step.kind, location })
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Carry a `q`-cocycle across a move.
///
/// On the cluster simplex the old values on the removed facets are written as
/// `delta(beta)`; `beta` is extended with random values on the new
/// `(q-1)`-faces and the new `q`-faces get `delta(beta)`. Draws repeat until the
/// new values avoid zero (at most `max_attempts` times). All other faces keep
/// their values, so the class is preserved.
pub fn transport_cocycle<F: Field>(
    old: &Complex,
    result: &MoveResult,
    omega: &Cochain<F>,
    seed: u64,
    max_attempts: usize,
) -> Result<Cochain<F>> {
    let q = omega.degree();
    let new = &result.complex;
    let cl = &result.cluster;
    let k = cl.len();
    // Local vertex i of the cluster simplex has new label `lab[i]`.
    let lab: Vec<u32> = cl
        .iter()
        .map(|v| match v {
            Some(v) => result.vertex_map[*v as usize].unwrap_or(u32::MAX),
            None => result.new_vertex.expect("new vertex"),
        })
        .collect();
    let old_label = |i: usize| cl[i];
    let is_old_face = |s: &[usize]| -> Option<usize> {
        let mut vs = Vec::with_capacity(s.len());
        for &i in s {
            vs.push(old_label(i)?);
        }
        vs.sort_unstable();
        let inside = result.removed.iter().any(|f| vs.iter().all(|v| f.binary_search(v).is_ok()));
        if inside {
            old.face_index(&vs)
        } else {
            None
        }
    };
    let lower = combinations(k, q);
    let upper = combinations(k, q + 1);
    let upper_old: Vec<Option<usize>> = upper.iter().map(|s| is_old_face(s)).collect();
    let lower_old: Vec<bool> = lower.iter().map(|s| is_old_face(s).is_some()).collect();
    // Solve delta(beta) = omega on the old part of the cluster.
    let rows: Vec<usize> = (0..upper.len()).filter(|&i| upper_old[i].is_some()).collect();
    let cols: Vec<usize> = (0..lower.len()).filter(|&j| lower_old[j]).collect();
    let mut m = DenseMatrix::<F>::zeros(rows.len(), cols.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for (r, &i) in rows.iter().enumerate() {
        let s = &upper[i];
        for drop in 0..s.len() {
            let sub: Vec<usize> = s.iter().enumerate().filter(|&(t, _)| t != drop).map(|(_, &v)| v).collect();
            let j = lower.binary_search(&sub).expect("subface");
            if let Ok(cidx) = cols.binary_search(&j) {
                m[(r, cidx)] += F::from_int(sign(drop));
            }
        }
        rhs.push(omega.get(upper_old[i].expect("old")));
    }
    let beta_old = if q == 0 {
        Vec::new()
    } else {
        m.solve(&rhs).map_err(|_| Error::NotACocycle("cocycle does not restrict to a coboundary on the cluster".into()))?
    };
    // Values on the new complex; faces outside the cluster interior keep their value.
    let mut values = vec![F::zero(); new.n_faces(q)];
    let mut fresh = vec![true; new.n_faces(q)];
    let inverse: Vec<u32> = {
        let mut inv = vec![u32::MAX; new.n_vertices()];
        for (v, img) in result.vertex_map.iter().enumerate() {
            if let Some(w) = img {
                inv[*w as usize] = v as u32;
            }
        }
        inv
    };
    for i in 0..new.n_faces(q) {
        let f = new.face(q, i);
        if f.iter().all(|&v| inverse[v as usize] != u32::MAX) {
            let mut vs: Vec<u32> = f.iter().map(|&v| inverse[v as usize]).collect();
            vs.sort_unstable();
            if let Some(j) = old.face_index(&vs) {
                values[i] = omega.get(j);
                fresh[i] = false;
            }
        }
    }
    let new_upper: Vec<(usize, usize)> = upper
        .iter()
        .enumerate()
        .filter_map(|(u, s)| {
            if upper_old[u].is_some() {
                return None;
            }
            let mut vs: Vec<u32> = s.iter().map(|&i| lab[i]).collect();
            vs.sort_unstable();
            new.face_index(&vs).filter(|&g| fresh[g]).map(|g| (u, g))
        })
        .collect();
    if new_upper.is_empty() {
        return Cochain::new(new, q, values);
    }
    let mut rng = seeded_rng(seed);
    for _ in 0..max_attempts {
        let mut beta = vec![F::zero(); lower.len()];
        for (t, &j) in cols.iter().enumerate() {
            beta[j] = beta_old[t];
        }
        for (j, b) in beta.iter_mut().enumerate() {
            if !lower_old[j] {
                *b = F::random(&mut rng);
            }
        }
        let mut ok = true;
        for &(u, g) in &new_upper {
            let s = &upper[u];
            let mut v = F::zero();
            for drop in 0..s.len() {
                let sub: Vec<usize> = s.iter().enumerate().filter(|&(t, _)| t != drop).map(|(_, &x)| x).collect();
                let j = lower.binary_search(&sub).expect("subface");
                v += F::from_int(sign(drop)) * beta[j];
            }
            if v.is_zero() {
                ok = false;
            }
            values[g] = v;
        }
        if ok {
            return Cochain::new(new, q, values);
        }
    }
    Err(Error::LiftFailed { attempts: max_attempts })
}

/// A uniformly random `q`-coboundary on the standard `m`-simplex (lexicographic face order),
/// redrawn until it is nowhere zero.
pub fn random_nowhere_zero_coboundary<F: Field, R: Rng>(m: usize, q: usize, rng: &mut R) -> Vec<F> {
    let n_lower = combinations(m + 1, q).len();
    loop {
        let beta: Vec<F> = (0..n_lower).map(|_| F::random(rng)).collect();
        let w = crate::simplicial::local_coboundary(m, q - 1, &beta);
        if w.iter().all(|x| !x.is_zero()) {
            return w;
        }
    }
}

/// Carry a coloring (coordinates in the canonical color bases) across a move.
///
/// Faces that survive the move keep their coordinates; the coordinates on the new faces
/// solve the permitted-coloring conditions of the inserted facets.
pub fn extend_coloring<F: Field>(
    old: &Complex,
    result: &MoveResult,
    new_omega: &Cochain<F>,
    coloring: &[F],
) -> Result<Vec<F>> {
    let new = &result.complex;
    let d = new.dim();
    let bases = color_bases(new, new_omega)?;
    let r = bases.first().map_or(0, |b| b.rank());
    let mut old_label = vec![u32::MAX; new.n_vertices()];
    for (v, m) in result.vertex_map.iter().enumerate() {
        if let Some(m) = m {
            old_label[*m as usize] = v as u32;
        }
    }
    let n_faces = new.n_faces(d - 1);
    let mut x = vec![F::zero(); n_faces * r];
    let mut unknown: Vec<Option<usize>> = vec![None; n_faces];
    let mut n_unknown = 0;
    for (u, slot) in unknown.iter_mut().enumerate() {
        let mut vs: Vec<u32> = new.face(d - 1, u).iter().map(|&v| old_label[v as usize]).collect();
        vs.sort_unstable();
        match vs.last().is_some_and(|&v| v != u32::MAX).then(|| old.face_index(&vs)).flatten() {
            Some(o) => x[u * r..(u + 1) * r].copy_from_slice(&coloring[o * r..(o + 1) * r]),
            None => {
                *slot = Some(n_unknown);
                n_unknown += 1;
            }
        }
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for f in &result.added {
        let fi = new.face_index(f).ok_or_else(|| Error::InvalidComplex("inserted facet missing".into()))?;
        let p = permitted_subspace(new, new_omega, &bases, fi)?;
        let faces = facet_faces_lex(new, fi);
        for h in p.constraints.row_vecs() {
            let mut row = vec![F::zero(); n_unknown * r];
            let mut b = F::zero();
            for (k, &v) in h.iter().enumerate() {
                let u = faces[k / r] as usize;
                match unknown[u] {
                    Some(j) => row[j * r + k % r] += v,
                    None => b -= v * x[u * r + k % r],
                }
            }
            rows.push(row);
            rhs.push(b);
        }
    }
    if n_unknown > 0 {
        let sol = DenseMatrix::from_rows(&rows)?.solve(&rhs).map_err(|_| Error::NotASubspace)?;
        for (u, slot) in unknown.iter().enumerate() {
            if let Some(j) = slot {
                x[u * r..(u + 1) * r].copy_from_slice(&sol[j * r..(j + 1) * r]);
            }
        }
    } else if rhs.iter().any(|b| !b.is_zero()) {
        return Err(Error::NotASubspace);
    }
    Ok(x)
}

/// One row of an invariance report.
#[derive(Clone, Debug, Serialize)]
pub struct HarnessStep {
    pub step: usize,
    /// `initial` for the starting triangulation.
    pub descriptor: String,
    pub facets: usize,
    pub vertices: usize,
    pub quotient_dim: usize,
    pub rank_a: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarnessReport {
    pub class_id: String,
    pub seed: u64,
    pub steps: Vec<HarnessStep>,
    pub constant: bool,
}

/// Recompute the invariant of a class after every move of a script.
///
/// The parameter is lifted once on the starting complex and then transported across
/// each move, so every step uses a cocycle of the same class.
pub fn invariance_harness<F: Field>(
    c: &Complex,
    class_id: &[u8],
    seed: u64,
    script: &[ScriptStep],
    route: Route,
    progress: impl Fn(&HarnessStep),
) -> Result<HarnessReport> {
    let h = F2Cohomology::new(c, &[1, 3]);
    let basis = h.basis(c, 3)?;
    if basis.len() != class_id.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), found: class_id.len() });
    }
    let mut rep = Cochain::<Gf2>::zero(c, 3);
    for (b, &bit) in basis.iter().zip(class_id) {
        if bit == 1 {
            rep.add_scaled(Gf2::new(1), b);
        }
    }
    let mut omega = lift_omega_nonzero(c, &embed_f2::<F>(&rep)?, class_id.to_vec(), seed, DEFAULT_LIFT_ATTEMPTS)?;
    let mut complex = c.clone();
    let mut steps = Vec::new();
    let first = compute_with_omega(&complex, &omega, route, Some(&h))?;
    let record = |step: usize, descriptor: String, complex: &Complex, r: &crate::invariant::InvariantResult| {
        let s = HarnessStep {
            step,
            descriptor,
            facets: complex.n_facets(),
            vertices: complex.n_vertices(),
            quotient_dim: r.quotient_dim,
            rank_a: r.rank_a,
        };
        progress(&s);
        s
    };
    steps.push(record(0, "initial".into(), &complex, &first));
    for (i, step) in script.iter().enumerate() {
        let descriptor = resolve_step(&complex, step)?;
        let result = apply_move(&complex, &descriptor)?;
        let moved = transport_cocycle(&complex, &result, &omega.cochain, seed.wrapping_add(i as u64 + 1), DEFAULT_LIFT_ATTEMPTS)?;
        omega = OmegaCocycle { cochain: moved, class_id: omega.class_id.clone(), seed: omega.seed, attempts: omega.attempts };
        complex = result.complex;
        let r = compute_with_omega(&complex, &omega, route, None)?;
        steps.push(record(i + 1, descriptor.to_string(), &complex, &r));
    }
    let constant = steps.windows(2).all(|w| (w[0].quotient_dim, w[0].rank_a) == (w[1].quotient_dim, w[1].rank_a));
    Ok(HarnessReport { class_id: crate::cohomology::class_label(class_id), seed, steps, constant })
}
