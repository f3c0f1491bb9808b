//! The bilinear 4-cocycle `Q`, the bipolynomial 5-cocycles built from it, and local
//! coboundary evaluation.
//!
//! Local simplex data is given as values on the tetrahedra of a standard simplex in
//! lexicographic order. Faces of a simplex are numbered by the omitted vertex, and the
//! incidence sign of face `k` is `(-1)^k`.

use std::collections::BTreeMap;

use crate::algebra::{DenseMatrix, Field};
use crate::coloring::{face_subface_positions, local_cocycle_basis, restrict_colors, ColorBasis};
use crate::error::{Error, Result};

/// Largest `p^k` accepted by [`universal_polynomial`] by default.
pub const DEFAULT_POWER_CAP: u64 = 9;

/// Incidence sign of the face omitting vertex `k`.
pub fn epsilon(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(epsilon + 1) / 2`: one for even faces, zero for odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EpsilonTilde(pub u8);

impl EpsilonTilde {
    pub fn of_face(k: usize) -> Self {
        EpsilonTilde(u8::from(k.is_multiple_of(2)))
    }

    /// The replacement `1 - epsilon~`.
    pub fn flipped(self) -> Self {
        EpsilonTilde(1 - self.0)
    }
}

fn signed<F: Field>(x: F, k: usize) -> F {
    if k.is_multiple_of(2) {
        x
    } else {
        -x
    }
}

/// Restriction of lexicographic `q`-face data on `Δ^m` to the face omitting vertex `k`.
pub fn restrict_to_face<F: Copy>(m: usize, q: usize, k: usize, values: &[F]) -> Vec<F> {
    let positions = face_subface_positions(m, q);
    positions[m - k].iter().map(|&i| values[i]).collect()
}

/// `Q` on a 4-simplex: `sum_k (-1)^k nu eta / omega` over the tetrahedra, lexicographic input.
pub fn q_value<F: Field>(omega: &[F], nu: &[F], eta: &[F]) -> Result<F> {
    if omega.len() != 5 || nu.len() != 5 || eta.len() != 5 {
        return Err(Error::DimensionMismatch { expected: 5, found: omega.len().min(nu.len()).min(eta.len()) });
    }
    let mut s = F::zero();
    for k in 0..5 {
        let i = 4 - k;
        let w = omega[i].try_inv()?;
        s += signed(nu[i] * eta[i] * w, k);
    }
    Ok(s)
}

/// `Q` on the six faces of a 5-simplex, indexed by the omitted vertex.
pub fn q_values<F: Field>(omega: &[F], nu: &[F], eta: &[F]) -> Result<[F; 6]> {
    let mut out = [F::zero(); 6];
    for (k, o) in out.iter_mut().enumerate() {
        *o = q_value(
            &restrict_to_face(5, 3, k, omega),
            &restrict_to_face(5, 3, k, nu),
            &restrict_to_face(5, 3, k, eta),
        )?;
    }
    Ok(out)
}

/// Characteristic 2 five-cocycle from the face values `Q_v` (faces numbered by omitted vertex).
pub fn c_char2<F: Field>(q: &[F; 6]) -> F {
    let mut s = F::zero();
    for a in 0..6 {
        for b in a + 1..6 {
            s += q[a] * q[b];
        }
        if EpsilonTilde::of_face(a).0 == 1 {
            s += q[a] * q[a];
        }
    }
    s
}

/// Characteristic 3 five-cocycle: signed triple products of the face values.
pub fn c_char3<F: Field>(q: &[F; 6]) -> F {
    let t: Vec<F> = (0..6).map(|k| signed(q[k], k)).collect();
    let mut s = F::zero();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                s += t[a] * t[b] * t[c];
            }
        }
    }
    s
}

/// The closed-form five-cocycle of the field's characteristic, from face values.
pub fn c_from_q<F: Field>(q: &[F; 6]) -> Result<F> {
    match F::CHARACTERISTIC {
        2 => Ok(c_char2(q)),
        3 => Ok(c_char3(q)),
        p => Err(Error::Unsupported(format!("no closed-form five-cocycle in characteristic {p}"))),
    }
}

/// The five-cocycle on a 5-simplex from `omega`, `nu`, `eta` on its 15 tetrahedra.
pub fn c_value<F: Field>(omega: &[F], nu: &[F], eta: &[F]) -> Result<F> {
    c_from_q(&q_values(omega, nu, eta)?)
}

/// `(1/p) p_N(t) mod p` for `N = p^k`, as a polynomial in the elementary symmetric
/// functions `e_2, ..., e_N` of variables with `e_1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPolynomial {
    pub p: u32,
    pub k: u32,
    /// Exponent vectors (entry `i` is the power of `e_{i+2}`) with coefficients in `0..p`.
    pub terms: Vec<(Vec<u32>, u32)>,
}

type IntPoly = BTreeMap<Vec<u32>, i128>;

fn poly_add_scaled(acc: &mut IntPoly, a: &IntPoly, scale: i128, shift: Option<usize>) {
    for (e, &c) in a {
        let mut e = e.clone();
        if let Some(i) = shift {
            e[i] += 1;
        }
        let v = acc.entry(e).or_insert(0);
        *v += scale * c;
    }
    acc.retain(|_, c| *c != 0);
}

/// Newton's identities expressing the power sum `p_N` through `e_2, ..., e_N` with `e_1 = 0`.
pub fn power_sum_in_elementary(n: usize) -> BTreeMap<Vec<u32>, i128> {
    let nvars = n.saturating_sub(1);
    let mut p: Vec<IntPoly> = vec![IntPoly::new()];
    for m in 1..=n {
        let mut pm = IntPoly::new();
        for i in 2..m {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            poly_add_scaled(&mut pm, &p[m - i], sign, Some(i - 2));
        }
        if m >= 2 {
            let mut e = vec![0; nvars];
            e[m - 2] = 1;
            let sign = if m % 2 == 1 { 1 } else { -1 };
            *pm.entry(e).or_insert(0) += sign * m as i128;
            pm.retain(|_, c| *c != 0);
        }
        p.push(pm);
    }
    p.swap_remove(n)
}

/// Universal polynomial for the pair `(p, k)` as long as `p^k <= cap`.
pub fn universal_polynomial(p: u32, k: u32, cap: u64) -> Result<UniversalPolynomial> {
    let n = (p as u64).checked_pow(k).filter(|&n| n <= cap && k >= 1);
    let Some(n) = n else {
        return Err(Error::Unsupported(format!("p^k = {p}^{k} exceeds the cap {cap}")));
    };
    let ps = power_sum_in_elementary(n as usize);
    let mut terms = Vec::new();
    for (e, c) in ps {
        if c % p as i128 != 0 {
            return Err(Error::CertificateFailed(format!("coefficient {c} of p_{n} is not divisible by {p}")));
        }
        let r = (c / p as i128).rem_euclid(p as i128) as u32;
        if r != 0 {
            terms.push((e, r));
        }
    }
    Ok(UniversalPolynomial { p, k, terms })
}

/// Elementary symmetric functions `e_0, ..., e_n` of the given values.
pub fn elementary_symmetric<F: Field>(t: &[F], n: usize) -> Vec<F> {
    let mut e = vec![F::zero(); n + 1];
    e[0] = F::one();
    for &x in t {
        for i in (1..=n).rev() {
            let prev = e[i - 1];
            e[i] += prev * x;
        }
    }
    e
}

impl UniversalPolynomial {
    pub fn power(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Evaluate at the elementary symmetric functions of `t`.
    pub fn eval<F: Field>(&self, t: &[F]) -> F {
        let n = self.power() as usize;
        let e = elementary_symmetric(t, n);
        self.terms
            .iter()
            .map(|(ex, c)| {
                let mut m = F::from_int(*c as i64);
                for (i, &a) in ex.iter().enumerate() {
                    if a > 0 {
                        m *= e[i + 2].pow(a as u64);
                    }
                }
                m
            })
            .sum()
    }

    /// The five-cocycle from face values: with `t_v = epsilon_v Q_v`, this is the reduction of
    /// `(1/p) sum_v epsilon_v Q_v^{p^k}`.
    pub fn c_from_q<F: Field>(&self, q: &[F; 6]) -> Result<F> {
        if F::CHARACTERISTIC != self.p {
            return Err(Error::Unsupported(format!(
                "polynomial for p = {} evaluated in characteristic {}",
                self.p,
                F::CHARACTERISTIC
            )));
        }
        let t: Vec<F> = (0..6).map(|k| signed(q[k], k)).collect();
        let mut s = self.eval(&t);
        if self.p == 2 {
            let n = self.power();
            for (k, &x) in q.iter().enumerate() {
                if EpsilonTilde::of_face(k).0 == 1 {
                    s += x.pow(n);
                }
            }
        }
        Ok(s)
    }
}

/// `sum_k (-1)^k eval(face k)` for data on a standard `m`-simplex, where each face gets the
/// restrictions of `omega`, `nu`, `eta` (lexicographic tetrahedra).
pub fn heptagon_coboundary<F: Field>(
    m: usize,
    omega: &[F],
    nu: &[F],
    eta: &[F],
    eval: impl Fn(&[F], &[F], &[F]) -> Result<F>,
) -> Result<F> {
    let mut s = F::zero();
    for k in 0..=m {
        let v = eval(
            &restrict_to_face(m, 3, k, omega),
            &restrict_to_face(m, 3, k, nu),
            &restrict_to_face(m, 3, k, eta),
        )?;
        s += signed(v, k);
    }
    Ok(s)
}

/// Two cocycles on one simplex representing a double coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPair<F> {
    pub nu: Vec<F>,
    pub eta: Vec<F>,
}

/// A `(d-2)`-cocycle on `Δ^d` inducing the given face colors (concatenated per face,
/// lexicographic faces, coordinates in `bases`).
pub fn lift_to_cocycle<F: Field>(d: usize, bases: &[ColorBasis<F>], colors: &[F]) -> Result<Vec<F>> {
    let q = d - 2;
    let positions = face_subface_positions(d, q);
    let z = local_cocycle_basis::<F>(d, q);
    let gens = z.iter().map(|v| restrict_colors(bases, &positions, v)).collect::<Result<Vec<_>>>()?;
    let a = DenseMatrix::from_columns(colors.len(), &gens)?
        .solve(colors)
        .map_err(|_| Error::NotASubspace)?;
    let mut nu = vec![F::zero(); z[0].len()];
    for (zi, &ai) in z.iter().zip(&a) {
        for (n, &v) in nu.iter_mut().zip(zi) {
            *n += ai * v;
        }
    }
    Ok(nu)
}

/// Lift both halves of a double coloring.
pub fn lift_pair<F: Field>(d: usize, bases: &[ColorBasis<F>], rho: &[F], sigma: &[F]) -> Result<LiftedPair<F>> {
    Ok(LiftedPair { nu: lift_to_cocycle(d, bases, rho)?, eta: lift_to_cocycle(d, bases, sigma)? })
}

/// A uniformly random `q`-cocycle on the standard `m`-simplex.
pub fn random_local_cocycle<F: Field, R: rand::Rng>(m: usize, q: usize, rng: &mut R) -> Vec<F> {
    let z = local_cocycle_basis::<F>(m, q);
    let mut out = vec![F::zero(); z[0].len()];
    for zi in &z {
        let a = F::random(rng);
        for (o, &v) in out.iter_mut().zip(zi) {
            *o += a * v;
        }
    }
    out
}
