//! Exact characteristic-zero oracle for the bipolynomial five-cocycles.
//!
//! The field GF(p^k) = F_p[x]/(f) is lifted to the number field Q[x]/(f~) where `f~` is the
//! integer polynomial with the same coefficients. Cocycles with integer coefficients are
//! built on the 5-simplex, `Q` is evaluated exactly, the power sum `sum_v eps_v Q_v^N` is
//! divided by `p` and reduced coefficientwise.

#![allow(dead_code)]

use heptagon::simplicial::combinations;
use heptagon::Field;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::Rng;

#[derive(Clone, Debug, PartialEq)]
pub struct Elt(pub Vec<BigRational>);

/// `Q[x]/(f~)` for the defining polynomial of `F`.
pub struct NumberField {
    f: Vec<BigInt>,
    k: usize,
}

impl NumberField {
    pub fn lifting<F: Field>() -> Self {
        let f: Vec<BigInt> = F::modulus().iter().map(|&c| BigInt::from(c)).collect();
        NumberField { k: f.len() - 1, f }
    }

    pub fn zero(&self) -> Elt {
        Elt(vec![BigRational::zero(); self.k])
    }

    pub fn one(&self) -> Elt {
        let mut e = self.zero();
        e.0[0] = BigRational::one();
        e
    }

    pub fn elt(&self, c: &[i64]) -> Elt {
        Elt(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        Elt(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        Elt(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let k = self.k;
        let mut c = vec![BigRational::zero(); 2 * k - 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let top = std::mem::replace(&mut c[d], BigRational::zero());
            for i in 0..k {
                c[d - k + i] -= &top * BigRational::from_integer(self.f[i].clone());
            }
        }
        c.truncate(k);
        Elt(c)
    }

    pub fn pow(&self, a: &Elt, n: u64) -> Elt {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Inverse by solving `a * y = 1` with Gauss-Jordan elimination over the rationals.
    pub fn inv(&self, a: &Elt) -> Elt {
        let k = self.k;
        let mut cols = Vec::with_capacity(k);
        let mut xj = self.one();
        let mut x = self.zero();
        if k > 1 {
            x.0[1] = BigRational::one();
        }
        for _ in 0..k {
            cols.push(self.mul(a, &xj));
            xj = self.mul(&xj, &x);
        }
        let mut m: Vec<Vec<BigRational>> =
            (0..k).map(|r| (0..k).map(|c| cols[c].0[r].clone()).chain([BigRational::from_integer(BigInt::from(u8::from(r == 0)))]).collect()).collect();
        for c in 0..k {
            let p = (c..k).find(|&r| !m[r][c].is_zero()).expect("invertible");
            m.swap(c, p);
            let piv = m[c][c].clone();
            for v in m[c].iter_mut() {
                *v /= &piv;
            }
            for r in 0..k {
                if r != c && !m[r][c].is_zero() {
                    let s = m[r][c].clone();
                    let row = m[c].clone();
                    for (v, w) in m[r].iter_mut().zip(row) {
                        *v -= &s * w;
                    }
                }
            }
        }
        Elt(m.into_iter().map(|r| r[k].clone()).collect())
    }

    pub fn is_zero(&self, a: &Elt) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }
}

fn mod_p(x: &BigInt, p: u32) -> u32 {
    let p = BigInt::from(p);
    (((x % &p) + &p) % &p).to_u32().expect("small")
}

/// Reduction of a `p`-integral element; `None` if some coefficient has `p` in its denominator.
pub fn reduce<F: Field>(a: &Elt) -> Option<F> {
    let p = F::CHARACTERISTIC;
    let mut r = 0u32;
    for (i, c) in a.0.iter().enumerate() {
        let den = mod_p(c.denom(), p);
        if den == 0 {
            return None;
        }
        let v = F::from_int(mod_p(c.numer(), p) as i64) / F::from_int(den as i64);
        r += v.repr() * p.pow(i as u32);
    }
    F::from_repr(r)
}

/// Whether every coefficient is divisible by `p` as a `p`-integral rational.
pub fn divisible_by(a: &Elt, p: u32) -> bool {
    a.0.iter().all(|c| mod_p(c.numer(), p) == 0 && mod_p(c.denom(), p) != 0)
}

/// Integer-coefficient coboundary `delta(beta)` on the standard 5-simplex, from 2-faces to 3-faces.
pub fn integer_coboundary(nf: &NumberField, beta: &[Elt]) -> Vec<Elt> {
    let tri = combinations(6, 3);
    combinations(6, 4)
        .iter()
        .map(|t| {
            let mut s = nf.zero();
            for i in 0..4 {
                let face: Vec<usize> = t.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                let b = &beta[tri.iter().position(|x| *x == face).expect("face")];
                s = if i % 2 == 0 { nf.add(&s, b) } else { nf.add(&s, &nf.neg(b)) };
            }
            s
        })
        .collect()
}

/// Random integer 3-coboundary on the 5-simplex with coefficients in `-3..=3`.
pub fn random_integer_cocycle<R: Rng>(nf: &NumberField, rng: &mut R) -> Vec<Elt> {
    let beta: Vec<Elt> = (0..20)
        .map(|_| nf.elt(&(0..nf.k).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>()))
        .collect();
    integer_coboundary(nf, &beta)
}

/// `Q_v` for the six faces of the 5-simplex (face `v` omits vertex `v`), computed exactly.
pub fn exact_q(nf: &NumberField, omega: &[Elt], nu: &[Elt], eta: &[Elt]) -> Vec<Elt> {
    let tets = combinations(6, 4);
    (0..6)
        .map(|v| {
            let face: Vec<usize> = (0..6).filter(|&x| x != v).collect();
            let mut s = nf.zero();
            for k in 0..5 {
                let t: Vec<usize> = face.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect();
                let i = tets.iter().position(|x| *x == t).expect("tetrahedron");
                let term = nf.mul(&nf.mul(&nu[i], &eta[i]), &nf.inv(&omega[i]));
                s = if k % 2 == 0 { nf.add(&s, &term) } else { nf.add(&s, &nf.neg(&term)) };
            }
            s
        })
        .collect()
}

/// Raise, take the coboundary, divide by `p`, reduce. `None` if the division is not exact.
pub fn pipeline<F: Field>(nf: &NumberField, q: &[Elt], n: u64) -> Option<F> {
    let mut s = nf.zero();
    for (v, qv) in q.iter().enumerate() {
        let t = nf.pow(qv, n);
        s = if v % 2 == 0 { nf.add(&s, &t) } else { nf.add(&s, &nf.neg(&t)) };
    }
    let p = F::CHARACTERISTIC;
    if !divisible_by(&s, p) {
        return None;
    }
    let pinv = BigRational::new(BigInt::one(), BigInt::from(p));
    reduce(&Elt(s.0.iter().map(|c| c * &pinv).collect()))
}

/// An instance with integer-coefficient lifts and its reduction to `F`.
pub struct Instance<F> {
    pub omega: Vec<Elt>,
    pub nu: Vec<Elt>,
    pub eta: Vec<Elt>,
    pub omega_f: Vec<F>,
    pub nu_f: Vec<F>,
    pub eta_f: Vec<F>,
}

pub fn random_instance<F: Field, R: Rng>(nf: &NumberField, rng: &mut R) -> Instance<F> {
    let red = |v: &[Elt]| v.iter().map(|e| reduce::<F>(e).expect("integral")).collect::<Vec<F>>();
    let omega = loop {
        let w = random_integer_cocycle(nf, rng);
        if red(&w).iter().all(|x| !x.is_zero()) {
            break w;
        }
    };
    let nu = random_integer_cocycle(nf, rng);
    let eta = random_integer_cocycle(nf, rng);
    Instance { omega_f: red(&omega), nu_f: red(&nu), eta_f: red(&eta), omega, nu, eta }
}

/// Sum of `(-1)^v Q_v`; zero exactly for genuine cocycles.
pub fn signed_sum_is_zero(nf: &NumberField, q: &[Elt]) -> bool {
    let mut s = nf.zero();
    for (v, qv) in q.iter().enumerate() {
        s = if v % 2 == 0 { nf.add(&s, qv) } else { nf.add(&s, &nf.neg(qv)) };
    }
    nf.is_zero(&s)
}
