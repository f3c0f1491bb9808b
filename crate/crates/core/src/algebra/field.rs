//! Finite fields GF(p^k) with the characteristic and degree fixed at compile time.
//!
//! An element of `Gf<P, K>` is stored as the integer `c_0 + c_1 p + ... + c_{K-1} p^{K-1}`
//! where `c_i` are the coefficients of its polynomial representative modulo the
//! field's defining polynomial. Multiplication goes through discrete log tables
//! that are built once per field on first use.

use std::fmt;
use std::hash::Hash;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Operations shared by every scalar type the library computes over.
pub trait Field:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Product
{
    const CHARACTERISTIC: u32;
    const DEGREE: u32;

    /// Number of elements, `p^k`.
    fn order() -> u64 {
        (Self::CHARACTERISTIC as u64).pow(Self::DEGREE)
    }

    /// Multiplicative inverse, `None` for zero.
    fn inv(self) -> Option<Self>;

    fn try_inv(self) -> Result<Self> {
        self.inv().ok_or(Error::DivisionByZero)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Integer encoding of the element (base-p digits are the polynomial coefficients).
    fn repr(self) -> u32;

    /// Inverse of [`Field::repr`]; `None` when `r >= p^k`.
    fn from_repr(r: u32) -> Option<Self>;

    /// Image of an integer under the ring map `Z -> F`.
    fn from_int(v: i64) -> Self;

    /// Coefficients of the polynomial representative, lowest degree first.
    fn coefficients(self) -> Vec<u32> {
        let p = Self::CHARACTERISTIC;
        let mut r = self.repr();
        (0..Self::DEGREE)
            .map(|_| {
                let d = r % p;
                r /= p;
                d
            })
            .collect()
    }

    /// Defining polynomial coefficients, lowest degree first, monic of degree `k`.
    fn modulus() -> Vec<u32>;

    /// A fixed generator of the multiplicative group.
    fn generator() -> Self;

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let q = Self::order() as u32;
        Self::from_repr(rng.gen_range(0..q)).expect("in range")
    }

    fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let q = Self::order() as u32;
        Self::from_repr(rng.gen_range(1..q)).expect("in range")
    }

    /// Some square root, if one exists.
    fn sqrt(self) -> Option<Self>;

    /// All elements in increasing `repr` order.
    fn elements() -> Vec<Self> {
        (0..Self::order() as u32).map(|r| Self::from_repr(r).expect("in range")).collect()
    }
}

/// Element of the finite field with `P^K` elements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf<const P: u32, const K: u32>(u32);

/// Fields with a built-in table slot. Anything else fails at compile time.
const SUPPORTED: &[(u32, u32)] = &[
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (2, 7),
    (2, 8),
    (2, 9),
    (2, 10),
    (2, 11),
    (2, 12),
    (2, 13),
    (2, 14),
    (2, 15),
    (2, 16),
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (3, 5),
    (3, 6),
    (3, 7),
    (3, 8),
    (3, 9),
    (5, 1),
    (5, 2),
    (5, 3),
    (5, 4),
    (5, 5),
    (5, 6),
    (7, 1),
    (7, 2),
    (7, 3),
    (7, 4),
    (7, 5),
    (11, 1),
    (11, 2),
    (11, 3),
    (11, 4),
    (13, 1),
    (13, 2),
    (13, 3),
    (13, 4),
];

/// Defining polynomials fixed by convention; others are found by search.
const NAMED_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 9, &[1, 1, 2, 2, 0, 0, 0, 0, 0, 1]),
];

const fn slot_of(p: u32, k: u32) -> usize {
    let mut i = 0;
    while i < SUPPORTED.len() {
        if SUPPORTED[i].0 == p && SUPPORTED[i].1 == k {
            return i;
        }
        i += 1;
    }
    panic!("unsupported finite field parameters");
}

/// Whether `Gf<p, k>` is one of the compiled-in fields.
pub fn is_supported(p: u32, k: u32) -> bool {
    SUPPORTED.contains(&(p, k))
}

pub fn supported_fields() -> &'static [(u32, u32)] {
    SUPPORTED
}

struct Tables {
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

static TABLES: [OnceLock<Tables>; SUPPORTED.len()] = [const { OnceLock::new() }; SUPPORTED.len()];

fn digits(mut r: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = r % p;
            r /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiply the polynomial `a` (degree < k) by `x` modulo the monic `modulus`.
fn times_x(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = a.len();
    let top = a[k - 1];
    let mut out = vec![0; k];
    for i in (1..k).rev() {
        out[i] = a[i - 1];
    }
    if top != 0 {
        for i in 0..k {
            out[i] = (out[i] + (p - top) * modulus[i]) % p;
        }
    }
    out
}

/// Powers of `x` modulo `modulus`; `None` unless `x` has order exactly `p^k - 1`.
fn power_table(modulus: &[u32], p: u32, k: u32) -> Option<Vec<u32>> {
    let q = p.pow(k);
    let n = (q - 1) as usize;
    let mut exp = Vec::with_capacity(2 * n);
    let mut cur = vec![0u32; k as usize];
    cur[0] = 1;
    for i in 0..n {
        let r = undigits(&cur, p);
        if i > 0 && r == 1 {
            return None;
        }
        exp.push(r);
        cur = times_x(&cur, modulus, p);
    }
    if undigits(&cur, p) != 1 {
        return None;
    }
    let head: Vec<u32> = exp.clone();
    exp.extend(head);
    Some(exp)
}

fn prime_field_tables(p: u32) -> Tables {
    let n = (p - 1) as usize;
    let exp = (1..p.max(2))
        .find_map(|g| {
            let mut t = Vec::with_capacity(2 * n);
            let mut cur = 1u32;
            for i in 0..n {
                if i > 0 && cur == 1 {
                    return None;
                }
                t.push(cur);
                cur = cur * g % p;
            }
            (cur == 1).then_some(t)
        })
        .expect("prime field has a primitive root");
    let mut doubled = exp.clone();
    doubled.extend(exp);
    finish_tables(vec![0, 1], doubled, p)
}

fn finish_tables(modulus: Vec<u32>, exp: Vec<u32>, q: u32) -> Tables {
    let mut log = vec![0u32; q as usize];
    for (i, &e) in exp.iter().take((q - 1) as usize).enumerate() {
        log[e as usize] = i as u32;
    }
    Tables { modulus, exp, log }
}

fn build_tables(p: u32, k: u32) -> Tables {
    if k == 1 {
        return prime_field_tables(p);
    }
    let q = p.pow(k);
    if let Some(&(_, _, m)) = NAMED_MODULI.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
        let exp = power_table(m, p, k).expect("named modulus is primitive");
        return finish_tables(m.to_vec(), exp, q);
    }
    for low in 1..q {
        let mut m = digits(low, p, k);
        m.push(1);
        if let Some(exp) = power_table(&m, p, k) {
            return finish_tables(m, exp, q);
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

impl<const P: u32, const K: u32> Gf<P, K> {
    const SLOT: usize = slot_of(P, K);
    const Q: u32 = P.pow(K);

    #[inline]
    fn tables() -> &'static Tables {
        TABLES[Self::SLOT].get_or_init(|| build_tables(P, K))
    }

    /// The element with the given encoding, reduced modulo `p^k`.
    #[inline]
    pub fn new(r: u32) -> Self {
        Gf(r % Self::Q)
    }

    /// Discrete logarithm with respect to [`Field::generator`], `None` for zero.
    pub fn log(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(Self::tables().log[self.0 as usize])
        }
    }

    #[inline]
    fn add_digits(a: u32, b: u32) -> u32 {
        if P == 2 {
            a ^ b
        } else if K == 1 {
            let s = a + b;
            if s >= P {
                s - P
            } else {
                s
            }
        } else {
            let (mut x, mut y, mut pw, mut r) = (a, b, 1u32, 0u32);
            for _ in 0..K {
                let d = (x % P + y % P) % P;
                r += d * pw;
                pw *= P;
                x /= P;
                y /= P;
            }
            r
        }
    }

    #[inline]
    fn neg_digits(a: u32) -> u32 {
        if P == 2 {
            a
        } else if K == 1 {
            if a == 0 {
                0
            } else {
                P - a
            }
        } else {
            let (mut x, mut pw, mut r) = (a, 1u32, 0u32);
            for _ in 0..K {
                let d = x % P;
                r += ((P - d) % P) * pw;
                pw *= P;
                x /= P;
            }
            r
        }
    }
}

impl<const P: u32, const K: u32> Field for Gf<P, K> {
    const CHARACTERISTIC: u32 = P;
    const DEGREE: u32 = K;

    fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        if self.0 == 1 {
            return Some(self);
        }
        let t = Self::tables();
        let n = Self::Q - 1;
        let l = t.log[self.0 as usize];
        Some(Gf(t.exp[((n - l) % n) as usize]))
    }

    fn pow(self, e: u64) -> Self {
        if e == 0 {
            return Self::one();
        }
        if self.0 == 0 {
            return self;
        }
        let t = Self::tables();
        let n = (Self::Q - 1) as u64;
        let l = t.log[self.0 as usize] as u64;
        Gf(t.exp[((l * (e % n)) % n) as usize])
    }

    #[inline]
    fn repr(self) -> u32 {
        self.0
    }

    fn from_repr(r: u32) -> Option<Self> {
        (r < Self::Q).then_some(Gf(r))
    }

    fn from_int(v: i64) -> Self {
        let r = v.rem_euclid(P as i64) as u32;
        Gf(r)
    }

    fn modulus() -> Vec<u32> {
        Self::tables().modulus.clone()
    }

    fn generator() -> Self {
        Gf(Self::tables().exp[if Self::Q == 2 { 0 } else { 1 }])
    }

    fn sqrt(self) -> Option<Self> {
        if self.0 == 0 {
            return Some(self);
        }
        if P == 2 {
            return Some(self.pow(Self::order() / 2));
        }
        let t = Self::tables();
        let l = t.log[self.0 as usize];
        (l % 2 == 0).then(|| Gf(t.exp[(l / 2) as usize]))
    }
}

impl<const P: u32, const K: u32> Zero for Gf<P, K> {
    #[inline]
    fn zero() -> Self {
        Gf(0)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32, const K: u32> One for Gf<P, K> {
    #[inline]
    fn one() -> Self {
        Gf(1)
    }
}

impl<const P: u32, const K: u32> Add for Gf<P, K> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Gf(Self::add_digits(self.0, rhs.0))
    }
}

impl<const P: u32, const K: u32> Sub for Gf<P, K> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Gf(Self::add_digits(self.0, Self::neg_digits(rhs.0)))
    }
}

impl<const P: u32, const K: u32> Neg for Gf<P, K> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Gf(Self::neg_digits(self.0))
    }
}

impl<const P: u32, const K: u32> Mul for Gf<P, K> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if self.0 == 0 || rhs.0 == 0 {
            return Gf(0);
        }
        if K == 1 {
            return Gf(self.0 * rhs.0 % P);
        }
        let t = Self::tables();
        Gf(t.exp[(t.log[self.0 as usize] + t.log[rhs.0 as usize]) as usize])
    }
}

impl<const P: u32, const K: u32> Div for Gf<P, K> {
    type Output = Self;
    /// Panics on division by zero; use [`Field::inv`] to test first.
    #[inline]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in finite field")
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl<const P: u32, const K: u32> $tr for Gf<P, K> {
            #[inline]
            fn $m(&mut self, rhs: Self) {
                *self = *self $op rhs;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl<const P: u32, const K: u32> Sum for Gf<P, K> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<const P: u32, const K: u32> Product for Gf<P, K> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl<const P: u32, const K: u32> fmt::Display for Gf<P, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32, const K: u32> fmt::Debug for Gf<P, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})[{}]", P, K, self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::{Gf2, Gf2_15, Gf2_4, Gf3_2, Gf3_9};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field_axioms_exhaustive<F: Field>() {
        let els = F::elements();
        for &a in &els {
            assert_eq!(a + F::zero(), a);
            assert_eq!(a * F::one(), a);
            assert_eq!(a + (-a), F::zero());
            if !a.is_zero() {
                assert_eq!(a * a.inv().unwrap(), F::one());
            }
            for &b in &els {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!(a - b + b, a);
                for &c in els.iter().take(7) {
                    assert_eq!(a * (b + c), a * b + a * c);
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        field_axioms_exhaustive::<Gf2>();
        field_axioms_exhaustive::<Gf2_4>();
        field_axioms_exhaustive::<Gf3_2>();
        field_axioms_exhaustive::<Gf<5, 1>>();
        field_axioms_exhaustive::<Gf<3, 3>>();
    }

    #[test]
    fn named_moduli_are_used() {
        assert_eq!(Gf2_15::modulus()[..2], [1, 1]);
        assert_eq!(Gf3_9::modulus(), vec![1, 1, 2, 2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(Gf2_4::modulus(), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        for a in Gf3_9::elements().into_iter().step_by(97) {
            assert_eq!(a.pow(Gf3_9::order()), a);
        }
        let two = Gf3_9::from_int(2);
        assert_eq!(two.pow(3), two);
        assert_eq!(Gf3_9::from_int(-1), two);
    }

    #[test]
    fn sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let a = Gf2_15::random(&mut rng);
            assert_eq!(a.sqrt().unwrap() * a.sqrt().unwrap(), a);
            let b = Gf3_9::random(&mut rng);
            let sq = b * b;
            let r = sq.sqrt().unwrap();
            assert_eq!(r * r, sq);
        }
        let non_residues = Gf::<7, 1>::elements().into_iter().filter(|a| a.sqrt().is_none()).count();
        assert_eq!(non_residues, 3);
    }

    #[test]
    fn searched_modulus_is_primitive() {
        let g = Gf::<2, 7>::generator();
        let mut seen = std::collections::HashSet::new();
        let mut cur = Gf::<2, 7>::one();
        for _ in 0..127 {
            assert!(seen.insert(cur));
            cur *= g;
        }
        assert_eq!(cur, Gf::<2, 7>::one());
    }

    #[test]
    fn polynomial_multiplication_matches_tables() {
        // x * x^14 = x^15 = x + 1 in GF(2^15).
        let x = Gf2_15::from_repr(2).unwrap();
        let x14 = Gf2_15::from_repr(1 << 14).unwrap();
        assert_eq!(x * x14, Gf2_15::from_repr(3).unwrap());
    }
}
