//! Simplicial cohomology over finite fields, enumeration of classes, and nowhere-zero
//! representatives of a class.

mod f2;

pub use f2::F2Cohomology;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::subspace::{column_space, complement_in, rank_and_nullspace};
use crate::algebra::{Field, SubspaceBasis};
use crate::error::{Error, Result};
use crate::simplicial::{coboundary, Cochain, Complex};
use crate::Gf2;

/// Default cap on `dim H^q` for class enumeration.
pub const DEFAULT_CLASS_CAP: usize = 12;

/// Default number of random coboundary shifts tried by [`lift_omega_nonzero`].
pub const DEFAULT_LIFT_ATTEMPTS: usize = 64;

/// Representatives of a basis of `H^q`.
#[derive(Clone, Debug)]
pub struct CohomologyBasis<F> {
    pub degree: usize,
    pub reps: Vec<Cochain<F>>,
}

impl<F: Field> CohomologyBasis<F> {
    pub fn betti(&self) -> usize {
        self.reps.len()
    }
}

/// Basis of `H^q(C; F)` by sparse elimination: a complement of `B^q` inside `Z^q`.
pub fn cohomology_basis<F: Field>(c: &Complex, q: usize) -> Result<CohomologyBasis<F>> {
    let n = c.n_faces(q);
    let z = if q < c.dim() {
        rank_and_nullspace(&c.coboundary_matrix::<F>(q)).1
    } else {
        SubspaceBasis::full(n)
    };
    let b = if q > 0 { column_space(&c.coboundary_matrix::<F>(q - 1)) } else { SubspaceBasis::zero(n) };
    let h = complement_in(&b, &z)?;
    let reps = h
        .vectors()
        .iter()
        .map(|v| Cochain::new(c, q, v.to_dense(n)))
        .collect::<Result<_>>()?;
    Ok(CohomologyBasis { degree: q, reps })
}

/// Betti numbers `dim H^q(C; F)` for all `q`, from ranks of coboundary matrices.
pub fn betti_numbers<F: Field>(c: &Complex) -> Vec<usize> {
    let ranks: Vec<usize> = (0..c.dim()).map(|q| c.coboundary_matrix::<F>(q).rank()).collect();
    (0..=c.dim())
        .map(|q| {
            let out = if q < c.dim() { ranks[q] } else { 0 };
            let inc = if q > 0 { ranks[q - 1] } else { 0 };
            c.n_faces(q) - out - inc
        })
        .collect()
}

/// A cohomology class over GF(2) with a chosen representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRep {
    /// Coefficients in the basis, one bit per basis element.
    pub class_id: Vec<u8>,
    pub rep: Cochain<Gf2>,
}

impl ClassRep {
    pub fn is_zero_class(&self) -> bool {
        self.class_id.iter().all(|&b| b == 0)
    }

    pub fn label(&self) -> String {
        class_label(&self.class_id)
    }
}

/// Bit string of a class id, first basis element first.
pub fn class_label(id: &[u8]) -> String {
    id.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

/// Every class of `H^q(C; GF(2))`; class number `m` has bit `i` equal to bit `i` of `m`.
pub fn enumerate_classes(basis: &[Cochain<Gf2>], cap: usize) -> Result<Vec<ClassRep>> {
    let b = basis.len();
    if b > cap {
        return Err(Error::TooManyClasses { classes: b, cap });
    }
    let Some(first) = basis.first() else {
        return Err(Error::Unsupported("empty basis carries no degree".into()));
    };
    let mut out = Vec::with_capacity(1 << b);
    for m in 0..1usize << b {
        let class_id: Vec<u8> = (0..b).map(|i| (m >> i & 1) as u8).collect();
        let mut rep = first.zero_like();
        for (i, h) in basis.iter().enumerate() {
            if class_id[i] == 1 {
                rep.add_scaled(Gf2::new(1), h);
            }
        }
        out.push(ClassRep { class_id, rep });
    }
    Ok(out)
}

/// Parse a class id bit string such as `0110`.
pub fn parse_class_id(s: &str, betti: usize) -> Result<Vec<u8>> {
    let id: Vec<u8> = s
        .chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Unsupported(format!("class bits must be 0 or 1, got `{s}`"))),
        })
        .collect::<Result<_>>()?;
    if id.len() != betti {
        return Err(Error::DimensionMismatch { expected: betti, found: id.len() });
    }
    Ok(id)
}

/// Image of a GF(2) cochain in a field of characteristic 2.
pub fn embed_f2<F: Field>(x: &Cochain<Gf2>) -> Result<Cochain<F>> {
    if F::CHARACTERISTIC != 2 {
        return Err(Error::Unsupported(format!(
            "GF(2) classes embed only in characteristic 2, not {}",
            F::CHARACTERISTIC
        )));
    }
    Ok(x.map(|v| if v.repr() == 1 { F::one() } else { F::zero() }))
}

/// A nowhere-zero cocycle together with its class and the randomness that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaCocycle<F> {
    #[serde(skip)]
    pub cochain: Cochain<F>,
    pub class_id: Vec<u8>,
    pub seed: u64,
    /// Number of coboundary shifts drawn before success.
    pub attempts: usize,
}

/// The random generator used everywhere a seed is accepted.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Find `omega = base + delta(beta)` with no zero value, drawing `beta` uniformly.
///
/// Fails with [`Error::LiftFailed`] after `max_attempts` draws. Over GF(2) this always
/// fails on complexes of dimension at least 4, since a nowhere-zero 3-cochain there is
/// never a cocycle.
pub fn lift_omega_nonzero<F: Field>(
    c: &Complex,
    base: &Cochain<F>,
    class_id: Vec<u8>,
    seed: u64,
    max_attempts: usize,
) -> Result<OmegaCocycle<F>> {
    let q = base.degree();
    if q == 0 {
        return Err(Error::Unsupported("degree-0 classes have no coboundary shifts".into()));
    }
    if !coboundary(c, base).is_zero() {
        return Err(Error::NotACocycle(format!("degree {q} representative")));
    }
    let mut rng = seeded_rng(seed);
    for attempt in 1..=max_attempts {
        let beta = Cochain::new(c, q - 1, (0..c.n_faces(q - 1)).map(|_| F::random(&mut rng)).collect())?;
        let mut omega = coboundary(c, &beta);
        omega.add_scaled(F::one(), base);
        if omega.is_nowhere_zero() {
            return Ok(OmegaCocycle { cochain: omega, class_id, seed, attempts: attempt });
        }
    }
    Err(Error::LiftFailed { attempts: max_attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{catalog_get, real_projective_plane, sphere};
    use crate::{Gf2_8, Gf3};

    #[test]
    fn betti_numbers_of_small_spaces() {
        assert_eq!(betti_numbers::<Gf2>(&real_projective_plane()), vec![1, 1, 1]);
        assert_eq!(betti_numbers::<Gf3>(&real_projective_plane()), vec![1, 0, 0]);
        assert_eq!(betti_numbers::<Gf2>(&sphere(3)), vec![1, 0, 0, 1]);
        let k = catalog_get("K").unwrap().complex;
        assert_eq!(betti_numbers::<Gf2>(&k), vec![1, 2, 1]);
        assert_eq!(betti_numbers::<Gf3>(&k), vec![1, 1, 0]);
    }

    #[test]
    fn basis_reps_are_independent_cocycles() {
        let k = catalog_get("K").unwrap().complex;
        let b = cohomology_basis::<Gf2>(&k, 1).unwrap();
        assert_eq!(b.betti(), 2);
        for r in &b.reps {
            assert!(coboundary(&k, r).is_zero());
        }
        let classes = enumerate_classes(&b.reps, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(classes.len(), 4);
        assert!(classes[0].is_zero_class());
        assert_eq!(classes[2].label(), "01");
        assert!(enumerate_classes(&b.reps, 1).is_err());
    }

    #[test]
    fn lift_gives_nowhere_zero_cocycle() {
        let s = sphere(3);
        let zero = Cochain::<Gf2_8>::zero(&s, 2);
        let w = lift_omega_nonzero(&s, &zero, vec![], 3, DEFAULT_LIFT_ATTEMPTS).unwrap();
        assert!(w.cochain.is_nowhere_zero());
        assert!(coboundary(&s, &w.cochain).is_zero());
        let again = lift_omega_nonzero(&s, &zero, vec![], 3, DEFAULT_LIFT_ATTEMPTS).unwrap();
        assert_eq!(again.cochain, w.cochain);
    }

    #[test]
    fn lift_over_gf2_fails() {
        let s = sphere(5);
        let zero = Cochain::<Gf2>::zero(&s, 3);
        assert!(matches!(
            lift_omega_nonzero(&s, &zero, vec![], 1, 16),
            Err(Error::LiftFailed { attempts: 16 })
        ));
    }

    #[test]
    fn class_ids_parse() {
        assert_eq!(parse_class_id("101", 3).unwrap(), vec![1, 0, 1]);
        assert!(parse_class_id("12", 2).is_err());
        assert!(parse_class_id("1", 2).is_err());
    }
}
