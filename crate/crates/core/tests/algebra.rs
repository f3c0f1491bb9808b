use heptagon::algebra::f2::{F2Matrix, F2Reduction};
use heptagon::algebra::{DenseMatrix, SparseMatrix, SubspaceBasis};
use heptagon::{Field, Gf, Gf2, Gf2_15, Gf2_8, Gf3_9};
use num::{One, Zero};
use proptest::prelude::*;

fn elem<F: Field>() -> impl Strategy<Value = F> {
    (0..F::order() as u32).prop_map(|r| F::from_repr(r).unwrap())
}

fn matrix<F: Field>(rows: usize, cols: usize) -> impl Strategy<Value = DenseMatrix<F>> {
    // Sparse entries so that rank deficiency actually occurs.
    prop::collection::vec(prop_oneof![3 => Just(F::zero()), 1 => elem::<F>()], rows * cols)
        .prop_map(move |v| DenseMatrix::from_rows(&v.chunks(cols).map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap())
}

macro_rules! field_laws {
    ($name:ident, $f:ty) => {
        mod $name {
            use super::*;
            type F = $f;

            proptest! {
                #[test]
                fn ring_axioms(a in elem::<F>(), b in elem::<F>(), c in elem::<F>()) {
                    prop_assert_eq!((a + b) + c, a + (b + c));
                    prop_assert_eq!((a * b) * c, a * (b * c));
                    prop_assert_eq!(a * (b + c), a * b + a * c);
                    prop_assert_eq!(a + b, b + a);
                    prop_assert_eq!(a * b, b * a);
                    prop_assert_eq!(a - a, F::zero());
                    prop_assert_eq!(a + (-a), F::zero());
                    prop_assert_eq!(a * F::one(), a);
                }

                #[test]
                fn inverses(a in elem::<F>()) {
                    match a.inv() {
                        Some(i) => prop_assert_eq!(a * i, F::one()),
                        None => prop_assert!(a.is_zero()),
                    }
                    prop_assert_eq!(a.try_inv().is_err(), a.is_zero());
                }

                #[test]
                fn frobenius_is_additive(a in elem::<F>(), b in elem::<F>()) {
                    let p = F::CHARACTERISTIC as u64;
                    prop_assert_eq!((a + b).pow(p), a.pow(p) + b.pow(p));
                    prop_assert_eq!(a.pow(F::order()), a);
                }

                #[test]
                fn square_roots(a in elem::<F>()) {
                    let s = a * a;
                    let r = s.sqrt().expect("squares have roots");
                    prop_assert_eq!(r * r, s);
                }

                #[test]
                fn repr_round_trip(a in elem::<F>()) {
                    prop_assert_eq!(F::from_repr(a.repr()), Some(a));
                    prop_assert_eq!(a.coefficients().len(), F::DEGREE as usize);
                }

                #[test]
                fn integers_map_to_the_prime_field(x in -1000i64..1000, y in -1000i64..1000) {
                    prop_assert_eq!(F::from_int(x) + F::from_int(y), F::from_int(x + y));
                    prop_assert_eq!(F::from_int(x) * F::from_int(y), F::from_int(x * y));
                }
            }
        }
    };
}

field_laws!(gf2_8, Gf2_8);
field_laws!(gf2_15, Gf2_15);
field_laws!(gf3_9, Gf3_9);
field_laws!(gf5, Gf<5, 1>);
field_laws!(gf7_2, Gf<7, 2>);

#[test]
fn generator_has_full_order() {
    fn check<F: Field>() {
        let g = F::generator();
        let n = F::order() - 1;
        assert_eq!(g.pow(n), F::one());
        for q in [2u64, 3, 5, 7, 11, 31, 151] {
            if n % q == 0 {
                assert_ne!(g.pow(n / q), F::one());
            }
        }
    }
    check::<Gf2_8>();
    check::<Gf2_15>();
    check::<Gf3_9>();
}

#[test]
fn elements_are_distinct_and_complete() {
    let e = Gf::<3, 2>::elements();
    assert_eq!(e.len(), 9);
    let mut s = e.clone();
    s.dedup();
    assert_eq!(s.len(), 9);
    assert_eq!(Gf::<3, 2>::modulus().len(), 3);
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix::<Gf3_9>(5, 7)) {
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), 7);
        for x in &null {
            prop_assert!(m.mul_vec(x).unwrap().iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn sparse_and_dense_ranks_agree(m in matrix::<Gf2_15>(6, 6)) {
        prop_assert_eq!(SparseMatrix::from_dense(&m).rank(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_finds_solutions_of_consistent_systems(m in matrix::<Gf2_8>(5, 4), x in prop::collection::vec(elem::<Gf2_8>(), 4)) {
        let b = m.mul_vec(&x).unwrap();
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn inverse_when_full_rank(m in matrix::<Gf3_9>(4, 4)) {
        match m.inverse() {
            Ok(i) => prop_assert_eq!(m.mul(&i).unwrap(), DenseMatrix::identity(4)),
            Err(_) => prop_assert!(m.rank() < 4),
        }
    }

    #[test]
    fn gf2_reduction_rank_matches_generic(bits in prop::collection::vec(prop::collection::vec(any::<bool>(), 8), 10)) {
        let cols: Vec<Vec<u32>> = bits.iter().map(|c| (0..8u32).filter(|&i| c[i as usize]).collect()).collect();
        let m = F2Matrix::new(8, cols);
        let dense = DenseMatrix::from_columns(8, &bits.iter().map(|c| c.iter().map(|&b| Gf2::new(u32::from(b))).collect()).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(F2Reduction::new(&m, None, false).rank(), dense.rank());
    }

    #[test]
    fn span_is_basis_independent(m in matrix::<Gf2_8>(4, 6)) {
        let rows: Vec<Vec<Gf2_8>> = m.rref().0.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let a = SubspaceBasis::from_dense_vectors(6, &rows).unwrap();
        let mixed: Vec<Vec<Gf2_8>> = (0..rows.len())
            .map(|i| {
                let mut v = rows[i].clone();
                if i + 1 < rows.len() {
                    for (x, y) in v.iter_mut().zip(&rows[i + 1]) {
                        *x += *y;
                    }
                }
                v
            })
            .collect();
        let b = SubspaceBasis::from_dense_vectors(6, &mixed).unwrap();
        prop_assert!(a.same_span(&b));
        prop_assert_eq!(a.dim(), m.rank());
    }
}
