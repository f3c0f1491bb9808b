mod common;

use common::{exact_q, pipeline, random_instance, signed_sum_is_zero, NumberField};
use heptagon::cohomology::seeded_rng;
use heptagon::heptagon::{
    c_char2, c_from_q, c_value, q_value, q_values, random_local_cocycle, universal_polynomial, EpsilonTilde,
    DEFAULT_POWER_CAP,
};
use heptagon::pachner::random_nowhere_zero_coboundary;
use heptagon::{Field, Gf2_15, Gf2_2, Gf2_4, Gf3_2, Gf3_9};

fn closed_form_matches_oracle<F: Field>(instances: usize, seed: u64) {
    let nf = NumberField::lifting::<F>();
    let mut rng = seeded_rng(seed);
    for _ in 0..instances {
        let inst = random_instance::<F, _>(&nf, &mut rng);
        let q = exact_q(&nf, &inst.omega, &inst.nu, &inst.eta);
        assert!(signed_sum_is_zero(&nf, &q));
        let n = F::CHARACTERISTIC as u64;
        let expect: F = pipeline(&nf, &q, n).expect("division by p is exact");
        assert_eq!(c_value(&inst.omega_f, &inst.nu_f, &inst.eta_f).unwrap(), expect);
    }
}

#[test]
fn char2_closed_form_matches_exact_pipeline() {
    closed_form_matches_oracle::<Gf2_2>(20, 1);
    closed_form_matches_oracle::<Gf2_4>(5, 2);
}

#[test]
fn char3_closed_form_matches_exact_pipeline() {
    closed_form_matches_oracle::<Gf3_2>(20, 3);
}

#[test]
fn second_power_polynomials_match_exact_pipeline() {
    fn run<F: Field>(seed: u64) {
        let nf = NumberField::lifting::<F>();
        let u = universal_polynomial(F::CHARACTERISTIC, 2, DEFAULT_POWER_CAP).unwrap();
        let mut rng = seeded_rng(seed);
        for _ in 0..10 {
            let inst = random_instance::<F, _>(&nf, &mut rng);
            let q = exact_q(&nf, &inst.omega, &inst.nu, &inst.eta);
            let expect: F = pipeline(&nf, &q, u.power()).expect("division by p is exact");
            let qs = q_values(&inst.omega_f, &inst.nu_f, &inst.eta_f).unwrap();
            assert_eq!(u.c_from_q(&qs).unwrap(), expect);
        }
    }
    run::<Gf2_2>(4);
    run::<Gf3_2>(5);
}

#[test]
fn exact_q_reduces_to_field_q() {
    let nf = NumberField::lifting::<Gf3_2>();
    let mut rng = seeded_rng(6);
    let inst = random_instance::<Gf3_2, _>(&nf, &mut rng);
    let q = exact_q(&nf, &inst.omega, &inst.nu, &inst.eta);
    let qs = q_values(&inst.omega_f, &inst.nu_f, &inst.eta_f).unwrap();
    for (a, b) in q.iter().zip(qs) {
        assert_eq!(common::reduce::<Gf3_2>(a).unwrap(), b);
    }
}

#[test]
fn first_power_polynomials_are_the_closed_forms() {
    let u2 = universal_polynomial(2, 1, DEFAULT_POWER_CAP).unwrap();
    assert_eq!(u2.terms, vec![(vec![1], 1)]);
    let u3 = universal_polynomial(3, 1, DEFAULT_POWER_CAP).unwrap();
    assert_eq!(u3.terms, vec![(vec![0, 1], 1)]);
    assert!(universal_polynomial(2, 4, DEFAULT_POWER_CAP).is_err());
    assert!(universal_polynomial(3, 2, DEFAULT_POWER_CAP).is_ok());

    let mut rng = seeded_rng(7);
    for _ in 0..20 {
        let w: Vec<Gf2_15> = random_nowhere_zero_coboundary(5, 3, &mut rng);
        let nu = random_local_cocycle(5, 3, &mut rng);
        let eta = random_local_cocycle(5, 3, &mut rng);
        let q = q_values(&w, &nu, &eta).unwrap();
        assert_eq!(u2.c_from_q(&q).unwrap(), c_from_q(&q).unwrap());
        let w: Vec<Gf3_9> = random_nowhere_zero_coboundary(5, 3, &mut rng);
        let nu = random_local_cocycle(5, 3, &mut rng);
        let eta = random_local_cocycle(5, 3, &mut rng);
        let q = q_values(&w, &nu, &eta).unwrap();
        assert_eq!(u3.c_from_q(&q).unwrap(), c_from_q(&q).unwrap());
    }
}

#[test]
fn flipping_epsilon_tilde_changes_nothing() {
    let mut rng = seeded_rng(8);
    for _ in 0..50 {
        let w: Vec<Gf2_15> = random_nowhere_zero_coboundary(5, 3, &mut rng);
        let nu = random_local_cocycle(5, 3, &mut rng);
        let eta = random_local_cocycle(5, 3, &mut rng);
        let q = q_values(&w, &nu, &eta).unwrap();
        let mut flipped = Gf2_15::new(0);
        for a in 0..6 {
            for b in a + 1..6 {
                flipped += q[a] * q[b];
            }
            if EpsilonTilde::of_face(a).flipped().0 == 1 {
                flipped += q[a] * q[a];
            }
        }
        assert_eq!(flipped, c_char2(&q));
    }
}

#[test]
fn q_vanishes_on_multiples_of_omega() {
    let mut rng = seeded_rng(9);
    for _ in 0..20 {
        let w: Vec<Gf2_15> = random_nowhere_zero_coboundary(4, 3, &mut rng);
        let eta = random_local_cocycle(4, 3, &mut rng);
        let c = Gf2_15::random(&mut rng);
        let nu: Vec<Gf2_15> = w.iter().map(|&x| c * x).collect();
        assert_eq!(q_value(&w, &nu, &eta).unwrap(), Gf2_15::new(0));
        assert_eq!(q_value(&w, &w, &w).unwrap(), Gf2_15::new(0));
    }
}

#[test]
fn zero_face_values_give_zero() {
    let z = [Gf3_9::new(0); 6];
    assert_eq!(c_from_q(&z).unwrap(), Gf3_9::new(0));
    let z = [Gf2_15::new(0); 6];
    assert_eq!(c_from_q(&z).unwrap(), Gf2_15::new(0));
}
