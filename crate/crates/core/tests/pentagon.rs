use heptagon::cohomology::seeded_rng;
use heptagon::pentagon::{
    cross_ratio_residual, framework_matrix, is_orthogonal_form, normalized_matrix, pentagon_matrix,
    pentagon_relation_check, PentagonData,
};
use heptagon::verify::full_polygon;
use heptagon::{Field, Gf2_15, Gf3_9};

fn random_z<F: Field>(n: usize, rng: &mut impl rand::Rng) -> PentagonData<F> {
    loop {
        if let Ok(d) = PentagonData::new((0..n).map(|_| F::random(rng)).collect()) {
            return d;
        }
    }
}

fn relation_holds<F: Field>(trials: usize, seed: u64) {
    let mut rng = seeded_rng(seed);
    for _ in 0..trials {
        assert!(pentagon_relation_check(&random_z::<F>(5, &mut rng)).unwrap());
    }
}

#[test]
fn pentagon_relation_over_both_fields() {
    relation_holds::<Gf2_15>(20, 1);
    relation_holds::<Gf3_9>(20, 2);
}

#[test]
fn closed_form_matrix_is_the_framework_matrix() {
    let mut rng = seeded_rng(3);
    for _ in 0..20 {
        let d = random_z::<Gf3_9>(4, &mut rng);
        assert_eq!(pentagon_matrix(&d).unwrap(), framework_matrix(&d).unwrap());
    }
}

#[test]
fn normalized_matrices_are_orthogonal() {
    assert!(cross_ratio_residual().is_empty());
    let mut rng = seeded_rng(4);
    for _ in 0..20 {
        let d = random_z::<Gf2_15>(4, &mut rng);
        assert!(is_orthogonal_form(&normalized_matrix(&d).unwrap().expect("every element is a square")));
    }
    let mut found = 0;
    for _ in 0..100 {
        let d = random_z::<Gf3_9>(4, &mut rng);
        if let Some(n) = normalized_matrix(&d).unwrap() {
            assert!(is_orthogonal_form(&n));
            found += 1;
        }
    }
    assert!(found > 0);
}

#[test]
fn repeated_or_short_parameters_are_rejected() {
    let z = [1, 2, 2, 5].map(Gf3_9::new).to_vec();
    assert!(PentagonData::new(z).is_err());
    let d = PentagonData::new([1, 2, 3].map(Gf3_9::new).to_vec()).unwrap();
    assert!(pentagon_matrix(&d).is_err());
    assert!(pentagon_relation_check(&d).is_err());
}

#[test]
fn hexagon_relation_holds() {
    let r = full_polygon::<Gf3_9>(4, 10, 5).unwrap();
    assert!(r.all_passed());
    assert_eq!(r.checks.len(), 5);
}
