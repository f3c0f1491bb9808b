//! Seeded randomized verification suites for the local algebra.

use serde::Serialize;

use crate::algebra::Field;
use crate::cohomology::seeded_rng;
use crate::coloring::cluster_boundary_space;
use crate::error::Result;
use crate::heptagon::{
    c_value, heptagon_coboundary, q_value, q_values, random_local_cocycle, universal_polynomial, DEFAULT_POWER_CAP,
};
use crate::pachner::random_nowhere_zero_coboundary;
use crate::simplicial::combinations;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed == c.trials)
    }

    fn record(&mut self, name: &str, ok: bool) {
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => {
                c.trials += 1;
                c.passed += usize::from(ok);
            }
            None => self.checks.push(Check { name: name.to_string(), trials: 1, passed: usize::from(ok) }),
        }
    }
}

/// Boundary coloring spaces of every proper nonempty set of facets of `∂Δ^{d+1}`, indexed by bitmask.
pub fn all_cluster_spaces<F: Field>(
    d: usize,
    omega: &[F],
) -> Result<Vec<Option<crate::algebra::SubspaceBasis<F>>>> {
    let n = d + 2;
    let mut out = vec![None; 1 << n];
    for (mask, slot) in out.iter_mut().enumerate().take((1 << n) - 1).skip(1) {
        let cluster: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        *slot = Some(cluster_boundary_space(d, omega, &cluster)?);
    }
    Ok(out)
}

/// Full polygon relation in dimension `d` for `trials` random parameters: for every split
/// size `m`, every set of `m` facets and its complement give equal boundary spaces.
pub fn full_polygon<F: Field>(d: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    let n = d + 2;
    let mut rng = seeded_rng(seed);
    let mut report = VerificationReport::default();
    for _ in 0..trials {
        let omega: Vec<F> = random_nowhere_zero_coboundary(d + 1, d - 2, &mut rng);
        let spaces = all_cluster_spaces(d, &omega)?;
        for m in 1..n {
            let ok = combinations(n, m).iter().all(|s| {
                let mask: usize = s.iter().map(|k| 1 << k).sum();
                let a = spaces[mask].as_ref().expect("space");
                let b = spaces[(1 << n) - 1 - mask].as_ref().expect("space");
                a.same_span(b)
            });
            report.record(&format!("full polygon d={d} split {m}|{}", n - m), ok);
        }
    }
    Ok(report)
}

/// Cocycle properties of `Q` and of the five-cocycles on random local cocycles.
pub fn cocycles<F: Field>(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = seeded_rng(seed);
    let mut report = VerificationReport::default();
    let closed_form = matches!(F::CHARACTERISTIC, 2 | 3);
    let polys: Vec<_> = (1..=2)
        .filter_map(|k| universal_polynomial(F::CHARACTERISTIC, k, DEFAULT_POWER_CAP).ok())
        .collect();
    for _ in 0..trials {
        let w4: Vec<F> = random_nowhere_zero_coboundary(4, 3, &mut rng);
        let nu: Vec<F> = random_local_cocycle(4, 3, &mut rng);
        let eta: Vec<F> = random_local_cocycle(4, 3, &mut rng);
        let c = F::random(&mut rng);
        let q = q_value(&w4, &nu, &eta)?;
        let shifted: Vec<F> = nu.iter().zip(&w4).map(|(&x, &o)| x + c * o).collect();
        report.record("Q representative independence", q_value(&w4, &shifted, &eta)? == q);
        report.record("Q symmetric", q_value(&w4, &eta, &nu)? == q);

        let w5: Vec<F> = random_nowhere_zero_coboundary(5, 3, &mut rng);
        let nu: Vec<F> = random_local_cocycle(5, 3, &mut rng);
        let eta: Vec<F> = random_local_cocycle(5, 3, &mut rng);
        report.record("dQ = 0 on the 5-simplex", heptagon_coboundary(5, &w5, &nu, &eta, q_value)?.is_zero());
        let qs = q_values(&w5, &nu, &eta)?;
        let signed_sum: F = qs.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x } else { -x }).sum();
        report.record("sum of signed Q over faces of the 5-simplex", signed_sum.is_zero());
        if closed_form {
            let c0 = c_value(&w5, &nu, &eta)?;
            let shifted: Vec<F> = nu.iter().zip(&w5).map(|(&x, &o)| x + c * o).collect();
            report.record("c representative independence", c_value(&w5, &shifted, &eta)? == c0);
        }

        let w6: Vec<F> = random_nowhere_zero_coboundary(6, 3, &mut rng);
        let nu: Vec<F> = random_local_cocycle(6, 3, &mut rng);
        let eta: Vec<F> = random_local_cocycle(6, 3, &mut rng);
        if closed_form {
            let dc = heptagon_coboundary(6, &w6, &nu, &eta, c_value)?;
            report.record(&format!("dc = 0 on the 6-simplex (characteristic {})", F::CHARACTERISTIC), dc.is_zero());
        }
        for u in &polys {
            let dc = heptagon_coboundary(6, &w6, &nu, &eta, |o, a, b| u.c_from_q(&q_values(o, a, b)?))?;
            report.record(&format!("dc = 0 on the 6-simplex (universal polynomial {}^{})", u.p, u.k), dc.is_zero());
        }
    }
    Ok(report)
}
