use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::Complex;

/// Outcome of checking the closed-pseudomanifold conditions.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    /// Ridges not contained in exactly two facets, with their facet count.
    pub bad_ridges: Vec<(Vec<u32>, usize)>,
    /// Number of components of the facet adjacency graph.
    pub components: usize,
    pub orientable: Option<bool>,
}

impl ValidationReport {
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.bad_ridges.is_empty() && self.components == 1
    }
}

/// Check that every ridge lies in exactly two facets and that the facets form a strongly
/// connected complex. Orientability is reported when the other conditions hold.
pub fn validate_closed_pseudomanifold(c: &Complex) -> ValidationReport {
    let d = c.dim();
    let mut bad_ridges = Vec::new();
    let mut components = 1;
    let mut orientable = None;
    if d >= 1 {
        let cof = c.cofaces(d - 1);
        for (i, f) in cof.iter().enumerate() {
            if f.len() != 2 {
                bad_ridges.push((c.face(d - 1, i).to_vec(), f.len()));
            }
        }
        let n = c.n_facets();
        let mut comp = vec![usize::MAX; n];
        components = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = components;
            let mut stack = vec![s];
            while let Some(f) = stack.pop() {
                for &r in c.boundary_faces(d, f) {
                    for &g in &cof[r as usize] {
                        if comp[g as usize] == usize::MAX {
                            comp[g as usize] = components;
                            stack.push(g as usize);
                        }
                    }
                }
            }
            components += 1;
        }
        if bad_ridges.is_empty() && components == 1 {
            orientable = Some(is_orientable(c, &cof));
        }
    }
    ValidationReport {
        dim: d,
        f_vector: c.f_vector(),
        euler_characteristic: c.euler_characteristic(),
        bad_ridges,
        components,
        orientable,
    }
}

pub fn require_closed_pseudomanifold(c: &Complex) -> Result<ValidationReport> {
    let r = validate_closed_pseudomanifold(c);
    if !r.is_closed_pseudomanifold() {
        let msg = if let Some((ridge, n)) = r.bad_ridges.first() {
            format!("ridge {ridge:?} lies in {n} facets")
        } else {
            format!("{} strongly connected components", r.components)
        };
        return Err(Error::NotClosedPseudomanifold(msg));
    }
    Ok(r)
}

/// Try to choose facet orientations so that neighbours induce opposite ridge orientations.
fn is_orientable(c: &Complex, cof: &[Vec<u32>]) -> bool {
    let d = c.dim();
    let n = c.n_facets();
    let mut sign = vec![0i8; n];
    let position = |f: usize, r: u32| c.boundary_faces(d, f).iter().position(|&x| x == r).expect("ridge of facet");
    sign[0] = 1;
    let mut stack = vec![0usize];
    while let Some(f) = stack.pop() {
        for (k, &r) in c.boundary_faces(d, f).iter().enumerate() {
            let induced = sign[f] * if k % 2 == 0 { 1 } else { -1 };
            for &g in &cof[r as usize] {
                let g = g as usize;
                if g == f {
                    continue;
                }
                let kg = position(g, r);
                let want = -induced * if kg % 2 == 0 { 1 } else { -1 };
                if sign[g] == 0 {
                    sign[g] = want;
                    stack.push(g);
                } else if sign[g] != want {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary_simplex(n: usize) -> Complex {
        Complex::simplex_boundary(n + 1)
    }

    #[test]
    fn spheres_are_orientable_pseudomanifolds() {
        for n in 1..6 {
            let r = validate_closed_pseudomanifold(&boundary_simplex(n));
            assert!(r.is_closed_pseudomanifold());
            assert_eq!(r.orientable, Some(true));
        }
    }

    #[test]
    fn detects_boundary_and_disconnection() {
        let disk = Complex::new(4, vec![vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
        assert!(!validate_closed_pseudomanifold(&disk).is_closed_pseudomanifold());
        let two = Complex::new(6, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]]).unwrap();
        let r = validate_closed_pseudomanifold(&two);
        assert!(r.bad_ridges.is_empty());
        assert_eq!(r.components, 2);
        assert!(require_closed_pseudomanifold(&two).is_err());
    }
}
