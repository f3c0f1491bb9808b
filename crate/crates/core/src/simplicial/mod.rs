//! Finite simplicial complexes, cochains and basic constructions.

mod cochain;
mod complex;
pub mod io;
mod validate;

pub use cochain::{coboundary, local_coboundary, Cochain};
pub use complex::{combinations, Complex, IncidenceSign};
pub use validate::{require_closed_pseudomanifold, validate_closed_pseudomanifold, ValidationReport};

/// Barycentric subdivision. Also returns, for each new vertex, the `(dimension, index)`
/// of the face it subdivides.
pub fn barycentric_subdivision(c: &Complex) -> (Complex, Vec<(usize, usize)>) {
    let d = c.dim();
    let mut origin = Vec::new();
    let mut offset = vec![0usize; d + 1];
    for q in 0..=d {
        offset[q] = origin.len();
        origin.extend((0..c.n_faces(q)).map(|i| (q, i)));
    }
    let mut facets = Vec::new();
    for f in 0..c.n_facets() {
        // Walk down maximal flags: facet, one of its ridges, and so on.
        let mut stack: Vec<Vec<(usize, usize)>> = vec![vec![(d, f)]];
        while let Some(chain) = stack.pop() {
            let &(q, i) = chain.last().expect("nonempty chain");
            if q == 0 {
                let mut verts: Vec<u32> = chain.iter().map(|&(q, i)| (offset[q] + i) as u32).collect();
                verts.sort_unstable();
                facets.push(verts);
                continue;
            }
            for &b in c.boundary_faces(q, i) {
                let mut next = chain.clone();
                next.push((q - 1, b as usize));
                stack.push(next);
            }
        }
    }
    let sd = Complex::new(origin.len(), facets).expect("subdivision is a valid complex");
    (sd, origin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivision_counts() {
        let tri = Complex::new(3, vec![vec![0, 1, 2]]).unwrap();
        let (sd, origin) = barycentric_subdivision(&tri);
        assert_eq!(sd.n_facets(), 6);
        assert_eq!(sd.n_vertices(), 7);
        assert_eq!(origin[6], (2, 0));
        let s3 = Complex::new(5, combinations(5, 4).into_iter().map(|c| c.into_iter().map(|v| v as u32).collect()).collect()).unwrap();
        let (sd3, _) = barycentric_subdivision(&s3);
        assert_eq!(sd3.n_facets(), 5 * 24);
        assert_eq!(sd3.euler_characteristic(), 0);
        assert!(validate_closed_pseudomanifold(&sd3).is_closed_pseudomanifold());
    }
}
