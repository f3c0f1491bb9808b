//! Triangulations of the closed manifolds used in the class tables, and the
//! constructions that produce them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::{combinations, io, Complex};

/// Environment variable naming a directory whose facet files override the built-in data.
pub const DATA_DIR_ENV: &str = "HEPTAGON_DATA_DIR";

const KLEIN_DATA: &str = include_str!("../../data/klein.txt");
const RP3_DATA: &str = include_str!("../../data/rp3.txt");
const RP4_DATA: &str = include_str!("../../data/rp4.txt");

/// A named triangulated manifold.
#[derive(Clone, Debug)]
pub struct Manifold {
    pub name: String,
    pub complex: Complex,
    pub provenance: String,
}

/// Summary used by `build` and `validate` output.
#[derive(Clone, Debug, Serialize)]
pub struct ManifoldSummary {
    pub name: String,
    pub dim: usize,
    pub vertices: usize,
    pub facets: usize,
    pub f_vector: Vec<usize>,
    pub provenance: String,
}

impl Manifold {
    pub fn summary(&self) -> ManifoldSummary {
        ManifoldSummary {
            name: self.name.clone(),
            dim: self.complex.dim(),
            vertices: self.complex.n_vertices(),
            facets: self.complex.n_facets(),
            f_vector: self.complex.f_vector(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Names accepted by [`catalog_get`]. `Klein` is also accepted for `K`.
pub const CATALOG: &[&str] = &["S1", "S2", "S3", "S4", "S5", "RP2", "RP3", "RP4", "K"];

fn canonical_name(name: &str) -> Option<&'static str> {
    let n = if name.eq_ignore_ascii_case("klein") { "K" } else { name };
    CATALOG.iter().copied().find(|c| c.eq_ignore_ascii_case(n))
}

fn shipped(file: &str, builtin: &str) -> Result<Complex> {
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        let path = std::path::Path::new(&dir).join(file);
        if path.exists() {
            return io::read_complex(path);
        }
    }
    io::parse_complex(builtin)
}

/// One of the base manifolds by name.
pub fn catalog_get(name: &str) -> Result<Manifold> {
    let canon = canonical_name(name).ok_or_else(|| Error::UnknownManifold(name.to_string()))?;
    let (complex, provenance) = match canon {
        "S1" | "S2" | "S3" | "S4" | "S5" => {
            let n: usize = canon[1..].parse().expect("digit");
            (sphere(n), format!("boundary of the {}-simplex", n + 1))
        }
        "RP2" => (real_projective_plane(), "six-vertex hemi-icosahedron".to_string()),
        "K" => (shipped("klein.txt", KLEIN_DATA)?, "shipped facet list klein.txt".to_string()),
        "RP3" => (shipped("rp3.txt", RP3_DATA)?, "shipped facet list rp3.txt".to_string()),
        "RP4" => (shipped("rp4.txt", RP4_DATA)?, "shipped facet list rp4.txt".to_string()),
        _ => unreachable!(),
    };
    Ok(Manifold { name: canon.to_string(), complex, provenance })
}

/// A catalog name or an `x`-separated product of catalog names, multiplied left to right.
pub fn build(expr: &str) -> Result<Manifold> {
    let parts: Vec<&str> = expr.split('x').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::UnknownManifold(expr.to_string()));
    }
    let mut acc = catalog_get(parts[0])?;
    for p in &parts[1..] {
        let next = catalog_get(p)?;
        acc = Manifold {
            name: format!("{}x{}", acc.name, next.name),
            complex: staircase_product(&acc.complex, &next.complex),
            provenance: format!("staircase product of ({}) and ({})", acc.provenance, next.provenance),
        };
    }
    Ok(acc)
}

/// F2 Betti numbers of a catalog name or product, from the factors by the Kunneth formula.
pub fn expected_betti_f2(expr: &str) -> Result<Vec<usize>> {
    let mut acc = vec![1usize];
    for p in expr.split('x').map(str::trim) {
        let canon = canonical_name(p).ok_or_else(|| Error::UnknownManifold(expr.to_string()))?;
        let b: Vec<usize> = match canon {
            "K" => vec![1, 2, 1],
            s if s.starts_with("RP") => vec![1; s[2..].parse::<usize>().expect("digit") + 1],
            s => {
                let n: usize = s[1..].parse().expect("digit");
                let mut v = vec![0; n + 1];
                v[0] = 1;
                v[n] = 1;
                v
            }
        };
        let mut out = vec![0; acc.len() + b.len() - 1];
        for (i, &x) in acc.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        acc = out;
    }
    Ok(acc)
}

/// The `n`-sphere as the boundary of the `(n+1)`-simplex.
pub fn sphere(n: usize) -> Complex {
    Complex::simplex_boundary(n + 1)
}

/// The six-vertex real projective plane.
pub fn real_projective_plane() -> Complex {
    let facets = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
        [1, 3, 5],
    ];
    Complex::new(6, facets.iter().map(|f| f.to_vec()).collect()).expect("valid RP2")
}

/// Staircase triangulation of the product of two complexes.
///
/// Vertex `(u, v)` becomes `u * b.n_vertices() + v`. Each pair of facets is
/// triangulated by the monotone lattice paths through its vertex grid.
pub fn staircase_product(a: &Complex, b: &Complex) -> Complex {
    let (p, q) = (a.dim(), b.dim());
    let nb = b.n_vertices() as u32;
    let paths: Vec<Vec<(usize, usize)>> = combinations(p + q, p)
        .into_iter()
        .map(|rights| {
            let mut path = vec![(0, 0)];
            let (mut i, mut j) = (0, 0);
            for step in 0..p + q {
                if rights.binary_search(&step).is_ok() {
                    i += 1;
                } else {
                    j += 1;
                }
                path.push((i, j));
            }
            path
        })
        .collect();
    let mut facets = Vec::with_capacity(a.n_facets() * b.n_facets() * paths.len());
    for s in a.facets() {
        for t in b.facets() {
            for path in &paths {
                facets.push(path.iter().map(|&(i, j)| s[i] * nb + t[j]).collect());
            }
        }
    }
    Complex::new(a.n_vertices() * b.n_vertices(), facets).expect("product is a valid complex")
}

/// `RP^n` as the quotient of the barycentric subdivision of the boundary of the
/// `(n+1)`-dimensional cross-polytope by the antipodal map.
pub fn antipodal_quotient_rp(n: usize) -> Complex {
    // A face of the cross-polytope is a set of signed coordinates; its class is
    // represented by the member whose smallest coordinate is positive.
    let m = n + 1;
    let canonical = |f: &[(usize, bool)]| -> Vec<(usize, bool)> {
        if f[0].1 {
            f.to_vec()
        } else {
            f.iter().map(|&(i, s)| (i, !s)).collect()
        }
    };
    let mut classes: Vec<Vec<(usize, bool)>> = Vec::new();
    for size in 1..=m {
        for coords in combinations(m, size) {
            for signs in 0..1u32 << (size - 1) {
                let mut f = vec![(coords[0], true)];
                for (k, &c) in coords.iter().enumerate().skip(1) {
                    f.push((c, signs >> (k - 1) & 1 == 1));
                }
                classes.push(f);
            }
        }
    }
    let id = |f: &Vec<(usize, bool)>| classes.iter().position(|g| g == f).expect("class") as u32;
    let mut facets = Vec::new();
    for signs in 0..1u32 << m {
        let top: Vec<(usize, bool)> = (0..m).map(|i| (i, signs >> i & 1 == 1)).collect();
        for perm in permutations(m) {
            let mut verts: Vec<u32> = (1..=m)
                .map(|j| {
                    let mut f: Vec<(usize, bool)> = perm[..j].iter().map(|&k| top[k]).collect();
                    f.sort_unstable();
                    id(&canonical(&f))
                })
                .collect();
            verts.sort_unstable();
            facets.push(verts);
        }
    }
    facets.sort();
    facets.dedup();
    Complex::new(classes.len(), facets).expect("quotient is a valid complex")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
