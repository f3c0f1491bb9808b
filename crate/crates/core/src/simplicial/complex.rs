use crate::algebra::f2::F2Matrix;
use crate::algebra::{Field, SparseMatrix};
use crate::error::{Error, Result};

/// A finite abstract simplicial complex given by its facets.
///
/// Faces of each dimension are stored sorted lexicographically, so face
/// indices are canonical. Vertices are `0..n_vertices` and every vertex must
/// belong to some facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    dim: usize,
    n_vertices: usize,
    faces: Vec<Vec<u32>>,
    boundary: Vec<Vec<u32>>,
}

/// Sign of the `k`-th codimension-one face of a simplex, `(-1)^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncidenceSign {
    pub face: u32,
    pub sign: i8,
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + n - k) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

impl Complex {
    /// Build from facets. Each facet is sorted; all must have the same size.
    pub fn new(n_vertices: usize, facets: Vec<Vec<u32>>) -> Result<Self> {
        let Some(first) = facets.first() else {
            return Err(Error::InvalidComplex("no facets".into()));
        };
        let size = first.len();
        if size == 0 {
            return Err(Error::InvalidComplex("empty facet".into()));
        }
        let mut facets = facets;
        let mut used = vec![false; n_vertices];
        for f in &mut facets {
            if f.len() != size {
                return Err(Error::InvalidComplex(format!(
                    "facet {f:?} has {} vertices, expected {size}",
                    f.len()
                )));
            }
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("facet {f:?} repeats a vertex")));
            }
            for &v in f.iter() {
                if v as usize >= n_vertices {
                    return Err(Error::InvalidComplex(format!("vertex {v} out of range")));
                }
                used[v as usize] = true;
            }
        }
        if let Some(v) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidComplex(format!("vertex {v} lies in no facet")));
        }
        facets.sort();
        if facets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidComplex("duplicate facet".into()));
        }
        let dim = size - 1;
        let mut faces: Vec<Vec<u32>> = Vec::with_capacity(dim + 1);
        for q in 0..=dim {
            let combos = combinations(size, q + 1);
            let mut all: Vec<Vec<u32>> = Vec::with_capacity(facets.len() * combos.len());
            if q == dim {
                all = facets.clone();
            } else {
                for f in &facets {
                    for c in &combos {
                        all.push(c.iter().map(|&i| f[i]).collect());
                    }
                }
                all.sort_unstable();
                all.dedup();
            }
            faces.push(all.concat());
        }
        let mut cx = Complex { dim, n_vertices, faces, boundary: vec![Vec::new()] };
        for q in 1..=dim {
            let n = cx.n_faces(q);
            let mut b = Vec::with_capacity(n * (q + 1));
            let mut sub = Vec::with_capacity(q);
            for i in 0..n {
                let f = cx.face(q, i);
                for k in 0..=q {
                    sub.clear();
                    sub.extend(f.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v));
                    b.push(cx.face_index(&sub).expect("subface present") as u32);
                }
            }
            cx.boundary.push(b);
        }
        Ok(cx)
    }

    /// Boundary of the standard `n`-simplex, an `(n-1)`-sphere.
    pub fn simplex_boundary(n: usize) -> Self {
        let facets = combinations(n + 1, n)
            .into_iter()
            .map(|c| c.into_iter().map(|v| v as u32).collect())
            .collect();
        Complex::new(n + 1, facets).expect("simplex boundary")
    }

    /// The standard `n`-simplex as a complex with one facet.
    pub fn simplex(n: usize) -> Self {
        Complex::new(n + 1, vec![(0..=n as u32).collect()]).expect("simplex")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_faces(&self, q: usize) -> usize {
        if q > self.dim {
            0
        } else {
            self.faces[q].len() / (q + 1)
        }
    }

    pub fn n_facets(&self) -> usize {
        self.n_faces(self.dim)
    }

    /// Vertices of the `i`-th `q`-face.
    #[inline]
    pub fn face(&self, q: usize, i: usize) -> &[u32] {
        &self.faces[q][i * (q + 1)..(i + 1) * (q + 1)]
    }

    pub fn faces(&self, q: usize) -> impl Iterator<Item = &[u32]> {
        self.faces[q].chunks_exact(q + 1)
    }

    pub fn facets(&self) -> impl Iterator<Item = &[u32]> {
        self.faces(self.dim)
    }

    pub fn facet_list(&self) -> Vec<Vec<u32>> {
        self.facets().map(|f| f.to_vec()).collect()
    }

    /// Index of the face with the given sorted vertex list.
    pub fn face_index(&self, vertices: &[u32]) -> Option<usize> {
        let q = vertices.len().checked_sub(1)?;
        if q > self.dim {
            return None;
        }
        let n = self.n_faces(q);
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.face(q, mid).cmp(vertices) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Indices of the codimension-one faces of face `(q, i)`; entry `k` omits the `k`-th vertex.
    #[inline]
    pub fn boundary_faces(&self, q: usize, i: usize) -> &[u32] {
        &self.boundary[q][i * (q + 1)..(i + 1) * (q + 1)]
    }

    pub fn incidence_signs(&self, q: usize, i: usize) -> Vec<IncidenceSign> {
        self.boundary_faces(q, i)
            .iter()
            .enumerate()
            .map(|(k, &face)| IncidenceSign { face, sign: if k % 2 == 0 { 1 } else { -1 } })
            .collect()
    }

    /// For each `q`-face, the `(q+1)`-faces containing it, in increasing order.
    pub fn cofaces(&self, q: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.n_faces(q)];
        if q < self.dim {
            for i in 0..self.n_faces(q + 1) {
                for &b in self.boundary_faces(q + 1, i) {
                    out[b as usize].push(i as u32);
                }
            }
        }
        out
    }

    /// Indices of all `r`-faces of the `q`-face `i`, in lexicographic order of vertex subsets.
    pub fn subfaces(&self, q: usize, i: usize, r: usize) -> Vec<u32> {
        let f = self.face(q, i);
        combinations(q + 1, r + 1)
            .iter()
            .map(|c| {
                let sub: Vec<u32> = c.iter().map(|&k| f[k]).collect();
                self.face_index(&sub).expect("subface present") as u32
            })
            .collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim).map(|q| self.n_faces(q)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(q, &n)| if q % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Coboundary `delta^q : C^q -> C^{q+1}` as a sparse matrix with signs `(-1)^k`.
    pub fn coboundary_matrix<F: Field>(&self, q: usize) -> SparseMatrix<F> {
        let (rows, cols) = (self.n_faces(q + 1), self.n_faces(q));
        let mut t = Vec::with_capacity(rows * (q + 2));
        for i in 0..rows {
            for (k, &b) in self.boundary_faces(q + 1, i).iter().enumerate() {
                let s = if k % 2 == 0 { F::one() } else { -F::one() };
                t.push((i, b as usize, s));
            }
        }
        SparseMatrix::from_triplets(rows, cols, t).expect("indices in range")
    }

    /// Coboundary `delta^q` over GF(2), stored by columns (column `j` lists the cofaces of `j`).
    pub fn coboundary_f2(&self, q: usize) -> F2Matrix {
        F2Matrix::new(self.n_faces(q + 1), self.cofaces(q))
    }
}
