use crate::algebra::f2::F2Reduction;
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::simplicial::{Cochain, Complex};
use crate::Gf2;

/// GF(2) cohomology of a complex from column reductions of its coboundary matrices.
///
/// Reductions run from degree 0 upward, and columns already known to vanish
/// (lows of the previous degree) are skipped. A `q`-face index `j` is
/// essential when its column reduces to zero and `j` is not a low of the
/// previous reduction; the recorded operations `V_j` then form a cocycle
/// basis representative. The same reductions give normal forms modulo
/// coboundaries for cochains over any field of characteristic 2.
#[derive(Clone, Debug)]
pub struct F2Cohomology {
    dim: usize,
    n_faces: Vec<usize>,
    reductions: Vec<F2Reduction>,
    essential: Vec<Vec<u32>>,
    reps: Vec<Option<Vec<Vec<u32>>>>,
    rep_normal_forms: Vec<Option<Vec<Vec<u32>>>>,
}

impl F2Cohomology {
    /// `track` lists the degrees whose coboundary reductions record column operations;
    /// basis representatives are available in those degrees and in the top degree, and
    /// [`F2Cohomology::solve_coboundary`] in degree `q` needs `q - 1` tracked.
    pub fn new(c: &Complex, track: &[usize]) -> Self {
        let d = c.dim();
        let n_faces: Vec<usize> = (0..=d).map(|q| c.n_faces(q)).collect();
        let mut reductions: Vec<F2Reduction> = Vec::with_capacity(d);
        for q in 0..d {
            let m = c.coboundary_f2(q);
            let skip = q.checked_sub(1).map(|p| reductions[p].lows());
            reductions.push(F2Reduction::new(&m, skip.as_deref(), track.contains(&q)));
        }
        let mut essential = Vec::with_capacity(d + 1);
        let mut reps = Vec::with_capacity(d + 1);
        for q in 0..=d {
            let is_low = |j: usize| q > 0 && reductions[q - 1].is_low(j);
            let ess: Vec<u32> = (0..n_faces[q])
                .filter(|&j| !is_low(j) && (q == d || reductions[q].reduced_column(j).is_empty()))
                .map(|j| j as u32)
                .collect();
            let r = if q == d {
                Some(ess.iter().map(|&j| vec![j]).collect())
            } else if track.contains(&q) {
                Some(ess.iter().map(|&j| reductions[q].ops_column(j as usize).expect("tracked").to_vec()).collect())
            } else {
                None
            };
            essential.push(ess);
            reps.push(r);
        }
        let rep_normal_forms = (0..=d)
            .map(|q| {
                reps[q].as_ref().map(|rs: &Vec<Vec<u32>>| {
                    rs.iter()
                        .map(|r| if q == 0 { r.clone() } else { reductions[q - 1].normal_form_support(r) })
                        .collect()
                })
            })
            .collect();
        F2Cohomology { dim: d, n_faces, reductions, essential, reps, rep_normal_forms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn betti(&self, q: usize) -> usize {
        self.essential[q].len()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.dim).map(|q| self.betti(q)).collect()
    }

    /// Rank of `delta^q`.
    pub fn coboundary_rank(&self, q: usize) -> usize {
        if q < self.dim {
            self.reductions[q].rank()
        } else {
            0
        }
    }

    /// Supports of the basis representatives in degree `q`.
    pub fn basis_supports(&self, q: usize) -> Result<&[Vec<u32>]> {
        self.reps[q]
            .as_deref()
            .ok_or_else(|| Error::Unsupported(format!("degree {q} representatives were not tracked")))
    }

    pub fn basis(&self, c: &Complex, q: usize) -> Result<Vec<Cochain<Gf2>>> {
        self.basis_supports(q)?
            .iter()
            .map(|s| {
                let mut v = vec![Gf2::new(0); self.n_faces[q]];
                for &i in s {
                    v[i as usize] = Gf2::new(1);
                }
                Cochain::new(c, q, v)
            })
            .collect()
    }

    /// Reduce a `q`-cochain modulo coboundaries, in place.
    pub fn normal_form<F: Field>(&self, q: usize, v: &mut [F]) {
        if q > 0 {
            self.reductions[q - 1].normal_form(v, None);
        }
    }

    /// Some `x` with `delta x = rhs` for a `q`-cochain `rhs`, or `None` if `rhs` is not a coboundary.
    pub fn solve_coboundary<F: Field>(&self, q: usize, rhs: &[F]) -> Option<Vec<F>> {
        if q == 0 {
            return rhs.iter().all(|a| a.is_zero()).then(Vec::new);
        }
        self.reductions[q - 1].solve(rhs)
    }

    pub fn is_cocycle<F: Field>(&self, c: &Complex, q: usize, z: &[F]) -> bool {
        q == self.dim || crate::simplicial::coboundary(c, &Cochain::new(c, q, z.to_vec()).expect("length")).is_zero()
    }

    /// Coordinates of the class of the cocycle `z` in the tracked basis of degree `q`.
    pub fn class_coordinates<F: Field>(&self, q: usize, z: &[F]) -> Result<Vec<F>> {
        let nfs = self.rep_normal_forms[q]
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("degree {q} representatives were not tracked")))?;
        let mut v = z.to_vec();
        self.normal_form(q, &mut v);
        let ess = &self.essential[q];
        let mut coords = vec![F::zero(); ess.len()];
        for i in (0..ess.len()).rev() {
            let a = v[ess[i] as usize];
            if a.is_zero() {
                continue;
            }
            coords[i] = a;
            for &k in &nfs[i] {
                v[k as usize] -= a;
            }
        }
        if v.iter().any(|a| !a.is_zero()) {
            return Err(Error::NotACocycle(format!("degree {q} cochain")));
        }
        Ok(coords)
    }
}
