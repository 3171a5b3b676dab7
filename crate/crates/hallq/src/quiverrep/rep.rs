//! Explicit representations, morphisms between them, and the two-term
//! Hom/Ext complex.

use std::sync::Arc;

use thiserror::Error;

use super::preset::QuiverPreset;
use crate::finfield::{kernel_basis, mat_solve, Elt, FiniteField, Matrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("representations live over different presets")]
    PresetMismatch,
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("cycle composite is not nilpotent")]
    NotNilpotent,
    #[error("matrix shape does not match the dimension vector")]
    BadShape,
}

/// A representation: one vector space dimension per vertex, one matrix per
/// arrow (shape `dims[tgt] x dims[src]`, acting on column vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub preset: Arc<QuiverPreset>,
    pub field: Arc<FiniteField>,
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix>,
}

impl Rep {
    pub fn new(
        preset: Arc<QuiverPreset>,
        field: Arc<FiniteField>,
        dims: Vec<usize>,
        mats: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        assert_eq!(dims.len(), preset.vertices);
        assert_eq!(mats.len(), preset.arrows.len());
        for (a, m) in preset.arrows.iter().zip(mats.iter()) {
            if m.rows() != dims[a.tgt] || m.cols() != dims[a.src] {
                return Err(RepError::BadShape);
            }
        }
        let rep = Rep {
            preset,
            field,
            dims,
            mats,
        };
        if rep.preset.nilpotency_required && !rep.cycle_nilpotent() {
            return Err(RepError::NotNilpotent);
        }
        Ok(rep)
    }

    pub fn zero(preset: Arc<QuiverPreset>, field: Arc<FiniteField>) -> Self {
        let dims = vec![0; preset.vertices];
        let mats = preset
            .arrows
            .iter()
            .map(|_| Matrix::zero(0, 0))
            .collect();
        Rep {
            preset,
            field,
            dims,
            mats,
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// For cyclic presets: is the composite around the cycle nilpotent?
    fn cycle_nilpotent(&self) -> bool {
        let m = self.preset.vertices;
        // composite starting at vertex 0: arrows 0,1,..,m-1 in order
        let mut comp = Matrix::identity(self.dims[0]);
        for i in 0..m {
            comp = self.mats[i].mul(&comp, &self.field);
        }
        // comp: dims[0] -> dims[0]; nilpotent iff comp^dims[0] = 0
        let n = self.dims[0];
        if n == 0 {
            return true;
        }
        let mut pw = comp.clone();
        for _ in 1..n {
            pw = comp.mul(&pw, &self.field);
        }
        pw.is_zero()
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep, RepError> {
        if self.preset != other.preset {
            return Err(RepError::PresetMismatch);
        }
        if self.field != other.field {
            return Err(RepError::FieldMismatch);
        }
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(other.dims.iter())
            .map(|(a, b)| a + b)
            .collect();
        let mats = self
            .preset
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut m = Matrix::zero(dims[a.tgt], dims[a.src]);
                m.paste(0, 0, &self.mats[i]);
                m.paste(self.dims[a.tgt], self.dims[a.src], &other.mats[i]);
                m
            })
            .collect();
        Ok(Rep {
            preset: self.preset.clone(),
            field: self.field.clone(),
            dims,
            mats,
        })
    }
}

/// A morphism of representations: one matrix per vertex,
/// shape `dims_N[v] x dims_M[v]` for `f: M -> N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMap {
    pub mats: Vec<Matrix>,
}

impl RepMap {
    pub fn zero(m: &Rep, n: &Rep) -> Self {
        RepMap {
            mats: (0..m.preset.vertices)
                .map(|v| Matrix::zero(n.dims[v], m.dims[v]))
                .collect(),
        }
    }

    pub fn identity(m: &Rep) -> Self {
        RepMap {
            mats: m.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn compose(&self, first: &RepMap, f: &FiniteField) -> RepMap {
        // self after first
        RepMap {
            mats: self
                .mats
                .iter()
                .zip(first.mats.iter())
                .map(|(a, b)| a.mul(b, f))
                .collect(),
        }
    }

    pub fn add(&self, other: &RepMap, f: &FiniteField) -> RepMap {
        RepMap {
            mats: self
                .mats
                .iter()
                .zip(other.mats.iter())
                .map(|(a, b)| a.add(b, f))
                .collect(),
        }
    }

    pub fn scale(&self, c: Elt, f: &FiniteField) -> RepMap {
        RepMap {
            mats: self.mats.iter().map(|m| m.scale(c, f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    /// Invertible at every vertex (so an isomorphism when it is a morphism).
    pub fn is_invertible(&self, f: &FiniteField) -> bool {
        self.mats
            .iter()
            .all(|m| m.is_square() && m.rank(f) == m.rows())
    }

    /// Does this satisfy the intertwining condition `f_tgt M_a = N_a f_src`?
    pub fn is_morphism(&self, m: &Rep, n: &Rep) -> bool {
        let f = &m.field;
        m.preset.arrows.iter().enumerate().all(|(i, a)| {
            let lhs = self.mats[a.tgt].mul(&m.mats[i], f);
            let rhs = n.mats[i].mul(&self.mats[a.src], f);
            lhs == rhs
        })
    }
}

/// Basis of Hom(M, N) together with dim Ext^1(M, N), via the two-term complex
/// `0 -> Hom -> ⊕_v Hom_k(M_v, N_v) -δ-> ⊕_{a:i->j} Hom_k(M_i, N_j) -> Ext^1 -> 0`
/// with `δ(f)_a = f_j M_a - N_a f_i`.
///
/// On cyclic presets this computes Hom and Ext^1 of the nilpotent category
/// when both arguments are nilpotent (extensions of nilpotents are nilpotent).
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<(Vec<RepMap>, usize), RepError> {
    if m.preset != n.preset {
        return Err(RepError::PresetMismatch);
    }
    if m.field != n.field {
        return Err(RepError::FieldMismatch);
    }
    let f = &m.field;
    let verts = m.preset.vertices;
    // unknown layout: per vertex, row-major entries of f_v (N_v x M_v)
    let mut offsets = vec![0usize; verts + 1];
    for v in 0..verts {
        offsets[v + 1] = offsets[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offsets[verts];
    let mut rows_cnt = 0usize;
    for a in &m.preset.arrows {
        rows_cnt += n.dims[a.tgt] * m.dims[a.src];
    }
    let mut delta = Matrix::zero(rows_cnt, unknowns);
    let mut row0 = 0usize;
    for (ai, a) in m.preset.arrows.iter().enumerate() {
        let (i, j) = (a.src, a.tgt);
        // block rows: entries (r, c) of the a-component, r < n.dims[j], c < m.dims[i]
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let row = row0 + r * m.dims[i] + c;
                // + (f_j M_a)_{rc} = sum_k (f_j)_{rk} (M_a)_{kc}
                for k in 0..m.dims[j] {
                    let coef = m.mats[ai].get(k, c);
                    if coef != 0 {
                        let col = offsets[j] + r * m.dims[j] + k;
                        let cur = delta.get(row, col);
                        delta.set(row, col, f.add(cur, coef));
                    }
                }
                // - (N_a f_i)_{rc} = - sum_k (N_a)_{rk} (f_i)_{kc}
                for k in 0..n.dims[i] {
                    let coef = n.mats[ai].get(r, k);
                    if coef != 0 {
                        let col = offsets[i] + k * m.dims[i] + c;
                        let cur = delta.get(row, col);
                        delta.set(row, col, f.sub(cur, coef));
                    }
                }
            }
        }
        row0 += n.dims[j] * m.dims[i];
    }
    let sol = mat_solve(f, &delta);
    let ext_dim = rows_cnt - sol.rank;
    let kernel = sol.kernel_basis(f);
    let basis = kernel
        .into_iter()
        .map(|vec| RepMap {
            mats: (0..verts)
                .map(|v| {
                    let mut mm = Matrix::zero(n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for c in 0..m.dims[v] {
                            mm.set(r, c, vec[offsets[v] + r * m.dims[v] + c]);
                        }
                    }
                    mm
                })
                .collect(),
        })
        .collect();
    Ok((basis, ext_dim))
}

/// Hom and Ext^1 dimensions only.
pub fn hom_ext_dims(m: &Rep, n: &Rep) -> Result<(usize, usize), RepError> {
    let (basis, ext) = hom_basis(m, n)?;
    Ok((basis.len(), ext))
}

/// The dimension-vector Euler form `<d, e> = Σ_v d_v e_v − Σ_{a:i→j} d_i e_j`.
/// Equals dim Hom − dim Ext^1 on acyclic presets.
pub fn euler_form(preset: &QuiverPreset, d: &[usize], e: &[usize]) -> i64 {
    assert_eq!(d.len(), preset.vertices);
    assert_eq!(e.len(), preset.vertices);
    let mut acc: i64 = d
        .iter()
        .zip(e.iter())
        .map(|(&a, &b)| (a * b) as i64)
        .sum();
    for a in &preset.arrows {
        acc -= (d[a.src] * e[a.tgt]) as i64;
    }
    acc
}

/// A subspace choice per vertex, each a list of basis column vectors in the
/// ambient coordinates.
pub type VertexBases = Vec<Vec<Vec<Elt>>>;

/// Build the subrepresentation spanned by arrow-stable `bases`, together with
/// its inclusion. Panics if the bases are not arrow-stable.
pub fn sub_rep(m: &Rep, bases: &VertexBases) -> (Rep, RepMap) {
    let f = &m.field;
    let verts = m.preset.vertices;
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    // inclusion matrices: columns are the basis vectors
    let incl: Vec<Matrix> = (0..verts)
        .map(|v| {
            let mut mm = Matrix::zero(m.dims[v], dims[v]);
            for (j, vecj) in bases[v].iter().enumerate() {
                for (i, &x) in vecj.iter().enumerate() {
                    mm.set(i, j, x);
                }
            }
            mm
        })
        .collect();
    let incl_solvers: Vec<_> = incl.iter().map(|mm| mat_solve(f, mm)).collect();
    let mats: Vec<Matrix> = m
        .preset
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut mm = Matrix::zero(dims[a.tgt], dims[a.src]);
            for (j, vecj) in bases[a.src].iter().enumerate() {
                let img = m.mats[ai].mul_vec(vecj, f);
                let coords = incl_solvers[a.tgt]
                    .solve(f, &img)
                    .expect("subspace family not arrow-stable");
                for (i, &x) in coords.iter().enumerate() {
                    mm.set(i, j, x);
                }
            }
            mm
        })
        .collect();
    let rep = Rep {
        preset: m.preset.clone(),
        field: m.field.clone(),
        dims,
        mats,
    };
    (rep, RepMap { mats: incl })
}

/// Quotient of `m` by the arrow-stable subspaces `bases`, with its projection.
pub fn quotient_rep(m: &Rep, bases: &VertexBases) -> (Rep, RepMap) {
    let f = &m.field;
    let verts = m.preset.vertices;
    let mut proj: Vec<Matrix> = Vec::with_capacity(verts);
    let mut frees: Vec<Vec<usize>> = Vec::with_capacity(verts);
    let mut dims = Vec::with_capacity(verts);
    for v in 0..verts {
        // rref of the span; complement coordinates = non-pivot unit vectors
        let k = bases[v].len();
        let mut span = Matrix::zero(k, m.dims[v]);
        for (i, vecv) in bases[v].iter().enumerate() {
            for (j, &x) in vecv.iter().enumerate() {
                span.set(i, j, x);
            }
        }
        let sol = mat_solve(f, &span);
        let mut is_pivot = vec![false; m.dims[v]];
        for &p in &sol.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..m.dims[v]).filter(|&j| !is_pivot[j]).collect();
        dims.push(free.len());
        // projection: residue of x mod span in free coordinates.
        // Unit vector e_{pivot(row)} reduces against row `row` of the rref,
        // so coordinate fc of (x mod span) is x_fc - Σ_rows rref[row][fc] x_{pivot(row)}.
        let mut pm = Matrix::zero(free.len(), m.dims[v]);
        for (r, &fc) in free.iter().enumerate() {
            pm.set(r, fc, 1);
            for (row, &pc) in sol.pivots.iter().enumerate() {
                let c = sol.rref.get(row, fc);
                if c != 0 {
                    pm.set(r, pc, f.neg(c));
                }
            }
        }
        proj.push(pm);
        frees.push(free);
    }
    // induced arrow maps: lift quotient basis vector r (free column fc) to the
    // ambient unit vector e_fc, push through M_a, project.
    let mats: Vec<Matrix> = m
        .preset
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut mm = Matrix::zero(dims[a.tgt], dims[a.src]);
            for (r, &fc) in frees[a.src].iter().enumerate() {
                let mut unit = vec![0 as Elt; m.dims[a.src]];
                unit[fc] = 1;
                let img = m.mats[ai].mul_vec(&unit, f);
                let q = proj[a.tgt].mul_vec(&img, f);
                for (i, &x) in q.iter().enumerate() {
                    mm.set(i, r, x);
                }
            }
            mm
        })
        .collect();
    let rep = Rep {
        preset: m.preset.clone(),
        field: m.field.clone(),
        dims,
        mats,
    };
    (rep, RepMap { mats: proj })
}

/// Kernel of an endomorphism of `m`, as a bare representation.
pub fn kercoker_kernel_rep(e: &RepMap, m: &Rep) -> Rep {
    let f = &m.field;
    let bases: VertexBases = (0..m.preset.vertices)
        .map(|v| kernel_basis(f, &e.mats[v]))
        .collect();
    sub_rep(m, &bases).0
}

/// Kernel, cokernel and image of a morphism, with witnesses:
/// kernel inclusion, cokernel projection, and the image inclusion into `n`.
pub struct KerCokerIm {
    pub kernel: Rep,
    pub kernel_incl: RepMap,
    pub cokernel: Rep,
    pub cokernel_proj: RepMap,
    pub image: Rep,
    pub image_incl: RepMap,
}

pub fn morphism_kernel_cokernel(f_map: &RepMap, m: &Rep, n: &Rep) -> KerCokerIm {
    let f = &m.field;
    let verts = m.preset.vertices;
    let ker_bases: VertexBases = (0..verts)
        .map(|v| kernel_basis(f, &f_map.mats[v]))
        .collect();
    let (kernel, kernel_incl) = sub_rep(m, &ker_bases);
    let im_bases: VertexBases = (0..verts)
        .map(|v| {
            // column space: rref of transpose, rows -> basis vectors
            let sol = mat_solve(f, &f_map.mats[v].transpose());
            (0..sol.rank)
                .map(|r| {
                    (0..n.dims[v])
                        .map(|j| sol.rref.get(r, j))
                        .collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    let (image, image_incl) = sub_rep(n, &im_bases);
    let (cokernel, cokernel_proj) = quotient_rep(n, &im_bases);
    KerCokerIm {
        kernel,
        kernel_incl,
        cokernel,
        cokernel_proj,
        image,
        image_incl,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::field_make;
    use crate::quiverrep::preset::preset_make;

    fn a2() -> Arc<QuiverPreset> {
        Arc::new(preset_make("A2:1>2").unwrap())
    }

    fn simple(preset: &Arc<QuiverPreset>, f: &Arc<FiniteField>, v: usize) -> Rep {
        let mut dims = vec![0; preset.vertices];
        dims[v] = 1;
        let mats = preset
            .arrows
            .iter()
            .map(|a| Matrix::zero(dims[a.tgt], dims[a.src]))
            .collect();
        Rep::new(preset.clone(), f.clone(), dims, mats).unwrap()
    }

    #[test]
    fn hom_ext_on_a2() {
        let p = a2();
        let f = Arc::new(field_make(2, 1).unwrap());
        let s1 = simple(&p, &f, 0);
        let s2 = simple(&p, &f, 1);
        let (h, e) = hom_basis(&s1, &s2).unwrap();
        assert_eq!(h.len(), 0);
        assert_eq!(e, 1);
        let (h, e) = hom_basis(&s1, &s1).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(e, 0);
        // identity is a morphism of M for any M
        let p1 = Rep::new(
            p.clone(),
            f.clone(),
            vec![1, 1],
            vec![Matrix::identity(1)],
        )
        .unwrap();
        let id = RepMap::identity(&p1);
        assert!(id.is_morphism(&p1, &p1));
        let (h, e) = hom_basis(&p1, &p1).unwrap();
        assert_eq!((h.len(), e), (1, 0));
    }

    #[test]
    fn euler_matches_hom_minus_ext() {
        let p = a2();
        let f = Arc::new(field_make(3, 1).unwrap());
        let s1 = simple(&p, &f, 0);
        let s2 = simple(&p, &f, 1);
        assert_eq!(euler_form(&p, &s1.dims, &s2.dims), -1);
        let (h, e) = hom_ext_dims(&s1, &s2).unwrap();
        assert_eq!(h as i64 - e as i64, -1);
        assert_eq!(euler_form(&p, &s1.dims, &[0, 0]), 0);
    }

    #[test]
    fn kernel_cokernel_of_projection() {
        // A2: the projection P_1 -> S_1 has kernel S_2, cokernel 0, image S_1
        let p = a2();
        let f = Arc::new(field_make(2, 1).unwrap());
        let p1 = Rep::new(
            p.clone(),
            f.clone(),
            vec![1, 1],
            vec![Matrix::identity(1)],
        )
        .unwrap();
        let s1 = simple(&p, &f, 0);
        let proj = RepMap {
            mats: vec![Matrix::identity(1), Matrix::zero(0, 1)],
        };
        assert!(proj.is_morphism(&p1, &s1));
        let kci = morphism_kernel_cokernel(&proj, &p1, &s1);
        assert_eq!(kci.kernel.dims, vec![0, 1]); // S_2
        assert_eq!(kci.cokernel.total_dim(), 0);
        assert_eq!(kci.image.dims, vec![1, 0]); // S_1
        // witnesses compose: incl then proj maps kernel to zero
        let z = proj.compose(&kci.kernel_incl, &f);
        assert!(z.is_zero());
    }

    #[test]
    fn kernel_cokernel_trivial_cases() {
        let p = a2();
        let f = Arc::new(field_make(2, 1).unwrap());
        let s1 = simple(&p, &f, 0);
        let s2 = simple(&p, &f, 1);
        let zero_map = RepMap::zero(&s1, &s2);
        let kci = morphism_kernel_cokernel(&zero_map, &s1, &s2);
        assert_eq!(kci.kernel, s1);
        assert_eq!(kci.cokernel.dims, s2.dims);
        assert!(kci.image.is_zero());

        let id = RepMap::identity(&s1);
        let kci = morphism_kernel_cokernel(&id, &s1, &s1);
        assert!(kci.kernel.is_zero());
        assert!(kci.cokernel.is_zero());
        assert_eq!(kci.image.dims, s1.dims);
    }

    #[test]
    fn nilpotency_enforced() {
        let c1 = Arc::new(preset_make("C1").unwrap());
        let f = Arc::new(field_make(2, 1).unwrap());
        // loop with identity matrix: not nilpotent
        let bad = Rep::new(
            c1.clone(),
            f.clone(),
            vec![1],
            vec![Matrix::identity(1)],
        );
        assert_eq!(bad.unwrap_err(), RepError::NotNilpotent);
        // Jordan block is fine
        let mut j = Matrix::zero(2, 2);
        j.set(0, 1, 1);
        assert!(Rep::new(c1, f, vec![2], vec![j]).is_ok());
    }
}
