//! The finite path basis of an acyclic preset and matrices over it.
//!
//! A morphism between direct sums of indecomposable projectives is a matrix
//! whose (target-generator, source-generator) entry is a linear combination
//! of paths from the target's vertex to the source's vertex (acting by right
//! multiplication).  Working in these coordinates keeps chain-map solution
//! spaces small; everything is evaluated down to vertexwise matrices when
//! cones and cohomology are needed.

use std::collections::HashMap;
use std::sync::Arc;

use crate::finfield::{Elt, FiniteField, Matrix};
use crate::quiverrep::{QuiverPreset, Rep, RepMap};

/// One path: arrow indices in traversal order (empty = trivial path).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

/// All paths of an acyclic preset with composition and lookup tables.
pub struct PathAlgebra {
    pub preset: Arc<QuiverPreset>,
    pub paths: Vec<Path>,
    /// by (src, tgt): sorted list of path ids
    by_ends: HashMap<(usize, usize), Vec<usize>>,
    /// compose[p][q] = id of pq (first q, then p) when q.tgt == p.src
    compose: Vec<Vec<Option<usize>>>,
    by_key: HashMap<(usize, Vec<usize>), usize>,
}

impl PathAlgebra {
    pub fn new(preset: Arc<QuiverPreset>) -> Self {
        assert!(preset.acyclic, "path basis needs an acyclic preset");
        let raw = preset.paths();
        let paths: Vec<Path> = raw
            .into_iter()
            .map(|(src, tgt, arrows)| Path { src, tgt, arrows })
            .collect();
        let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut by_key = HashMap::new();
        for (i, p) in paths.iter().enumerate() {
            by_ends.entry((p.src, p.tgt)).or_default().push(i);
            by_key.insert((p.src, p.arrows.clone()), i);
        }
        let n = paths.len();
        let mut compose = vec![vec![None; n]; n];
        for (pi, p) in paths.iter().enumerate() {
            for (qi, q) in paths.iter().enumerate() {
                if q.tgt == p.src {
                    let mut arrows = q.arrows.clone();
                    arrows.extend_from_slice(&p.arrows);
                    let id = by_key
                        .get(&(q.src, arrows))
                        .copied()
                        .expect("path algebra closed under composition");
                    compose[pi][qi] = Some(id);
                }
            }
        }
        PathAlgebra {
            preset,
            paths,
            by_ends,
            compose,
            by_key,
        }
    }

    /// Path ids from `src` to `tgt`.
    pub fn between(&self, src: usize, tgt: usize) -> &[usize] {
        self.by_ends
            .get(&(src, tgt))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn trivial(&self, v: usize) -> usize {
        *self.by_key.get(&(v, Vec::new())).expect("trivial path")
    }

    pub fn arrow_path(&self, arrow: usize) -> usize {
        let a = self.preset.arrows[arrow];
        *self
            .by_key
            .get(&(a.src, vec![arrow]))
            .expect("arrow path")
    }

    /// `pq` (traverse q first); `None` when the endpoints do not match.
    pub fn mul(&self, p: usize, q: usize) -> Option<usize> {
        self.compose[p][q]
    }

    /// The projective at `v`, realized with the path basis: `(P_v)_w` has
    /// basis the paths `v -> w`, and an arrow acts by postcomposition.
    pub fn projective(&self, v: usize, field: &Arc<FiniteField>) -> Rep {
        let preset = &self.preset;
        let dims: Vec<usize> = (0..preset.vertices)
            .map(|w| self.between(v, w).len())
            .collect();
        let mats = preset
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zero(dims[a.tgt], dims[a.src]);
                let src_paths = self.between(v, a.src);
                let tgt_paths = self.between(v, a.tgt);
                let ap = self.arrow_path(ai);
                for (col, &p) in src_paths.iter().enumerate() {
                    let img = self.mul(ap, p).expect("arrow postcomposes");
                    let row = tgt_paths.iter().position(|&t| t == img).unwrap();
                    m.set(row, col, 1);
                }
                m
            })
            .collect();
        Rep::new(preset.clone(), field.clone(), dims, mats).expect("projective realizes")
    }
}

/// A sparse linear combination of paths, all with the same endpoints.
pub type PathVec = Vec<(usize, Elt)>;

/// Matrix with path-combination entries: rows/cols carry generator vertices.
/// Entry (r, c) lives in span of paths `rows[r] -> cols[c]` and denotes right
/// multiplication `P_{cols[c]} -> P_{rows[r]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathMat {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    entries: Vec<PathVec>,
}

fn pv_add_term(pv: &mut PathVec, path: usize, c: Elt, f: &FiniteField) {
    if c == 0 {
        return;
    }
    if let Some(slot) = pv.iter_mut().find(|(p, _)| *p == path) {
        slot.1 = f.add(slot.1, c);
        if slot.1 == 0 {
            pv.retain(|(_, x)| *x != 0);
        }
        return;
    }
    pv.push((path, c));
    pv.sort_by_key(|(p, _)| *p);
}

impl PathMat {
    pub fn zero(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        let entries = vec![Vec::new(); rows.len() * cols.len()];
        PathMat {
            rows,
            cols,
            entries,
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> &PathVec {
        &self.entries[r * self.cols.len() + c]
    }

    pub fn add_term(&mut self, r: usize, c: usize, path: usize, coef: Elt, f: &FiniteField) {
        let idx = r * self.cols.len() + c;
        pv_add_term(&mut self.entries[idx], path, coef, f);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_empty())
    }

    pub fn add(&self, other: &PathMat, f: &FiniteField) -> PathMat {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        for (idx, pv) in other.entries.iter().enumerate() {
            for &(p, c) in pv {
                pv_add_term(&mut out.entries[idx], p, c, f);
            }
        }
        out
    }

    pub fn scale(&self, c: Elt, f: &FiniteField) -> PathMat {
        let mut out = self.clone();
        for pv in out.entries.iter_mut() {
            for t in pv.iter_mut() {
                t.1 = f.mul(t.1, c);
            }
            pv.retain(|(_, x)| *x != 0);
        }
        out
    }

    pub fn neg(&self, f: &FiniteField) -> PathMat {
        let mut out = self.clone();
        for pv in out.entries.iter_mut() {
            for t in pv.iter_mut() {
                t.1 = f.neg(t.1);
            }
        }
        out
    }

    /// `self ∘ first` (first applied first).
    pub fn compose(&self, first: &PathMat, alg: &PathAlgebra, f: &FiniteField) -> PathMat {
        assert_eq!(first.rows, self.cols);
        let mut out = PathMat::zero(self.rows.clone(), first.cols.clone());
        for k in 0..self.rows.len() {
            for g in 0..first.cols.len() {
                for h in 0..self.cols.len() {
                    // x -> (x * rho_first[h,g]) * rho_self[k,h]
                    //   = x * (rho_first[h,g] rho_self[k,h])
                    for &(p1, c1) in first.entry(h, g) {
                        for &(p2, c2) in self.entry(k, h) {
                            let prod = alg
                                .mul(p1, p2)
                                .expect("entry endpoints are consistent");
                            out.add_term(k, g, prod, f.mul(c1, c2), f);
                        }
                    }
                }
            }
        }
        out
    }

    /// Evaluate to vertexwise matrices for the induced map
    /// `⊕_c P_{cols[c]} -> ⊕_r P_{rows[r]}`, in the path-basis realization.
    pub fn evaluate(&self, alg: &PathAlgebra, f: &FiniteField) -> RepMap {
        let verts = alg.preset.vertices;
        // basis offsets per vertex for source and target sums
        let src_off = basis_offsets(alg, &self.cols);
        let tgt_off = basis_offsets(alg, &self.rows);
        let mats = (0..verts)
            .map(|w| {
                let ncols: usize = self.cols.iter().map(|&u| alg.between(u, w).len()).sum();
                let nrows: usize = self.rows.iter().map(|&u| alg.between(u, w).len()).sum();
                let mut m = Matrix::zero(nrows, ncols);
                for (c, &u) in self.cols.iter().enumerate() {
                    for (pi, &p) in alg.between(u, w).iter().enumerate() {
                        let col = src_off[c][w] + pi;
                        for (r, &v) in self.rows.iter().enumerate() {
                            for &(rho, coef) in self.entry(r, c) {
                                // x=p: v(c)->w times rho: rows[r]->cols[c]
                                if let Some(img) = alg.mul(p, rho) {
                                    let row_paths = alg.between(v, w);
                                    let ri =
                                        row_paths.iter().position(|&t| t == img).unwrap();
                                    let row = tgt_off[r][w] + ri;
                                    let cur = m.get(row, col);
                                    m.set(row, col, f.add(cur, coef));
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        RepMap { mats }
    }
}

/// For generator list `gens`, the starting basis offset of each generator's
/// path block at each vertex.
fn basis_offsets(alg: &PathAlgebra, gens: &[usize]) -> Vec<Vec<usize>> {
    let verts = alg.preset.vertices;
    let mut out = Vec::with_capacity(gens.len());
    let mut acc = vec![0usize; verts];
    for &g in gens {
        out.push(acc.clone());
        for (w, a) in acc.iter_mut().enumerate() {
            *a += alg.between(g, w).len();
        }
    }
    out
}

/// Dimension of each vertex space of `⊕_g P_g`.
pub fn gens_dims(alg: &PathAlgebra, gens: &[usize]) -> Vec<usize> {
    (0..alg.preset.vertices)
        .map(|w| gens.iter().map(|&g| alg.between(g, w).len()).sum())
        .collect()
}

/// The direct sum `⊕_g P_g` as an explicit representation.
pub fn gens_rep(alg: &PathAlgebra, gens: &[usize], field: &Arc<FiniteField>) -> Rep {
    let mut acc = Rep::zero(alg.preset.clone(), field.clone());
    for &g in gens {
        acc = acc
            .direct_sum(&alg.projective(g, field))
            .expect("same preset");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::field_make;
    use crate::quiverrep::preset_make;

    #[test]
    fn projective_realizations() {
        let preset = Arc::new(preset_make("A~21").unwrap());
        let alg = PathAlgebra::new(preset);
        let f = Arc::new(field_make(2, 1).unwrap());
        let p0 = alg.projective(0, &f);
        assert_eq!(p0.dims, vec![1, 1, 2]);
        let p2 = alg.projective(2, &f);
        assert_eq!(p2.dims, vec![0, 0, 1]);
    }

    #[test]
    fn compose_matches_evaluation() {
        let preset = Arc::new(preset_make("A3:1>2,2>3").unwrap());
        let alg = PathAlgebra::new(preset.clone());
        let f = Arc::new(field_make(3, 1).unwrap());
        // phi: P_2 -> P_1 right-mult by arrow 0 (1->2); psi: P_3 -> P_2 by arrow 1
        let mut phi = PathMat::zero(vec![0], vec![1]);
        phi.add_term(0, 0, alg.arrow_path(0), 1, &f);
        let mut psi = PathMat::zero(vec![1], vec![2]);
        psi.add_term(0, 0, alg.arrow_path(1), 1, &f);
        let comp = phi.compose(&psi, &alg, &f);
        let ev = comp.evaluate(&alg, &f);
        let e1 = phi.evaluate(&alg, &f);
        let e2 = psi.evaluate(&alg, &f);
        let both = e1.compose(&e2, &f);
        assert_eq!(ev, both);
        // and the composite entry is the length-2 path, arrows in traversal order
        assert_eq!(comp.entry(0, 0).len(), 1);
        let pid = comp.entry(0, 0)[0].0;
        assert_eq!(alg.paths[pid].arrows, vec![0, 1]);
    }

    #[test]
    fn evaluated_maps_are_morphisms() {
        let preset = Arc::new(preset_make("A~21").unwrap());
        let alg = PathAlgebra::new(preset.clone());
        let f = Arc::new(field_make(2, 1).unwrap());
        let rows = vec![0, 1];
        let cols = vec![0, 2];
        let mut pm = PathMat::zero(rows.clone(), cols.clone());
        // P_0 -> P_0 identity; P_2 -> P_0 by z; P_2 -> P_1 by y
        pm.add_term(0, 0, alg.trivial(0), 1, &f);
        pm.add_term(0, 1, alg.arrow_path(2), 1, &f);
        pm.add_term(1, 1, alg.arrow_path(1), 1, &f);
        let ev = pm.evaluate(&alg, &f);
        let src = gens_rep(&alg, &cols, &f);
        let tgt = gens_rep(&alg, &rows, &f);
        assert!(ev.is_morphism(&src, &tgt));
    }
}
