//! Morphism spaces of the derived category, realized as chain maps between
//! complexes of projectives modulo null-homotopy, with deterministic coset
//! representatives, mapping cones and their cohomology.

use std::sync::Arc;

use super::complex::ProjComplex;
use super::dobj::DerivedError;
use super::path::{gens_dims, gens_rep, PathAlgebra, PathMat};
use crate::finfield::{kernel_basis, mat_solve, Elt, FiniteField, Matrix};
use crate::quiverrep::{quotient_rep, sub_rep, Rep, VertexBases};

/// Coordinate layout for degreewise morphisms `C^d -> D^{d+shift}`:
/// one coordinate per (degree, target generator, source generator, path).
struct MapLayout {
    /// (degree, rows = target gens, cols = source gens)
    blocks: Vec<(i32, Vec<usize>, Vec<usize>)>,
    /// per block: flat coordinate list (row, col, path id)
    coords: Vec<Vec<(usize, usize, usize)>>,
    offsets: Vec<usize>,
    total: usize,
}

impl MapLayout {
    fn build(alg: &PathAlgebra, src: &ProjComplex, tgt: &ProjComplex, shift: i32) -> Self {
        let mut blocks = Vec::new();
        let mut coords = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0usize;
        for d in src.degrees() {
            let cols = src.gens_at(d).to_vec();
            let rows = tgt.gens_at(d + shift).to_vec();
            if cols.is_empty() || rows.is_empty() {
                continue;
            }
            let mut cs = Vec::new();
            for (r, &rv) in rows.iter().enumerate() {
                for (c, &cv) in cols.iter().enumerate() {
                    for &p in alg.between(rv, cv) {
                        cs.push((r, c, p));
                    }
                }
            }
            offsets.push(total);
            total += cs.len();
            blocks.push((d, rows, cols));
            coords.push(cs);
        }
        MapLayout {
            blocks,
            coords,
            offsets,
            total,
        }
    }

    /// Assemble a coordinate vector into per-degree path matrices.
    fn assemble(&self, vec: &[Elt], f: &FiniteField) -> Vec<(i32, PathMat)> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(bi, (d, rows, cols))| {
                let mut pm = PathMat::zero(rows.clone(), cols.clone());
                for (k, &(r, c, p)) in self.coords[bi].iter().enumerate() {
                    let coef = vec[self.offsets[bi] + k];
                    if coef != 0 {
                        pm.add_term(r, c, p, coef, f);
                    }
                }
                (*d, pm)
            })
            .collect()
    }

    /// Flatten per-degree path matrices into a coordinate vector.
    fn flatten(&self, parts: &[(i32, PathMat)], _f: &FiniteField) -> Vec<Elt> {
        let mut out = vec![0 as Elt; self.total];
        for (d, pm) in parts {
            let Some(bi) = self.blocks.iter().position(|(bd, _, _)| bd == d) else {
                assert!(pm.is_zero(), "nonzero block outside the layout window");
                continue;
            };
            for (k, &(r, c, p)) in self.coords[bi].iter().enumerate() {
                let coef = pm
                    .entry(r, c)
                    .iter()
                    .find(|(pp, _)| *pp == p)
                    .map(|(_, x)| *x)
                    .unwrap_or(0);
                out[self.offsets[bi] + k] = coef;
            }
        }
        out
    }
}

/// Apply the chain-map defect `f ↦ f∘∂ − ∂∘f` to a degreewise assignment.
fn chain_defect(
    alg: &PathAlgebra,
    f: &FiniteField,
    src: &ProjComplex,
    tgt: &ProjComplex,
    parts: &[(i32, PathMat)],
) -> Vec<(i32, PathMat)> {
    let at = |d: i32| parts.iter().find(|(dd, _)| *dd == d).map(|(_, m)| m);
    let mut out = Vec::new();
    for d in src.degrees() {
        let cols = src.gens_at(d);
        let rows = tgt.gens_at(d + 1);
        if cols.is_empty() || rows.is_empty() {
            continue;
        }
        let mut acc = PathMat::zero(rows.to_vec(), cols.to_vec());
        if let (Some(u_next), Some(dc)) = (at(d + 1), src.diff_at(d)) {
            acc = acc.add(&u_next.compose(dc, alg, f), f);
        }
        if let (Some(dd), Some(u)) = (tgt.diff_at(d), at(d)) {
            acc = acc.add(&dd.compose(u, alg, f).neg(f), f);
        }
        out.push((d, acc));
    }
    out
}

/// Boundary of a degreewise homotopy (maps of degree -1):
/// `h ↦ ∂∘h + h∘∂`, a chain map from `src` to `tgt`.
fn homotopy_boundary(
    alg: &PathAlgebra,
    f: &FiniteField,
    src: &ProjComplex,
    tgt: &ProjComplex,
    parts: &[(i32, PathMat)],
) -> Vec<(i32, PathMat)> {
    let at = |d: i32| parts.iter().find(|(dd, _)| *dd == d).map(|(_, m)| m);
    let mut out = Vec::new();
    for d in src.degrees() {
        let cols = src.gens_at(d);
        let rows = tgt.gens_at(d);
        if cols.is_empty() || rows.is_empty() {
            continue;
        }
        let mut acc = PathMat::zero(rows.to_vec(), cols.to_vec());
        if let (Some(dd), Some(h)) = (tgt.diff_at(d - 1), at(d)) {
            acc = acc.add(&dd.compose(h, alg, f), f);
        }
        if let (Some(h_next), Some(dc)) = (at(d + 1), src.diff_at(d)) {
            acc = acc.add(&h_next.compose(dc, alg, f), f);
        }
        out.push((d, acc));
    }
    out
}

/// The morphism space Hom(src, tgt) in the homotopy category: a fixed
/// complement of the null-homotopic maps inside the chain-map space, so that
/// enumerating coefficient tuples visits every coset exactly once.
pub struct CosetSpace {
    pub field: Arc<FiniteField>,
    pub src: ProjComplex,
    pub tgt: ProjComplex,
    /// complement basis, one chain map per dimension
    pub basis: Vec<Vec<(i32, PathMat)>>,
}

impl CosetSpace {
    /// Solve for chain maps and pick the deterministic complement of the
    /// homotopy boundaries. When `expected_dim` is given (from the additive
    /// Hom formula) the computed dimension is checked against it.
    pub fn build(
        alg: &PathAlgebra,
        f: &Arc<FiniteField>,
        src: &ProjComplex,
        tgt: &ProjComplex,
        expected_dim: Option<usize>,
    ) -> CosetSpace {
        let layout = MapLayout::build(alg, src, tgt, 0);
        let hlayout = MapLayout::build(alg, src, tgt, -1);
        let clayout = MapLayout::build(alg, src, tgt, 1);

        // constraint matrix: one column per unknown, rows = defect coordinates
        let mut cons = Matrix::zero(clayout.total, layout.total);
        for u in 0..layout.total {
            let mut unit = vec![0 as Elt; layout.total];
            unit[u] = 1;
            let parts = layout.assemble(&unit, f);
            let defect = chain_defect(alg, f, src, tgt, &parts);
            let col = clayout.flatten(&defect, f);
            for (r, &x) in col.iter().enumerate() {
                cons.set(r, u, x);
            }
        }
        let z_basis = kernel_basis(f, &cons);

        // homotopy boundary vectors, in chain-map coordinates
        let mut boundary_rows: Vec<Vec<Elt>> = Vec::new();
        for u in 0..hlayout.total {
            let mut unit = vec![0 as Elt; hlayout.total];
            unit[u] = 1;
            let parts = hlayout.assemble(&unit, f);
            let b = homotopy_boundary(alg, f, src, tgt, &parts);
            boundary_rows.push(layout.flatten(&b, f));
        }

        // greedy complement: z vectors that grow the span of the boundaries
        let mut rows = boundary_rows.clone();
        let mut rank = rank_of_rows(f, &rows, layout.total);
        let mut basis = Vec::new();
        for z in &z_basis {
            rows.push(z.clone());
            let r2 = rank_of_rows(f, &rows, layout.total);
            if r2 > rank {
                rank = r2;
                basis.push(layout.assemble(z, f));
            } else {
                rows.pop();
            }
        }
        if let Some(expect) = expected_dim {
            assert_eq!(
                basis.len(),
                expect,
                "coset space dimension disagrees with the Hom formula"
            );
        }
        CosetSpace {
            field: f.clone(),
            src: src.clone(),
            tgt: tgt.clone(),
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn count(&self) -> u64 {
        self.field.q().pow(self.dim() as u32)
    }

    pub fn count_checked(&self, budget: u64) -> Result<u64, DerivedError> {
        let c = (self.field.q() as u128).checked_pow(self.dim() as u32);
        match c {
            Some(c) if c <= budget as u128 => Ok(c as u64),
            Some(c) => Err(DerivedError::BudgetExceeded(c.min(u64::MAX as u128) as u64, budget)),
            None => Err(DerivedError::BudgetExceeded(u64::MAX, budget)),
        }
    }

    /// The coset representative for a coefficient tuple.
    pub fn representative(&self, coeffs: &[Elt]) -> Vec<(i32, PathMat)> {
        assert_eq!(coeffs.len(), self.dim());
        let f = &self.field;
        let mut acc: Option<Vec<(i32, PathMat)>> = None;
        for (c, b) in coeffs.iter().zip(self.basis.iter()) {
            if *c == 0 {
                continue;
            }
            let scaled: Vec<(i32, PathMat)> =
                b.iter().map(|(d, m)| (*d, m.scale(*c, f))).collect();
            acc = Some(match acc {
                None => scaled,
                Some(prev) => prev
                    .iter()
                    .map(|(d, m)| {
                        let other = scaled.iter().find(|(dd, _)| dd == d).unwrap();
                        (*d, m.add(&other.1, f))
                    })
                    .collect(),
            });
        }
        acc.unwrap_or_else(|| {
            self.basis
                .first()
                .map(|b| b.iter().map(|(d, m)| (*d, m.scale(0, f))).collect())
                .unwrap_or_default()
        })
    }

    /// Iterate all coefficient tuples in lexicographic order.
    pub fn coeff_tuples(&self) -> CoeffIter {
        CoeffIter {
            q: self.field.q(),
            dim: self.dim(),
            next: 0,
            total: self.count(),
        }
    }
}

pub struct CoeffIter {
    q: u64,
    dim: usize,
    next: u64,
    total: u64,
}

impl Iterator for CoeffIter {
    type Item = Vec<Elt>;
    fn next(&mut self) -> Option<Vec<Elt>> {
        if self.next >= self.total {
            return None;
        }
        let mut v = vec![0 as Elt; self.dim];
        let mut k = self.next;
        for slot in v.iter_mut() {
            *slot = k % self.q;
            k /= self.q;
        }
        self.next += 1;
        Some(v)
    }
}

fn rank_of_rows(f: &FiniteField, rows: &[Vec<Elt>], width: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = Matrix::zero(rows.len(), width);
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m.rank(f)
}

/// Evaluated mapping-cone scaffolding for one coset space: the cone of
/// `f: src -> tgt` has degree-d part `src^{d+1} ⊕ tgt^d` and differential
/// `[[-∂_src, 0], [f, ∂_tgt]]`; everything except the `f` block is shared
/// across cosets and precomputed here.
pub struct ConeEvaluator {
    pub lo: i32,
    pub degree_reps: Vec<Rep>,
    /// per degree: the f-independent differential blocks
    base_diffs: Vec<Matrixes>,
    /// per basis chain map: evaluated blocks to add into the differentials
    basis_blocks: Vec<Vec<Matrixes>>,
    src_dims: Vec<Vec<usize>>,
}

/// Per-vertex matrices of one cone differential.
pub type Matrixes = Vec<Matrix>;

impl ConeEvaluator {
    pub fn new(alg: &PathAlgebra, space: &CosetSpace) -> ConeEvaluator {
        let f = &space.field;
        let src = &space.src;
        let tgt = &space.tgt;
        let verts = alg.preset.vertices;
        let src_lo = src.lo;
        let src_hi = src.lo + src.gens.len() as i32;
        let tgt_lo = tgt.lo;
        let tgt_hi = tgt.lo + tgt.gens.len() as i32;
        let lo = (src_lo - 1).min(tgt_lo);
        let hi = (src_hi - 1).max(tgt_hi);
        let n = (hi - lo).max(0) as usize;

        let src_dims: Vec<Vec<usize>> = (0..n + 1)
            .map(|i| {
                let d = lo + i as i32;
                gens_dims(alg, src.gens_at(d + 1))
            })
            .collect();
        let tgt_dims: Vec<Vec<usize>> = (0..n + 1)
            .map(|i| {
                let d = lo + i as i32;
                gens_dims(alg, tgt.gens_at(d))
            })
            .collect();

        let degree_reps: Vec<Rep> = (0..n)
            .map(|i| {
                let d = lo + i as i32;
                let a = gens_rep(alg, src.gens_at(d + 1), f);
                let b = gens_rep(alg, tgt.gens_at(d), f);
                a.direct_sum(&b).expect("same preset")
            })
            .collect();

        // f-independent blocks of each differential E^d -> E^{d+1}
        let mut base_diffs = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n.saturating_sub(1) {
            let d = lo + i as i32;
            let sd = src.diff_at(d + 1).map(|m| m.evaluate(alg, f));
            let td = tgt.diff_at(d).map(|m| m.evaluate(alg, f));
            let mats: Matrixes = (0..verts)
                .map(|v| {
                    let rows = src_dims[i + 1][v] + tgt_dims[i + 1][v];
                    let cols = src_dims[i][v] + tgt_dims[i][v];
                    let mut m = Matrix::zero(rows, cols);
                    if let Some(sd) = &sd {
                        m.paste(0, 0, &sd.mats[v].neg(f));
                    }
                    if let Some(td) = &td {
                        m.paste(src_dims[i + 1][v], src_dims[i][v], &td.mats[v]);
                    }
                    m
                })
                .collect();
            base_diffs.push(mats);
        }

        // per basis chain map: the f^{d+1} blocks (src^{d+1} -> tgt^{d+1})
        let basis_blocks = space
            .basis
            .iter()
            .map(|chain| {
                (0..base_diffs.len())
                    .map(|i| {
                        let d = lo + i as i32;
                        let part = chain.iter().find(|(dd, _)| *dd == d + 1);
                        (0..verts)
                            .map(|v| match part {
                                Some((_, pm)) => pm.evaluate(alg, f).mats[v].clone(),
                                None => {
                                    Matrix::zero(tgt_dims[i + 1][v], src_dims[i][v])
                                }
                            })
                            .collect::<Matrixes>()
                    })
                    .collect::<Vec<Matrixes>>()
            })
            .collect();

        ConeEvaluator {
            lo,
            degree_reps,
            base_diffs,
            basis_blocks,
            src_dims,
        }
    }

    pub fn degree_count(&self) -> usize {
        self.degree_reps.len()
    }

    /// Assemble the cone differentials for one coset.
    pub fn cone_diffs(&self, coeffs: &[Elt], f: &FiniteField) -> Vec<Matrixes> {
        let verts = self.degree_reps.first().map(|r| r.dims.len()).unwrap_or(0);
        self.base_diffs
            .iter()
            .enumerate()
            .map(|(i, base)| {
                (0..verts)
                    .map(|v| {
                        let mut m = base[v].clone();
                        for (c, blocks) in coeffs.iter().zip(self.basis_blocks.iter()) {
                            if *c == 0 {
                                continue;
                            }
                            let add = blocks[i][v].scale(*c, f);
                            // f block sits at rows (src offset), cols 0
                            for r in 0..add.rows() {
                                for cc in 0..add.cols() {
                                    let cur = m.get(self.src_dims[i + 1][v] + r, cc);
                                    m.set(
                                        self.src_dims[i + 1][v] + r,
                                        cc,
                                        f.add(cur, add.get(r, cc)),
                                    );
                                }
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect()
    }

    /// Cohomology dimension vectors from vertexwise ranks only.
    pub fn cohomology_dims(&self, diffs: &[Matrixes], f: &FiniteField) -> Vec<Vec<usize>> {
        let n = self.degree_reps.len();
        let verts = self.degree_reps.first().map(|r| r.dims.len()).unwrap_or(0);
        let ranks: Vec<Vec<usize>> = diffs
            .iter()
            .map(|mats| mats.iter().map(|m| m.rank(f)).collect())
            .collect();
        (0..n)
            .map(|i| {
                (0..verts)
                    .map(|v| {
                        let dim = self.degree_reps[i].dims[v];
                        let out = if i < ranks.len() { ranks[i][v] } else { 0 };
                        let inc = if i > 0 { ranks[i - 1][v] } else { 0 };
                        dim - out - inc
                    })
                    .collect()
            })
            .collect()
    }

    /// Full cohomology representations (degree, H^degree), zero parts skipped.
    pub fn cohomology_reps(&self, diffs: &[Matrixes], f: &FiniteField) -> Vec<(i32, Rep)> {
        let n = self.degree_reps.len();
        let mut out = Vec::new();
        for i in 0..n {
            let rep = &self.degree_reps[i];
            let verts = rep.dims.len();
            // kernel of the outgoing differential
            let kernel: VertexBases = (0..verts)
                .map(|v| {
                    if i < diffs.len() {
                        kernel_basis(f, &diffs[i][v])
                    } else {
                        (0..rep.dims[v])
                            .map(|j| {
                                let mut e = vec![0 as Elt; rep.dims[v]];
                                e[j] = 1;
                                e
                            })
                            .collect()
                    }
                })
                .collect();
            let (z_rep, z_incl) = sub_rep(rep, &kernel);
            if z_rep.is_zero() {
                continue;
            }
            // image of the incoming differential, in kernel coordinates
            let image_in_z: VertexBases = (0..verts)
                .map(|v| {
                    if i == 0 {
                        return Vec::new();
                    }
                    let m = &diffs[i - 1][v];
                    let sol = mat_solve(f, &m.transpose());
                    let incl_solver = mat_solve(f, &z_incl.mats[v]);
                    (0..sol.rank)
                        .map(|r| {
                            let vec: Vec<Elt> =
                                (0..m.rows()).map(|j| sol.rref.get(r, j)).collect();
                            incl_solver
                                .solve(f, &vec)
                                .expect("image lies in the kernel")
                        })
                        .collect()
                })
                .collect();
            let (h_rep, _) = quotient_rep(&z_rep, &image_in_z);
            if !h_rep.is_zero() {
                out.push((self.lo + i as i32, h_rep));
            }
        }
        out
    }
}

/// Convenience: cone differentials and cohomology of one explicit coset.
pub fn cone_complex(
    alg: &PathAlgebra,
    space: &CosetSpace,
    coeffs: &[Elt],
) -> (ConeEvaluator, Vec<Matrixes>) {
    let ev = ConeEvaluator::new(alg, space);
    let diffs = ev.cone_diffs(coeffs, &space.field);
    (ev, diffs)
}

/// Cohomology dimension vectors of the cone of one coset.
pub fn cone_dims_by_degree(
    alg: &PathAlgebra,
    space: &CosetSpace,
    coeffs: &[Elt],
) -> Vec<(i32, Vec<usize>)> {
    let (ev, diffs) = cone_complex(alg, space, coeffs);
    ev.cohomology_dims(&diffs, &space.field)
        .into_iter()
        .enumerate()
        .map(|(i, d)| (ev.lo + i as i32, d))
        .collect()
}

/// Cohomology representations of the cone of one coset.
pub fn cone_cohomology(
    alg: &PathAlgebra,
    space: &CosetSpace,
    coeffs: &[Elt],
) -> Vec<(i32, Rep)> {
    let (ev, diffs) = cone_complex(alg, space, coeffs);
    ev.cohomology_reps(&diffs, &space.field)
}

/// |Aut X| by brute force: cosets of End(X) whose cone vanishes.
pub fn aut_order_derived_brute(
    alg: &PathAlgebra,
    space: &CosetSpace,
    budget: u64,
) -> Result<u64, DerivedError> {
    let total = space.count_checked(budget)?;
    let ev = ConeEvaluator::new(alg, space);
    let f = &space.field;
    let mut count = 0u64;
    for coeffs in space.coeff_tuples() {
        let diffs = ev.cone_diffs(&coeffs, f);
        let dims = ev.cohomology_dims(&diffs, f);
        if dims.iter().all(|d| d.iter().all(|&x| x == 0)) {
            count += 1;
        }
    }
    let _ = total;
    Ok(count)
}
