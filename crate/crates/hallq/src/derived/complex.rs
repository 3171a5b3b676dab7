//! Bounded complexes of projectives and the standard two-term resolution
//! that replaces each shifted module summand.

use std::sync::Arc;

use super::dobj::{DerivedError, DObj};
use super::path::{gens_dims, gens_rep, PathAlgebra, PathMat};
use crate::finfield::FiniteField;
use crate::quiverrep::{Rep, RepContext, RepMap};

/// A bounded cochain complex of direct sums of indecomposable projectives.
/// Degree `lo + i` has generator vertex list `gens[i]`; `diffs[i]` maps
/// degree `lo + i` to `lo + i + 1` and composes to zero with its neighbour.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    pub field: Arc<FiniteField>,
    pub lo: i32,
    pub gens: Vec<Vec<usize>>,
    pub diffs: Vec<PathMat>,
}

impl ProjComplex {
    pub fn empty(field: Arc<FiniteField>) -> Self {
        ProjComplex {
            field,
            lo: 0,
            gens: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.gens.len() as i32).map(move |i| self.lo + i)
    }

    pub fn gens_at(&self, degree: i32) -> &[usize] {
        let idx = degree - self.lo;
        if idx < 0 || idx as usize >= self.gens.len() {
            &[]
        } else {
            &self.gens[idx as usize]
        }
    }

    /// The differential leaving `degree`; identically zero (empty) matrices
    /// are represented by `None` at the boundary.
    pub fn diff_at(&self, degree: i32) -> Option<&PathMat> {
        let idx = degree - self.lo;
        if idx < 0 || idx as usize >= self.diffs.len() {
            None
        } else {
            Some(&self.diffs[idx as usize])
        }
    }

    /// Shift left by `k`: degree d of the result is degree d + k of self,
    /// differentials negated k times.
    pub fn shifted(&self, k: i32, alg: &PathAlgebra) -> ProjComplex {
        let mut out = self.clone();
        out.lo -= k;
        if k % 2 != 0 {
            let f = &self.field;
            out.diffs = out.diffs.iter().map(|d| d.neg(f)).collect();
        }
        let _ = alg;
        out
    }

    /// Direct sum, degreewise.
    pub fn direct_sum(&self, other: &ProjComplex, alg: &PathAlgebra) -> ProjComplex {
        if self.gens.is_empty() {
            return other.clone();
        }
        if other.gens.is_empty() {
            return self.clone();
        }
        let f = &self.field;
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.gens.len() as i32).max(other.lo + other.gens.len() as i32);
        let n = (hi - lo) as usize;
        let mut gens = Vec::with_capacity(n);
        for d in 0..n {
            let deg = lo + d as i32;
            let mut g = self.gens_at(deg).to_vec();
            g.extend_from_slice(other.gens_at(deg));
            gens.push(g);
        }
        let mut diffs = Vec::with_capacity(n.saturating_sub(1));
        for d in 0..n.saturating_sub(1) {
            let deg = lo + d as i32;
            let mut pm = PathMat::zero(gens[d + 1].clone(), gens[d].clone());
            let a_cols = self.gens_at(deg).len();
            let a_rows = self.gens_at(deg + 1).len();
            if let Some(da) = self.diff_at(deg) {
                for r in 0..da.rows.len() {
                    for c in 0..da.cols.len() {
                        for &(p, coef) in da.entry(r, c) {
                            pm.add_term(r, c, p, coef, f);
                        }
                    }
                }
            }
            if let Some(db) = other.diff_at(deg) {
                for r in 0..db.rows.len() {
                    for c in 0..db.cols.len() {
                        for &(p, coef) in db.entry(r, c) {
                            pm.add_term(a_rows + r, a_cols + c, p, coef, f);
                        }
                    }
                }
            }
            let _ = alg;
            diffs.push(pm);
        }
        ProjComplex {
            field: f.clone(),
            lo,
            gens,
            diffs,
        }
    }

    /// Evaluate every degree to an explicit representation with its
    /// differential as a representation morphism.
    pub fn evaluate(&self, alg: &PathAlgebra) -> EvaluatedComplex {
        let reps: Vec<Rep> = self
            .gens
            .iter()
            .map(|g| gens_rep(alg, g, &self.field))
            .collect();
        let diffs: Vec<RepMap> = self
            .diffs
            .iter()
            .map(|d| d.evaluate(alg, &self.field))
            .collect();
        EvaluatedComplex {
            lo: self.lo,
            reps,
            diffs,
        }
    }

    /// Total dimension per degree per vertex (no evaluation needed).
    pub fn dims_by_degree(&self, alg: &PathAlgebra) -> Vec<(i32, Vec<usize>)> {
        self.gens
            .iter()
            .enumerate()
            .map(|(i, g)| (self.lo + i as i32, gens_dims(alg, g)))
            .collect()
    }
}

/// A complex evaluated to explicit representations.
pub struct EvaluatedComplex {
    pub lo: i32,
    pub reps: Vec<Rep>,
    pub diffs: Vec<RepMap>,
}

/// Replace each module summand `M[n]` of `x` by its standard two-term
/// projective resolution `0 -> ⊕_{a:i->j} P_j^{dim M_i} -> ⊕_i P_i^{dim M_i}
/// -> M -> 0`, placed in degrees `-n-1`, `-n`, and sum everything up.
pub fn to_complex(
    cx: &RepContext,
    alg: &PathAlgebra,
    x: &DObj,
) -> Result<ProjComplex, DerivedError> {
    if !cx.preset.acyclic {
        return Err(DerivedError::CyclicPresetDirectUse);
    }
    let f = &cx.field;
    let mut acc = ProjComplex::empty(f.clone());
    // group summands by shift
    let mut shifts: Vec<i32> = x.summands().map(|s| s.shift).collect();
    shifts.sort();
    shifts.dedup();
    for n in shifts {
        let part = x.part_at(n);
        let m = cx.realize_multiset(&part);
        let piece = resolve_module(&m, alg, n);
        acc = acc.direct_sum(&piece, alg);
    }
    Ok(acc)
}

/// The two-term resolution of a single module, in degrees (-n-1, -n).
fn resolve_module(m: &Rep, alg: &PathAlgebra, n: i32) -> ProjComplex {
    let f = &m.field;
    let preset = &m.preset;
    // degree -n generators: (v, beta) for each basis vector of M_v
    let mut gens0 = Vec::new();
    let mut gen0_index = vec![Vec::new(); preset.vertices];
    for v in 0..preset.vertices {
        for _ in 0..m.dims[v] {
            gen0_index[v].push(gens0.len());
            gens0.push(v);
        }
    }
    // degree -n-1 generators: (a: i->j, beta) for each basis vector of M_i
    let mut gens1 = Vec::new();
    let mut gen1_meta = Vec::new();
    for (ai, a) in preset.arrows.iter().enumerate() {
        for beta in 0..m.dims[a.src] {
            gen1_meta.push((ai, beta));
            gens1.push(a.tgt);
        }
    }
    let mut diff = PathMat::zero(gens0.clone(), gens1.clone());
    for (col, &(ai, beta)) in gen1_meta.iter().enumerate() {
        let a = preset.arrows[ai];
        // x ⊗ m ↦ x·a ⊗ m  (into the copy (src, beta))
        diff.add_term(
            gen0_index[a.src][beta],
            col,
            alg.arrow_path(ai),
            1,
            f,
        );
        // minus x ⊗ a·m (into the copies (tgt, beta') weighted by M_a)
        for bp in 0..m.dims[a.tgt] {
            let coef = m.mats[ai].get(bp, beta);
            if coef != 0 {
                diff.add_term(
                    gen0_index[a.tgt][bp],
                    col,
                    alg.trivial(a.tgt),
                    f.neg(coef),
                    f,
                );
            }
        }
    }
    if gens1.is_empty() && gens0.is_empty() {
        return ProjComplex::empty(f.clone());
    }
    if gens1.is_empty() {
        return ProjComplex {
            field: f.clone(),
            lo: -n,
            gens: vec![gens0],
            diffs: Vec::new(),
        };
    }
    ProjComplex {
        field: f.clone(),
        lo: -n - 1,
        gens: vec![gens1, gens0],
        diffs: vec![diff],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::field_make;
    use crate::quiverrep::{preset_make, IndecLabel};

    fn setup() -> (RepContext, PathAlgebra) {
        let preset = Arc::new(preset_make("A2:1>2").unwrap());
        let cx = RepContext::new(preset.clone(), Arc::new(field_make(3, 1).unwrap()));
        let alg = PathAlgebra::new(preset);
        (cx, alg)
    }

    #[test]
    fn stalk_projective() {
        let (cx, alg) = setup();
        // S_2 = P_2 is projective: a stalk in degree 0
        let s2 = DObj::of_module(IndecLabel::Interval { lo: 1, hi: 1 });
        let c = to_complex(&cx, &alg, &s2).unwrap();
        assert_eq!(c.lo, 0);
        // degree -1 part is empty (no arrows start in the support)
        assert_eq!(c.gens_at(-1), &[] as &[usize]);
        assert_eq!(c.gens_at(0), &[1]);
    }

    #[test]
    fn simple_resolution_and_shift() {
        let (cx, alg) = setup();
        let s1 = DObj::of_module(IndecLabel::Interval { lo: 0, hi: 0 });
        let c = to_complex(&cx, &alg, &s1).unwrap();
        assert_eq!(c.lo, -1);
        assert_eq!(c.gens_at(-1), &[1]); // P_2
        assert_eq!(c.gens_at(0), &[0]); // P_1
        let ev = c.evaluate(&alg);
        // differential is injective, cokernel has dims (1, 0)
        let d = &ev.diffs[0];
        assert!(d.is_morphism(&ev.reps[0], &ev.reps[1]));

        let shifted = c.shifted(1, &alg);
        assert_eq!(shifted.lo, -2);
        assert_eq!(shifted.gens_at(-1), &[0]);
    }

    #[test]
    fn differentials_compose_to_zero_on_sums() {
        let (cx, alg) = setup();
        let s1 = IndecLabel::Interval { lo: 0, hi: 0 };
        let p1 = IndecLabel::Interval { lo: 0, hi: 1 };
        let x = DObj::new(vec![(s1, 0, 2), (p1, 1, 1), (s1, 2, 1)]).unwrap();
        let c = to_complex(&cx, &alg, &x).unwrap();
        for d in c.degrees() {
            if let (Some(d0), Some(d1)) = (c.diff_at(d), c.diff_at(d + 1)) {
                let comp = d1.compose(d0, &alg, &cx.field);
                assert!(comp.is_zero(), "d∘d ≠ 0 at degree {d}");
            }
        }
    }
}
