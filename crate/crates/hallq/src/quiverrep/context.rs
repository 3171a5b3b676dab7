//! Recognition of modules against the catalogue, with certified
//! decompositions and exact automorphism counts.
//!
//! Recognition works by idempotent splitting: a catalogued indecomposable `C`
//! is a direct summand of `M` exactly when some pair of basis morphisms
//! `i: C -> M`, `p: M -> C` composes to an automorphism of `C` (if every such
//! composite lay in the radical of End C, so would every combination, and no
//! split pair could exist).  Splitting the resulting idempotent peels `C` off
//! with an explicit witness, so every reported decomposition is certified.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::bigint::BigUint;
use num::One;
use thiserror::Error;

use super::catalogue::{Catalogue, IndecLabel};
use super::preset::QuiverPreset;
use super::rep::{hom_basis, kercoker_kernel_rep, Rep, RepMap};
use crate::finfield::{Elt, FiniteField};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecognizeError {
    #[error("module of dimension {0:?} is not a sum of catalogued indecomposables")]
    NotInCatalogue(Vec<usize>),
    #[error("fingerprint matched {0:?} but no explicit isomorphism exists")]
    CertificationFailed(Vec<(IndecLabel, usize)>),
    #[error("enumeration of {0} endomorphisms exceeds the budget {1}")]
    BudgetExceeded(u64, u64),
}

/// A multiset of labels: `(label, multiplicity)` sorted by label.
pub type LabelMultiset = Vec<(IndecLabel, usize)>;

/// Dimension vector plus Hom-dimension profile against the catalogue; an
/// isomorphism invariant that separates all catalogued multisets (verified
/// exhaustively in the test suite).
pub type FingerprintKey = (Vec<usize>, Vec<usize>, Vec<usize>);

/// Per-(preset, field) context: the catalogue, its realizations, pairwise
/// Hom/Ext dimension tables, and recognition caches.
pub struct RepContext {
    pub preset: Arc<QuiverPreset>,
    pub field: Arc<FiniteField>,
    pub cat: Catalogue,
    realize_cache: Mutex<HashMap<IndecLabel, Arc<Rep>>>,
    pair_cache: Mutex<HashMap<(IndecLabel, IndecLabel), (usize, usize)>>,
    residue_cache: Mutex<HashMap<IndecLabel, usize>>,
}

impl RepContext {
    pub fn new(preset: Arc<QuiverPreset>, field: Arc<FiniteField>) -> Self {
        let cat = Catalogue::new(preset.clone());
        RepContext {
            preset,
            field,
            cat,
            realize_cache: Mutex::new(HashMap::new()),
            pair_cache: Mutex::new(HashMap::new()),
            residue_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn realize(&self, label: &IndecLabel) -> Arc<Rep> {
        let mut cache = self.realize_cache.lock().unwrap();
        cache
            .entry(*label)
            .or_insert_with(|| Arc::new(self.cat.realize(label, &self.field)))
            .clone()
    }

    pub fn realize_multiset(&self, d: &LabelMultiset) -> Rep {
        let mut acc = Rep::zero(self.preset.clone(), self.field.clone());
        for (label, mult) in d {
            let r = self.realize(label);
            for _ in 0..*mult {
                acc = acc.direct_sum(&r).expect("catalogue reps are compatible");
            }
        }
        acc
    }

    /// (dim Hom, dim Ext^1) between two catalogued labels, cached.
    pub fn pair_dims(&self, a: &IndecLabel, b: &IndecLabel) -> (usize, usize) {
        if let Some(&v) = self.pair_cache.lock().unwrap().get(&(*a, *b)) {
            return v;
        }
        let ra = self.realize(a);
        let rb = self.realize(b);
        let (h, e) = hom_basis(&ra, &rb)
            .map(|(basis, ext)| (basis.len(), ext))
            .expect("catalogue reps live over one preset and field");
        self.pair_cache.lock().unwrap().insert((*a, *b), (h, e));
        (h, e)
    }

    /// (dim Hom, dim Ext^1) between two multisets, by additivity.
    pub fn multiset_dims(&self, a: &LabelMultiset, b: &LabelMultiset) -> (usize, usize) {
        let mut h = 0;
        let mut e = 0;
        for (la, ma) in a {
            for (lb, mb) in b {
                let (ph, pe) = self.pair_dims(la, lb);
                h += ma * mb * ph;
                e += ma * mb * pe;
            }
        }
        (h, e)
    }

    pub fn multiset_dim_vector(&self, d: &LabelMultiset) -> Vec<usize> {
        let mut out = vec![0usize; self.preset.vertices];
        for (label, mult) in d {
            for (v, &x) in self.cat.dim_vector(label).iter().enumerate() {
                out[v] += x * mult;
            }
        }
        out
    }

    /// Fingerprint of an explicit module: dimension vector plus dim Hom(C, M)
    /// and dim Hom(M, C) for every catalogued C.
    pub fn fingerprint(&self, m: &Rep) -> FingerprintKey {
        let mut into = Vec::with_capacity(self.cat.labels().len());
        let mut from = Vec::with_capacity(self.cat.labels().len());
        for label in self.cat.labels() {
            let c = self.realize(label);
            let (h1, _) = hom_basis(&c, m).expect("same preset/field");
            let (h2, _) = hom_basis(m, &c).expect("same preset/field");
            into.push(h1.len());
            from.push(h2.len());
        }
        (m.dims.clone(), into, from)
    }

    /// Fingerprint of a catalogued multiset, assembled additively from the
    /// pair table.
    pub fn fingerprint_of_multiset(&self, d: &LabelMultiset) -> FingerprintKey {
        let labels = self.cat.labels();
        let mut into = vec![0usize; labels.len()];
        let mut from = vec![0usize; labels.len()];
        for (i, c) in labels.iter().enumerate() {
            for (l, mult) in d {
                into[i] += mult * self.pair_dims(c, l).0;
                from[i] += mult * self.pair_dims(l, c).0;
            }
        }
        (self.multiset_dim_vector(d), into, from)
    }

    /// Try to split one copy of `label` off `m`. Returns the complement.
    pub fn peel(&self, label: &IndecLabel, m: &Rep) -> Option<Rep> {
        let c = self.realize(label);
        if c.total_dim() > m.total_dim() {
            return None;
        }
        if c
            .dims
            .iter()
            .zip(m.dims.iter())
            .any(|(a, b)| a > b)
        {
            return None;
        }
        let f = &self.field;
        let (into, _) = hom_basis(&c, m).expect("same preset/field");
        if into.is_empty() {
            return None;
        }
        let (from, _) = hom_basis(m, &c).expect("same preset/field");
        for i in &into {
            for p in &from {
                let u = p.compose(i, f);
                if u.is_invertible(f) {
                    // e = i u^{-1} p is an idempotent with image iso to C;
                    // the complement is ker e.
                    let u_inv = invert_repmap(&u, f);
                    let e = i.compose(&u_inv, f).compose(p, f);
                    let complement = kercoker_kernel_rep(&e, m);
                    debug_assert_eq!(
                        complement.total_dim() + c.total_dim(),
                        m.total_dim()
                    );
                    return Some(complement);
                }
            }
        }
        None
    }

    /// Full decomposition into catalogued labels, certified by construction.
    pub fn decompose(&self, m: &Rep) -> Result<LabelMultiset, RecognizeError> {
        let mut rest = m.clone();
        let mut out: LabelMultiset = Vec::new();
        let labels: Vec<IndecLabel> = self.cat.labels().to_vec();
        'outer: while !rest.is_zero() {
            for label in &labels {
                if let Some(next) = self.peel(label, &rest) {
                    push_label(&mut out, *label);
                    rest = next;
                    continue 'outer;
                }
            }
            return Err(RecognizeError::NotInCatalogue(m.dims.clone()));
        }
        out.sort();
        Ok(out)
    }

    /// Is `m` isomorphic to the direct sum of `d`? Certified: peels exactly
    /// the labels of `d` and checks that nothing is left.
    pub fn is_iso_to_multiset(&self, m: &Rep, d: &LabelMultiset) -> bool {
        if m.dims != self.multiset_dim_vector(d) {
            return false;
        }
        let mut rest = m.clone();
        for (label, mult) in d {
            for _ in 0..*mult {
                match self.peel(label, &rest) {
                    Some(next) => rest = next,
                    None => return false,
                }
            }
        }
        rest.is_zero()
    }

    /// Degree of End(C)/rad over the ground field. Field-independent for
    /// catalogue labels; computed once over GF(2) by brute force.
    pub fn residue_degree(&self, label: &IndecLabel) -> usize {
        if let Some(&v) = self.residue_cache.lock().unwrap().get(label) {
            return v;
        }
        // |Aut C| = 2^d - 2^{d-e} over GF(2) with d = dim End, e the residue
        // degree: count invertibles by enumeration over the base case field.
        let f2 = Arc::new(crate::finfield::field_make(2, 1).expect("GF(2)"));
        let cat2 = Catalogue::new(self.preset.clone());
        let c2 = cat2.realize(label, &f2);
        let (basis, _) = hom_basis(&c2, &c2).expect("End over GF(2)");
        let d = basis.len();
        let count = count_invertible_combinations(&f2, &c2, &basis);
        let complement = (1u64 << d) - count;
        assert!(complement.is_power_of_two(), "End not local? {label:?}");
        let e = d - complement.trailing_zeros() as usize;
        self.residue_cache.lock().unwrap().insert(*label, e);
        e
    }

    /// |Aut M| for a catalogued multiset, via the block formula: one general
    /// linear factor per isotypic block over the residue field of its label,
    /// times the radical size.
    pub fn aut_order_multiset(&self, d: &LabelMultiset) -> BigUint {
        let q = BigUint::from(self.q());
        let (dim_end, _) = self.multiset_dims(d, d);
        let mut semisimple_dim = 0usize;
        let mut acc = BigUint::one();
        for (label, mult) in d {
            let e = self.residue_degree(label);
            semisimple_dim += mult * mult * e;
            // |GL_mult(GF(q^e))|
            let qe = q.pow(e as u32);
            let qem = qe.pow(*mult as u32);
            for i in 0..*mult {
                acc *= &qem - qe.pow(i as u32);
            }
        }
        acc * q.pow((dim_end - semisimple_dim) as u32)
    }

    /// |Aut M| by brute enumeration of End(M); exact but exponential.
    pub fn aut_order_rep_brute(&self, m: &Rep, budget: u64) -> Result<BigUint, RecognizeError> {
        let (basis, _) = hom_basis(m, m).expect("End of a rep");
        let d = basis.len() as u32;
        let total = self
            .q()
            .checked_pow(d)
            .ok_or(RecognizeError::BudgetExceeded(u64::MAX, budget))?;
        if total > budget {
            return Err(RecognizeError::BudgetExceeded(total, budget));
        }
        Ok(BigUint::from(count_invertible_combinations(
            &self.field,
            m,
            &basis,
        )))
    }
}

fn push_label(out: &mut LabelMultiset, label: IndecLabel) {
    for (l, m) in out.iter_mut() {
        if *l == label {
            *m += 1;
            return;
        }
    }
    out.push((label, 1));
}

/// Count the invertible linear combinations of an End basis.
fn count_invertible_combinations(f: &Arc<FiniteField>, m: &Rep, basis: &[RepMap]) -> u64 {
    let d = basis.len();
    if d == 0 {
        return if m.is_zero() { 1 } else { 0 };
    }
    let mut count = 0u64;
    let total = f.q().pow(d as u32);
    let mut coeffs = vec![0 as Elt; d];
    for idx in 0..total {
        let mut k = idx;
        for c in coeffs.iter_mut() {
            *c = k % f.q();
            k /= f.q();
        }
        let mut acc = RepMap::zero(m, m);
        for (c, b) in coeffs.iter().zip(basis.iter()) {
            if *c != 0 {
                acc = acc.add(&b.scale(*c, f), f);
            }
        }
        if acc.is_invertible(f) {
            count += 1;
        }
    }
    count
}

/// Invert a vertexwise-invertible endomorphism.
fn invert_repmap(u: &RepMap, f: &FiniteField) -> RepMap {
    use crate::finfield::{mat_solve, Matrix};
    RepMap {
        mats: u
            .mats
            .iter()
            .map(|m| {
                assert!(m.is_square());
                let n = m.rows();
                let sol = mat_solve(f, m);
                assert_eq!(sol.rank, n, "not invertible");
                // transform * m = I, so transform is the inverse
                let mut inv = Matrix::zero(n, n);
                for i in 0..n {
                    for j in 0..n {
                        inv.set(i, j, sol.transform.get(i, j));
                    }
                }
                inv
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::field_make;
    use crate::quiverrep::preset::preset_make;

    fn ctx(spec: &str, p: u64, r: u32) -> RepContext {
        RepContext::new(
            Arc::new(preset_make(spec).unwrap()),
            Arc::new(field_make(p, r).unwrap()),
        )
    }

    #[test]
    fn decompose_examples() {
        let cx = ctx("A2:1>2", 2, 1);
        let s1 = IndecLabel::Interval { lo: 0, hi: 0 };
        let s2 = IndecLabel::Interval { lo: 1, hi: 1 };
        let p1 = IndecLabel::Interval { lo: 0, hi: 1 };

        // S_1 ⊕ S_1
        let m = cx.realize_multiset(&vec![(s1, 2)]);
        assert_eq!(cx.decompose(&m).unwrap(), vec![(s1, 2)]);

        // dims (1,1) with arrow [1] is the nonsplit interval
        let m = cx.realize_multiset(&vec![(p1, 1)]);
        assert_eq!(cx.decompose(&m).unwrap(), vec![(p1, 1)]);

        // dims (1,1) with arrow [0] splits
        let m = cx.realize_multiset(&vec![(s1, 1), (s2, 1)]);
        assert_eq!(cx.decompose(&m).unwrap(), vec![(s1, 1), (s2, 1)]);
    }

    #[test]
    fn decompose_realize_roundtrip_small() {
        for spec in ["A2:1>2", "A3:1>2,3>2", "C1", "K"] {
            let cx = ctx(spec, 3, 1);
            let labels: Vec<_> = cx
                .cat
                .labels()
                .iter()
                .copied()
                .filter(|l| cx.cat.total_dim(l) <= 3)
                .collect();
            // all multisets with <= 2 parts among the small labels
            for (i, a) in labels.iter().enumerate() {
                let d = vec![(*a, 1)];
                let m = cx.realize_multiset(&d);
                assert_eq!(cx.decompose(&m).unwrap(), d, "{spec} single {a:?}");
                for b in labels.iter().skip(i) {
                    let mut d: LabelMultiset = vec![(*a, 1)];
                    push_label(&mut d, *b);
                    d.sort();
                    let m = cx.realize_multiset(&d);
                    assert_eq!(cx.decompose(&m).unwrap(), d, "{spec} pair {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn aut_orders() {
        let cx = ctx("A2:1>2", 3, 1);
        let s1 = IndecLabel::Interval { lo: 0, hi: 0 };
        // S_1 over GF(3): q - 1 = 2
        assert_eq!(cx.aut_order_multiset(&vec![(s1, 1)]), BigUint::from(2u32));

        let cx2 = ctx("A2:1>2", 2, 1);
        // S_1^2 over GF(2): |GL_2(F_2)| = 6
        let formula = cx2.aut_order_multiset(&vec![(s1, 2)]);
        assert_eq!(formula, BigUint::from(6u32));
        let m = cx2.realize_multiset(&vec![(s1, 2)]);
        let brute = cx2.aut_order_rep_brute(&m, 1 << 20).unwrap();
        assert_eq!(formula, brute);

        // P_1 ⊕ S_1 over A_2, GF(2): brute force over the 8-element End algebra
        let p1 = IndecLabel::Interval { lo: 0, hi: 1 };
        let d = vec![(s1, 1), (p1, 1)];
        let m = cx2.realize_multiset(&d);
        let brute = cx2.aut_order_rep_brute(&m, 1 << 20).unwrap();
        assert_eq!(brute, BigUint::from(2u32));
        assert_eq!(cx2.aut_order_multiset(&d), brute);
    }

    #[test]
    fn catalogue_indecomposables_have_no_idempotents() {
        // exhaustive idempotent search in End for small fields
        for spec in ["A2:1>2", "C2", "K"] {
            let cx = ctx(spec, 2, 1);
            for label in cx.cat.labels() {
                if cx.cat.total_dim(label) > 6 {
                    continue;
                }
                let c = cx.realize(label);
                let (basis, _) = hom_basis(&c, &c).unwrap();
                let d = basis.len();
                assert!(d <= 12);
                let f = &cx.field;
                let total = f.q().pow(d as u32);
                let mut idems = 0;
                for idx in 0..total {
                    let mut k = idx;
                    let mut acc = RepMap::zero(&c, &c);
                    for b in basis.iter() {
                        let cc = k % f.q();
                        k /= f.q();
                        if cc != 0 {
                            acc = acc.add(&b.scale(cc, f), f);
                        }
                    }
                    if acc.compose(&acc, f) == acc {
                        idems += 1;
                    }
                }
                assert_eq!(idems, 2, "idempotents in End({label:?}) over {spec}");
            }
        }
    }
}
