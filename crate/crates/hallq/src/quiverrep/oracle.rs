//! Independent classical-Hall-number oracle: count submodules of `L` that are
//! isomorphic to `Y` with quotient isomorphic to `X`, by enumerating all
//! arrow-stable families of vertex subspaces.
//!
//! This is test-grade machinery, deliberately separate from the derived
//! engine it cross-checks.

use num::bigint::BigUint;
use num::Zero;

use super::context::{RecognizeError, RepContext};
use super::rep::{quotient_rep, sub_rep, Rep, VertexBases};
use crate::finfield::{Elt, FiniteField, Matrix};

/// All subspaces of F^n of dimension k, one echelon basis each.
fn subspaces(f: &FiniteField, n: usize, k: usize) -> Vec<Vec<Vec<Elt>>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    // choose pivot columns, then free entries right of pivots, above-row free
    let mut pivots = (0..k).collect::<Vec<usize>>();
    loop {
        // free positions of the reduced echelon matrix with these pivots:
        // entry (r, c) is free if c > pivots[r] and c is not a pivot column
        let mut free_pos = Vec::new();
        for r in 0..k {
            for c in (pivots[r] + 1)..n {
                if !pivots.contains(&c) {
                    free_pos.push((r, c));
                }
            }
        }
        let total = f.q().pow(free_pos.len() as u32);
        for idx in 0..total {
            let mut m = Matrix::zero(k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, 1);
            }
            let mut t = idx;
            for &(r, c) in &free_pos {
                m.set(r, c, t % f.q());
                t /= f.q();
            }
            out.push(
                (0..k)
                    .map(|r| (0..n).map(|c| m.get(r, c)).collect::<Vec<_>>())
                    .collect(),
            );
        }
        // next pivot combination (lexicographic)
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] + (k - i) < n {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Gaussian binomial [n choose k]_q as u128, for budget estimates.
fn gaussian_binomial(q: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Count submodules `U ⊆ L` with `U ≅ Y` and `L/U ≅ X`, exactly.
pub fn submodule_hall_oracle(
    cx: &RepContext,
    x: &Rep,
    y: &Rep,
    l: &Rep,
    budget: u64,
) -> Result<BigUint, RecognizeError> {
    // dimension bookkeeping: a mismatch means the count is zero
    for v in 0..cx.preset.vertices {
        if x.dims[v] + y.dims[v] != l.dims[v] {
            return Ok(BigUint::zero());
        }
    }
    let f = &cx.field;
    // budget: product of subspace counts across vertices
    let mut est: u128 = 1;
    for v in 0..cx.preset.vertices {
        est = est.saturating_mul(gaussian_binomial(f.q(), l.dims[v], y.dims[v]));
    }
    if est > budget as u128 {
        return Err(RecognizeError::BudgetExceeded(
            est.min(u64::MAX as u128) as u64,
            budget,
        ));
    }
    let want_sub = cx.decompose(y)?;
    let want_quot = cx.decompose(x)?;

    let per_vertex: Vec<Vec<Vec<Vec<Elt>>>> = (0..cx.preset.vertices)
        .map(|v| subspaces(f, l.dims[v], y.dims[v]))
        .collect();

    let mut count = BigUint::zero();
    let mut choice = vec![0usize; cx.preset.vertices];
    'outer: loop {
        let bases: VertexBases = (0..cx.preset.vertices)
            .map(|v| per_vertex[v][choice[v]].clone())
            .collect();
        if arrow_stable(l, &bases) {
            let (sub, _) = sub_rep(l, &bases);
            if cx.is_iso_to_multiset(&sub, &want_sub) {
                let (quot, _) = quotient_rep(l, &bases);
                if cx.is_iso_to_multiset(&quot, &want_quot) {
                    count += BigUint::from(1u32);
                }
            }
        }
        // odometer
        for v in 0..cx.preset.vertices {
            choice[v] += 1;
            if choice[v] < per_vertex[v].len() {
                continue 'outer;
            }
            choice[v] = 0;
        }
        break;
    }
    Ok(count)
}

fn arrow_stable(l: &Rep, bases: &VertexBases) -> bool {
    let f = &l.field;
    for (ai, a) in l.preset.arrows.iter().enumerate() {
        if bases[a.src].is_empty() {
            continue;
        }
        // span matrix of target subspace with images appended must keep rank
        let k = bases[a.tgt].len();
        let n = l.dims[a.tgt];
        let mut m = Matrix::zero(k + bases[a.src].len(), n);
        for (i, vecv) in bases[a.tgt].iter().enumerate() {
            for (j, &x) in vecv.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        for (i, vecv) in bases[a.src].iter().enumerate() {
            let img = l.mats[ai].mul_vec(vecv, f);
            for (j, &x) in img.iter().enumerate() {
                m.set(k + i, j, x);
            }
        }
        if m.rank(f) > k {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::field_make;
    use crate::quiverrep::catalogue::IndecLabel;
    use crate::quiverrep::preset::preset_make;
    use std::sync::Arc;

    fn c1_ctx(q: u64) -> RepContext {
        RepContext::new(
            Arc::new(preset_make("C1").unwrap()),
            Arc::new(field_make(q, 1).unwrap()),
        )
    }

    #[test]
    fn jordan_socle_counts() {
        let cx = c1_ctx(3);
        let u1 = IndecLabel::Uniserial { top: 0, len: 1 };
        let u2 = IndecLabel::Uniserial { top: 0, len: 2 };
        let s = cx.realize_multiset(&vec![(u1, 1)]);

        // L = (1,1): every line in k^2 is stable under the zero map: q + 1
        let l = cx.realize_multiset(&vec![(u1, 2)]);
        let n = submodule_hall_oracle(&cx, &s, &s, &l, 1 << 20).unwrap();
        assert_eq!(n, BigUint::from(4u32));

        // L = (2): unique socle line
        let l = cx.realize_multiset(&vec![(u2, 1)]);
        let n = submodule_hall_oracle(&cx, &s, &s, &l, 1 << 20).unwrap();
        assert_eq!(n, BigUint::from(1u32));

        // Y = 0, X = L: exactly the zero submodule
        let zero = Rep::zero(cx.preset.clone(), cx.field.clone());
        let n = submodule_hall_oracle(&cx, &l, &zero, &l, 1 << 20).unwrap();
        assert_eq!(n, BigUint::from(1u32));
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        let f = field_make(3, 1).unwrap();
        assert_eq!(subspaces(&f, 2, 1).len(), 4);
        assert_eq!(subspaces(&f, 3, 1).len(), 13);
        assert_eq!(subspaces(&f, 3, 2).len(), 13);
        assert_eq!(subspaces(&f, 4, 2).len() as u128, gaussian_binomial(3, 4, 2));
    }
}
