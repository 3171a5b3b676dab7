//! Objects of the bounded derived category as canonically sorted multisets of
//! (indecomposable label, shift), plus the Hom-dimension and brace
//! bookkeeping that only needs the pairwise Hom/Ext table.

use num::rational::BigRational;
use num::traits::Pow;
use num::{BigInt, One};
use thiserror::Error;

use crate::quiverrep::{IndecLabel, LabelMultiset, RepContext};

/// Shifts are bounded so printing, hashing and brace loops stay finite.
pub const MAX_SHIFT: i32 = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DerivedError {
    #[error("shift {0} outside the supported range [-{MAX_SHIFT}, {MAX_SHIFT}]")]
    ShiftOutOfRange(i32),
    #[error("derived computations are reached through the tube embedding on cyclic presets")]
    CyclicPresetDirectUse,
    #[error("enumeration of {0} morphisms exceeds the budget {1}")]
    BudgetExceeded(u64, u64),
}

/// One isotypic piece: `mult` copies of `label[shift]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShiftSummand {
    pub shift: i32,
    pub label: IndecLabel,
    pub mult: usize,
}

/// A derived-category object in canonical form: summands sorted by
/// (shift, label), zero multiplicities dropped; the zero object is empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DObj {
    summands: Vec<(i32, IndecLabel, usize)>,
}

impl DObj {
    pub fn zero() -> Self {
        DObj { summands: Vec::new() }
    }

    pub fn new(parts: Vec<(IndecLabel, i32, usize)>) -> Result<Self, DerivedError> {
        let mut summands: Vec<(i32, IndecLabel, usize)> = Vec::new();
        for (label, shift, mult) in parts {
            if mult == 0 {
                continue;
            }
            if shift.abs() > MAX_SHIFT {
                return Err(DerivedError::ShiftOutOfRange(shift));
            }
            if let Some(s) = summands
                .iter_mut()
                .find(|(sh, l, _)| *sh == shift && *l == label)
            {
                s.2 += mult;
            } else {
                summands.push((shift, label, mult));
            }
        }
        summands.sort();
        Ok(DObj { summands })
    }

    pub fn of_module(label: IndecLabel) -> Self {
        DObj {
            summands: vec![(0, label, 1)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> impl Iterator<Item = ShiftSummand> + '_ {
        self.summands.iter().map(|&(shift, label, mult)| ShiftSummand {
            shift,
            label,
            mult,
        })
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn summand_count(&self) -> usize {
        self.summands.iter().map(|(_, _, m)| m).sum()
    }

    pub fn shift_range(&self) -> Option<(i32, i32)> {
        let lo = self.summands.iter().map(|s| s.0).min()?;
        let hi = self.summands.iter().map(|s| s.0).max()?;
        Some((lo, hi))
    }

    /// The multiset concentrated at one shift.
    pub fn part_at(&self, shift: i32) -> LabelMultiset {
        self.summands
            .iter()
            .filter(|(s, _, _)| *s == shift)
            .map(|&(_, l, m)| (l, m))
            .collect()
    }

    pub fn shifted(&self, k: i32) -> Result<Self, DerivedError> {
        DObj::new(
            self.summands
                .iter()
                .map(|&(s, l, m)| (l, s + k, m))
                .collect(),
        )
    }

    pub fn direct_sum(&self, other: &DObj) -> Result<Self, DerivedError> {
        let mut parts: Vec<(IndecLabel, i32, usize)> = self
            .summands
            .iter()
            .map(|&(s, l, m)| (l, s, m))
            .collect();
        parts.extend(other.summands.iter().map(|&(s, l, m)| (l, s, m)));
        DObj::new(parts)
    }

    /// Remove `other` from `self` as a sub-multiset; `None` if not contained.
    pub fn multiset_difference(&self, other: &DObj) -> Option<Self> {
        let mut parts: Vec<(i32, IndecLabel, usize)> = self.summands.clone();
        for &(s, l, m) in &other.summands {
            let slot = parts.iter_mut().find(|(ss, ll, _)| *ss == s && *ll == l)?;
            if slot.2 < m {
                return None;
            }
            slot.2 -= m;
        }
        parts.retain(|(_, _, m)| *m > 0);
        Some(DObj { summands: parts })
    }

    /// Do the two objects share a nonzero direct summand?
    pub fn shares_summand_with(&self, other: &DObj) -> bool {
        self.summands.iter().any(|(s, l, _)| {
            other
                .summands
                .iter()
                .any(|(s2, l2, _)| s == s2 && l == l2)
        })
    }

    /// dim Hom into a shifted copy of itself one step up; the induction
    /// statistic `l` paired with the summand count `d`.
    pub fn l_stat(&self, cx: &RepContext) -> usize {
        let shifted = self.shifted(1).expect("stat shift stays in range");
        dhom_dim_pair(cx, self, &shifted)
    }

    pub fn d_stat(&self) -> usize {
        self.summand_count()
    }

    /// Total dimension of the underlying complex (sum over all summands).
    pub fn total_dim(&self, cx: &RepContext) -> usize {
        self.summands
            .iter()
            .map(|(_, l, m)| cx.cat.total_dim(l) * m)
            .sum()
    }
}

/// dim Hom_{D^b}(X[k], Y): summand pairs contribute their module Hom when the
/// shifts agree and their Ext^1 when the target shift is one higher.
pub fn dhom_dim_shifted(cx: &RepContext, x: &DObj, k: i32, y: &DObj) -> usize {
    let mut acc = 0usize;
    for sx in x.summands() {
        let xs = sx.shift + k;
        for sy in y.summands() {
            if sy.shift == xs {
                acc += sx.mult * sy.mult * cx.pair_dims(&sx.label, &sy.label).0;
            } else if sy.shift == xs + 1 {
                acc += sx.mult * sy.mult * cx.pair_dims(&sx.label, &sy.label).1;
            }
        }
    }
    acc
}

/// dim Hom_{D^b}(X, Y).
pub fn dhom_dim_pair(cx: &RepContext, x: &DObj, y: &DObj) -> usize {
    dhom_dim_shifted(cx, x, 0, y)
}

/// The brace product: alternating product over i > 0 of |Hom(X[i], Y)|^(±1).
/// Always an integer power of q; the exponent is returned alongside the
/// exact rational so suites can assert the power-of-q property on the value
/// actually used.
pub fn brace(cx: &RepContext, x: &DObj, y: &DObj) -> (BigRational, i64) {
    let mut exponent: i64 = 0;
    if let (Some((xlo, _)), Some((_, yhi))) = (x.shift_range(), y.shift_range()) {
        // Hom(X[i], Y) vanishes once xlo + i > yhi + 1
        let imax = (yhi + 1 - xlo).max(0);
        for i in 1..=imax {
            let d = dhom_dim_shifted(cx, x, i, y) as i64;
            exponent += if i % 2 == 1 { -d } else { d };
        }
    }
    let q = BigInt::from(cx.q());
    let value = if exponent >= 0 {
        BigRational::from_integer(q.pow(exponent as u64))
    } else {
        BigRational::new(BigInt::one(), q.pow((-exponent) as u64))
    };
    (value, exponent)
}
