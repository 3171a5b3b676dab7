//! Structural identity checks on explicit instances: split-sum and rotation
//! normalisations, summand cancellation, associativity, the cyclic shift
//! formula, cone self-extension bounds, and cross-field support stability.
//! Every check compares exact rationals; a mismatch carries full witness
//! data.

use num::bigint::BigUint;
use num::rational::BigRational;
use num::{BigInt, One, Zero};

use super::engine::{Engine, HallError};
use crate::derived::DObj;
use crate::objspec::print_objspec;
use crate::quiverrep::{IndecLabel, LabelMultiset, PriClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// hypothesis not satisfied or instance skipped for a stated reason
    Vacuous(String),
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub desc: String,
    pub outcome: Outcome,
}

/// Aggregated result of one named check over a list of instances.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub instances: Vec<InstanceReport>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            instances: Vec::new(),
        }
    }

    pub fn push(&mut self, desc: String, outcome: Outcome) {
        self.instances.push(InstanceReport { desc, outcome });
    }

    pub fn pass(&self) -> bool {
        self.instances
            .iter()
            .all(|i| !matches!(i.outcome, Outcome::Fail(_)))
    }

    pub fn passes(&self) -> usize {
        self.instances
            .iter()
            .filter(|i| i.outcome == Outcome::Pass)
            .count()
    }

    pub fn failures(&self) -> usize {
        self.instances
            .iter()
            .filter(|i| matches!(i.outcome, Outcome::Fail(_)))
            .count()
    }

    pub fn vacuous(&self) -> usize {
        self.instances
            .iter()
            .filter(|i| matches!(i.outcome, Outcome::Vacuous(_)))
            .count()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.instances.extend(other.instances);
    }
}

fn rat(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

fn qpow(q: u64, e: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(q).pow(e as u32))
}

/// Split-sum normalisation: `F^{X⊕Y}_{X,Y}` against the closed formula
/// `{Y,X}·|Aut(X⊕Y)| / (|Hom(X,Y)|·|Aut X|·|Aut Y|)`, and against
/// `{Y,X}·|Hom(Y,X)|` when the arguments share no summand.
pub fn check_split(
    engine: &Engine,
    x: &DObj,
    y: &DObj,
    budget: u64,
) -> Result<Outcome, HallError> {
    let l = x.direct_sum(y)?;
    let fxy = engine.derived_hall(x, y, &l, budget)?.value;
    let (byx, _) = engine.brace(y, x)?;
    let aut_sum = rat(&engine.aut_order(&l)?);
    let aut_x = rat(&engine.aut_order(x)?);
    let aut_y = rat(&engine.aut_order(y)?);
    let hom_xy = qpow(engine.q(), engine.dhom_dim(x, y)?);
    let formula = byx.clone() * aut_sum / (hom_xy * aut_x * aut_y);
    if fxy != formula {
        return Ok(Outcome::Fail(format!(
            "general split form: enumerated {fxy}, formula {formula}"
        )));
    }
    if !x.shares_summand_with(y) {
        let hom_yx = qpow(engine.q(), engine.dhom_dim(y, x)?);
        let disjoint = byx * hom_yx;
        if fxy != disjoint {
            return Ok(Outcome::Fail(format!(
                "disjoint split form: enumerated {fxy}, formula {disjoint}"
            )));
        }
    }
    Ok(Outcome::Pass)
}

/// Rotation normalisations: from `F^L_{X,Y}`, both rotated Hall numbers are
/// pinned by automorphism and brace factors.
pub fn check_rotation(
    engine: &Engine,
    x: &DObj,
    y: &DObj,
    l: &DObj,
    budget: u64,
) -> Result<Outcome, HallError> {
    let f = engine.derived_hall(x, y, l, budget)?.value;
    let xm1 = x.shifted(-1)?;
    let y1 = y.shifted(1)?;
    let f_rot1 = engine.derived_hall(l, &xm1, y, budget)?.value;
    let f_rot2 = engine.derived_hall(&y1, l, x, budget)?.value;
    let aut_x = rat(&engine.aut_order(x)?);
    let aut_y = rat(&engine.aut_order(y)?);
    let aut_l = rat(&engine.aut_order(l)?);
    let (bxx, _) = engine.brace(x, x)?;
    let (byy, _) = engine.brace(y, y)?;
    let (bll, _) = engine.brace(l, l)?;
    let want1 = aut_y * byy / (aut_l.clone() * bll.clone()) * f.clone();
    if f_rot1 != want1 {
        return Ok(Outcome::Fail(format!(
            "first rotation: got {f_rot1}, expected {want1} from F = {f}"
        )));
    }
    let want2 = aut_x * bxx / (aut_l * bll) * f.clone();
    if f_rot2 != want2 {
        return Ok(Outcome::Fail(format!(
            "second rotation: got {f_rot2}, expected {want2} from F = {f}"
        )));
    }
    Ok(Outcome::Pass)
}

/// Summand cancellation: when `Hom(N, L2) = 0` and `L2` splits off `M`,
/// `F^{L1⊕L2}_{M,N} = F^{L1}_{M\L2,N} · {N,L2}`; dually with the roles of
/// source and target exchanged.
pub fn check_reduction(
    engine: &Engine,
    m: &DObj,
    n: &DObj,
    l1: &DObj,
    l2: &DObj,
    budget: u64,
) -> Result<Outcome, HallError> {
    let l = l1.direct_sum(l2)?;
    let mut checked = 0;
    if engine.dhom_dim(n, l2)? == 0 {
        if let Some(m_red) = m.multiset_difference(l2) {
            let lhs = engine.derived_hall(m, n, &l, budget)?.value;
            let (bn2, _) = engine.brace(n, l2)?;
            let rhs = engine.derived_hall(&m_red, n, l1, budget)?.value * bn2;
            if lhs != rhs {
                return Ok(Outcome::Fail(format!(
                    "target-side cancellation: {lhs} vs {rhs}"
                )));
            }
            checked += 1;
        }
    }
    if engine.dhom_dim(l2, m)? == 0 {
        if let Some(n_red) = n.multiset_difference(l2) {
            let lhs = engine.derived_hall(m, n, &l, budget)?.value;
            let (b2m, _) = engine.brace(l2, m)?;
            let rhs = engine.derived_hall(m, &n_red, l1, budget)?.value * b2m;
            if lhs != rhs {
                return Ok(Outcome::Fail(format!(
                    "source-side cancellation: {lhs} vs {rhs}"
                )));
            }
            checked += 1;
        }
    }
    if checked == 0 {
        return Ok(Outcome::Vacuous(
            "no cancellation hypothesis applies".into(),
        ));
    }
    Ok(Outcome::Pass)
}

/// Associativity through middle-term sums:
/// `Σ_W F^W_{X,Y} F^L_{W,Z} = Σ_U F^L_{X,U} F^U_{Y,Z}`.
/// Returns the common value alongside the outcome.
pub fn check_associativity(
    engine: &Engine,
    x: &DObj,
    y: &DObj,
    z: &DObj,
    l: &DObj,
    budget: u64,
) -> Result<(Outcome, BigRational), HallError> {
    let mut left = BigRational::zero();
    for (w, f_xyw) in engine.hall_numbers_via_middle(x, y, budget)? {
        if f_xyw.is_zero() {
            continue;
        }
        let f_wzl = engine
            .hall_numbers_via_middle(&w, z, budget)?
            .remove(l)
            .unwrap_or_else(BigRational::zero);
        left += f_xyw * f_wzl;
    }
    let mut right = BigRational::zero();
    for (u, f_yzu) in engine.hall_numbers_via_middle(y, z, budget)? {
        if f_yzu.is_zero() {
            continue;
        }
        let f_xul = engine
            .hall_numbers_via_middle(x, &u, budget)?
            .remove(l)
            .unwrap_or_else(BigRational::zero);
        right += f_xul * f_yzu;
    }
    if left != right {
        return Ok((
            Outcome::Fail(format!("association sums differ: {left} vs {right}")),
            left,
        ));
    }
    Ok((Outcome::Pass, left))
}

/// Cone self-extension bound: for every morphism `h: Z[-1] -> X` with cone
/// `Y'`, `l(Y') <= l(X ⊕ Z)` with equality exactly when the triangle splits.
pub fn check_selfext(
    engine: &Engine,
    x: &DObj,
    z: &DObj,
    budget: u64,
) -> Result<Outcome, HallError> {
    let split = x.direct_sum(z)?;
    let bound = engine.l_stat(&split)?;
    let counts = engine.middle_terms(z, x, budget)?;
    for (cone, _) in counts {
        let l_val = engine.l_stat(&cone)?;
        if l_val > bound {
            return Ok(Outcome::Fail(format!(
                "l({}) = {l_val} exceeds l(split) = {bound}",
                print_objspec(&cone)
            )));
        }
        let is_split = cone == split;
        if (l_val == bound) != is_split {
            return Ok(Outcome::Fail(format!(
                "equality/split mismatch on {}: l = {l_val}, bound = {bound}, split = {is_split}",
                print_objspec(&cone)
            )));
        }
    }
    Ok(Outcome::Pass)
}

/// The shift formula on a cyclic preset, via the tube embedding:
/// `F^{U0 ⊕ L1[1]}_{X1[1], Y}` against
/// `q^{-<U0,L1>} |Aut L1||Aut U0| / (|Aut X1||Aut Y|) ·
///  Σ_{L'} |Aut L'| F^{X1}_{L',L1} F^{Y}_{U0,L'}`,
/// the sum running over catalogued module multisets of the forced dimension
/// vector.
pub fn check_cyclic_shift(
    engine: &Engine,
    x1: &LabelMultiset,
    y: &LabelMultiset,
    u0: &LabelMultiset,
    l1: &LabelMultiset,
    budget: u64,
) -> Result<(Outcome, BigRational), HallError> {
    let obj = |ms: &LabelMultiset, shift: i32| -> Result<DObj, HallError> {
        Ok(DObj::new(
            ms.iter().map(|&(l, m)| (l, shift, m)).collect(),
        )?)
    };
    let x = obj(x1, 1)?;
    let yb = obj(y, 0)?;
    let l = obj(u0, 0)?.direct_sum(&obj(l1, 1)?)?;
    let lhs = engine.derived_hall(&x, &yb, &l, budget)?.value;

    // <U0, L1> on realizations of the cyclic preset itself
    let pairing = engine.euler_on_realizations(u0, l1)?;
    let q = BigRational::from_integer(BigInt::from(engine.q()));
    let qpair = if pairing >= 0 {
        BigRational::one() / num::pow::pow(q.clone(), pairing as usize)
    } else {
        num::pow::pow(q.clone(), (-pairing) as usize)
    };
    let aut = |ms: &LabelMultiset| -> Result<BigRational, HallError> {
        Ok(rat(&engine.aut_order(&obj(ms, 0)?)?))
    };
    let prefactor = qpair * aut(l1)? * aut(u0)? / (aut(x1)? * aut(y)?);

    // forced dimension vector of L'
    let dim_y = engine.cx.multiset_dim_vector(y);
    let dim_u0 = engine.cx.multiset_dim_vector(u0);
    let mut want = Vec::with_capacity(dim_y.len());
    let mut possible = true;
    for (a, b) in dim_y.iter().zip(dim_u0.iter()) {
        if a < b {
            possible = false;
            break;
        }
        want.push(a - b);
    }
    let mut rhs_sum = BigRational::zero();
    if possible {
        for lp in module_multisets_with_dims(engine, &want) {
            let lp_obj = obj(&lp, 0)?;
            let f_x1 = engine
                .hall_numbers_via_middle(&lp_obj, &obj(l1, 0)?, budget)?
                .remove(&obj(x1, 0)?)
                .unwrap_or_else(BigRational::zero);
            if f_x1.is_zero() {
                continue;
            }
            let f_y = engine
                .hall_numbers_via_middle(&obj(u0, 0)?, &lp_obj, budget)?
                .remove(&obj(y, 0)?)
                .unwrap_or_else(BigRational::zero);
            if f_y.is_zero() {
                continue;
            }
            rhs_sum += aut(&lp)? * f_x1 * f_y;
        }
    }
    let rhs = prefactor * rhs_sum;
    if lhs != rhs {
        return Ok((
            Outcome::Fail(format!("shift formula: lhs {lhs}, rhs {rhs}")),
            lhs,
        ));
    }
    Ok((Outcome::Pass, lhs))
}

/// All catalogued module multisets over the caller preset with the given
/// dimension vector.
fn module_multisets_with_dims(engine: &Engine, want: &[usize]) -> Vec<LabelMultiset> {
    let labels: Vec<IndecLabel> = engine.cx.cat.labels().to_vec();
    let mut out = Vec::new();
    let mut current: LabelMultiset = Vec::new();
    fn recurse(
        engine: &Engine,
        labels: &[IndecLabel],
        idx: usize,
        remaining: &mut Vec<usize>,
        current: &mut LabelMultiset,
        out: &mut Vec<LabelMultiset>,
    ) {
        if remaining.iter().all(|&x| x == 0) {
            out.push(current.clone());
            return;
        }
        if idx == labels.len() {
            return;
        }
        let dims = engine.cx.cat.dim_vector(&labels[idx]).to_vec();
        // max copies of this label that fit
        let mut max_copies = usize::MAX;
        for (d, r) in dims.iter().zip(remaining.iter()) {
            if *d > 0 {
                max_copies = max_copies.min(r / d);
            }
        }
        if max_copies == usize::MAX {
            max_copies = 0;
        }
        for copies in (0..=max_copies).rev() {
            if copies > 0 {
                for (d, r) in dims.iter().zip(remaining.iter_mut()) {
                    *r -= d * copies;
                }
                current.push((labels[idx], copies));
            }
            recurse(engine, labels, idx + 1, remaining, current, out);
            if copies > 0 {
                current.pop();
                for (d, r) in dims.iter().zip(remaining.iter_mut()) {
                    *r += d * copies;
                }
            }
        }
    }
    let mut remaining = want.to_vec();
    recurse(engine, &labels, 0, &mut remaining, &mut current, &mut out);
    out.sort();
    out.dedup();
    out
}

/// The support set `S = {[U] : F^U_{X2,Y} ≠ 0 and F^L_{X1,U} ≠ 0}` as
/// canonical objects on the caller preset.
pub fn support_set(
    engine: &Engine,
    x1: &DObj,
    x2: &DObj,
    y: &DObj,
    l: &DObj,
    budget: u64,
) -> Result<Vec<DObj>, HallError> {
    let mut out = Vec::new();
    for (u, count) in engine.middle_terms(x2, y, budget)? {
        if count.is_zero() {
            continue;
        }
        let through = engine.middle_terms(x1, &u, budget)?;
        if through.get(l).map(|c| !c.is_zero()).unwrap_or(false) {
            out.push(u);
        }
    }
    Ok(out)
}

/// Syntactic test for the support-stability hypotheses: either `X1` is a
/// shift-0 object with preprojective/regular summands and the shift-0 part
/// of `X2` is regular/preinjective, or the dual condition at the top shift.
/// Representation-finite type A counts as satisfied.
pub fn support_condition_holds(engine: &Engine, x1: &DObj, x2: &DObj) -> bool {
    let classes = |d: &DObj, shift: i32| -> Vec<PriClass> {
        d.part_at(shift)
            .iter()
            .map(|(l, _)| l.pri_class())
            .collect()
    };
    let dynkin = engine
        .cx
        .cat
        .labels()
        .iter()
        .all(|l| l.pri_class() == PriClass::Dynkin);
    if dynkin {
        return true;
    }
    // condition (i)
    let x1_module_only = x1.summands().all(|s| s.shift == 0);
    let cond_i = x1_module_only
        && classes(x1, 0)
            .iter()
            .all(|c| matches!(c, PriClass::Preprojective | PriClass::Regular))
        && classes(x2, 0)
            .iter()
            .all(|c| matches!(c, PriClass::Regular | PriClass::Preinjective));
    if cond_i {
        return true;
    }
    // condition (ii) at the common top shift
    let top = match (x1.shift_range(), x2.shift_range()) {
        (Some((_, a)), Some((_, b))) => a.max(b),
        _ => return false,
    };
    let x2_top_only = x2.summands().all(|s| s.shift == top);
    x2_top_only
        && classes(x2, top)
            .iter()
            .all(|c| matches!(c, PriClass::Regular | PriClass::Preinjective))
        && classes(x1, top)
            .iter()
            .all(|c| matches!(c, PriClass::Preprojective | PriClass::Regular))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objspec::parse_objspec;
    use crate::quiverrep::preset_make;
    use std::sync::Arc;

    fn engine(spec: &str, q: u64) -> Engine {
        Engine::new(Arc::new(preset_make(spec).unwrap()), q, 1).unwrap()
    }

    fn obj(e: &Engine, s: &str) -> DObj {
        parse_objspec(e.preset(), s).unwrap()
    }

    #[test]
    fn split_examples() {
        let e = engine("A2:1>2", 2);
        let x = obj(&e, "I[1,1]@0");
        let y = obj(&e, "I[2,2]@0");
        assert_eq!(check_split(&e, &x, &y, 1 << 20).unwrap(), Outcome::Pass);

        // X = Y = S_1 at q = 3: F = |GL_2|/(q (q-1)^2) = 48/12 = 4
        let e3 = engine("A2:1>2", 3);
        let s1 = obj(&e3, "I[1,1]@0");
        let sum = obj(&e3, "2*I[1,1]@0");
        let f = e3.derived_hall(&s1, &s1, &sum, 1 << 20).unwrap().value;
        assert_eq!(f, BigRational::from_integer(BigInt::from(4)));
        assert_eq!(check_split(&e3, &s1, &s1, 1 << 20).unwrap(), Outcome::Pass);

        // X = 0
        assert_eq!(
            check_split(&e3, &DObj::zero(), &s1, 1 << 20).unwrap(),
            Outcome::Pass
        );
    }

    #[test]
    fn rotation_examples() {
        let e = engine("A2:1>2", 2);
        assert_eq!(
            check_rotation(
                &e,
                &obj(&e, "I[1,1]@0"),
                &obj(&e, "I[2,2]@0"),
                &obj(&e, "I[1,2]@0"),
                1 << 20
            )
            .unwrap(),
            Outcome::Pass
        );
        // the shifted-simple chain at q = 3
        let e3 = engine("A2:1>2", 3);
        assert_eq!(
            check_rotation(
                &e3,
                &obj(&e3, "I[1,1]@1"),
                &obj(&e3, "I[1,1]@0"),
                &DObj::zero(),
                1 << 20
            )
            .unwrap(),
            Outcome::Pass
        );
    }

    #[test]
    fn reduction_examples() {
        let e = engine("A2:1>2", 2);
        // Hom(S_2, S_2) ≠ 0 and Hom(S_2, M) ≠ 0 both fail: vacuous
        let m = obj(&e, "I[1,1]@0 + I[2,2]@0");
        let n = obj(&e, "I[2,2]@0");
        let out = check_reduction(
            &e,
            &m,
            &n,
            &obj(&e, "I[1,2]@0"),
            &obj(&e, "I[2,2]@0"),
            1 << 20,
        )
        .unwrap();
        assert!(matches!(out, Outcome::Vacuous(_)));

        // L2 = 0 applies trivially on both sides
        let out = check_reduction(&e, &m, &n, &obj(&e, "I[1,2]@0"), &DObj::zero(), 1 << 20)
            .unwrap();
        assert!(matches!(out, Outcome::Pass | Outcome::Vacuous(_)));

        // a genuine cancellation: L2 = S_1[-1] has Hom(N, L2) = 0
        let l2 = obj(&e, "I[1,1]@-1");
        let m2 = m.direct_sum(&l2).unwrap();
        let out = check_reduction(&e, &m2, &n, &m, &l2, 1 << 20).unwrap();
        assert_eq!(out, Outcome::Pass);
    }

    #[test]
    fn associativity_examples() {
        let e = engine("A2:1>2", 2);
        let s1 = obj(&e, "I[1,1]@0");
        let s2 = obj(&e, "I[2,2]@0");
        // Z = 0 collapses both sums to F^L_{X,Y}
        let l = obj(&e, "I[1,1]@0 + I[2,2]@0");
        let (out, _) = check_associativity(&e, &s1, &s2, &DObj::zero(), &l, 1 << 20).unwrap();
        assert_eq!(out, Outcome::Pass);
        // a nontrivial quadruple
        let p1s2 = obj(&e, "I[1,2]@0 + I[2,2]@0");
        let (out, _) = check_associativity(&e, &s1, &s2, &s2, &p1s2, 1 << 20).unwrap();
        assert_eq!(out, Outcome::Pass);
        // shifted: braces enter
        let e3 = engine("A2:1>2", 3);
        let s1u = obj(&e3, "I[1,1]@1");
        let s1b = obj(&e3, "I[1,1]@0");
        let (out, _) =
            check_associativity(&e3, &s1u, &s1b, &s1b, &s1b, 1 << 20).unwrap();
        assert_eq!(out, Outcome::Pass);
    }

    #[test]
    fn selfext_bound_on_extensions() {
        let e = engine("A2:1>2", 3);
        let s1 = obj(&e, "I[1,1]@0");
        let s2 = obj(&e, "I[2,2]@0");
        assert_eq!(check_selfext(&e, &s2, &s1, 1 << 20).unwrap(), Outcome::Pass);
        assert_eq!(check_selfext(&e, &s1, &s2, 1 << 20).unwrap(), Outcome::Pass);
        let e1 = engine("C1", 2);
        let j1 = obj(&e1, "C(1,1)@0");
        let j2 = obj(&e1, "C(1,2)@0");
        assert_eq!(check_selfext(&e1, &j1, &j2, 1 << 20).unwrap(), Outcome::Pass);
    }

    #[test]
    fn cyclic_shift_degenerate_and_active() {
        let e = engine("C1", 2);
        let u = |len: usize| vec![(IndecLabel::Uniserial { top: 0, len }, 1)];
        // degenerate: dimension bookkeeping forces both sides to zero
        let (out, val) =
            check_cyclic_shift(&e, &u(1), &u(2), &u(1), &u(1), 1 << 20).unwrap();
        assert_eq!(out, Outcome::Pass);
        assert!(val.is_zero());
        // active: all four length one, both sides equal one
        let (out, val) =
            check_cyclic_shift(&e, &u(1), &u(1), &u(1), &u(1), 1 << 20).unwrap();
        assert_eq!(out, Outcome::Pass);
        assert!(val.is_one());
    }

    #[test]
    fn support_sets_match_across_fields() {
        let e2 = engine("K", 2);
        let e3 = engine("K", 3);
        let x1 = "P0@0";
        let x2 = "R0(1)@0";
        let y = "P0@0";
        let l = "P1@0";
        for (ea, eb) in [(&e2, &e3)] {
            let s2 = support_set(
                ea,
                &obj(ea, x1),
                &obj(ea, x2),
                &obj(ea, y),
                &obj(ea, l),
                1 << 20,
            )
            .unwrap();
            let s3 = support_set(
                eb,
                &obj(eb, x1),
                &obj(eb, x2),
                &obj(eb, y),
                &obj(eb, l),
                1 << 20,
            )
            .unwrap();
            let p2: Vec<String> = s2.iter().map(print_objspec).collect();
            let p3: Vec<String> = s3.iter().map(print_objspec).collect();
            assert_eq!(p2, p3);
        }
        assert!(support_condition_holds(
            &e2,
            &obj(&e2, x1),
            &obj(&e2, x2)
        ));
    }
}
