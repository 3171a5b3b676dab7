//! Reconstruction of the rational function in the field cardinality behind a
//! family of exact Hall-number samples, and validation on held-out fields.
//!
//! The fit solves the homogeneous system `value(q)·den(q) - num(q) = 0` over
//! exact rationals, scanning candidate degree pairs by ascending total degree
//! (denominator degree breaking ties), and returns the first solution in
//! canonical coprime integer form whose denominator avoids every sample
//! point.  Scanning from below makes the result the minimal interpolant, so
//! refitting with a larger bound reproduces it unchanged.

use std::fmt;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FitError {
    #[error("no rational function of degree at most {degbound} fits the samples; residual witness at q={witness_q}")]
    NoFit { degbound: usize, witness_q: u64 },
    #[error("every minimal fit has a denominator vanishing at sample q={0}")]
    SpuriousPole(u64),
    #[error("need at least two sample points, got {0}")]
    TooFewPoints(usize),
    #[error("holdout point q={0} overlaps the fit set")]
    HoldoutOverlap(u64),
}

/// One exact sample: the Hall number at field cardinality `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub q: u64,
    pub value: BigRational,
}

/// A rational function in one variable with integer coefficients, in
/// canonical form: numerator and denominator coprime in Z[T], contents
/// coprime, denominator nonzero with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    /// ascending degree; empty means the zero numerator
    pub num: Vec<BigInt>,
    /// ascending degree; never empty
    pub den: Vec<BigInt>,
}

impl RatFunc {
    pub fn constant(c: BigInt) -> Self {
        let num = if c.is_zero() { vec![] } else { vec![c] };
        RatFunc {
            num,
            den: vec![BigInt::one()],
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1 && self.den[0].is_one()
    }

    pub fn num_degree(&self) -> Option<usize> {
        if self.num.is_empty() {
            None
        } else {
            Some(self.num.len() - 1)
        }
    }

    pub fn den_degree(&self) -> usize {
        self.den.len() - 1
    }

    /// Is the numerator monic of the given degree (denominator trivial)?
    pub fn is_monic_polynomial_of_degree(&self, d: usize) -> bool {
        self.is_polynomial()
            && self.num_degree() == Some(d)
            && self.num.last().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn eval(&self, q: u64) -> Option<BigRational> {
        let t = BigRational::from_integer(BigInt::from(q));
        let num = eval_poly_q(&self.num, &t);
        let den = eval_poly_q(&self.den, &t);
        if den.is_zero() {
            None
        } else {
            Some(num / den)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", poly_string(&self.num), poly_string(&self.den))
    }
}

/// Render an integer polynomial in `T`, descending degree, ASCII signs.
pub fn poly_string(coeffs: &[BigInt]) -> String {
    if coeffs.iter().all(|c| c.is_zero()) {
        return "0".to_string();
    }
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let lead = out.is_empty();
        if lead {
            if c.sign() == Sign::Minus {
                out.push('-');
            }
        } else if c.sign() == Sign::Minus {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let show_coeff = deg == 0 || !mag.is_one();
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if deg >= 1 {
            if show_coeff {
                out.push('*');
            }
            out.push('T');
            if deg > 1 {
                out.push_str(&format!("^{deg}"));
            }
        }
    }
    out
}

fn eval_poly_q(coeffs: &[BigInt], t: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * t + BigRational::from_integer(c.clone());
    }
    acc
}

/// Exact kernel of a rational matrix (row-major), reduced echelon basis.
fn rational_kernel(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let nrows = m.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let mut pr = None;
        for i in r..nrows {
            if !m[i][c].is_zero() {
                pr = Some(i);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let sub = factor.clone() * m[r][j].clone();
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Clear denominators and divide by the common content.
fn to_primitive_ints(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.iter().map(|x| x / &g).collect()
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let deg = |p: &[BigRational]| p.iter().rposition(|c| !c.is_zero());
    let Some(db) = deg(b) else {
        panic!("division by the zero polynomial")
    };
    let mut rem: Vec<BigRational> = a.to_vec();
    let mut quo = vec![BigRational::zero(); a.len().max(1)];
    while let Some(da) = deg(&rem) {
        if da < db {
            break;
        }
        let c = rem[da].clone() / b[db].clone();
        let shift = da - db;
        quo[shift] = c.clone();
        for i in 0..=db {
            let sub = c.clone() * b[i].clone();
            rem[shift + i] -= sub;
        }
    }
    (quo, rem)
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let is_zero = |p: &[BigRational]| p.iter().all(|c| c.is_zero());
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !is_zero(&b) {
        let (_, r) = poly_divmod(&a, &b);
        a = b;
        b = r;
    }
    // normalize monic
    if let Some(d) = a.iter().rposition(|c| !c.is_zero()) {
        let lead = a[d].clone();
        for c in a.iter_mut() {
            *c = c.clone() / lead.clone();
        }
        a.truncate(d + 1);
    }
    a
}

/// Reduce a (num, den) pair of rational-coefficient polynomials to the
/// canonical coprime integer form.
fn canonicalize(num: &[BigRational], den: &[BigRational]) -> RatFunc {
    let g = poly_gcd(num, den);
    let (num_red, r1) = poly_divmod(num, &g);
    let (den_red, r2) = poly_divmod(den, &g);
    debug_assert!(r1.iter().all(|c| c.is_zero()));
    debug_assert!(r2.iter().all(|c| c.is_zero()));
    // joint denominator clearing: scale both by one rational
    let mut all: Vec<BigRational> = num_red.clone();
    all.extend(den_red.clone());
    let prim = to_primitive_ints(&all);
    let mut num_i: Vec<BigInt> = prim[..num_red.len()].to_vec();
    let mut den_i: Vec<BigInt> = prim[num_red.len()..].to_vec();
    while num_i.last().map(|c| c.is_zero()).unwrap_or(false) {
        num_i.pop();
    }
    while den_i.last().map(|c| c.is_zero()).unwrap_or(false) {
        den_i.pop();
    }
    if den_i.is_empty() {
        panic!("zero denominator after reduction");
    }
    if den_i.last().unwrap().sign() == Sign::Minus {
        for c in num_i.iter_mut() {
            *c = -c.clone();
        }
        for c in den_i.iter_mut() {
            *c = -c.clone();
        }
    }
    RatFunc {
        num: num_i,
        den: den_i,
    }
}

/// Find the minimal rational function through all sample points, with
/// numerator and denominator degrees bounded by `degbound`.
pub fn fit_rational(points: &[SamplePoint], degbound: usize) -> Result<RatFunc, FitError> {
    if points.len() < 2 {
        return Err(FitError::TooFewPoints(points.len()));
    }
    let mut seen_pole: Option<u64> = None;
    for total in 0..=(2 * degbound) {
        for dden in 0..=total.min(degbound) {
            let dnum = total - dden;
            if dnum > degbound {
                continue;
            }
            // unknowns: num coeffs (dnum+1) then den coeffs (dden+1)
            let cols = dnum + 1 + dden + 1;
            let rows: Vec<Vec<BigRational>> = points
                .iter()
                .map(|p| {
                    let t = BigRational::from_integer(BigInt::from(p.q));
                    let mut row = Vec::with_capacity(cols);
                    let mut pw = BigRational::one();
                    for _ in 0..=dnum {
                        row.push(-pw.clone());
                        pw *= t.clone();
                    }
                    let mut pw = BigRational::one();
                    for _ in 0..=dden {
                        row.push(p.value.clone() * pw.clone());
                        pw *= t.clone();
                    }
                    row
                })
                .collect();
            let kernel = rational_kernel(&rows, cols);
            for sol in &kernel {
                let num = &sol[..=dnum];
                let den = &sol[dnum + 1..];
                if den.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let cand = canonicalize(num, den);
                // denominator must avoid all samples and the fit must verify
                let mut ok = true;
                for p in points {
                    match cand.eval(p.q) {
                        None => {
                            seen_pole = Some(p.q);
                            ok = false;
                            break;
                        }
                        Some(v) if v != p.value => {
                            ok = false;
                            break;
                        }
                        _ => {}
                    }
                }
                if ok {
                    return Ok(cand);
                }
            }
        }
    }
    if let Some(q) = seen_pole {
        return Err(FitError::SpuriousPole(q));
    }
    Err(FitError::NoFit {
        degbound,
        witness_q: points.last().map(|p| p.q).unwrap_or(0),
    })
}

/// Exact validation on held-out samples; any mismatch is a hard failure.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checked: Vec<(u64, bool)>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checked.iter().all(|(_, ok)| *ok)
    }
}

pub fn validate(
    f: &RatFunc,
    fit_points: &[SamplePoint],
    holdout: &[SamplePoint],
) -> Result<ValidationReport, FitError> {
    let mut checked = Vec::new();
    for h in holdout {
        if fit_points.iter().any(|p| p.q == h.q) {
            return Err(FitError::HoldoutOverlap(h.q));
        }
        let ok = f.eval(h.q).map(|v| v == h.value).unwrap_or(false);
        checked.push((h.q, ok));
    }
    Ok(ValidationReport { checked })
}

/// One field either yields an exact sample or is skipped with its cost.
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub samples: Vec<SamplePoint>,
    /// (q, reported cost) for fields whose enumeration exceeded the budget
    pub skipped: Vec<(u64, u64)>,
}

/// Evaluate a per-field computation across fields, recording budget skips
/// instead of failing.  `eval` returns `Ok(value)`, or `Err(cost)` when the
/// field had to be skipped.
pub fn sweep(
    fields: &[(u64, u32)],
    mut eval: impl FnMut(u64, u32) -> Result<BigRational, u64>,
) -> SweepOutcome {
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for &(p, r) in fields {
        let q = p.pow(r);
        match eval(p, r) {
            Ok(value) => samples.push(SamplePoint { q, value }),
            Err(cost) => skipped.push((q, cost)),
        }
    }
    SweepOutcome { samples, skipped }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(q: u64, num: i64, den: i64) -> SamplePoint {
        SamplePoint {
            q,
            value: BigRational::new(BigInt::from(num), BigInt::from(den)),
        }
    }

    #[test]
    fn fits_reciprocal_of_t_minus_one() {
        let pts = vec![pt(2, 1, 1), pt(3, 1, 2), pt(5, 1, 4), pt(7, 1, 6), pt(11, 1, 10)];
        let f = fit_rational(&pts, 2).unwrap();
        assert_eq!(f.num, vec![BigInt::one()]);
        assert_eq!(f.den, vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(f.to_string(), "(1)/(T - 1)");
        // stable under a larger bound
        assert_eq!(fit_rational(&pts, 3).unwrap(), f);
        // validates on a held-out field
        let rep = validate(&f, &pts, &[pt(13, 1, 12)]).unwrap();
        assert!(rep.pass());
    }

    #[test]
    fn fits_constants_and_polynomials() {
        let ones = vec![pt(2, 1, 1), pt(3, 1, 1), pt(5, 1, 1), pt(7, 1, 1), pt(11, 1, 1)];
        let f = fit_rational(&ones, 8).unwrap();
        assert_eq!(f, RatFunc::constant(BigInt::one()));
        assert_eq!(f.to_string(), "(1)/(1)");

        let tp1 = vec![pt(2, 3, 1), pt(3, 4, 1), pt(5, 6, 1), pt(7, 8, 1), pt(11, 12, 1)];
        let f = fit_rational(&tp1, 8).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(poly_string(&f.num), "T + 1");
        let rep = validate(&f, &tp1, &[pt(13, 14, 1)]).unwrap();
        assert!(rep.pass());
    }

    #[test]
    fn monic_detection_and_eval() {
        // T^2 - T = |Aut| of a length-2 uniserial
        let pts = vec![pt(2, 2, 1), pt(3, 6, 1), pt(4, 12, 1), pt(5, 20, 1), pt(7, 42, 1)];
        let f = fit_rational(&pts, 4).unwrap();
        assert!(f.is_monic_polynomial_of_degree(2));
        assert_eq!(
            f.eval(9).unwrap(),
            BigRational::from_integer(BigInt::from(72))
        );
    }

    #[test]
    fn no_fit_is_reported() {
        // factorial growth is not rational of low degree
        let pts = vec![pt(2, 2, 1), pt(3, 6, 1), pt(5, 120, 1), pt(7, 5040, 1), pt(11, 39916800, 1)];
        let e = fit_rational(&pts, 1).unwrap_err();
        assert!(matches!(e, FitError::NoFit { degbound: 1, .. }));
    }

    #[test]
    fn holdout_overlap_rejected() {
        let pts = vec![pt(2, 1, 1), pt(3, 1, 1)];
        let f = fit_rational(&pts, 1).unwrap();
        assert_eq!(
            validate(&f, &pts, &[pt(3, 1, 1)]).unwrap_err(),
            FitError::HoldoutOverlap(3)
        );
    }

    #[test]
    fn poly_rendering() {
        assert_eq!(poly_string(&[BigInt::from(-1), BigInt::from(1)]), "T - 1");
        assert_eq!(
            poly_string(&[BigInt::from(2), BigInt::from(0), BigInt::from(3)]),
            "3*T^2 + 2"
        );
        assert_eq!(poly_string(&[]), "0");
        assert_eq!(poly_string(&[BigInt::from(1)]), "1");
    }
}
