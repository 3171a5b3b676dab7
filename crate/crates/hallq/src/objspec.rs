//! Textual grammar for derived-category objects:
//! `objspec := term ('+' term)*`, `term := [mult '*'] label '@' shift`,
//! with `0` for the zero object and whitespace ignored.
//!
//! Labels are preset-specific, 1-based where they name vertices:
//! intervals `I[i,j]` on type A, uniserials `C(t,l)` on cyclic quivers,
//! `P<n>` / `I<n>` / `R0(l)` / `R1(l)` / `Rinf(l)` on the Kronecker quiver,
//! and `P<v>(m)` / `I<v>(m)` / `T2a(l)` / `T2b(l)` / `T1(l)` on the
//! three-vertex tame quiver.

use std::fmt::Write as _;

use thiserror::Error;

use crate::derived::DObj;
use crate::quiverrep::{IndecLabel, PresetKind, QuiverPreset, RegPoint, TubePos};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObjSpecError {
    #[error("cannot parse object spec `{0}`: {1}")]
    Parse(String, String),
}

fn err(spec: &str, why: impl Into<String>) -> ObjSpecError {
    ObjSpecError::Parse(spec.into(), why.into())
}

/// Parse one label against a preset.
pub fn parse_label(preset: &QuiverPreset, text: &str) -> Result<IndecLabel, ObjSpecError> {
    let t = text.trim();
    let bad = || err(t, "bad label for this quiver");
    match &preset.kind {
        PresetKind::TypeA { .. } => {
            let inner = t
                .strip_prefix("I[")
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(bad)?;
            let (i, j) = inner.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            if i < 1 || j < i || j > preset.vertices {
                return Err(bad());
            }
            Ok(IndecLabel::Interval { lo: i - 1, hi: j - 1 })
        }
        PresetKind::Cyclic { m } => {
            let inner = t
                .strip_prefix("C(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(bad)?;
            let (tv, l) = inner.split_once(',').ok_or_else(bad)?;
            let tv: usize = tv.trim().parse().map_err(|_| bad())?;
            let l: usize = l.trim().parse().map_err(|_| bad())?;
            if tv < 1 || tv > *m || l < 1 {
                return Err(bad());
            }
            Ok(IndecLabel::Uniserial { top: tv - 1, len: l })
        }
        PresetKind::Kronecker => {
            if let Some(rest) = t.strip_prefix("Rinf(") {
                let l: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                return Ok(IndecLabel::KronReg { pt: RegPoint::Inf, len: l });
            }
            if let Some(rest) = t.strip_prefix("R0(") {
                let l: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                return Ok(IndecLabel::KronReg { pt: RegPoint::Zero, len: l });
            }
            if let Some(rest) = t.strip_prefix("R1(") {
                let l: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                return Ok(IndecLabel::KronReg { pt: RegPoint::One, len: l });
            }
            if let Some(rest) = t.strip_prefix('P') {
                let n: usize = rest.parse().map_err(|_| bad())?;
                return Ok(IndecLabel::KronPre { n });
            }
            if let Some(rest) = t.strip_prefix('I') {
                let n: usize = rest.parse().map_err(|_| bad())?;
                return Ok(IndecLabel::KronInj { n });
            }
            Err(bad())
        }
        PresetKind::TildeA21 => {
            if let Some(rest) = t.strip_prefix("T2a(") {
                let l: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                return Ok(IndecLabel::TameTube2 { socle: TubePos::A, len: l });
            }
            if let Some(rest) = t.strip_prefix("T2b(") {
                let l: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                return Ok(IndecLabel::TameTube2 { socle: TubePos::B, len: l });
            }
            if let Some(rest) = t.strip_prefix("T1(") {
                let l: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                return Ok(IndecLabel::TameTube1 { len: l });
            }
            for (prefix, inj) in [("P", false), ("I", true)] {
                if let Some(rest) = t.strip_prefix(prefix) {
                    if let Some((v, idx)) = rest.split_once('(') {
                        let v: usize = v.parse().map_err(|_| bad())?;
                        let idx: usize = idx
                            .strip_suffix(')')
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?;
                        if v < 1 || v > 3 {
                            return Err(bad());
                        }
                        return Ok(if inj {
                            IndecLabel::TameInj { v: v - 1, idx }
                        } else {
                            IndecLabel::TamePre { v: v - 1, idx }
                        });
                    }
                }
            }
            Err(bad())
        }
    }
}

/// Print one label in the grammar of its preset.
pub fn print_label(label: &IndecLabel) -> String {
    match label {
        IndecLabel::Interval { lo, hi } => format!("I[{},{}]", lo + 1, hi + 1),
        IndecLabel::Uniserial { top, len } => format!("C({},{})", top + 1, len),
        IndecLabel::KronPre { n } => format!("P{n}"),
        IndecLabel::KronInj { n } => format!("I{n}"),
        IndecLabel::KronReg { pt, len } => match pt {
            RegPoint::Zero => format!("R0({len})"),
            RegPoint::One => format!("R1({len})"),
            RegPoint::Inf => format!("Rinf({len})"),
        },
        IndecLabel::TamePre { v, idx } => format!("P{}({})", v + 1, idx),
        IndecLabel::TameInj { v, idx } => format!("I{}({})", v + 1, idx),
        IndecLabel::TameTube2 { socle, len } => match socle {
            TubePos::A => format!("T2a({len})"),
            TubePos::B => format!("T2b({len})"),
        },
        IndecLabel::TameTube1 { len } => format!("T1({len})"),
    }
}

/// Parse a full object spec.
pub fn parse_objspec(preset: &QuiverPreset, text: &str) -> Result<DObj, ObjSpecError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err(text, "empty spec"));
    }
    if compact == "0" {
        return Ok(DObj::zero());
    }
    let mut parts = Vec::new();
    for term in compact.split('+') {
        if term.is_empty() {
            return Err(err(text, "empty term"));
        }
        let (mult, rest) = match term.split_once('*') {
            Some((m, r)) => (
                m.parse::<usize>().map_err(|_| err(text, "bad multiplicity"))?,
                r,
            ),
            None => (1, term),
        };
        if mult == 0 {
            return Err(err(text, "zero multiplicity"));
        }
        let (label_str, shift_str) = rest
            .rsplit_once('@')
            .ok_or_else(|| err(text, format!("term `{term}` is missing `@shift`")))?;
        let shift: i32 = shift_str
            .parse()
            .map_err(|_| err(text, format!("bad shift in `{term}`")))?;
        let label = parse_label(preset, label_str)?;
        parts.push((label, shift, mult));
    }
    DObj::new(parts).map_err(|e| err(text, e.to_string()))
}

/// Print an object in canonical form: summands sorted by (shift, label).
pub fn print_objspec(obj: &DObj) -> String {
    if obj.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, s) in obj.summands().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        if s.mult > 1 {
            let _ = write!(out, "{}*", s.mult);
        }
        let _ = write!(out, "{}@{}", print_label(&s.label), s.shift);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::preset_make;

    #[test]
    fn parse_and_print_roundtrip() {
        let a3 = preset_make("A3:1>2,2>3").unwrap();
        let d = parse_objspec(&a3, " 2*I[1,2]@0 + I[3,3]@-1 ").unwrap();
        assert_eq!(print_objspec(&d), "I[3,3]@-1 + 2*I[1,2]@0");
        let d2 = parse_objspec(&a3, &print_objspec(&d)).unwrap();
        assert_eq!(d, d2);

        let k = preset_make("K").unwrap();
        let d = parse_objspec(&k, "P0@1+Rinf(2)@0+P0@1").unwrap();
        assert_eq!(print_objspec(&d), "Rinf(2)@0 + 2*P0@1");

        let t = preset_make("A~21").unwrap();
        let d = parse_objspec(&t, "P1(0)@0 + T2a(3)@2 + I3(1)@-1").unwrap();
        assert_eq!(print_objspec(&d), "I3(1)@-1 + P1(0)@0 + T2a(3)@2");

        assert_eq!(print_objspec(&parse_objspec(&k, "0").unwrap()), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        let a2 = preset_make("A2:1>2").unwrap();
        assert!(parse_objspec(&a2, "I[1,2]").is_err()); // missing shift
        assert!(parse_objspec(&a2, "I[2,1]@0").is_err()); // bad interval
        assert!(parse_objspec(&a2, "C(1,1)@0").is_err()); // wrong preset
        assert!(parse_objspec(&a2, "").is_err());
        assert!(parse_objspec(&a2, "0*I[1,1]@0").is_err());
    }
}
