//! The supported quiver shapes and their canonical numbering.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresetError {
    #[error("unknown quiver spec `{0}`")]
    UnknownPreset(String),
    #[error("bad parameters for quiver `{0}`: {1}")]
    BadParams(String, String),
}

/// One arrow `src -> tgt` (vertices 0-based internally).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetKind {
    /// Type A_n, edge i—i+1 oriented forward (`true`) or backward.
    TypeA { orientation: Vec<bool> },
    /// Cyclic quiver with m vertices, arrows i -> i+1 mod m.
    Cyclic { m: usize },
    /// Two vertices, two parallel arrows 1 -> 2.
    Kronecker,
    /// Three vertices, arrows 1->2, 2->3, 1->3: acyclic tame with a rank-2
    /// tube and a distinguished rank-1 tube at a rational point.
    TildeA21,
}

/// A supported quiver with canonical vertex and arrow numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPreset {
    pub kind: PresetKind,
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub acyclic: bool,
    pub nilpotency_required: bool,
    name: String,
}

impl fmt::Display for QuiverPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl QuiverPreset {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn type_a(n: usize, orientation: &[bool]) -> Result<Self, PresetError> {
        if n == 0 || n > 6 {
            return Err(PresetError::BadParams(
                format!("A{n}"),
                "n must be between 1 and 6".into(),
            ));
        }
        if orientation.len() + 1 != n {
            return Err(PresetError::BadParams(
                format!("A{n}"),
                "orientation must cover the n-1 edges".into(),
            ));
        }
        let arrows = orientation
            .iter()
            .enumerate()
            .map(|(i, &fwd)| {
                if fwd {
                    Arrow { src: i, tgt: i + 1 }
                } else {
                    Arrow { src: i + 1, tgt: i }
                }
            })
            .collect();
        let name = format!(
            "A{}:{}",
            n,
            orientation
                .iter()
                .enumerate()
                .map(|(i, &fwd)| {
                    if fwd {
                        format!("{}>{}", i + 1, i + 2)
                    } else {
                        format!("{}>{}", i + 2, i + 1)
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
        );
        Ok(QuiverPreset {
            kind: PresetKind::TypeA {
                orientation: orientation.to_vec(),
            },
            vertices: n,
            arrows,
            acyclic: true,
            nilpotency_required: false,
            name,
        })
    }

    pub fn cyclic(m: usize) -> Result<Self, PresetError> {
        if m == 0 || m > 3 {
            return Err(PresetError::BadParams(
                format!("C{m}"),
                "m must be 1, 2 or 3".into(),
            ));
        }
        let arrows = (0..m)
            .map(|i| Arrow {
                src: i,
                tgt: (i + 1) % m,
            })
            .collect();
        Ok(QuiverPreset {
            kind: PresetKind::Cyclic { m },
            vertices: m,
            arrows,
            acyclic: false,
            nilpotency_required: true,
            name: format!("C{m}"),
        })
    }

    pub fn kronecker() -> Self {
        QuiverPreset {
            kind: PresetKind::Kronecker,
            vertices: 2,
            arrows: vec![Arrow { src: 0, tgt: 1 }, Arrow { src: 0, tgt: 1 }],
            acyclic: true,
            nilpotency_required: false,
            name: "K".into(),
        }
    }

    pub fn tilde_a21() -> Self {
        QuiverPreset {
            kind: PresetKind::TildeA21,
            vertices: 3,
            // x: 1->2, y: 2->3, z: 1->3 (0-based below)
            arrows: vec![
                Arrow { src: 0, tgt: 1 },
                Arrow { src: 1, tgt: 2 },
                Arrow { src: 0, tgt: 2 },
            ],
            acyclic: true,
            nilpotency_required: false,
            name: "A~21".into(),
        }
    }

    /// All directed paths, as arrow index sequences, grouped by
    /// (source, target). Only valid on acyclic presets.
    pub fn paths(&self) -> Vec<(usize, usize, Vec<usize>)> {
        assert!(self.acyclic, "path basis requires an acyclic preset");
        let mut out: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for v in 0..self.vertices {
            out.push((v, v, Vec::new()));
        }
        // breadth-first by length; finite since acyclic
        let mut frontier: Vec<(usize, usize, Vec<usize>)> = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (src, at, seq) in &frontier {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.src == *at {
                        let mut s = seq.clone();
                        s.push(ai);
                        next.push((*src, a.tgt, s));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by(|a, b| (a.2.len(), &a.2, a.0).cmp(&(b.2.len(), &b.2, b.0)));
        out
    }
}

/// Parse a quiver spec string: `A<n>:<orientation>`, `C<m>`, `K`, `A~21`.
/// Orientation is a comma list of `i>j` for adjacent vertices, e.g.
/// `A3:1>2,3>2`.
pub fn preset_make(spec: &str) -> Result<QuiverPreset, PresetError> {
    let spec = spec.trim();
    if spec == "K" {
        return Ok(QuiverPreset::kronecker());
    }
    if spec == "A~21" {
        return Ok(QuiverPreset::tilde_a21());
    }
    if let Some(m) = spec.strip_prefix('C') {
        let m: usize = m
            .parse()
            .map_err(|_| PresetError::UnknownPreset(spec.into()))?;
        return QuiverPreset::cyclic(m);
    }
    if let Some(rest) = spec.strip_prefix('A') {
        let (n_str, orient_str) = match rest.split_once(':') {
            Some((n, o)) => (n, o),
            None => (rest, ""),
        };
        let n: usize = n_str
            .parse()
            .map_err(|_| PresetError::UnknownPreset(spec.into()))?;
        if n == 1 {
            return QuiverPreset::type_a(1, &[]);
        }
        let mut orientation = vec![None; n.saturating_sub(1)];
        if orient_str.is_empty() {
            return Err(PresetError::BadParams(
                spec.into(),
                "orientation required for n >= 2 (e.g. A2:1>2)".into(),
            ));
        }
        for rel in orient_str.split(',') {
            let (a, b) = rel
                .split_once('>')
                .ok_or_else(|| PresetError::BadParams(spec.into(), format!("bad relation `{rel}`")))?;
            let a: usize = a.trim().parse().map_err(|_| {
                PresetError::BadParams(spec.into(), format!("bad vertex in `{rel}`"))
            })?;
            let b: usize = b.trim().parse().map_err(|_| {
                PresetError::BadParams(spec.into(), format!("bad vertex in `{rel}`"))
            })?;
            let ok = a >= 1 && b >= 1 && a <= n && b <= n && (a + 1 == b || b + 1 == a);
            if !ok {
                return Err(PresetError::BadParams(
                    spec.into(),
                    format!("`{rel}` is not an edge of A{n}"),
                ));
            }
            let edge = a.min(b) - 1;
            let fwd = a < b;
            if orientation[edge].is_some() {
                return Err(PresetError::BadParams(
                    spec.into(),
                    format!("edge {}-{} oriented twice", edge + 1, edge + 2),
                ));
            }
            orientation[edge] = Some(fwd);
        }
        let orientation: Option<Vec<bool>> = orientation.into_iter().collect();
        let orientation = orientation.ok_or_else(|| {
            PresetError::BadParams(spec.into(), "every edge needs an orientation".into())
        })?;
        return QuiverPreset::type_a(n, &orientation);
    }
    Err(PresetError::UnknownPreset(spec.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_examples() {
        let a3 = preset_make("A3:1>2,2>3").unwrap();
        assert_eq!(a3.vertices, 3);
        assert_eq!(a3.arrows.len(), 2);
        assert!(a3.acyclic);
        assert!(!a3.nilpotency_required);

        let c2 = preset_make("C2").unwrap();
        assert_eq!(c2.vertices, 2);
        assert_eq!(c2.arrows.len(), 2);
        assert!(!c2.acyclic);
        assert!(c2.nilpotency_required);

        let k = preset_make("K").unwrap();
        assert_eq!(k.vertices, 2);
        assert_eq!(k.arrows, vec![Arrow { src: 0, tgt: 1 }, Arrow { src: 0, tgt: 1 }]);
        assert!(k.acyclic);
    }

    #[test]
    fn bad_presets() {
        assert!(matches!(preset_make("B2"), Err(PresetError::UnknownPreset(_))));
        assert!(matches!(preset_make("C4"), Err(PresetError::BadParams(_, _))));
        assert!(matches!(preset_make("A7:1>2"), Err(PresetError::BadParams(_, _))));
        assert!(matches!(preset_make("A3:1>3"), Err(PresetError::BadParams(_, _))));
    }

    #[test]
    fn path_bases() {
        let a3 = preset_make("A3:1>2,2>3").unwrap();
        // e1,e2,e3, a12, a23, a13
        assert_eq!(a3.paths().len(), 6);
        let k = preset_make("K").unwrap();
        assert_eq!(k.paths().len(), 4);
        let t = QuiverPreset::tilde_a21();
        // 3 trivial + x + y + z + yx
        assert_eq!(t.paths().len(), 7);
    }
}
