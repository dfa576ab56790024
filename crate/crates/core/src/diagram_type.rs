//! The combinatorial type of a chord diagram and its linear consistency
//! relations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::spectrum::Spectrum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientability {
    /// Untwisted chords only; the genus field is `g`.
    Orientable,
    /// Twisted and untwisted chords; the genus field is `h` (twice the genus
    /// for orientable surfaces, the cross-cap number otherwise).
    NonOrientableAllowed,
}

/// `{g or h, k, l; b; n; p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramType {
    pub orientability: Orientability,
    pub genus: u32,
    /// Chord count.
    pub k: u32,
    /// Marked-point count.
    pub l: u32,
    /// Backbones by vertex count.
    pub b_spec: Spectrum,
    /// Boundary cycles by number of marked points.
    pub n_spec: Spectrum,
    /// Boundary cycles by length, when known.
    pub p_spec: Option<Spectrum>,
}

impl DiagramType {
    pub fn orientable(g: u32, k: u32, l: u32, b_spec: Spectrum, n_spec: Spectrum) -> Self {
        Self { orientability: Orientability::Orientable, genus: g, k, l, b_spec, n_spec, p_spec: None }
    }

    pub fn non_orientable(h: u32, k: u32, l: u32, b_spec: Spectrum, n_spec: Spectrum) -> Self {
        Self {
            orientability: Orientability::NonOrientableAllowed,
            genus: h,
            k,
            l,
            b_spec,
            n_spec,
            p_spec: None,
        }
    }

    pub fn with_lengths(mut self, p_spec: Spectrum) -> Self {
        self.p_spec = Some(p_spec);
        self
    }

    /// Number of backbones.
    pub fn b(&self) -> u32 {
        self.b_spec.size()
    }

    /// Number of boundary cycles.
    pub fn n(&self) -> u32 {
        self.n_spec.size()
    }

    /// Euler characteristic `2 - 2g` or `2 - h` of the closed-up surface.
    pub fn euler_target(&self) -> i64 {
        match self.orientability {
            Orientability::Orientable => 2 - 2 * self.genus as i64,
            Orientability::NonOrientableAllowed => 2 - self.genus as i64,
        }
    }

    /// Exponent of `x` carried by this type in its generating function.
    pub fn x_exponent(&self) -> i32 {
        match self.orientability {
            Orientability::Orientable => 2 * self.genus as i32 - 2,
            Orientability::NonOrientableAllowed => self.genus as i32 - 2,
        }
    }
}

/// True iff every linear relation between the entries of `t` holds,
/// together with Euler's relation.
pub fn validate_type(t: &DiagramType) -> bool {
    let b = t.b();
    let n = t.n();
    if t.l != t.n_spec.weight() {
        return false;
    }
    if 2 * t.k + t.l != t.b_spec.weight() {
        return false;
    }
    // Backbones carry at least one vertex except the lone empty backbone.
    if t.b_spec.get(0) > 0 && !(b == 1 && t.k == 0 && t.l == 0) {
        return false;
    }
    if let Some(p) = &t.p_spec {
        if p.size() != n || p.weight() != 2 * t.k + b || p.get(0) > 0 {
            return false;
        }
    }
    b as i64 - t.k as i64 + n as i64 == t.euler_target()
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.orientability {
            Orientability::Orientable => "g",
            Orientability::NonOrientableAllowed => "h",
        };
        write!(f, "{{{tag}={},{},{};{};{}", self.genus, self.k, self.l, self.b_spec, self.n_spec)?;
        if let Some(p) = &self.p_spec {
            write!(f, ";{p}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> Spectrum {
        s.parse().unwrap()
    }

    #[test]
    fn figure_one_type_is_consistent() {
        let t = DiagramType::orientable(1, 6, 2, sp("e6+e8"), sp("2e0+2e1")).with_lengths(sp("e1+2e2+e9"));
        assert!(validate_type(&t));
    }

    #[test]
    fn chordless_backbone() {
        for m in 1..6 {
            let t = DiagramType::orientable(0, 0, m, Spectrum::unit(m), Spectrum::unit(m));
            assert!(validate_type(&t));
        }
    }

    #[test]
    fn length_relation_is_checked() {
        let t = DiagramType::orientable(0, 1, 0, sp("e2"), sp("2e0")).with_lengths(sp("2e1"));
        assert!(!validate_type(&t));
        let ok = DiagramType::orientable(0, 1, 0, sp("e2"), sp("2e0")).with_lengths(sp("e1+e2"));
        assert!(validate_type(&ok));
    }

    #[test]
    fn euler_relation_is_checked() {
        let wrong_genus = DiagramType::orientable(1, 1, 0, sp("e2"), sp("2e0"));
        assert!(!validate_type(&wrong_genus));
        let mobius = DiagramType::non_orientable(1, 1, 0, sp("e2"), sp("e0"));
        assert!(validate_type(&mobius));
    }
}
