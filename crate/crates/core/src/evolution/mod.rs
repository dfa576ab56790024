//! Exact evolution of the chord-diagram generating functions in the chord
//! count `k`.
//!
//! Each model is a first-order equation `dF/dy = (linear + quadratic) F`.
//! Expanding `F = sum_k y^k F^(k)` turns it into the recurrence
//!
//! ```text
//! (k+1) F^(k+1) = Lin F^(k) + c_quad * x^2 * sum_{a+b=k} Bil(F^(a), F^(b))
//! ```
//!
//! which [`EvolutionState::step`] applies one chord at a time. Backbone
//! content is truncated at creation time; every retained coefficient is
//! exact.

mod extract;
pub mod operators;
mod recursion;
mod specialize;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Key, Series};
use crate::spectrum::Spectrum;

pub use extract::{extract_count, extract_length_count, extract_vertex_count, rows, CountRow};
pub use operators::{apply_bilinear, apply_linear_operator, BilinearOperator, LinearOperator};
pub use recursion::{one_backbone_recursion, RecursionMemo};
pub use specialize::{lambda1_apply, lambda1_check, specialize, Substitution, Weighted, XSelect};

/// Which boundary statistic the generating function records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumKind {
    /// Boundary cycles by marked points; variables `s_0, s_1, ...` and one
    /// `t_i` per backbone of `i` vertices.
    Point,
    /// Boundary cycles by length on complete diagrams; a single `t` counts
    /// backbones.
    Length,
    /// Perimeter vertices by degree for gluings of a polygon.
    Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Orientable,
    NonOrientable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Truncation {
    /// Number of chord steps to compute.
    pub max_k: usize,
    /// Largest retained `weight(t)`: total backbone vertices in the point
    /// model, backbone count in the length model.
    pub max_backbone_weight: u32,
    /// Largest retained number of backbones.
    pub max_b: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: SpectrumKind,
    pub variant: Variant,
    pub truncation: Truncation,
}

impl ModelSpec {
    pub fn new(kind: SpectrumKind, variant: Variant, max_k: usize, max_backbone_weight: u32, max_b: u32) -> Self {
        Self { kind, variant, truncation: Truncation { max_k, max_backbone_weight, max_b } }
    }

    /// One-backbone point model covering every diagram on up to
    /// `max_vertices` vertices.
    pub fn one_backbone_point(variant: Variant, max_vertices: u32) -> Self {
        Self::new(SpectrumKind::Point, variant, (max_vertices / 2) as usize, max_vertices, 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind == SpectrumKind::Vertex && self.variant == Variant::NonOrientable {
            return Err(Error::InvalidModel("the vertex-spectrum model is orientable only".into()));
        }
        if self.kind != SpectrumKind::Vertex
            && (self.truncation.max_backbone_weight == 0 || self.truncation.max_b == 0)
        {
            return Err(Error::InvalidModel("backbone bounds must be positive".into()));
        }
        Ok(())
    }

    fn keeps_t(&self, t: &Spectrum) -> bool {
        match self.kind {
            SpectrumKind::Vertex => true,
            _ => t.size() <= self.truncation.max_b && t.weight() <= self.truncation.max_backbone_weight,
        }
    }
}

/// Slices `F^(0), ..., F^(k)` of a connected generating function.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionState {
    spec: ModelSpec,
    slices: Vec<Series>,
}

impl EvolutionState {
    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn slices(&self) -> &[Series] {
        &self.slices
    }

    pub fn slice(&self, k: usize) -> Option<&Series> {
        self.slices.get(k)
    }

    /// Highest computed chord step.
    pub fn max_k(&self) -> usize {
        self.slices.len() - 1
    }

    /// Appends slice `k+1`.
    pub fn step(&self) -> EvolutionState {
        let k = self.max_k();
        let current = &self.slices[k];
        let orientable = self.spec.variant == Variant::Orientable;
        let two = BigRational::from_integer(2.into());

        let mut next = match self.spec.kind {
            SpectrumKind::Point => {
                let mut r = operators::l0(current);
                if orientable {
                    r.add_assign(&operators::l2(current).shift_x(2));
                } else {
                    r.add_assign(&operators::l1(current).shift_x(1));
                    r.add_assign(&operators::l2(current).shift_x(2).scale(&two));
                }
                r
            }
            SpectrumKind::Length | SpectrumKind::Vertex => {
                let mut r = operators::k0(current);
                if orientable {
                    r.add_assign(&operators::k2(current).shift_x(2));
                } else {
                    r.add_assign(&operators::k1(current).shift_x(1));
                    r.add_assign(&operators::k2(current).shift_x(2).scale(&two));
                }
                r
            }
        };

        let target = match self.spec.kind {
            SpectrumKind::Point => Some(operators::q_target as fn(u32) -> Option<u32>),
            SpectrumKind::Length => Some(operators::r_target as fn(u32) -> Option<u32>),
            SpectrumKind::Vertex => None,
        };
        if let Some(target) = target {
            // Bil is symmetric, so each unordered pair of y-degrees is
            // evaluated once.
            let spec = self.spec;
            let mut quad = Series::new();
            for a in 0..=k / 2 {
                let b = k - a;
                let part = operators::bilinear_filtered(&self.slices[a], &self.slices[b], target, |t| {
                    spec.keeps_t(t)
                });
                if a == b {
                    quad.add_assign(&part);
                } else {
                    quad.add_assign(&part.scale(&two));
                }
            }
            let factor = if orientable { BigRational::from_integer(1.into()) } else { two.clone() };
            next.add_assign(&quad.shift_x(2).scale(&factor));
        }

        let spec = self.spec;
        let next = next
            .filter(|key| spec.keeps_t(&key.t))
            .scale(&BigRational::new(1.into(), BigInt::from(k + 1)));
        let mut slices = self.slices.clone();
        slices.push(next);
        EvolutionState { spec: self.spec, slices }
    }

    /// Steps until `max_k` slices past the initial condition exist.
    pub fn evolve_to(&self, max_k: usize) -> EvolutionState {
        let mut s = self.clone();
        while s.max_k() < max_k {
            s = s.step();
        }
        s
    }

    /// Checks that every scaled coefficient is a non-negative integer.
    pub fn check_integrality(&self) -> Result<()> {
        for (k, slice) in self.slices.iter().enumerate() {
            for (key, c) in slice.iter() {
                let scale = match self.spec.kind {
                    SpectrumKind::Vertex => BigInt::from(1),
                    _ => BigInt::from(crate::spectrum::factorial(key.t.size())),
                };
                let v = c * BigRational::from_integer(scale);
                if !v.is_integer() || v < BigRational::from_integer(0.into()) {
                    return Err(Error::IntegralityViolation { key: format!("y^{k} {key}"), value: v.to_string() });
                }
            }
        }
        Ok(())
    }
}

/// Initial condition at `y = 0`.
pub fn init_state(spec: ModelSpec) -> Result<EvolutionState> {
    spec.validate()?;
    let one = BigRational::from_integer(1.into());
    let mut ic = Series::new();
    match spec.kind {
        SpectrumKind::Point => {
            for i in 1..=spec.truncation.max_backbone_weight {
                ic.add_term(Key::new(-2, Spectrum::unit(i), Spectrum::unit(i)), one.clone());
            }
        }
        SpectrumKind::Length => {
            ic.add_term(Key::new(-2, Spectrum::unit(1), Spectrum::unit(1)), one);
        }
        SpectrumKind::Vertex => {
            ic.add_term(Key::new(-2, Spectrum::single(1, 2), Spectrum::new()), one);
        }
    }
    Ok(EvolutionState { spec, slices: vec![ic] })
}

/// Initial condition evolved to `spec.truncation.max_k`.
pub fn evolve(spec: ModelSpec) -> Result<EvolutionState> {
    Ok(init_state(spec)?.evolve_to(spec.truncation.max_k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn sp(s: &str) -> Spectrum {
        s.parse().unwrap()
    }

    #[test]
    fn initial_conditions() {
        let p = init_state(ModelSpec::new(SpectrumKind::Point, Variant::Orientable, 0, 6, 2)).unwrap();
        assert_eq!(p.slice(0).unwrap().coefficient_of(&Key::new(-2, sp("e5"), sp("e5"))), rat(1));
        assert_eq!(p.slice(0).unwrap().len(), 6);

        let g = init_state(ModelSpec::new(SpectrumKind::Length, Variant::Orientable, 0, 3, 3)).unwrap();
        assert_eq!(g.slice(0).unwrap(), &Series::monomial(Key::new(-2, sp("e1"), sp("e1")), rat(1)));

        let f = init_state(ModelSpec::new(SpectrumKind::Vertex, Variant::Orientable, 0, 1, 1)).unwrap();
        assert_eq!(f.slice(0).unwrap(), &Series::monomial(Key::new(-2, sp("2e1"), sp("")), rat(1)));
    }

    #[test]
    fn vertex_model_rejects_non_orientable() {
        let spec = ModelSpec::new(SpectrumKind::Vertex, Variant::NonOrientable, 2, 1, 1);
        assert!(matches!(init_state(spec), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn one_chord_on_two_vertices() {
        let s = evolve(ModelSpec::one_backbone_point(Variant::Orientable, 2)).unwrap();
        assert_eq!(s.slice(1).unwrap().coefficient_of(&Key::new(-2, sp("2e0"), sp("e2"))), rat(1));
    }

    #[test]
    fn square_gluings_by_genus() {
        let s = evolve(ModelSpec::one_backbone_point(Variant::Orientable, 4)).unwrap();
        let y2 = s.slice(2).unwrap();
        assert_eq!(y2.coefficient_of(&Key::new(-2, sp("3e0"), sp("e4"))), rat(2));
        assert_eq!(y2.coefficient_of(&Key::new(0, sp("e0"), sp("e4"))), rat(1));
    }

    #[test]
    fn length_model_first_step() {
        let s = evolve(ModelSpec::new(SpectrumKind::Length, Variant::Orientable, 1, 1, 1)).unwrap();
        assert_eq!(s.slice(1).unwrap(), &Series::monomial(Key::new(-2, sp("e1+e2"), sp("e1")), rat(1)));
    }

    #[test]
    fn two_single_vertex_backbones_joined() {
        let s = evolve(ModelSpec::new(SpectrumKind::Point, Variant::Orientable, 1, 2, 2)).unwrap();
        let c = s.slice(1).unwrap().coefficient_of(&Key::new(-2, sp("e0"), sp("2e1")));
        assert_eq!(c, crate::series::ratio(1, 2));
        s.check_integrality().unwrap();
    }
}
