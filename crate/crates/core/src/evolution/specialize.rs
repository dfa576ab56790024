//! Substituting values for the formal variables of an evolved state.

use std::collections::BTreeSet;

use num_rational::BigRational;

use super::{EvolutionState, SpectrumKind, Variant};
use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};
use crate::power_series::PowerSeries1;
use crate::series::{Key, Series};
use crate::spectrum::Spectrum;

/// What to do with `x`.
#[derive(Clone, Debug, PartialEq)]
pub enum XSelect {
    /// Set `x = 1`.
    One,
    /// Keep only terms with this exponent of `x`, then drop `x`.
    Exponent(i32),
    /// Substitute a value; negative exponents need it to be a unit.
    Value(Poly),
}

/// A value together with the power of the output variable `z` it carries.
#[derive(Clone, Debug, PartialEq)]
pub struct Weighted {
    pub value: Poly,
    pub degree: u32,
}

impl Weighted {
    pub fn new(value: Poly, degree: u32) -> Self {
        Self { value, degree }
    }

    pub fn constant(q: i64) -> Self {
        Self::new(Poly::int(q), 0)
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.degree = degree;
        self
    }
}

type Assign = Box<dyn Fn(u32) -> Option<Weighted> + Send + Sync>;

/// Assignment of every variable of a state. Each term
/// `x^e y^k s^n t^b` maps to `X(e) * Y^k * prod S_i^{n_i} * prod T_i^{b_i}`
/// placed at `z^(k deg Y + sum n_i deg S_i + sum b_i deg T_i)`.
pub struct Substitution {
    pub x: XSelect,
    pub y: Weighted,
    pub s: Assign,
    pub t: Assign,
    /// Symbols allowed to appear in the assigned values.
    pub symbols: BTreeSet<String>,
}

impl Substitution {
    pub fn new<S, T>(x: XSelect, y: Weighted, s: S, t: T, symbols: &[&str]) -> Self
    where
        S: Fn(u32) -> Option<Weighted> + Send + Sync + 'static,
        T: Fn(u32) -> Option<Weighted> + Send + Sync + 'static,
    {
        Self {
            x,
            y,
            s: Box::new(s),
            t: Box::new(t),
            symbols: symbols.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn check_ring(&self, what: &str, p: &Poly) -> Result<()> {
        if let Some(bad) = p.symbols().into_iter().find(|s| !self.symbols.contains(s)) {
            return Err(Error::UnsupportedRing(format!("{what} uses undeclared symbol `{bad}`")));
        }
        Ok(())
    }

    fn power_of(&self, what: &str, w: &Weighted, e: u32) -> Result<(Poly, usize)> {
        self.check_ring(what, &w.value)?;
        Ok((w.value.pow(e), (w.degree * e) as usize))
    }

    fn spectrum_value(&self, family: &str, spec: &Spectrum, f: &Assign) -> Result<(Poly, usize)> {
        let mut value = Poly::one();
        let mut degree = 0usize;
        for (i, m) in spec.iter() {
            let w = f(i).ok_or_else(|| Error::UnsupportedRing(format!("no value assigned to {family}_{i}")))?;
            let (p, d) = self.power_of(&format!("{family}_{i}"), &w, m)?;
            value = value.mul(&p);
            degree += d;
        }
        Ok((value, degree))
    }

    fn x_value(&self, e: i32) -> Result<Option<Poly>> {
        match &self.x {
            XSelect::One => Ok(Some(Poly::one())),
            XSelect::Exponent(want) => Ok((e == *want).then(Poly::one)),
            XSelect::Value(p) => {
                self.check_ring("x", p)?;
                let base = if e < 0 {
                    p.inverse().ok_or_else(|| Error::UnsupportedRing("x value is not a unit".into()))?
                } else {
                    p.clone()
                };
                Ok(Some(base.pow(e.unsigned_abs())))
            }
        }
    }
}

/// Applies `sub` to `state`, keeping coefficients of `z^0 .. z^(order-1)`.
///
/// Every slice of `state` contributes; the result is complete below `order`
/// when no uncomputed slice can reach it, which is checked for the `y`
/// degree. Completeness in backbone content is the caller's choice of
/// truncation.
pub fn specialize(state: &EvolutionState, sub: &Substitution, order: usize) -> Result<PowerSeries1<Poly>> {
    sub.check_ring("y", &sub.y.value)?;
    if sub.y.degree == 0 || (sub.y.degree as usize) * (state.max_k() + 1) < order {
        return Err(Error::TruncationExceeded(format!(
            "order {order} needs more than {} chord steps",
            state.max_k()
        )));
    }
    let mut out = PowerSeries1::<Poly>::zero(order);
    let mut coeffs: Vec<Poly> = out.coeffs().to_vec();
    for (k, slice) in state.slices().iter().enumerate() {
        let (ypow, ydeg) = sub.power_of("y", &sub.y, k as u32)?;
        if ydeg >= order {
            continue;
        }
        for (key, c) in slice.iter() {
            let Some(xv) = sub.x_value(key.x)? else { continue };
            let (sv, sd) = sub.spectrum_value("s", &key.s, &sub.s)?;
            let (tv, td) = sub.spectrum_value("t", &key.t, &sub.t)?;
            let d = ydeg + sd + td;
            if d >= order {
                continue;
            }
            let term = Poly::constant(c.clone()).mul(&xv).mul(&ypow).mul(&sv).mul(&tv);
            coeffs[d] = coeffs[d].add(&term);
        }
    }
    out = PowerSeries1::new(coeffs);
    Ok(out)
}

/// `sum_i i s_{i+1} d/ds_i`.
pub fn lambda1_apply(s: &Series) -> Series {
    let mut out = Series::new();
    for (key, c) in s.iter() {
        for (i, m) in key.s.iter() {
            if i == 0 {
                continue;
            }
            let spec = key.s.without(i).expect("index present").with(i + 1);
            let w = BigRational::from_integer((i as i64 * m as i64).into());
            out.add_term(Key::new(key.x, spec, key.t.clone()), c * w);
        }
    }
    out
}

/// True iff `(1/2) Lambda_1 Fhat^(k-1) = k G_1^(k)` for every `k` computed
/// in both states, where `G_1` is the one-backbone part of the orientable
/// length model.
pub fn lambda1_check(vertex: &EvolutionState, length: &EvolutionState) -> Result<bool> {
    let vs = vertex.spec();
    let ls = length.spec();
    if vs.kind != SpectrumKind::Vertex
        || ls.kind != SpectrumKind::Length
        || ls.variant != Variant::Orientable
    {
        return Err(Error::MismatchedModels("needs a vertex state and an orientable length state".into()));
    }
    let half = BigRational::new(1.into(), 2.into());
    let one_backbone = Spectrum::unit(1);
    let top = (vertex.max_k() + 1).min(length.max_k());
    for k in 1..=top {
        let lhs = lambda1_apply(&vertex.slices()[k - 1]).scale(&half);
        let rhs = length.slices()[k]
            .filter(|key| key.t == one_backbone)
            .iter()
            .fold(Series::new(), |mut acc, (key, c)| {
                acc.add_term(Key::new(key.x, key.s.clone(), Spectrum::new()), c.clone());
                acc
            })
            .scale(&BigRational::from_integer((k as i64).into()));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{evolve, ModelSpec};
    use crate::poly::parse_poly;

    fn marked_points_by_vertices(max_vertices: u32) -> PowerSeries1<Poly> {
        let state = evolve(ModelSpec::one_backbone_point(Variant::Orientable, max_vertices)).unwrap();
        let sub = Substitution::new(
            XSelect::Exponent(-2),
            Weighted::constant(1).with_degree(2),
            |i| {
                Some(if i == 0 {
                    Weighted::constant(1)
                } else {
                    Weighted::new(Poly::var("q").mul(&Poly::var("s").pow(i)), i)
                })
            },
            |_| Some(Weighted::constant(1)),
            &["q", "s"],
        );
        specialize(&state, &sub, max_vertices as usize + 1).unwrap()
    }

    #[test]
    fn planar_one_backbone_polynomials() {
        let p = marked_points_by_vertices(8);
        assert_eq!(p.coeff(4), parse_poly("q*s^4 + 4*q*s^2 + 2*q^2*s^2 + 2").unwrap());
        assert_eq!(p.coeff(6), parse_poly("q*s^6 + 6*q*s^4 + 9*q^2*s^4 + 15*q*s^2 + 15*q^2*s^2 + 5").unwrap());
        assert_eq!(
            p.coeff(8),
            parse_poly("q*s^8 + 8*q*s^6 + 20*q^2*s^6 + 28*q*s^4 + 84*q^2*s^4 + 28*q^3*s^4 + 56*q*s^2 + 84*q^2*s^2 + 14")
                .unwrap()
        );
    }

    #[test]
    fn missing_assignment_is_rejected() {
        let state = evolve(ModelSpec::one_backbone_point(Variant::Orientable, 2)).unwrap();
        let sub = Substitution::new(XSelect::One, Weighted::constant(1).with_degree(1), |_| None, |_| None, &[]);
        assert!(matches!(specialize(&state, &sub, 2), Err(Error::UnsupportedRing(_))));
        let sub = Substitution::new(
            XSelect::One,
            Weighted::constant(1).with_degree(1),
            |_| Some(Weighted::new(Poly::var("u"), 0)),
            |_| Some(Weighted::constant(1)),
            &["q"],
        );
        assert!(matches!(specialize(&state, &sub, 2), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn lambda1_relation_holds() {
        let vertex = evolve(ModelSpec::new(SpectrumKind::Vertex, Variant::Orientable, 3, 1, 1)).unwrap();
        let length = evolve(ModelSpec::new(SpectrumKind::Length, Variant::Orientable, 4, 1, 1)).unwrap();
        assert!(lambda1_check(&vertex, &length).unwrap());
        let zero = evolve(ModelSpec::new(SpectrumKind::Vertex, Variant::Orientable, 0, 1, 1)).unwrap();
        let zero_len = evolve(ModelSpec::new(SpectrumKind::Length, Variant::Orientable, 0, 1, 1)).unwrap();
        assert!(lambda1_check(&zero, &zero_len).unwrap());
        assert!(matches!(lambda1_check(&length, &vertex), Err(Error::MismatchedModels(_))));
    }
}
