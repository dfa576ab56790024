//! Reading diagram counts off an evolved state.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{EvolutionState, SpectrumKind, Variant};
use crate::diagram_type::{validate_type, DiagramType, Orientability};
use crate::error::{Error, Result};
use crate::series::Key;
use crate::spectrum::{factorial, Spectrum};

fn variant_of(t: &DiagramType) -> Variant {
    match t.orientability {
        Orientability::Orientable => Variant::Orientable,
        Orientability::NonOrientableAllowed => Variant::NonOrientable,
    }
}

fn scaled_count(coeff: BigRational, b: u32, key: &Key) -> Result<BigInt> {
    let v = coeff * BigRational::from_integer(BigInt::from(factorial(b)));
    if !v.is_integer() || v.is_negative() {
        return Err(Error::IntegralityViolation { key: key.to_string(), value: v.to_string() });
    }
    Ok(v.to_integer())
}

fn check_model(state: &EvolutionState, kind: SpectrumKind, variant: Variant) -> Result<()> {
    let spec = state.spec();
    if spec.kind != kind || spec.variant != variant {
        return Err(Error::MismatchedModels(format!(
            "state is {:?}/{:?}, query needs {kind:?}/{variant:?}",
            spec.kind, spec.variant
        )));
    }
    Ok(())
}

/// Number of connected diagrams of type `t`.
///
/// Types with a boundary length spectrum are answered by the length model,
/// summed over all backbone tuples with `t.b()` backbones; see
/// [`extract_length_count`]. All others are answered by the point model.
pub fn extract_count(state: &EvolutionState, t: &DiagramType) -> Result<BigInt> {
    if !validate_type(t) {
        return Err(Error::InvalidConfig(format!("inconsistent diagram type {t}")));
    }
    if let Some(p) = &t.p_spec {
        return extract_length_count(state, variant_of(t), t.genus, t.k, t.b(), p);
    }
    check_model(state, SpectrumKind::Point, variant_of(t))?;
    let tr = state.spec().truncation;
    if t.k as usize > state.max_k() || t.b() > tr.max_b || t.b_spec.weight() > tr.max_backbone_weight {
        return Err(Error::TruncationExceeded(t.to_string()));
    }
    let key = Key::new(t.x_exponent(), t.n_spec.clone(), t.b_spec.clone());
    let c = state.slices()[t.k as usize].coefficient_of(&key);
    scaled_count(c, t.b(), &key)
}

/// Number of connected complete diagrams with `k` chords on `b` ordered
/// backbones of any sizes, genus `genus` (`g` or `h` per `variant`), and
/// boundary length spectrum `p`.
pub fn extract_length_count(
    state: &EvolutionState,
    variant: Variant,
    genus: u32,
    k: u32,
    b: u32,
    p: &Spectrum,
) -> Result<BigInt> {
    check_model(state, SpectrumKind::Length, variant)?;
    let tr = state.spec().truncation;
    if k as usize > state.max_k() || b > tr.max_b || b > tr.max_backbone_weight {
        return Err(Error::TruncationExceeded(format!("k={k} b={b} p={p}")));
    }
    let x = match variant {
        Variant::Orientable => 2 * genus as i32 - 2,
        Variant::NonOrientable => genus as i32 - 2,
    };
    let key = Key::new(x, p.clone(), Spectrum::single(1, b));
    let c = state.slices()[k as usize].coefficient_of(&key);
    scaled_count(c, b, &key)
}

/// Number of genus-`g` gluings of the `2k`-gon whose perimeter vertices have
/// degree spectrum `v`.
pub fn extract_vertex_count(state: &EvolutionState, g: u32, k: u32, v: &Spectrum) -> Result<BigInt> {
    check_model(state, SpectrumKind::Vertex, Variant::Orientable)?;
    if k == 0 || (k - 1) as usize > state.max_k() {
        return Err(Error::TruncationExceeded(format!("{}-gon", 2 * k)));
    }
    let key = Key::new(2 * g as i32 - 2, v.clone(), Spectrum::new());
    let c = state.slices()[(k - 1) as usize].coefficient_of(&key);
    scaled_count(c, 0, &key)
}

/// One line of a count table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub variant: Variant,
    pub model: SpectrumKind,
    pub g_or_h: u32,
    pub k: u32,
    pub l: u32,
    pub b_spec: Spectrum,
    pub n_or_p_spec: Spectrum,
    pub count: String,
}

/// Every non-zero count held by `state`, in key order per slice.
pub fn rows(state: &EvolutionState) -> Result<Vec<CountRow>> {
    let spec = state.spec();
    let mut out = Vec::new();
    for (slice_k, slice) in state.slices().iter().enumerate() {
        for (key, c) in slice.iter() {
            let genus = match spec.variant {
                Variant::Orientable => (key.x + 2) / 2,
                Variant::NonOrientable => key.x + 2,
            } as u32;
            let (k, l, b_spec, b) = match spec.kind {
                SpectrumKind::Point => (slice_k as u32, key.s.weight(), key.t.clone(), key.t.size()),
                SpectrumKind::Length => (slice_k as u32, 0, key.t.clone(), key.t.size()),
                SpectrumKind::Vertex => {
                    let k = slice_k as u32 + 1;
                    (k, 0, Spectrum::unit(2 * k), 0)
                }
            };
            let count = scaled_count(c.clone(), b, key)?;
            if count.is_zero() {
                continue;
            }
            out.push(CountRow {
                variant: spec.variant,
                model: spec.kind,
                g_or_h: genus,
                k,
                l,
                b_spec,
                n_or_p_spec: key.s.clone(),
                count: count.to_string(),
            });
        }
    }
    Ok(out)
}
