//! Complete connected chord diagrams, shapes and the Harer-Zagier numbers,
//! all read off an orientable length-model state.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::evolution::{specialize, EvolutionState, SpectrumKind, Substitution, Variant, Weighted, XSelect};
use crate::freeprob::marchenko_pastur;
use crate::poly::{Monomial, Poly, Ring};
use crate::power_series::PowerSeries1;

type Q = PowerSeries1<BigRational>;

fn check_state(state: &EvolutionState, b: u32, order: usize) -> Result<()> {
    let spec = state.spec();
    if spec.kind != SpectrumKind::Length || spec.variant != Variant::Orientable {
        return Err(Error::MismatchedModels("needs an orientable length state".into()));
    }
    if spec.truncation.max_b < b || order > state.max_k() + 1 {
        return Err(Error::TruncationExceeded(format!("b={b} to y^{}", order.saturating_sub(1))));
    }
    Ok(())
}

/// The coefficient of `x^(2g-2) t^b` of `G(x, y, t; s)` with `s_i` set to
/// `weight(i)`, as a series in `y` of the given order.
fn genus_backbone_part(state: &EvolutionState, g: u32, b: u32, weight: fn(u32) -> i64, order: usize) -> Result<Q> {
    let sub = Substitution::new(
        XSelect::Exponent(2 * g as i32 - 2),
        Weighted::new(Poly::one(), 1),
        move |i| Some(Weighted::constant(weight(i))),
        |i| (i == 1).then(|| Weighted::new(Poly::var("t"), 0)),
        &["t"],
    );
    let series = specialize(state, &sub, order)?;
    let tb = Monomial::var("t", b as i32);
    Ok(series.map(|p| p.coefficient(&tb)))
}

/// `C_{g,b}(y) = (1/b!) sum_k C_{g,b,k} y^k` to the given order.
pub fn complete_series(state: &EvolutionState, g: u32, b: u32, order: usize) -> Result<Q> {
    check_state(state, b, order)?;
    genus_backbone_part(state, g, b, |_| 1, order)
}

/// `S_{g,b}(y)`: shapes arise from diagrams without boundary cycles of
/// length one or two by adding a rainbow on every backbone. The genus-zero
/// single chord is the exception.
pub fn shape_polynomial(state: &EvolutionState, g: u32, b: u32) -> Result<Q> {
    let top = (6 * g + 5 * b) as usize;
    let degree = top.saturating_sub(6).max(1);
    let inner = degree + 1 - (b as usize).min(degree + 1);
    check_state(state, b, inner)?;
    let bare = genus_backbone_part(state, g, b, |i| i64::from(i > 2), inner)?;
    let mut s = bare.shift_up(b as usize).truncate(degree + 1);
    if (g, b) == (0, 1) {
        s.set_coeff(1, s.coeff(1).add(&<BigRational as Ring>::one()));
    }
    Ok(s)
}

/// Both sides of
/// `C_{g,b}(z) = (z C_0(z))^(-b) S_{g,b}((C_0(z) - 1)/(2 - C_0(z)))`
/// as series of the given order.
pub fn shapes_relation(state: &EvolutionState, g: u32, b: u32, order: usize) -> Result<(Q, Q)> {
    let lhs = complete_series(state, g, b, order)?;
    let s = shape_polynomial(state, g, b)?;
    let n = order + b as usize;
    let c0 = marchenko_pastur::<BigRational>(n);
    let one = Q::one(n);
    let w = c0.sub(&one).mul(&one.scale(&BigRational::from_integer(2.into())).sub(&c0).inverse()?);
    let mut padded = s.coeffs().to_vec();
    padded.resize(n.max(padded.len()), <BigRational as Ring>::zero());
    let composed = Q::new(padded).truncate(n).compose(&w)?;
    let zc0 = c0.shift_up(1).truncate(n);
    let mut denom = Q::one(n);
    for _ in 0..b {
        denom = denom.mul(&zc0);
    }
    // denom = z^b * C_0^b; divide out z^b first.
    let c0b = denom.shift_down(b as usize)?;
    let rhs = composed.shift_down(b as usize)?.mul(&c0b.inverse()?).truncate(order);
    Ok((lhs, rhs))
}

/// `C_{g,1,n}` for `n < order`, indexed `[g][n]` for `g <= max_g`.
pub fn harer_zagier_numbers(state: &EvolutionState, max_g: u32, order: usize) -> Result<Vec<Vec<BigRational>>> {
    (0..=max_g)
        .map(|g| complete_series(state, g, 1, order).map(|s| s.coeffs().to_vec()))
        .collect()
}

/// Cells `(g, n)` where `(n+1) C_{g,1,n} = (2n-1)(2 C_{g,1,n-1} + C(2n-2, 2) C_{g-1,1,n-2})`
/// fails, for `1 <= n` in the table.
pub fn harer_zagier_failures(table: &[Vec<BigRational>]) -> Vec<(u32, usize)> {
    let mut bad = Vec::new();
    let int = |n: i64| BigRational::from_integer(n.into());
    for (g, row) in table.iter().enumerate() {
        for n in 1..row.len() {
            let ni = n as i64;
            let lower = if g > 0 && n >= 2 {
                int((2 * ni - 2) * (2 * ni - 3) / 2) * &table[g - 1][n - 2]
            } else {
                <BigRational as Ring>::zero()
            };
            let rhs = int(2 * ni - 1) * (int(2) * &row[n - 1] + lower);
            if int(ni + 1) * &row[n] != rhs {
                bad.push((g as u32, n));
            }
        }
    }
    bad
}
