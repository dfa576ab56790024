//! Free additive and multiplicative convolution on truncated moment series.
//!
//! A measure is given by its moment list `M_0 = 1, M_1, ...` as a
//! [`PowerSeries1`]; a list of order `n` knows `M_0 .. M_{n-1}`. The Cauchy
//! transform `G(z) = sum M_m z^{-m-1}` is handled in `w = 1/z` as
//! `w * sum M_m w^m`.

use crate::error::{Error, Result};
use crate::poly::Ring;
use crate::power_series::PowerSeries1;

fn check_normalized<R: Ring>(moments: &PowerSeries1<R>) -> Result<()> {
    if moments.order() == 0 || moments.coeff(0) != R::one() {
        return Err(Error::Series("moment list must start with M_0 = 1".into()));
    }
    Ok(())
}

fn need<R: Ring>(moments: &PowerSeries1<R>, order: usize) -> Result<PowerSeries1<R>> {
    if order < 1 || moments.order() < order {
        return Err(Error::Series(format!("need {order} moments, have {}", moments.order())));
    }
    Ok(moments.truncate(order))
}

/// R-transform `R(g) = sum_j kappa_{j+1} g^j` from `order` moments; the
/// result has order `order - 1`.
pub fn r_transform<R: Ring>(moments: &PowerSeries1<R>, order: usize) -> Result<PowerSeries1<R>> {
    let m = need(moments, order)?;
    check_normalized(&m)?;
    // G(w) = w M(w); its inverse W(g) = g U(g) gives R(g) = (1/U(g) - 1)/g.
    let g = m.shift_up(1);
    let w = g.compositional_inverse()?;
    let u = w.shift_down(1)?;
    let inv = u.inverse()?;
    inv.sub(&PowerSeries1::one(inv.order())).shift_down(1)
}

/// Moments `M_0 .. M_{r.order()}` of the measure with R-transform `r`.
pub fn moments_from_r<R: Ring>(r: &PowerSeries1<R>) -> Result<PowerSeries1<R>> {
    let order = r.order() + 2;
    let gr = r.shift_up(1).truncate(order - 1);
    let denom = PowerSeries1::one(order - 1).add(&gr);
    let w = denom.inverse()?.shift_up(1);
    let g = w.compositional_inverse()?;
    g.shift_down(1)
}

/// Moments of `a ⊞ b` up to `M_{order-1}`.
pub fn free_add<R: Ring>(a: &PowerSeries1<R>, b: &PowerSeries1<R>, order: usize) -> Result<PowerSeries1<R>> {
    let ra = r_transform(a, order)?;
    let rb = r_transform(b, order)?;
    moments_from_r(&ra.add(&rb))
}

/// S-transform `(1+z)/z * M^{-1}(z)` with `M(z) = sum_{m>=1} M_m z^m`; the
/// result has order `order - 1`.
pub fn s_transform<R: Ring>(moments: &PowerSeries1<R>, order: usize) -> Result<PowerSeries1<R>> {
    let m = need(moments, order)?;
    if order < 2 || m.coeff(1).inverse().is_none() {
        return Err(Error::NonInvertibleFirstMoment);
    }
    let mut gen = m.clone();
    gen.set_coeff(0, R::zero());
    let inv = gen.compositional_inverse()?.shift_down(1)?;
    let one_plus_z = PowerSeries1::one(inv.order()).add(&PowerSeries1::z(inv.order()));
    Ok(inv.mul(&one_plus_z))
}

/// Moments `M_0 = 1, M_1 .. M_{s.order()}` of the measure with S-transform
/// `s`.
pub fn moments_from_s<R: Ring>(s: &PowerSeries1<R>) -> Result<PowerSeries1<R>> {
    let order = s.order() + 1;
    // M^{-1}(z) = z S(z) / (1 + z).
    let one_plus_z = PowerSeries1::one(order).add(&PowerSeries1::z(order));
    let minv = s.shift_up(1).mul(&one_plus_z.inverse()?);
    if minv.coeff(1).inverse().is_none() {
        return Err(Error::NonInvertibleFirstMoment);
    }
    let mut m = minv.compositional_inverse()?;
    m.set_coeff(0, R::one());
    Ok(m)
}

/// Moments of `a ⊠ b` up to `M_{order-1}`.
pub fn free_mul<R: Ring>(a: &PowerSeries1<R>, b: &PowerSeries1<R>, order: usize) -> Result<PowerSeries1<R>> {
    let sa = s_transform(a, order)?;
    let sb = s_transform(b, order)?;
    moments_from_s(&sa.mul(&sb))
}

/// `1 + K^{-1}(z)` with `K(z) = z/(1+z) * S_lambda(z)` and
/// `S_lambda = S_nu^2 / (1+z)`, where `nu` has moments `1, s_1, s_2, ...`
/// (zero past the given weights). Coefficients up to `z^{order-1}`.
///
/// The coefficient of `z^k` is the genus-zero generating polynomial of
/// `2k`-gon gluings by perimeter vertex degree: `s_1^2` at `k = 1`.
pub fn genus0_length_gf<R: Ring>(weights: &[R], order: usize) -> Result<PowerSeries1<R>> {
    if weights.first().map_or(true, |s1| s1.inverse().is_none()) {
        return Err(Error::ZeroLeadingWeight);
    }
    if order < 2 {
        return Ok(PowerSeries1::one(order));
    }
    let mut m = vec![R::one()];
    m.extend((1..=order).map(|i| weights.get(i - 1).cloned().unwrap_or_else(R::zero)));
    let nu = PowerSeries1::new(m);
    let s_nu = s_transform(&nu, order + 1)?;
    let one_plus_z = PowerSeries1::one(order).add(&PowerSeries1::z(order));
    let k = s_nu.mul(&s_nu).mul(&one_plus_z.mul(&one_plus_z).inverse()?).shift_up(1);
    let kinv = k.compositional_inverse()?;
    Ok(PowerSeries1::one(order).add(&kinv))
}

/// Semicircle moments `1, 0, 1, 0, 2, 0, 5, ...`.
pub fn semicircle<R: Ring>(order: usize) -> PowerSeries1<R> {
    let mut c = vec![R::zero(); order];
    let mut cat = R::one();
    for j in 0..order.div_ceil(2) {
        if 2 * j < order {
            c[2 * j] = cat.clone();
        }
        // C_{j+1} = C_j * 2(2j+1)/(j+2)
        let num = R::from_int(2 * (2 * j as i64 + 1));
        let den = R::from_int(j as i64 + 2).inverse().expect("nonzero integer");
        cat = cat.mul(&num).mul(&den);
    }
    PowerSeries1::new(c)
}

/// Moments of `s` times a projector of normalized rank `q`:
/// `1, q s, q s^2, ...`.
pub fn scaled_projector<R: Ring>(s: &R, q: &R, order: usize) -> PowerSeries1<R> {
    let mut c = vec![R::one()];
    let mut sp = R::one();
    for _ in 1..order {
        sp = sp.mul(s);
        c.push(q.mul(&sp));
    }
    PowerSeries1::new(c)
}

/// Closed form `(z s - 1 + sqrt((z s - 1)^2 + 4 z s q)) / (2 z)` of the
/// R-transform of [`scaled_projector`], to the given order.
pub fn projector_r_closed_form<R: Ring>(s: &R, q: &R, order: usize) -> Result<PowerSeries1<R>> {
    let n = order + 1;
    let zs = PowerSeries1::monomial(s.clone(), 1, n);
    let zs_minus_1 = zs.sub(&PowerSeries1::one(n));
    let disc = zs_minus_1.mul(&zs_minus_1).add(&zs.scale(&q.scale_int(4)));
    let root = disc.sqrt()?;
    let half = R::from_int(2).inverse().expect("2 is a unit");
    zs_minus_1.add(&root).shift_down(1).map(|r| r.scale(&half))
}

/// Marchenko-Pastur(1) moments: the Catalan numbers.
pub fn marchenko_pastur<R: Ring>(order: usize) -> PowerSeries1<R> {
    let sc = semicircle::<R>(2 * order);
    PowerSeries1::new((0..order).map(|m| sc.coeff(2 * m)).collect())
}

/// Point mass at `a`.
pub fn point_mass<R: Ring>(a: &R, order: usize) -> PowerSeries1<R> {
    scaled_projector(a, &R::one(), order)
}
