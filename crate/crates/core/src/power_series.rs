//! Truncated univariate formal power series over an exact ring.
//!
//! A series with `order() == n` knows the coefficients of `z^0 .. z^(n-1)`
//! exactly and nothing beyond; every operation propagates that precision.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::Ring;

#[derive(Clone, PartialEq)]
pub struct PowerSeries1<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> PowerSeries1<R> {
    /// Series with the given coefficients; the order is `coeffs.len()`.
    pub fn new(coeffs: Vec<R>) -> Self {
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![R::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(R::one(), 0, order)
    }

    /// `c * z^degree`, known to `order`.
    pub fn monomial(c: R, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree < order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        Self::monomial(R::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, c: R) {
        if i < self.coeffs.len() {
            self.coeffs[i] = c;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order);
        Self { coeffs: c }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..n).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..n).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(R::neg).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![R::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self { coeffs: out }
    }

    /// Multiplies by `z^n`; the order grows by `n`.
    pub fn shift_up(&self, n: usize) -> Self {
        let mut c = vec![R::zero(); n];
        c.extend(self.coeffs.iter().cloned());
        Self { coeffs: c }
    }

    /// Divides by `z^n`; the leading `n` coefficients must vanish.
    pub fn shift_down(&self, n: usize) -> Result<Self> {
        if self.coeffs.iter().take(n).any(|c| !c.is_zero()) {
            return Err(Error::Series(format!("cannot divide by z^{n}: low-order terms present")));
        }
        Ok(Self { coeffs: self.coeffs.iter().skip(n).cloned().collect() })
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let inv0 = self.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::Series("constant term is not invertible".into()))?;
        let mut out = vec![R::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = R::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out[k] = acc.neg().mul(&inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Square root of a series with constant term one, normalized to
    /// constant term one.
    pub fn sqrt(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != R::one() {
            return Err(Error::Series("square root needs constant term 1".into()));
        }
        let half = R::from_rational(BigRational::new(1.into(), 2.into()));
        let mut out = vec![R::zero(); n];
        out[0] = R::one();
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc.sub(&out[j].mul(&out[k - j]));
            }
            out[k] = acc.mul(&half);
        }
        Ok(Self { coeffs: out })
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::Series("inner series must have zero constant term".into()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(&inner);
            if n > 0 {
                acc.coeffs[0] = acc.coeffs[0].add(c);
            }
        }
        Ok(acc)
    }

    /// Series `g` with `self(g(z)) = z`; needs zero constant term and a unit
    /// linear coefficient.
    pub fn compositional_inverse(&self) -> Result<Self> {
        let n = self.order();
        if !self.coeff(0).is_zero() {
            return Err(Error::Series("compositional inverse needs zero constant term".into()));
        }
        if n < 2 {
            return Ok(Self::zero(n));
        }
        let inv1 = self.coeffs[1]
            .inverse()
            .ok_or_else(|| Error::Series("linear coefficient is not invertible".into()))?;
        let mut g = Self::monomial(inv1.clone(), 1, n);
        for k in 2..n {
            let probe = self.truncate(k + 1).compose(&g.truncate(k + 1))?;
            let c = probe.coeff(k);
            if !c.is_zero() {
                g.coeffs[k] = c.neg().mul(&inv1);
            }
        }
        Ok(g)
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> PowerSeries1<S> {
        PowerSeries1 { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl PowerSeries1<BigRational> {
    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for PowerSeries1<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*z^{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order())
    }
}

impl<R: Ring> fmt::Debug for PowerSeries1<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Poly};

    type Q = PowerSeries1<BigRational>;

    #[test]
    fn inverse_of_one_minus_z() {
        let s = Q::from_ints(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(s.inverse().unwrap(), Q::from_ints(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn sqrt_of_one_minus_four_z_gives_catalan() {
        let s = Q::from_ints(&[1, -4, 0, 0, 0, 0, 0, 0]);
        let r = s.sqrt().unwrap();
        // (1 - sqrt(1-4z)) / (2z)
        let cat = Q::one(8).sub(&r).shift_down(1).unwrap().scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(cat, Q::from_ints(&[1, 1, 2, 5, 14, 42, 132]));
    }

    #[test]
    fn compositional_inverse_round_trip() {
        // z / (1 - z) has inverse z / (1 + z).
        let f = Q::from_ints(&[0, 1, 1, 1, 1, 1, 1]);
        let g = f.compositional_inverse().unwrap();
        assert_eq!(g, Q::from_ints(&[0, 1, -1, 1, -1, 1, -1]));
        assert_eq!(f.compose(&g).unwrap(), Q::z(7));
        assert_eq!(g.compose(&f).unwrap(), Q::z(7));
    }

    #[test]
    fn symbolic_inverse_with_monomial_linear_term() {
        let s1 = parse_poly("s1").unwrap();
        let s2 = parse_poly("s2").unwrap();
        let f = PowerSeries1::new(vec![Poly::zero(), s1, s2, Poly::zero()]);
        let g = f.compositional_inverse().unwrap();
        assert_eq!(g.coeff(1), parse_poly("s1^-1").unwrap());
        assert_eq!(g.coeff(2), parse_poly("-1*s2*s1^-3").unwrap());
        assert_eq!(f.compose(&g).unwrap(), PowerSeries1::z(4));
    }

    #[test]
    fn non_unit_linear_term_is_rejected() {
        let f = PowerSeries1::new(vec![Poly::zero(), parse_poly("1+s").unwrap(), Poly::zero()]);
        assert!(f.compositional_inverse().is_err());
    }
}
