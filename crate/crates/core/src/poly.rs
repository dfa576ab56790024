//! Sparse Laurent polynomials over the rationals in named symbols, and the
//! small ring abstraction shared by the truncated power series.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::series::format_rational;

/// Exact commutative coefficient ring.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: BigRational) -> Self;
    /// Multiplicative inverse if `self` is a unit.
    fn inverse(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn scale_int(&self, n: i64) -> Self {
        self.mul(&Self::from_int(n))
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn inverse(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Product of symbol powers; exponents may be negative.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(BTreeMap<String, i32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(name: &str, exp: i32) -> Self {
        let mut m = Self::one();
        if exp != 0 {
            m.0.insert(name.to_string(), exp);
        }
        m
    }

    pub fn exponent(&self, name: &str) -> i32 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut r = self.clone();
        for (v, e) in &other.0 {
            let slot = r.0.entry(v.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                r.0.remove(v);
            }
        }
        r
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), -e)).collect())
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i32)> {
        self.0.iter().map(|(v, e)| (v.as_str(), *e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn constant(q: BigRational) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial::one(), q);
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        Self::term(BigRational::one(), Monomial::var(name, 1))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut p = Self::default();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Constant term if the polynomial has no symbol dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.symbols().map(str::to_string)).collect()
    }

    /// Evaluates at rational values for every symbol.
    pub fn evaluate(&self, values: &BTreeMap<String, BigRational>) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (sym, e) in m.iter() {
                let x = values.get(sym)?;
                if e < 0 && x.is_zero() {
                    return None;
                }
                let base = if e < 0 { x.recip() } else { x.clone() };
                v *= num_traits::pow(base, e.unsigned_abs() as usize);
            }
            total += v;
        }
        Some(total)
    }

    /// Substitutes a rational value for one symbol, keeping the others.
    pub fn substitute(&self, name: &str, value: &BigRational) -> Option<Poly> {
        let mut r = Poly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(name);
            if e < 0 && value.is_zero() {
                return None;
            }
            let base = if e < 0 { value.recip() } else { value.clone() };
            let factor = num_traits::pow(base, e.unsigned_abs() as usize);
            let rest = m.times(&Monomial::var(name, -e));
            r.add_term(rest, c * factor);
        }
        Some(r)
    }

    /// Highest exponent of `name` among the terms.
    pub fn degree_in(&self, name: &str) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(name)).max()
    }

    /// Every term has integral coefficient and non-negative exponents.
    pub fn is_integral_polynomial(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| c.is_integer() && m.iter().all(|(_, e)| e >= 0))
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        let mut r = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.times(mb), ca * cb);
            }
        }
        r
    }
    fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn from_rational(q: BigRational) -> Self {
        Self::constant(q)
    }
    /// Units of the Laurent ring are the single-term polynomials.
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        Some(Poly::term(c.recip(), m.inverse()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if *m == Monomial::one() {
                write!(f, "{}", format_rational(&mag))?;
            } else if num_traits::One::is_one(&mag) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Parses a polynomial such as `"q*s^5 + (5*q + 5*q^2)*s^3 - 1/2*q^-1"`.
/// Sums, products, integer powers, rational constants and parentheses are
/// accepted; negative powers only of monomials.
pub fn parse_poly(text: &str) -> Result<Poly, crate::Error> {
    let tokens: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = PolyParser { tokens: &tokens, pos: 0 };
    let p = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(parser.error());
    }
    Ok(p)
}

struct PolyParser<'a> {
    tokens: &'a [char],
    pos: usize,
}

impl PolyParser<'_> {
    fn error(&self) -> crate::Error {
        let text: String = self.tokens.iter().collect();
        crate::Error::Parse(format!("bad polynomial `{text}` at position {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, crate::Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, crate::Error> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt, crate::Error> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.tokens[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error())
    }

    fn power(&mut self) -> Result<Poly, crate::Error> {
        if self.eat('-') {
            return Ok(self.power()?.neg());
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let e: u32 = self.integer()?.try_into().map_err(|_| self.error())?;
        if negative {
            base.inverse().map(|b| b.pow(e)).ok_or_else(|| self.error())
        } else {
            Ok(base.pow(e))
        }
    }

    fn atom(&mut self) -> Result<Poly, crate::Error> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error());
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat('/') { self.integer()? } else { BigInt::from(1) };
                if num_traits::Zero::is_zero(&den) {
                    return Err(self.error());
                }
                Ok(Poly::constant(BigRational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.tokens[start..self.pos].iter().collect();
                Ok(Poly::var(&name))
            }
            _ => Err(self.error()),
        }
    }
}
