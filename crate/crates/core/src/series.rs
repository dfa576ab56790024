//! One `y`-degree slice of a generating function.
//!
//! A [`Series`] is a finite exact linear combination of monomials
//! `x^e * s^n * t^b`, where `e` may be negative and `n`, `b` are spectra over
//! the `s_i` and `t_i` variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::spectrum::Spectrum;

/// Monomial key, ordered lexicographically on `(x, s, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub x: i32,
    pub s: Spectrum,
    pub t: Spectrum,
}

impl Key {
    pub fn new(x: i32, s: Spectrum, t: Spectrum) -> Self {
        Self { x, s, t }
    }

    /// Product of monomials.
    pub fn times(&self, other: &Key) -> Key {
        Key { x: self.x + other.x, s: &self.s + &other.s, t: &self.t + &other.t }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} s[{}] t[{}]", self.x, self.s, self.t)
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct Series {
    terms: BTreeMap<Key, BigRational>,
}

impl Series {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(key: Key, coeff: BigRational) -> Self {
        let mut s = Self::new();
        s.add_term(key, coeff);
        s
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Key, BigRational> {
        self.terms
    }

    /// Adds `coeff * key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: Key, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient_of(&self, key: &Key) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_assign(&mut self, other: &Series) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn scale(&self, lambda: &BigRational) -> Series {
        if lambda.is_zero() {
            return Series::new();
        }
        Series { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * lambda)).collect() }
    }

    /// `lambda * a + mu * b`.
    pub fn linear_combination(lambda: &BigRational, a: &Series, mu: &BigRational, b: &Series) -> Series {
        let mut r = a.scale(lambda);
        r.add_assign(&b.scale(mu));
        r
    }

    /// Multiplies every term by `x^d`.
    pub fn shift_x(&self, d: i32) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (Key { x: k.x + d, ..k.clone() }, c.clone()))
                .collect(),
        }
    }

    /// Product of two series.
    pub fn mul(&self, other: &Series) -> Series {
        let mut r = Series::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                r.add_term(ka.times(kb), ca * cb);
            }
        }
        r
    }

    /// Keeps only terms satisfying `keep`.
    pub fn filter<F: Fn(&Key) -> bool>(&self, keep: F) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact partial derivative with respect to `s_i`.
    pub fn derivative_s(&self, i: u32) -> Series {
        let mut r = Series::new();
        for (k, c) in &self.terms {
            let m = k.s.get(i);
            if m == 0 {
                continue;
            }
            let s = k.s.without(i).expect("index present");
            r.add_term(Key { x: k.x, s, t: k.t.clone() }, c * BigInt::from(m));
        }
        r
    }

    /// Merges `x` into the exponent-free slot by summing over it (`x = 1`).
    pub fn at_x_one(&self) -> Series {
        let mut r = Series::new();
        for (k, c) in &self.terms {
            r.add_term(Key { x: 0, s: k.s.clone(), t: k.t.clone() }, c.clone());
        }
        r
    }

    /// Merges a collection of partial results by exact addition. The result
    /// does not depend on the order of `parts`.
    pub fn sum<I: IntoIterator<Item = Series>>(parts: I) -> Series {
        let mut r = Series::new();
        for p in parts {
            if r.is_empty() {
                r = p;
            } else {
                r.add_assign(&p);
            }
        }
        r
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) {k}")?;
        }
        Ok(())
    }
}

/// JSON record of one term; numerator and denominator are decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermRecord {
    pub x: i32,
    pub s: Spectrum,
    pub t: Spectrum,
    pub num: String,
    pub den: String,
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(k, c)| TermRecord {
                x: k.x,
                s: k.s.clone(),
                t: k.t.clone(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let records: Vec<TermRecord> = Vec::deserialize(deserializer)?;
        let mut s = Series::new();
        for r in records {
            let c = parse_rational_parts(&r.num, &r.den).map_err(D::Error::custom)?;
            s.add_term(Key::new(r.x, r.s, r.t), c);
        }
        Ok(s)
    }
}

fn parse_rational_parts(num: &str, den: &str) -> Result<BigRational, Error> {
    let n: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad numerator `{num}`")))?;
    let d: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad denominator `{den}`")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

/// Parses `"a/b"` or `"a"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    match text.trim().split_once('/') {
        Some((n, d)) => parse_rational_parts(n.trim(), d.trim()),
        None => parse_rational_parts(text.trim(), "1"),
    }
}

/// Formats a rational as `"a/b"`, or `"a"` when integral.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
