//! Sparse multiplicity vectors.
//!
//! A [`Spectrum`] records how many objects carry each non-negative index:
//! backbones by vertex count, boundary cycles by marked-point count or by
//! length, perimeter vertices by degree. It is the monomial exponent vector
//! of every generating function in this crate.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Finite mapping `index -> multiplicity` with no stored zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spectrum(BTreeMap<u32, u32>);

impl Spectrum {
    pub fn new() -> Self {
        Self::default()
    }

    /// The unit vector `e_i`.
    pub fn unit(index: u32) -> Self {
        Self::single(index, 1)
    }

    /// `multiplicity * e_index`.
    pub fn single(index: u32, multiplicity: u32) -> Self {
        let mut s = Self::new();
        s.add_to(index, multiplicity);
        s
    }

    /// Builds a spectrum from `(index, multiplicity)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut s = Self::new();
        for (i, m) in pairs {
            s.add_to(i, m);
        }
        s
    }

    /// Histogram of a list of indices: `[1, 2, 2]` becomes `e_1 + 2 e_2`.
    pub fn from_indices<I: IntoIterator<Item = u32>>(indices: I) -> Self {
        let mut s = Self::new();
        for i in indices {
            s.add_to(i, 1);
        }
        s
    }

    pub fn get(&self, index: u32) -> u32 {
        self.0.get(&index).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total multiplicity `sum_i m_i`.
    pub fn size(&self) -> u32 {
        self.0.values().sum()
    }

    /// `sum_i i * m_i`.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(i, m)| i * m).sum()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    /// Iterates `(index, multiplicity)` in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&i, &m)| (i, m))
    }

    pub fn add_to(&mut self, index: u32, by: u32) {
        if by > 0 {
            *self.0.entry(index).or_insert(0) += by;
        }
    }

    /// Removes `by` copies of `index`; fails without modifying `self` when
    /// fewer are present.
    pub fn remove_from(&mut self, index: u32, by: u32) -> Result<(), Error> {
        let have = self.get(index);
        if have < by {
            return Err(Error::NegativeMultiplicity { index });
        }
        if have == by {
            self.0.remove(&index);
        } else if by > 0 {
            self.0.insert(index, have - by);
        }
        Ok(())
    }

    /// Copy of `self` with `e_index` added.
    pub fn with(&self, index: u32) -> Self {
        let mut s = self.clone();
        s.add_to(index, 1);
        s
    }

    /// Copy of `self` with one `e_index` removed, or `None` if absent.
    pub fn without(&self, index: u32) -> Option<Self> {
        let mut s = self.clone();
        s.remove_from(index, 1).ok().map(|_| s)
    }

    pub fn checked_add(&self, other: &Spectrum) -> Spectrum {
        let mut s = self.clone();
        for (i, m) in other.iter() {
            s.add_to(i, m);
        }
        s
    }

    /// Componentwise difference; errors instead of going negative.
    pub fn checked_sub(&self, other: &Spectrum) -> Result<Spectrum, Error> {
        let mut s = self.clone();
        for (i, m) in other.iter() {
            s.remove_from(i, m)?;
        }
        Ok(s)
    }

    /// The sorted list of indices, each repeated by its multiplicity.
    pub fn to_indices(&self) -> Vec<u32> {
        self.iter()
            .flat_map(|(i, m)| std::iter::repeat(i).take(m as usize))
            .collect()
    }

    /// Number of distinct orderings of the multiset, `size! / prod m_i!`.
    pub fn arrangements(&self) -> num_bigint::BigUint {
        let mut r = factorial(self.size());
        for (_, m) in self.iter() {
            r /= factorial(m);
        }
        r
    }
}

pub(crate) fn factorial(n: u32) -> num_bigint::BigUint {
    (1..=n).fold(num_bigint::BigUint::from(1u32), |acc, i| acc * i)
}

impl std::ops::Add for &Spectrum {
    type Output = Spectrum;
    fn add(self, rhs: &Spectrum) -> Spectrum {
        self.checked_add(rhs)
    }
}

impl fmt::Display for Spectrum {
    /// `2e0+e3`, or `0` for the empty spectrum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, m) in self.iter() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if m == 1 {
                write!(f, "e{i}")?;
            } else {
                write!(f, "{m}e{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spectrum({self})")
    }
}

impl std::str::FromStr for Spectrum {
    type Err = Error;

    /// Parses the `Display` form, e.g. `2e0+e3`; `0` or the empty string is
    /// the empty spectrum.
    fn from_str(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        let mut s = Spectrum::new();
        if text.is_empty() || text == "0" {
            return Ok(s);
        }
        for part in text.split('+') {
            let part = part.trim();
            let bad = || Error::Parse(format!("bad spectrum term `{part}`"));
            let (mult, idx) = part.split_once('e').ok_or_else(bad)?;
            let mult = if mult.is_empty() { 1 } else { mult.parse().map_err(|_| bad())? };
            let idx = idx.parse().map_err(|_| bad())?;
            s.add_to(idx, mult);
        }
        Ok(s)
    }
}

// Canonical JSON: sorted array of [index, multiplicity].
impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[u32; 2]> = self.iter().map(|(i, m)| [i, m]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<[u32; 2]> = Vec::deserialize(deserializer)?;
        Ok(Spectrum::from_pairs(pairs.into_iter().map(|[i, m]| (i, m))))
    }
}
