//! The differential operators driving the evolution in the chord count.
//!
//! `L0`, `L1`, `L2`, `Q` act on the boundary-point variables; `K0`, `K1`,
//! `K2`, `R` on the boundary-length variables. Every function here applies
//! only the action on the `s` variables. Powers of `x` and the factors of
//! two of the non-orientable equations are supplied by the stepping code.
//!
//! ```text
//! L0 = 1/2 sum_{i>=0} sum_{j=0..i} (i+2) s_j s_{i-j} d/ds_{i+2}
//! L1 = 1/2 sum_{i>=0} (i+2)(i+1) s_i d/ds_{i+2}
//! L2 = 1/2 sum_{i>=2} s_{i-2} sum_{j=1..i-1} j(i-j) d^2/ds_j ds_{i-j}
//! Q(F,G) = 1/2 sum_{i>=2} s_{i-2} sum_{j=1..i-1} j(i-j) dF/ds_j dG/ds_{i-j}
//!
//! K0 = 1/2 sum_{i>=3} sum_{j=1..i-1} (i-2) s_j s_{i-j} d/ds_{i-2}
//! K1 = 1/2 sum_{i>=3} (i-2)(i-1) s_i d/ds_{i-2}
//! K2 = 1/2 sum_{i>=2} sum_{j=1..i-1} j(i-j) s_{i+2} d^2/ds_j ds_{i-j}
//! R(F,G) = 1/2 sum_{i>=2} s_{i+2} sum_{j=1..i-1} j(i-j) dF/ds_j dG/ds_{i-j}
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::series::{Key, Series};
use crate::spectrum::Spectrum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinearOperator {
    L0,
    L1,
    L2,
    K0,
    K1,
    K2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BilinearOperator {
    Q,
    R,
}

const CHUNK: usize = 64;

/// Applies `f` to every term, merging per-chunk results by exact addition.
fn for_each_term<F>(s: &Series, f: F) -> Series
where
    F: Fn(&Key, &BigRational, &mut Series) + Sync,
{
    let terms: Vec<(&Key, &BigRational)> = s.iter().collect();
    if terms.len() <= CHUNK {
        let mut acc = Series::new();
        for (k, c) in terms {
            f(k, c, &mut acc);
        }
        return acc;
    }
    let parts: Vec<Series> = terms
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = Series::new();
            for (k, c) in chunk {
                f(k, c, &mut acc);
            }
            acc
        })
        .collect();
    Series::sum(parts)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn half(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

fn replace(s: &Spectrum, remove: &[u32], add: &[u32]) -> Spectrum {
    let mut r = s.clone();
    for &i in remove {
        r.remove_from(i, 1).expect("index present");
    }
    for &i in add {
        r.add_to(i, 1);
    }
    r
}

/// Second-derivative pairs `(j, j', multiplicity factor)` of a monomial over
/// indices `>= 1`, each unordered pair once, with the weight `j j'` for
/// distinct indices and `j^2 / 2` for a repeated index (the ordered sum and
/// the prefactor one half are already folded in).
fn derivative_pairs(s: &Spectrum) -> Vec<(u32, u32, BigRational)> {
    let entries: Vec<(u32, u32)> = s.iter().filter(|(i, _)| *i >= 1).collect();
    let mut out = Vec::new();
    for (a, &(j, mj)) in entries.iter().enumerate() {
        if mj >= 2 {
            let w = half((j as i64) * (j as i64) * (mj as i64) * (mj as i64 - 1));
            out.push((j, j, w));
        }
        for &(j2, mj2) in &entries[a + 1..] {
            let w = q((j as i64) * (j2 as i64) * (mj as i64) * (mj2 as i64));
            out.push((j, j2, w));
        }
    }
    out
}

/// Splitting creation pairs `{j, total - j}` with `lo <= j <= total - j`,
/// with weight 2 for distinct indices and 1 for a repeated one (the ordered
/// sum over `j` collapsed onto unordered pairs).
fn split_pairs(total: u32, lo: u32) -> impl Iterator<Item = (u32, u32, i64)> {
    (lo..=total / 2).filter(move |&j| total - j >= lo).map(move |j| {
        let w = if 2 * j == total { 1 } else { 2 };
        (j, total - j, w)
    })
}

pub fn apply_linear_operator(op: LinearOperator, s: &Series) -> Series {
    match op {
        LinearOperator::L0 => l0(s),
        LinearOperator::L1 => l1(s),
        LinearOperator::L2 => l2(s),
        LinearOperator::K0 => k0(s),
        LinearOperator::K1 => k1(s),
        LinearOperator::K2 => k2(s),
    }
}

pub fn apply_bilinear(op: BilinearOperator, a: &Series, b: &Series) -> Series {
    match op {
        BilinearOperator::Q => bilinear_filtered(a, b, q_target, |_| true),
        BilinearOperator::R => bilinear_filtered(a, b, r_target, |_| true),
    }
}

/// Joins two boundary cycles' marked points: a chord between distinct
/// cycles carrying `j` and `i-j` marked points.
pub fn l0(s: &Series) -> Series {
    for_each_term(s, |key, c, acc| {
        for (a, ma) in key.s.iter().filter(|(a, _)| *a >= 2) {
            let i = a - 2;
            let base = c * q(ma as i64);
            for (j, j2, w) in split_pairs(i, 0) {
                // 1/2 (i+2) times the pair weight.
                let coeff = &base * half(w * a as i64);
                let s2 = replace(&key.s, &[a], &[j, j2]);
                acc.add_term(Key::new(key.x, s2, key.t.clone()), coeff);
            }
        }
    })
}

pub fn l1(s: &Series) -> Series {
    for_each_term(s, |key, c, acc| {
        for (a, ma) in key.s.iter().filter(|(a, _)| *a >= 2) {
            let coeff = c * half(ma as i64 * a as i64 * (a as i64 - 1));
            let s2 = replace(&key.s, &[a], &[a - 2]);
            acc.add_term(Key::new(key.x, s2, key.t.clone()), coeff);
        }
    })
}

pub fn l2(s: &Series) -> Series {
    for_each_term(s, |key, c, acc| {
        for (j, j2, w) in derivative_pairs(&key.s) {
            let s2 = replace(&key.s, &[j, j2], &[j + j2 - 2]);
            acc.add_term(Key::new(key.x, s2, key.t.clone()), c * w);
        }
    })
}

pub fn k0(s: &Series) -> Series {
    for_each_term(s, |key, c, acc| {
        for (a, ma) in key.s.iter().filter(|(a, _)| *a >= 1) {
            let base = c * q(ma as i64);
            for (j, j2, w) in split_pairs(a + 2, 1) {
                let coeff = &base * half(w * a as i64);
                let s2 = replace(&key.s, &[a], &[j, j2]);
                acc.add_term(Key::new(key.x, s2, key.t.clone()), coeff);
            }
        }
    })
}

pub fn k1(s: &Series) -> Series {
    for_each_term(s, |key, c, acc| {
        for (a, ma) in key.s.iter().filter(|(a, _)| *a >= 1) {
            let coeff = c * half(ma as i64 * a as i64 * (a as i64 + 1));
            let s2 = replace(&key.s, &[a], &[a + 2]);
            acc.add_term(Key::new(key.x, s2, key.t.clone()), coeff);
        }
    })
}

pub fn k2(s: &Series) -> Series {
    for_each_term(s, |key, c, acc| {
        for (j, j2, w) in derivative_pairs(&key.s) {
            let s2 = replace(&key.s, &[j, j2], &[j + j2 + 2]);
            acc.add_term(Key::new(key.x, s2, key.t.clone()), c * w);
        }
    })
}

/// `1/2 sum_{j, j' >= 1} j j' s_{target(j+j')} (dA/ds_j)(dB/ds_j')`; `x` and
/// the `t` spectra of the two factors multiply. Terms whose `t` spectrum
/// fails `keep_t` are never created.
pub(crate) fn bilinear_filtered<F, K>(a: &Series, b: &Series, target: F, keep_t: K) -> Series
where
    F: Fn(u32) -> Option<u32> + Sync,
    K: Fn(&Spectrum) -> bool + Sync,
{
    let b_terms: Vec<(&Key, &BigRational)> = b.iter().collect();
    for_each_term(a, |ka, ca, acc| {
        for (kb, cb) in &b_terms {
            let t = &ka.t + &kb.t;
            if !keep_t(&t) {
                continue;
            }
            let cab = ca * *cb;
            for (j, mj) in ka.s.iter().filter(|(j, _)| *j >= 1) {
                for (j2, mj2) in kb.s.iter().filter(|(j, _)| *j >= 1) {
                    let Some(new_index) = target(j + j2) else { continue };
                    let w = half(j as i64 * j2 as i64 * mj as i64 * mj2 as i64);
                    let mut s2 = ka.s.without(j).expect("present");
                    s2 = &s2 + &kb.s.without(j2).expect("present");
                    s2.add_to(new_index, 1);
                    acc.add_term(Key::new(ka.x + kb.x, s2, t.clone()), &cab * w);
                }
            }
        }
    })
}

pub(crate) fn q_target(i: u32) -> Option<u32> {
    i.checked_sub(2)
}

pub(crate) fn r_target(i: u32) -> Option<u32> {
    Some(i + 2)
}
