//! Chord-removal recursion for one-backbone diagrams.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::spectrum::Spectrum;

pub type RecursionMemo = HashMap<(u32, u32, u32, Spectrum), BigInt>;

fn shifted(n: &Spectrum, plus: &[u32], minus: &[u32]) -> Option<Spectrum> {
    let mut m = n.clone();
    for &i in plus {
        m.add_to(i, 1);
    }
    for &i in minus {
        m.remove_from(i, 1).ok()?;
    }
    Some(m)
}

fn delta(a: u32, b: u32) -> i64 {
    (a == b) as i64
}

/// Number of connected genus-`g` diagrams with `k` chords and `l` marked
/// points on a single backbone of `2k + l` vertices, with boundary point
/// spectrum `n`.
pub fn one_backbone_recursion(g: u32, k: u32, l: u32, n: &Spectrum, memo: &mut RecursionMemo) -> BigInt {
    if n.weight() != l || n.size() as i64 != k as i64 + 1 - 2 * g as i64 {
        return BigInt::zero();
    }
    if k == 0 {
        return if g == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let memo_key = (g, k, l, n.clone());
    if let Some(v) = memo.get(&memo_key) {
        return v.clone();
    }

    let max_i = l + 2;
    let mut total = BigInt::zero();
    for i in 0..=max_i {
        // Erased chord separated two boundary cycles.
        for j in 0..=i {
            if let Some(m) = shifted(n, &[i + 2], &[j, i - j]) {
                let c = one_backbone_recursion(g, k - 1, l + 2, &m, memo);
                if !c.is_zero() {
                    total += c * BigInt::from((i + 2) as i64 * (n.get(i + 2) as i64 + 1));
                }
            }
        }
        // Erased chord was traversed twice by one boundary cycle.
        if g == 0 {
            continue;
        }
        for j in 1..=i + 1 {
            let jj = i + 2 - j;
            let Some(m) = shifted(n, &[j, jj], &[i]) else { continue };
            let f1 = n.get(j) as i64 + 1 + delta(j, jj) - delta(i, j);
            let f2 = n.get(jj) as i64 + 1 - delta(j, 2);
            let w = (j * jj) as i64 * f1 * f2;
            if w == 0 {
                continue;
            }
            let c = one_backbone_recursion(g - 1, k - 1, l + 2, &m, memo);
            if !c.is_zero() {
                total += c * BigInt::from(w);
            }
        }
    }
    let (q, r) = total.div_rem(&BigInt::from(2 * k as i64));
    assert!(r.is_zero(), "recursion produced a non-integral count");
    memo.insert(memo_key, q.clone());
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> Spectrum {
        s.parse().unwrap()
    }

    fn n(g: u32, k: u32, l: u32, spec: &str) -> i64 {
        let mut memo = RecursionMemo::new();
        one_backbone_recursion(g, k, l, &sp(spec), &mut memo).try_into().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(n(0, 1, 0, "2e0"), 1);
        assert_eq!(n(1, 2, 0, "e0"), 1);
        assert_eq!(n(0, 2, 0, "3e0"), 2);
        assert_eq!(n(0, 0, 3, "e3"), 1);
        assert_eq!(n(0, 0, 3, "e1+e2"), 0);
    }

    #[test]
    fn genus_zero_complete_diagrams_are_catalan() {
        let cat = [1, 1, 2, 5, 14, 42, 132];
        for (k, &c) in cat.iter().enumerate() {
            let k = k as u32;
            assert_eq!(n(0, k, 0, &format!("{}e0", k + 1)), c, "k={k}");
        }
    }
}
