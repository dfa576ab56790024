use std::collections::BTreeMap;

use chordiag::evolution::{evolve, extract_length_count, rows, ModelSpec, SpectrumKind, Variant};
use chordiag::oracle::{count_types, count_types_for_spectrum};
use chordiag::{evolution::extract_count, Spectrum};
use num_bigint::BigInt;

/// Multisets of positive sizes with at most `max_b` parts and total at most
/// `max_w`.
fn backbone_spectra(max_b: u32, max_w: u32) -> Vec<Spectrum> {
    fn rec(min: u32, parts_left: u32, w_left: u32, cur: &mut Vec<u32>, out: &mut Vec<Spectrum>) {
        if !cur.is_empty() {
            out.push(Spectrum::from_indices(cur.iter().copied()));
        }
        if parts_left == 0 {
            return;
        }
        for s in min..=w_left {
            cur.push(s);
            rec(s, parts_left - 1, w_left - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, max_b, max_w, &mut Vec::new(), &mut out);
    out
}

fn point_model_matches_oracle(variant: Variant, max_b: u32, max_w: u32) {
    let state = evolve(ModelSpec::new(SpectrumKind::Point, variant, (max_w / 2) as usize, max_w, max_b)).unwrap();
    state.check_integrality().unwrap();
    let mut oracle_total = BigInt::from(0);
    for b_spec in backbone_spectra(max_b, max_w) {
        for k in 0..=b_spec.weight() / 2 {
            let mut by_point_type = BTreeMap::new();
            for (mut t, c) in count_types_for_spectrum(&b_spec, k, variant) {
                t.p_spec = None;
                *by_point_type.entry(t).or_insert_with(|| BigInt::from(0)) += c;
            }
            for (t, c) in by_point_type {
                assert_eq!(extract_count(&state, &t).unwrap(), c, "type {t}");
                oracle_total += c;
            }
        }
    }
    // No type is produced by the evolution that the oracle lacks.
    let evo_total: BigInt = rows(&state).unwrap().iter().map(|r| r.count.parse::<BigInt>().unwrap()).sum();
    assert_eq!(evo_total, oracle_total);
}

#[test]
fn orientable_point_model_one_backbone() {
    point_model_matches_oracle(Variant::Orientable, 1, 10);
}

#[test]
fn non_orientable_point_model_one_backbone() {
    point_model_matches_oracle(Variant::NonOrientable, 1, 8);
}

#[test]
fn orientable_point_model_many_backbones() {
    point_model_matches_oracle(Variant::Orientable, 3, 7);
}

#[test]
fn non_orientable_point_model_many_backbones() {
    point_model_matches_oracle(Variant::NonOrientable, 3, 6);
}

/// Compositions of `total` into `parts` positive parts.
fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn length_model_matches_oracle(variant: Variant, max_k: u32, max_b: u32) {
    let state = evolve(ModelSpec::new(SpectrumKind::Length, variant, max_k as usize, max_b, max_b)).unwrap();
    state.check_integrality().unwrap();
    for b in 1..=max_b {
        for k in 0..=max_k {
            let tuples = if k == 0 && b == 1 { vec![vec![0]] } else { compositions(2 * k, b) };
            let mut oracle: BTreeMap<(u32, Spectrum), BigInt> = BTreeMap::new();
            for sizes in tuples {
                for (t, c) in count_types(&sizes, k, variant, true) {
                    *oracle.entry((t.genus, t.p_spec.unwrap())).or_insert_with(|| BigInt::from(0)) += c;
                }
            }
            for ((genus, p), c) in &oracle {
                assert_eq!(&extract_length_count(&state, variant, *genus, k, b, p).unwrap(), c, "b={b} k={k} p={p}");
            }
            // Every evolution term of this (k, b) is accounted for.
            let x_of = |g: u32| match variant {
                Variant::Orientable => 2 * g as i32 - 2,
                Variant::NonOrientable => g as i32 - 2,
            };
            let covered = state
                .slice(k as usize)
                .unwrap()
                .iter()
                .filter(|(key, _)| key.t.size() == b)
                .all(|(key, _)| oracle.keys().any(|(g, p)| x_of(*g) == key.x && *p == key.s));
            assert!(covered, "evolution has extra terms at b={b} k={k}");
        }
    }
}

#[test]
fn orientable_length_model() {
    length_model_matches_oracle(Variant::Orientable, 4, 3);
}

#[test]
fn non_orientable_length_model() {
    length_model_matches_oracle(Variant::NonOrientable, 3, 3);
}
