use std::sync::OnceLock;

use chordiag::evolution::{evolve, extract_count, rows, EvolutionState, ModelSpec, SpectrumKind, Variant};
use chordiag::freeprob::{free_add, moments_from_r, r_transform};
use chordiag::power_series::PowerSeries1;
use chordiag::series::{rat, Key, Series};
use chordiag::{DiagramType, Spectrum};
use num_rational::BigRational;
use proptest::prelude::*;

fn spectrum() -> impl Strategy<Value = Spectrum> {
    prop::collection::vec(0u32..5, 0..4).prop_map(Spectrum::from_indices)
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec((-2i32..3, spectrum(), spectrum(), -4i64..5), 0..5).prop_map(|terms| {
        let mut s = Series::new();
        for (x, a, b, c) in terms {
            s.add_term(Key::new(x, a, b), rat(c));
        }
        s
    })
}

fn moments(order: usize) -> impl Strategy<Value = PowerSeries1<BigRational>> {
    prop::collection::vec(-3i64..4, order - 1).prop_map(|mut v| {
        v.insert(0, 1);
        PowerSeries1::from_ints(&v)
    })
}

proptest! {
    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn derivatives_commute_and_obey_leibniz(a in series(), b in series(), i in 0u32..5, j in 0u32..5) {
        prop_assert_eq!(a.derivative_s(i).derivative_s(j), a.derivative_s(j).derivative_s(i));
        let lhs = a.mul(&b).derivative_s(i);
        let rhs = a.derivative_s(i).mul(&b).add(&a.mul(&b.derivative_s(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn spectrum_arithmetic(a in spectrum(), b in spectrum()) {
        let sum = &a + &b;
        prop_assert_eq!(sum.size(), a.size() + b.size());
        prop_assert_eq!(sum.weight(), a.weight() + b.weight());
        prop_assert_eq!(sum.checked_sub(&b).unwrap(), a.clone());
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Spectrum>().unwrap(), a);
    }

    #[test]
    fn r_transform_round_trip(m in moments(7)) {
        prop_assert_eq!(moments_from_r(&r_transform(&m, 7).unwrap()).unwrap(), m);
    }

    #[test]
    fn free_addition_commutes(a in moments(6), b in moments(6)) {
        prop_assert_eq!(free_add(&a, &b, 6).unwrap(), free_add(&b, &a, 6).unwrap());
    }

    #[test]
    fn compositional_inverse(c in prop::collection::vec(-3i64..4, 5), lead in prop::sample::select(vec![-2i64, -1, 1, 3])) {
        let mut v = vec![0, lead];
        v.extend(c);
        let f = PowerSeries1::<BigRational>::from_ints(&v);
        let g = f.compositional_inverse().unwrap();
        prop_assert_eq!(f.compose(&g).unwrap(), PowerSeries1::z(v.len()));
    }

    #[test]
    fn point_terms_satisfy_degree_bookkeeping(slice in 0usize..5, pick in 0usize..1000) {
        let st = point_state(Variant::Orientable);
        let terms: Vec<_> = st.slices()[slice].iter().collect();
        prop_assume!(!terms.is_empty());
        let (key, _) = terms[pick % terms.len()];
        let k = slice as i64;
        prop_assert_eq!(key.s.weight() as i64, key.t.weight() as i64 - 2 * k);
        // size(n) = k - 2g - b + 2 with x = 2g - 2.
        prop_assert_eq!(key.s.size() as i64, k - key.x as i64 - key.t.size() as i64);
    }
}

fn point_state(variant: Variant) -> &'static EvolutionState {
    static OR: OnceLock<EvolutionState> = OnceLock::new();
    static NON: OnceLock<EvolutionState> = OnceLock::new();
    let cell = match variant {
        Variant::Orientable => &OR,
        Variant::NonOrientable => &NON,
    };
    cell.get_or_init(|| evolve(ModelSpec::new(SpectrumKind::Point, variant, 4, 8, 2)).unwrap())
}

#[test]
fn non_orientable_counts_dominate() {
    let or = point_state(Variant::Orientable);
    let non = point_state(Variant::NonOrientable);
    let mut compared = 0;
    for row in rows(or).unwrap() {
        let b_spec = row.b_spec.clone();
        let n_spec = row.n_or_p_spec.clone();
        let t = DiagramType::non_orientable(2 * row.g_or_h, row.k, row.l, b_spec, n_spec);
        let total = extract_count(non, &t).unwrap();
        assert!(total >= row.count.parse().unwrap(), "{t}");
        compared += 1;
    }
    assert!(compared > 50);
}
