use chordiag::evolution::{evolve, ModelSpec, SpectrumKind, Variant};
use chordiag::kp::{cut_and_join, identity_sides, kp_residual, lambda, operator_identity_check, Identity};
use chordiag::series::{rat, Key, Series};
use chordiag::Spectrum;

fn mono(s: &str) -> Series {
    Series::monomial(Key::new(0, s.parse().unwrap(), Spectrum::new()), rat(1))
}

#[test]
fn point_and_length_models_solve_kp() {
    for (kind, w) in [(SpectrumKind::Point, 8), (SpectrumKind::Length, 3)] {
        let st = evolve(ModelSpec::new(kind, Variant::Orientable, 4, w, 3)).unwrap();
        for eq in 1..=4 {
            for y in 0..=4 {
                let r = kp_residual(&st, eq, y, 3).unwrap();
                assert!(r.is_empty(), "{kind:?} equation {eq} at y^{y}: {r:?}");
            }
        }
    }
}

#[test]
fn non_orientable_length_model_does_not() {
    let st = evolve(ModelSpec::new(SpectrumKind::Length, Variant::NonOrientable, 3, 3, 3)).unwrap();
    assert!((1..=4).any(|eq| !kp_residual(&st, eq, 3, 3).unwrap().is_empty()));
}

#[test]
fn residual_bounds_are_checked() {
    let st = evolve(ModelSpec::new(SpectrumKind::Length, Variant::Orientable, 2, 2, 2)).unwrap();
    assert!(kp_residual(&st, 1, 3, 2).is_err());
    assert!(kp_residual(&st, 1, 2, 3).is_err());
    assert!(kp_residual(&st, 5, 1, 1).is_err());
}

#[test]
fn boson_identities_up_to_weight_ten() {
    assert!(operator_identity_check(Identity::Point, 10));
    assert!(operator_identity_check(Identity::Length, 10));
}

#[test]
fn boson_operators_by_hand() {
    assert_eq!(lambda(-2, &mono("e3")), mono("e1").scale(&rat(3)));
    assert_eq!(lambda(2, &mono("")), mono("2e1").scale(&chordiag::series::ratio(1, 2)));
    let (lhs, rhs) = identity_sides(Identity::Length, &mono("e1"));
    assert_eq!(lhs, rhs);
    assert_eq!(cut_and_join(2, &mono("e1")), lhs);
    assert!(cut_and_join(0, &mono("")).is_empty());
}
