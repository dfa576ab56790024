use chordiag::complete::{complete_series, harer_zagier_failures, harer_zagier_numbers, shape_polynomial, shapes_relation};
use chordiag::evolution::{evolve, EvolutionState, ModelSpec, SpectrumKind, Variant};
use chordiag::power_series::PowerSeries1;
use num_rational::BigRational;

fn length_state(max_k: usize, max_b: u32) -> EvolutionState {
    evolve(ModelSpec::new(SpectrumKind::Length, Variant::Orientable, max_k, max_b, max_b)).unwrap()
}

fn ints(v: &[i64]) -> PowerSeries1<BigRational> {
    PowerSeries1::from_ints(v)
}

#[test]
fn harer_zagier_numbers_obey_their_recursion() {
    let st = length_state(8, 1);
    let table = harer_zagier_numbers(&st, 4, 9).unwrap();
    assert!(harer_zagier_failures(&table).is_empty());
    assert_eq!(table[0], ints(&[1, 1, 2, 5, 14, 42, 132, 429, 1430]).coeffs());
    assert_eq!(table[2][4], BigRational::from_integer(21.into()));
    assert_eq!(table[4][8], BigRational::from_integer(225225.into()));
}

#[test]
fn recursion_check_detects_a_wrong_entry() {
    let st = length_state(6, 1);
    let mut table = harer_zagier_numbers(&st, 3, 7).unwrap();
    table[1][4] += BigRational::from_integer(1.into());
    assert!(harer_zagier_failures(&table).contains(&(1, 4)));
}

#[test]
fn shape_polynomials() {
    let st = length_state(4, 2);
    assert_eq!(shape_polynomial(&st, 1, 1).unwrap(), ints(&[0, 0, 0, 1, 2, 1]));
    let half = BigRational::new(1.into(), 2.into());
    let zero = BigRational::from_integer(0.into());
    let s02 = shape_polynomial(&st, 0, 2).unwrap();
    assert_eq!(s02.coeffs(), &[zero.clone(), zero.clone(), zero, half.clone(), half][..]);
}

#[test]
fn chord_diagrams_inflate_from_shapes() {
    let st = length_state(6, 2);
    for (g, b) in [(1, 1), (0, 2)] {
        let (lhs, rhs) = shapes_relation(&st, g, b, 7).unwrap();
        assert_eq!(lhs, rhs, "(g, b) = ({g}, {b})");
    }
    assert_eq!(complete_series(&st, 0, 2, 4).unwrap().coeff(1), BigRational::new(1.into(), 2.into()));
}

#[test]
fn single_chord_shape_inflates_to_central_binomials() {
    let st = length_state(6, 1);
    let (lhs, rhs) = shapes_relation(&st, 0, 1, 7).unwrap();
    assert_eq!(lhs, ints(&[1, 1, 2, 5, 14, 42, 132]));
    assert_eq!(rhs, ints(&[1, 2, 6, 20, 70, 252, 924]));
}
