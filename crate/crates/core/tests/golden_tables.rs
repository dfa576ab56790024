use chordiag::checks::{non_orientable_polygon_table, planar_one_backbone_polynomials};
use chordiag::evolution::{evolve, extract_count, ModelSpec, Variant};
use chordiag::poly::parse_poly;
use chordiag::{DiagramType, Spectrum};
use num_bigint::BigInt;

#[test]
fn planar_polynomials_by_vertex_count() {
    let p = planar_one_backbone_polynomials(8).unwrap();
    let want = [
        "1",
        "q*s",
        "q*s^2 + 1",
        "q*s^3 + 3*q*s",
        "q*s^4 + (4*q + 2*q^2)*s^2 + 2",
        "q*s^5 + (5*q + 5*q^2)*s^3 + 10*q*s",
        "q*s^6 + (6*q + 9*q^2)*s^4 + (15*q + 15*q^2)*s^2 + 5",
        "q*s^7 + (7*q + 14*q^2)*s^5 + (21*q + 42*q^2 + 7*q^3)*s^3 + 35*q*s",
        "q*s^8 + (8*q + 20*q^2)*s^6 + (28*q + 84*q^2 + 28*q^3)*s^4 + (56*q + 84*q^2)*s^2 + 14",
    ];
    for (m, w) in want.iter().enumerate() {
        assert_eq!(p[m], parse_poly(w).unwrap(), "m={m}");
    }
}

#[test]
fn decagon_ends() {
    let table = non_orientable_polygon_table(10).unwrap();
    assert_eq!(table[0], parse_poly("s10").unwrap());
    assert_eq!(table[5], parse_poly("42*s0^6+386*s0^5+2290*s0^4+7150*s0^3+12143*s0^2+8229*s0").unwrap());
}

#[test]
fn decagon_one_chord_with_eight_marked_points() {
    // Summed over the number of empty boundary cycles, as setting s_0 = 1 does.
    let state = evolve(ModelSpec::one_backbone_point(Variant::NonOrientable, 10)).unwrap();
    let b = Spectrum::unit(10);
    let total: BigInt = (0..=3)
        .flat_map(|h| (0..=2).map(move |n0| (h, n0)))
        .map(|(h, n0)| {
            let n: Spectrum = Spectrum::from_pairs([(0, n0), (8, 1)]);
            let t = DiagramType::non_orientable(h, 1, 8, b.clone(), n);
            if chordiag::validate_type(&t) {
                extract_count(&state, &t).unwrap()
            } else {
                BigInt::from(0)
            }
        })
        .sum();
    // 45 s_8 from the twisted chords plus 10 s_0 s_8 from the untwisted ones.
    assert_eq!(total, BigInt::from(55));
    let twisted = DiagramType::non_orientable(1, 1, 8, b, Spectrum::unit(8));
    assert_eq!(extract_count(&state, &twisted).unwrap(), BigInt::from(45));
}

#[test]
fn square_gluings() {
    let state = evolve(ModelSpec::one_backbone_point(Variant::Orientable, 4)).unwrap();
    let e4 = Spectrum::unit(4);
    let planar = DiagramType::orientable(0, 2, 0, e4.clone(), Spectrum::single(0, 3));
    let torus = DiagramType::orientable(1, 2, 0, e4, Spectrum::unit(0));
    assert_eq!(extract_count(&state, &planar).unwrap(), BigInt::from(2));
    assert_eq!(extract_count(&state, &torus).unwrap(), BigInt::from(1));
}
