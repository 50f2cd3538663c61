use super::*;
use crate::algebra::{parse_poly, Field};
use alloc::vec;

fn p(s: &str, k: &Field) -> TriPoly {
    parse_poly(s, k).unwrap()
}

fn replays(input: &TriPoly, out: &NormalizationOutcome) {
    assert_eq!(out.replay(input).unwrap(), out.poly, "replay of {}", out.branch_label);
}

#[test]
fn quadric_examples() {
    let q = Field::rationals();
    let f = p("x*y", &q);
    let out = normalize_quadric(&f).unwrap();
    assert_eq!(out.poly, p("x^2 - y^2", &q));
    replays(&f, &out);

    for k in [Field::rationals(), Field::prime(2).unwrap(), Field::prime(5).unwrap()] {
        let out = normalize_quadric(&p("x^2", &k)).unwrap();
        assert!(out.auto.is_identity());
    }

    let f2 = Field::prime(2).unwrap();
    let f = p("y*z", &f2);
    let out = normalize_quadric(&f).unwrap();
    assert_eq!(out.poly, f);
    assert_eq!(out.branch_label, "1-2 yz");
}

#[test]
fn quadric_outputs_lie_in_the_finite_lists() {
    let f5 = Field::prime(5).unwrap();
    for s in ["x^2+x*y+y*z", "2*x^2+3*y^2", "x*y+y*z+z*x", "y^2", "3*z^2+x*z"] {
        let f = p(s, &f5);
        let out = normalize_quadric(&f).unwrap();
        replays(&f, &out);
        let k = out.poly.field().clone();
        let allowed = ["x^2", "x^2+y^2", "x^2+y^2+z^2"].map(|t| p(t, &k));
        assert!(allowed.contains(&out.poly), "{s} gave {}", out.poly.format());
    }
    let f2 = Field::prime(2).unwrap();
    for s in ["x^2+x*y", "x^2+y^2+z^2", "x*z+y^2", "x*y+y*z+z*x+x^2", "y^2+y*z+z^2"] {
        let f = p(s, &f2);
        let out = normalize_quadric(&f).unwrap();
        replays(&f, &out);
        let k = out.poly.field().clone();
        let allowed = ["x^2", "y*z", "x^2+y*z"].map(|t| p(t, &k));
        assert!(allowed.contains(&out.poly), "{s} gave {}", out.poly.format());
    }
}

#[test]
fn w2_examples() {
    let q = Field::rationals();
    let f = p("x^2+z^3", &q);
    let out = normalize_w2_cubic(&f).unwrap();
    assert_eq!(out.poly, p("x^2+y^3", &q));
    replays(&f, &out);

    let f = p("x^2+y^2*z+y^3", &q);
    let out = normalize_w2_cubic(&f).unwrap();
    assert_eq!(out.poly, p("x^2+y^2*z", &q));
    replays(&f, &out);

    let out = normalize_w2_cubic(&p("x^2", &q)).unwrap();
    assert!(out.auto.is_identity());
    assert_eq!(out.branch_label, "2-1 x^2");

    let f7 = Field::prime(7).unwrap();
    let f = p("x^2+y*z*(y+2*z)", &f7);
    let out = normalize_w2_cubic(&f).unwrap();
    replays(&f, &out);
    assert_eq!(out.poly.in_w(&doublepoint::W2), out.poly);
    assert_eq!(out.parameters.len(), 1);
}

#[test]
fn w3_w4_w5_examples() {
    let f5 = Field::prime(5).unwrap();
    let f = p("x^2+y^3+z^4", &f5);
    let out = normalize_w3(&f).unwrap();
    assert_eq!(out.poly.in_w(&doublepoint::W3), p("x^2+y^3+x*z^2", &f5));
    assert_eq!(out.poly.field().degree(), 1);
    replays(&f, &out);

    let out = normalize_w5(&p("x^2+y^3+z^5", &f5)).unwrap();
    assert!(out.auto.is_identity());
    assert_eq!(out.branch_label, "5 x^2+y^3+z^5");

    let out = normalize_w4(&p("x^2+y^3", &f5)).unwrap();
    assert!(out.auto.is_identity());

    let q = Field::rationals();
    let f = p("x^2+y^3+3*y*z^3", &q);
    let out = normalize_w4(&f).unwrap();
    assert_eq!(out.poly.in_w(&doublepoint::W4), p("x^2+y^3+y*z^3", &q));
    replays(&f, &out);
}

#[test]
fn earlier_initial_forms_are_preserved() {
    let f7 = Field::prime(7).unwrap();
    let weights = [Weight::STANDARD, doublepoint::W2, doublepoint::W3, doublepoint::W4, doublepoint::W5];
    type Normalizer = fn(&TriPoly) -> Result<NormalizationOutcome>;
    let cases: [(&str, Normalizer, usize); 4] = [
        ("x^2+y^3+3*x*z^2+z^4", normalize_w3, 2),
        ("x^2+y^3+5*y*z^3+x*z^3", normalize_w4, 3),
        ("x^2+y^3+2*z^5+x*y*z^2", normalize_w5, 4),
        ("x^2+y^3+x*y*z+z^6+y*z^4", normalize_w6, 5),
    ];
    for (s, op, n) in cases {
        let f = p(s, &f7);
        let out = op(&f).unwrap();
        replays(&f, &out);
        for w in &weights[..n] {
            assert_eq!(out.poly.in_w(w), f.embed(&out.embedding).in_w(w), "{s} at {w}");
        }
    }
}

#[test]
fn w6_examples() {
    let f7 = Field::prime(7).unwrap();
    let f = p("x^2+y*(y-z^2)*(y-3*z^2)", &f7);
    let out = normalize_w6(&f).unwrap();
    assert!(out.branch_label.starts_with("6-2-1"));
    assert_eq!(out.parameters, vec![(String::from("delta"), f7.from_i64(3))]);
    replays(&f, &out);

    let f2 = Field::prime(2).unwrap();
    let out = normalize_w6(&p("x^2+y^3+x*y*z", &f2)).unwrap();
    assert_eq!(out.branch_label, "6-1-1");
    assert!(out.auto.is_identity());

    let q = Field::rationals();
    assert!(matches!(normalize_w6(&p("x^2+y^3+z^6", &q)), Err(Error::NeedsAlgebraicExtension { .. })));

    let f = p("x^2+y^3+x*z^3+y*z^4+z^6", &f2);
    let out = normalize_w6(&f).unwrap();
    assert!(out.branch_label.starts_with("6-1-2"));
    replays(&f, &out);
    let in6 = out.poly.in_w(&doublepoint::W6);
    for m in in6.terms().keys() {
        assert!(![[0, 1, 4], [0, 0, 6], [1, 1, 1]].contains(&m.0));
    }
}

#[test]
fn quartic_examples() {
    let f2 = Field::prime(2).unwrap();
    let f = p("x^2+x*y*z+y^4", &f2);
    let out = normalize_quartic_211(&f).unwrap();
    assert_eq!(out.branch_label, "q2 a1 != 0");
    replays(&f, &out);

    let out = normalize_quartic_211(&p("x^2", &f2)).unwrap();
    assert!(out.branch_label.starts_with("q1"));

    let f3 = Field::prime(3).unwrap();
    let f = p("x^2+y^4+y^3*z+2*y*z^3", &f3);
    let out = normalize_quartic_211(&f).unwrap();
    assert_eq!(out.branch_label, "q2 yz(y+z)(y+az)");
    replays(&f, &out);

    let q = Field::rationals();
    let f = p("x^2+y^3*z", &q);
    let out = normalize_quartic_211(&f).unwrap();
    assert_eq!(out.branch_label, "q4 y^3z");

    let f = p("x^2+x*y^2+y^3*z+z^4", &f2);
    let out = normalize_quartic_211(&f).unwrap();
    assert!(out.branch_label.starts_with("q3"));
    replays(&f, &out);
    let in211 = out.poly.in_w(&quartic::W211);
    assert_eq!(in211.coeff_of([1, 2, 0]), f2.one());
    assert_eq!(in211.coeff_of([0, 3, 1]), f2.one());

    let f = p("x^2+y^3*z+y*z^3+x*y*z^2", &f2);
    let out = normalize_quartic_211(&f).unwrap();
    replays(&f, &out);
}

#[test]
fn cubic_examples() {
    let f5 = Field::prime(5).unwrap();
    let cases = [
        ("x*y*z", CubicType::Triangle),
        ("x^3+y^2*z", CubicType::Cuspidal),
        ("x*y*(x+y)", CubicType::ConcurrentLines),
        ("x^3+y^3+z^3", CubicType::Smooth),
        ("y^2*z-x^3-x^2*z", CubicType::Nodal),
        ("z*(x*z-y^2)", CubicType::ConicTangentLine),
        ("y*(x*z-y^2)", CubicType::ConicTransverseLine),
        ("x^2*y", CubicType::NonReduced),
    ];
    for (s, ty) in cases {
        let g = p(s, &f5);
        let (got, out) = classify_cubic_cone(&g).unwrap();
        assert_eq!(got, ty, "{s}");
        replays(&g, &out);
    }
}

#[test]
fn cubic_type_is_invariant_under_linear_changes() {
    let f7 = Field::prime(7).unwrap();
    let m: [[Elem; 3]; 3] = core::array::from_fn(|i| core::array::from_fn(|j| f7.from_i64([[1, 2, 3], [0, 1, 5], [4, 0, 1]][i][j])));
    for s in ["x*y*z", "x^3+y^2*z", "x*y*(x+y)", "y^2*z-x^3-x^2*z", "z*(x*z-y^2)", "y*(x*z-y^2)"] {
        let g = p(s, &f7);
        let h = Step::Linear(m.clone()).apply(&g, None).unwrap();
        assert_eq!(classify_cubic_cone(&g).unwrap().0, classify_cubic_cone(&h).unwrap().0, "{s}");
    }
}
