use super::*;
use crate::exactpoly::{int, parse, parse_with, rat};

fn sections(alpha: i64) -> (MultiPoly, MultiPoly) {
    let c = [("alpha", int(alpha))];
    let phi = parse_with("A0^2*(A0^2 + A2^2/12 - alpha/4*A0*A1)", &c).unwrap();
    let psi = parse_with(
        "A0^3*(A2^3/216 + A0*A1^2/16 - alpha/48*A0*A1*A2 - A0^2*A2/6 + alpha^2/16*A0^3)",
        &c,
    )
    .unwrap();
    (phi, psi)
}

fn quintic(alpha: i64) -> MultiPoly {
    let (phi, psi) = sections(alpha);
    let delta = &phi.pow_u(3) - &psi.pow_u(2).scale(&int(27));
    let (k, q) = delta.extract_power(&parse("A0").unwrap()).unwrap();
    assert_eq!(k, crate::exactpoly::Order::Finite(7));
    q
}

#[test]
fn chart_round_trip() {
    let f = parse("A0^2*A1 + 3*A1*A2^2 - A2^3").unwrap();
    for i in 0..3 {
        let c = AffineChart::standard(i);
        let d = c.dehomogenize(&f);
        assert_eq!(c.homogenize(&d, 3), f, "chart {i}");
    }
    let c = AffineChart::standard(1);
    let p = c.to_projective(&(int(0), int(0)));
    assert_eq!(p, [int(0), int(1), int(0)]);
    assert_eq!(c.from_projective(&[int(2), int(4), int(6)]), Some((rat(1, 2), rat(3, 2))));
}

#[test]
fn quintic_singular_points_alpha_one() {
    let chart = AffineChart::standard(0);
    let f = chart.dehomogenize(&quintic(1));
    let s = rational_singular_points(&f, &chart).unwrap();
    assert_eq!(s.rational_points(), vec![(int(-1), rat(-7, 4)), (int(1), rat(9, 4))]);
    for p in &s.points {
        if let PointLocation::Rational { .. } = p.point {
            assert_eq!(p.classification, Some(SingularityKind::Node));
            assert!(!p.node_determinant.as_ref().unwrap().is_zero());
        }
    }
    assert_eq!(s.clusters.len(), 1);
    let quartic = UniPoly::from_multi(&parse("3*a2^4 - a2^3 + 72*a2^2 - 108*a2 + 27*17").unwrap(), "a2").unwrap();
    let got = UniPoly::from_multi(&s.clusters[0].eliminant, "a2").unwrap();
    assert!(got.associated(&quartic));
    assert!(got.is_squarefree());
    assert_eq!(s.cluster_count(), 4);
}

#[test]
fn smooth_conic_has_no_singular_points() {
    let chart = AffineChart { index: 0, coords: ["x".into(), "y".into()] };
    let s = rational_singular_points(&parse("x^2 + y^2 - 1").unwrap(), &chart).unwrap();
    assert!(s.points.is_empty() && s.clusters.is_empty());
    assert!(matches!(
        rational_singular_points(&parse("(x^2 + y^2 - 1)^2").unwrap(), &chart),
        Err(CurveError::NotReduced(_))
    ));
}

fn xy() -> AffineChart {
    AffineChart { index: 0, coords: ["x".into(), "y".into()] }
}

#[test]
fn double_point_types() {
    let origin = (int(0), int(0));
    let kind = |s: &str| classify_double_point(&parse(s).unwrap(), &xy(), &origin).unwrap().classification.unwrap();
    assert_eq!(kind("x^3 - 27*y^2"), SingularityKind::Cusp);
    assert_eq!(kind("x^2 - y^2"), SingularityKind::Node);
    assert_eq!(kind("x^2 - y^4"), SingularityKind::Tacnode);
    assert_eq!(kind("x^3 - y^3"), SingularityKind::Multiplicity { order: 3 });
    assert_eq!(kind("(y - x^2)^2 - x^5"), SingularityKind::Unresolved { depth: DOUBLE_POINT_DEPTH });
    // tangent direction not along an axis
    assert_eq!(kind("(x - y)^2 - x^3"), SingularityKind::Cusp);
    assert_eq!(kind("(x + 2*y)^2 - y^4"), SingularityKind::Tacnode);
    assert!(matches!(classify_double_point(&parse("x + y^2").unwrap(), &xy(), &origin), Err(CurveError::NotSingular)));
    assert!(matches!(classify_double_point(&parse("x + 1").unwrap(), &xy(), &origin), Err(CurveError::NotOnCurve)));
}

#[test]
fn classification_ignores_units() {
    let origin = (int(0), int(0));
    for (f, unit) in [("x^3 - 27*y^2", "1 + x"), ("x^2 - y^2", "2 - y + x*y"), ("x^2 - y^4", "3 + x^2"), ("y^2 - x^3", "-1 + x + y")] {
        let f = parse(f).unwrap();
        let u = parse(unit).unwrap();
        let a = classify_double_point(&f, &xy(), &origin).unwrap().classification;
        let b = classify_double_point(&(&f * &u), &xy(), &origin).unwrap().classification;
        assert_eq!(a, b);
    }
}

#[test]
fn intersection_numbers() {
    let origin = (int(0), int(0));
    let im = |f: &str, g: &str| intersection_multiplicity(&parse(f).unwrap(), &parse(g).unwrap(), &xy(), &origin).unwrap();
    assert_eq!(im("x", "y"), 1);
    assert_eq!(im("y - x^2", "y"), 2);
    assert_eq!(im("y^2 - x^3", "y"), 3);
    assert_eq!(im("y^2 - x^3", "x"), 2);
    assert_eq!(im("x^2 - y^2", "x^2 + y^2 - 2*x"), 2);
    assert_eq!(im("y - x^2", "x"), im("x", "y - x^2"));
    assert!(matches!(
        intersection_multiplicity(&parse("x*y").unwrap(), &parse("x*(y+1)").unwrap(), &xy(), &origin),
        Err(CurveError::CommonComponent(_))
    ));
}

#[test]
fn phi_psi_meet_with_multiplicity_two_at_010() {
    for alpha in [1, 2, 3] {
        let (phi, psi) = sections(alpha);
        let a0 = parse("A0").unwrap();
        let phit = phi.extract_power(&a0).unwrap().1;
        let psit = psi.extract_power(&a0).unwrap().1;
        let chart = AffineChart::standard(1);
        let origin = (int(0), int(0));
        let m = intersection_multiplicity(&chart.dehomogenize(&phit), &chart.dehomogenize(&psit), &chart, &origin).unwrap();
        assert_eq!(m, 2);
    }
}

#[test]
fn quintic_meets_line_at_infinity() {
    let q = quintic(1);
    let line = parse("A0").unwrap();
    let origin = (int(0), int(0));
    let u2 = AffineChart::standard(2);
    assert_eq!(intersection_multiplicity(&u2.dehomogenize(&q), &u2.dehomogenize(&line), &u2, &origin).unwrap(), 2);
    // at (0:1:0) the restriction -(1/64) A1^2 A2^3 vanishes to order 3 in A2
    let u1 = AffineChart::standard(1);
    assert_eq!(intersection_multiplicity(&u1.dehomogenize(&q), &u1.dehomogenize(&line), &u1, &origin).unwrap(), 3);
}

#[test]
fn smoothness_certificates() {
    let u0 = AffineChart::standard(0);
    for alpha in [1, 2, 3, 5] {
        let (phi, psi) = sections(alpha);
        let g2 = u0.dehomogenize(&phi);
        let g3 = u0.dehomogenize(&psi);
        assert!(smoothness_certificate(&g2, &u0).unwrap().is_smooth());
        assert!(smoothness_certificate(&g3, &u0).unwrap().is_smooth());
    }
    let w = smoothness_certificate(&parse("x^2 + y^2").unwrap(), &xy()).unwrap();
    assert_eq!(w, SmoothnessCertificate::Witness { points: vec![(int(0), int(0))], clusters: vec![] });
}

#[test]
fn psi_division_identity_with_symbolic_alpha() {
    let lhs = parse("8*a2^3 - 3*alpha^2*a2^2 - 288*a2 + 108*alpha^2").unwrap();
    let rhs = parse("(4*a2^2 - alpha^2*a2 - 48)*(2*a2 - alpha^2/4) - (alpha^4/4 + 192)*a2 + 96*alpha^2").unwrap();
    assert_eq!(lhs, rhs);
    // the cubic comes from eliminating a1 = alpha*a2/6 out of psi~ = 0
    let psit = parse("a2^3/216 + a1^2/16 - alpha/48*a1*a2 - a2/6 + alpha^2/16").unwrap();
    let on_line = psit.substitute(&[("a1", parse("alpha*a2/6").unwrap())]).scale(&int(1728));
    assert_eq!(on_line, lhs);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 1..4).prop_map(|ts| {
            ts.into_iter().fold(MultiPoly::zero_in(&["x", "y"]), |acc, (c, a, b)| {
                &acc + &MultiPoly::term(int(c), &[("x", a), ("y", b)])
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn intersection_is_symmetric_and_ignores_units(
            a in 1u32..4, b in 0u32..3, c in prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)], unit in small_poly()
        ) {
            // odd power of x against a parabola: never a shared component
            let f = &MultiPoly::term(int(1), &[("y", a)]) - &MultiPoly::term(int(1), &[("x", 2 * b + 1)]);
            let g = &MultiPoly::var("y") - &MultiPoly::term(int(c), &[("x", 2)]);
            let origin = (int(0), int(0));
            let u = &unit.substitute_values(&[("x", int(0)), ("y", int(0))]);
            let u = if u.is_zero() { &unit + &MultiPoly::one() } else { unit.clone() };
            let m = intersection_multiplicity(&f, &g, &xy(), &origin).unwrap();
            prop_assert_eq!(m, intersection_multiplicity(&g, &f, &xy(), &origin).unwrap());
            prop_assert_eq!(m, intersection_multiplicity(&(&f * &u), &g, &xy(), &origin).unwrap());
            // oracle: substitute the parabola y = c x^2 and read off the order in x
            let on_line = f.substitute(&[("y", MultiPoly::term(int(c), &[("x", 2)]))]);
            prop_assert_eq!(m, on_line.min_degree_in("x"));
        }
    }
}

#[test]
fn projective_zeros_cover_the_line_at_infinity() {
    // f = A2 (A1 - A0) and g = (A1 - A0)(A1 + A0) share a line
    let f = parse("A1*A2 - A0*A2").unwrap();
    let g = parse("A1^2 - A0^2").unwrap();
    assert!(matches!(projective_common_zeros(&[f, g]), Err(CurveError::PositiveDimensional(_))));
    let f = parse("A1*A2").unwrap();
    let g = parse("A0^2 + A1^2 - A2^2").unwrap();
    let z = projective_common_zeros(&[f, g]).unwrap();
    // A1 = 0: A0^2 = A2^2; A2 = 0: A0^2 + A1^2 = 0 (irrational pair)
    assert_eq!(z.points, vec![[int(1), int(0), int(-1)], [int(1), int(0), int(1)]]);
    assert_eq!(z.clusters.len(), 1);
    assert_eq!(z.clusters[0].1.count, 2);
    let z = projective_common_zeros(&[parse("A0").unwrap(), parse("A1").unwrap()]).unwrap();
    assert_eq!(z.points, vec![[int(0), int(0), int(1)]]);
}

#[test]
fn homogeneous_gcd_agrees_with_general_gcd() {
    let cases = [
        ("A0^3*(A1 - A2)*(A1 + 2*A0)", "A0*(A1 - A2)^2"),
        ("A0^2*A1^2 - A2^4", "A0*A1 - A2^2"),
        ("A1^3 - A0*A2^2", "A2^3"),
        ("A0^7*(A1^2 - A0*A2)", "A0^5*(A1^2 - A0*A2)^2*A2"),
    ];
    for (f, g) in cases {
        let (f, g) = (parse(f).unwrap(), parse(g).unwrap());
        assert_eq!(homogeneous_gcd(&f, &g), gcd(&f, &g).with_vars(&HOMOGENEOUS_VARS), "{f} / {g}");
    }
    let f = parse("A0^7*(A1 - A2)^2*(A1 + A0)").unwrap();
    assert_eq!(homogeneous_squarefree_part(&f), crate::exactpoly::squarefree_part(&f).with_vars(&HOMOGENEOUS_VARS));
}
