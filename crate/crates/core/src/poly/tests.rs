use proptest::prelude::*;

use super::*;

fn fld(p: u64, k: u32) -> FieldConfig {
    FieldConfig::new(p, k).unwrap()
}

fn pp(f: &FieldConfig, n: usize, s: &str) -> MPoly {
    parse_poly(f, n, s).unwrap()
}

#[test]
fn grlex_order() {
    let a = Monomial(SmallVec::from_slice(&[1, 0]));
    let b = Monomial(SmallVec::from_slice(&[0, 1]));
    let c = Monomial(SmallVec::from_slice(&[0, 2]));
    assert!(a > b);
    assert!(c > a);
}

#[test]
fn printing_matches_expected_shape() {
    let f = FieldConfig::parse("2^2").unwrap();
    let p = pp(&f, 2, "z0^3 + (a+1)*z0*z1^2");
    assert_eq!(p.to_string(), "z0^3 + (a+1)*z0*z1^2");
    assert_eq!(pp(&f, 2, "0").to_string(), "0");
    assert_eq!(pp(&f, 2, "a*z1 + a + 1").to_string(), "a*z1 + (a+1)");
    let f3 = fld(3, 1);
    assert_eq!(pp(&f3, 2, "-z0").to_string(), "2*z0");
}

#[test]
fn parse_errors() {
    let f = fld(2, 1);
    assert!(matches!(parse_poly(&f, 2, "z0 +"), Err(Error::Parse(_))));
    assert!(matches!(parse_poly(&f, 2, "z3"), Err(Error::Parse(_))));
    assert!(matches!(parse_poly(&f, 2, "(z0"), Err(Error::Parse(_))));
    assert!(matches!(parse_poly(&f, 2, "z0^z1"), Err(Error::Parse(_))));
    assert!(matches!(parse_poly(&f, 2, ""), Err(Error::Parse(_))));
}

#[test]
fn freshman_dream_in_char_two() {
    let f = fld(2, 1);
    let x = pp(&f, 2, "z0 + z1");
    assert_eq!(x.pow(2).unwrap(), pp(&f, 2, "z0^2 + z1^2"));
}

#[test]
fn exact_division() {
    let f = fld(3, 1);
    let a = pp(&f, 2, "z0^2 + z0*z1 + 1");
    let b = pp(&f, 2, "z0 - z1 + 2");
    let ab = &a * &b;
    assert_eq!(ab.div_exact(&b).unwrap(), a);
    assert_eq!(ab.div_exact(&a).unwrap(), b);
    assert_eq!(a.div_exact(&b), Err(Error::NotDivisible));
    assert_eq!(a.div_exact(&MPoly::zero(&f, 2)), Err(Error::DivisorZero));
}

#[test]
fn homogeneity() {
    let f = fld(2, 1);
    assert_eq!(pp(&f, 2, "z0^2 + z0*z1").homogeneous_degree(), Ok(2));
    assert_eq!(
        pp(&f, 2, "z0^2 + z1").homogeneous_degree(),
        Err(Error::NotHomogeneous)
    );
    assert_eq!(
        MPoly::zero(&f, 2).homogeneous_degree(),
        Err(Error::ZeroPolynomial)
    );
    assert_eq!(MPoly::zero(&f, 2).total_degree(), None);
}

#[test]
fn degree_cap_enforced() {
    let f = fld(2, 1);
    let x = pp(&f, 1, "z0 + 1");
    assert!(matches!(
        x.pow_capped(100, 50),
        Err(Error::DegreeTooLarge {
            degree: 100,
            cap: 50
        })
    ));
}

#[test]
fn mixed_rings_rejected() {
    let f2 = fld(2, 1);
    let f3 = fld(3, 1);
    assert_eq!(
        pp(&f2, 1, "z0").checked_add(&pp(&f3, 1, "z0")),
        Err(Error::MixedRings)
    );
    assert_eq!(
        pp(&f2, 1, "z0").checked_mul(&pp(&f2, 2, "z0")),
        Err(Error::MixedRings)
    );
}

#[test]
fn eval_lifts_to_common_extension() {
    let f2 = fld(2, 1);
    let f4 = fld(2, 2);
    let p = pp(&f2, 1, "z0^2 + z0 + 1");
    let a = f4.element(f4.gen());
    assert!(p.eval(std::slice::from_ref(&a)).unwrap().is_zero());
    assert_eq!(p.eval(&[a]).unwrap().field(), &f4);
}

#[test]
fn pth_power_part() {
    let f = fld(3, 1);
    assert_eq!(
        pp(&f, 2, "z0^3 + 2*z1^6").pth_power_part(),
        Some(pp(&f, 2, "z0 + 2*z1^2"))
    );
    assert_eq!(pp(&f, 2, "z0^3 + z1").pth_power_part(), None);
}

#[test]
fn jacobian_of_linear_map() {
    let f = fld(5, 1);
    let fs = [pp(&f, 2, "2*z0 + z1"), pp(&f, 2, "z0 + 3*z1")];
    assert_eq!(
        jacobian_det(&fs, &[0, 1]).unwrap(),
        MPoly::constant(&f, 2, 0)
    );
    let gs = [pp(&f, 2, "z0"), pp(&f, 2, "z0 + z1^2")];
    assert_eq!(jacobian_det(&gs, &[0, 1]).unwrap(), pp(&f, 2, "2*z1"));
}

#[test]
fn three_by_three_det() {
    let f = fld(7, 1);
    let c = |v: i64| MPoly::constant(&f, 1, f.from_int(v));
    let m = vec![
        vec![c(2), c(0), c(1)],
        vec![c(1), c(3), c(2)],
        vec![c(1), c(1), c(1)],
    ];
    // 2(3-2) - 0 + 1(1-3) = 0
    assert!(det(&m).unwrap().is_zero());
}

#[test]
fn up_view_round_trip() {
    let f = fld(2, 2);
    let p = pp(&f, 3, "z0^2*z1 + a*z0*z2 + z1^3");
    let v = p.up_view(0);
    assert_eq!(v.degree(), Some(2));
    assert_eq!(v.coeffs[1], pp(&f, 3, "a*z2"));
    assert_eq!(v.reassemble().unwrap(), p);
}

fn arb_poly(f: FieldConfig, n: usize) -> impl Strategy<Value = MPoly> {
    let q = f.q();
    prop::collection::vec((prop::collection::vec(0u32..4, n), 0..q), 0..6)
        .prop_map(move |ts| MPoly::from_terms(&f, n, ts))
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(fld(3, 2), 2), b in arb_poly(fld(3, 2), 2), c in arb_poly(fld(3, 2), 2)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_divides_exactly(a in arb_poly(fld(2, 3), 3), b in arb_poly(fld(2, 3), 3)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn print_parse_round_trip(a in arb_poly(fld(5, 2), 3)) {
        let s = a.to_string();
        prop_assert_eq!(parse_poly(a.field(), 3, &s).unwrap(), a);
    }

    #[test]
    fn leibniz_rule(a in arb_poly(fld(3, 1), 2), b in arb_poly(fld(3, 1), 2)) {
        let lhs = (&a * &b).derivative(0);
        let rhs = &(&a.derivative(0) * &b) + &(&a * &b.derivative(0));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn subst_commutes_with_eval(
        a in arb_poly(fld(2, 2), 2),
        g0 in arb_poly(fld(2, 2), 2),
        g1 in arb_poly(fld(2, 2), 2),
        x in 0u32..4, y in 0u32..4,
    ) {
        let composed = a.subst(&[g0.clone(), g1.clone()]).unwrap();
        let inner = [g0.eval_raw(&[x, y]), g1.eval_raw(&[x, y])];
        prop_assert_eq!(composed.eval_raw(&[x, y]), a.eval_raw(&inner));
    }

    #[test]
    fn embed_then_restrict(a in arb_poly(fld(2, 2), 2)) {
        let big = fld(2, 4);
        let e = a.embed(&big).unwrap();
        prop_assert_eq!(e.restrict(a.field()).unwrap(), Some(a));
    }
}
