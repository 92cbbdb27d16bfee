use proptest::prelude::*;

use super::*;
use crate::additive::{fp_lin_indep, mobius_search};
use crate::poly::{jacobian_det, parse_poly};

fn fld(p: u64, k: u32) -> FieldConfig {
    FieldConfig::new(p, k).unwrap()
}

fn pp(f: &FieldConfig, nv: usize, s: &str) -> MPoly {
    parse_poly(f, nv, s).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

#[test]
fn abhyankar_small_cases() {
    let f2 = fld(2, 1);
    let g = abhyankar_map(1, &f2).unwrap();
    assert_eq!(g.coords()[0], pp(&f2, 2, "z0^3 + z1^3"));
    assert_eq!(g.coords()[1], pp(&f2, 2, "z0*z1^2"));
    assert_eq!(g.degree(), 3);
    let j = jacobian_det(g.coords(), &[0, 1]).unwrap();
    assert_eq!(j, pp(&f2, 2, "z1^4"));

    for p in [2u64, 3] {
        let f = fld(p, 1);
        let g = abhyankar_map(2, &f).unwrap();
        let (a, b, c) = (p * p + p + 1, p + 1, p * p);
        let want = [
            format!("z0^{a} + z1^{a} + z2^{a}"),
            format!("z0^{b}*z1^{c} + z0^{b}*z2^{c} + z1^{b}*z2^{c}"),
            format!("z0*z1^{p}*z2^{c}"),
        ];
        for (got, w) in g.coords().iter().zip(&want) {
            assert_eq!(*got, pp(&f, 3, w));
        }
    }
    assert!(matches!(
        abhyankar_map(0, &f2),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        abhyankar_map(12, &f2),
        Err(Error::DegreeTooLarge { .. })
    ));
}

#[test]
fn abhyankar_structure_and_no_base_points() {
    for n in 1..=3usize {
        for p in [2u64, 3] {
            let f = fld(p, 1);
            let g = abhyankar_map(n, &f).unwrap();
            assert_eq!(g.degree(), abhyankar_degree(n, p as u32));
            for (i, c) in g.coords().iter().enumerate() {
                assert_eq!(c.num_terms(), binom(n + 1, i + 1));
                assert_eq!(c.homogeneous_degree().unwrap(), g.degree());
            }
            // jacobian is a constant times a monomial
            let vars: Vec<usize> = (0..=n).collect();
            let j = jacobian_det(g.coords(), &vars).unwrap();
            assert_eq!(j.num_terms(), 1, "n={n} p={p}");

            let f2 = fld(p, 2);
            let g2 = g.embed(&f2).unwrap();
            assert!(
                projective_points(&f2, n).all(|x| g2.coords().iter().any(|c| c.eval_raw(&x) != 0))
            );
        }
    }
}

#[test]
fn apply_examples() {
    let f2 = fld(2, 1);
    let g = abhyankar_map(1, &f2).unwrap();
    assert_eq!(g.apply_raw(&[1, 1]).unwrap(), vec![0, 1]);
    assert_eq!(g.apply_raw(&[1, 0]).unwrap(), vec![1, 0]);
    let id = ProjMap::identity(&f2, 2);
    assert_eq!(id.apply_raw(&[1, 0, 1]).unwrap(), vec![1, 0, 1]);
    assert!(matches!(
        id.apply_raw(&[0, 0, 0]),
        Err(Error::InvalidPoint(_))
    ));
    let bad = ProjMap::new(vec![pp(&f2, 2, "z0*z1"), pp(&f2, 2, "z0^2")]).unwrap();
    assert_eq!(bad.apply_raw(&[0, 1]), Err(Error::BasePointHit));
    assert_eq!(bad.rational_base_point(), Some(vec![0, 1]));

    // points in an extension
    let f4 = fld(2, 2);
    let w = f4.element(f4.gen());
    let img = g.apply(&[w.clone(), f4.element(1)]).unwrap();
    assert_eq!(img[1], w);
}

#[test]
fn projmap_validation() {
    let f = fld(3, 1);
    assert_eq!(
        ProjMap::new(vec![pp(&f, 2, "z0^2"), pp(&f, 2, "z1")]),
        Err(Error::NotHomogeneous)
    );
    assert_eq!(
        ProjMap::new(vec![pp(&f, 2, "z0 + z1^2"), pp(&f, 2, "z1^2")]),
        Err(Error::NotHomogeneous)
    );
    assert!(matches!(
        ProjMap::new(vec![pp(&f, 2, "z0")]),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn compose_examples() {
    let f = fld(3, 1);
    let sq = ProjMap::new(vec![pp(&f, 2, "z0^2"), pp(&f, 2, "z1^2")]).unwrap();
    let fourth = ProjMap::compose(&sq, &sq).unwrap();
    assert_eq!(fourth.coords()[0], pp(&f, 2, "z0^4"));
    assert_eq!(fourth.coords()[1], pp(&f, 2, "z1^4"));
    assert_eq!(
        ProjMap::compose(&sq, &ProjMap::identity(&f, 1)).unwrap(),
        sq
    );
    let cube = ProjMap::new(vec![pp(&f, 2, "z0^3 + z1^3"), pp(&f, 2, "z1^3")]).unwrap();
    assert_eq!(ProjMap::compose(&fourth, &cube).unwrap().degree(), 12);
    let other = ProjMap::identity(&fld(5, 1), 1);
    assert_eq!(ProjMap::compose(&sq, &other), Err(Error::MixedRings));
    // a base point appears after composing two regular-looking maps
    let swap = ProjMap::new(vec![pp(&f, 2, "z0 - z1"), pp(&f, 2, "z1")]).unwrap();
    let pinch = ProjMap::new(vec![pp(&f, 2, "z0*z1"), pp(&f, 2, "z0^2 - z0*z1")]).unwrap();
    assert!(pinch.rational_base_point().is_some());
    assert_eq!(ProjMap::compose(&pinch, &swap), Err(Error::BasePointHit));
}

#[test]
fn normalize_hyperplane_examples() {
    let f = fld(2, 1);
    let id = normalize_hyperplanes(&[pp(&f, 2, "z0"), pp(&f, 2, "z1")]).unwrap();
    assert!(id.is_identity());
    let forms = [pp(&f, 2, "z0 + z1"), pp(&f, 2, "z1")];
    let ch = normalize_hyperplanes(&forms).unwrap();
    assert_eq!(ch.matrix(), &[vec![1, 1], vec![0, 1]]);
    for (j, form) in forms.iter().enumerate() {
        assert_eq!(ch.pullback(form).unwrap(), MPoly::var(&f, 2, j));
    }
    assert_eq!(
        normalize_hyperplanes(&[pp(&f, 2, "z0"), pp(&f, 2, "z0")]),
        Err(Error::NotInGeneralPosition)
    );
}

#[test]
fn block_stabilizer_check() {
    let f = fld(3, 1);
    let ch = CoordChange::new(&f, vec![vec![2, 0, 0], vec![0, 1, 1], vec![0, 2, 1]]).unwrap();
    assert!(ch.preserves_first(1));
    assert!(!ch.preserves_first(2));
    let mix = CoordChange::new(&f, vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    assert!(mix.preserves_first(0));
    assert!(!mix.preserves_first(1));
}

fn triple(f: &FieldConfig, n: usize, i: usize, cone: &str, point: Vec<u32>) -> GoodTriple {
    GoodTriple {
        n,
        field: f.clone(),
        i,
        cone: pp(f, n + 1, cone),
        point,
    }
}

#[test]
fn step_condition_failures() {
    let f2 = fld(2, 1);
    let t = triple(&f2, 1, 0, "z0^2 + z0*z1 + z1^2", vec![0, 1]);
    t.validate().unwrap();
    let id = CoordChange::identity(&f2, 1);
    assert_eq!(
        step2_map(&t, &id).unwrap_err(),
        Error::ConditionFailed(Condition::D)
    );
    let t = triple(&f2, 1, 0, "z0*z1 + z1^2", vec![1, 1]);
    assert_eq!(
        step2_map(&t, &id).unwrap_err(),
        Error::ConditionFailed(Condition::A)
    );
    let t = triple(&f2, 1, 0, "z0 + z1", vec![1, 0]);
    assert_eq!(
        step2_map(&t, &id).unwrap_err(),
        Error::ConditionFailed(Condition::B)
    );
    // a square cone has a repeated root, so r_0 vanishes
    let f4 = fld(2, 2);
    let t = triple(&f4, 1, 0, "z0^2 + z1^2", vec![f4.gen(), 1]);
    assert_eq!(
        step2_map(&t, &CoordChange::identity(&f4, 1)).unwrap_err(),
        Error::ConditionFailed(Condition::C)
    );
}

/// Roots of a binary form `cone(z0, 1)` in the field.
fn affine_roots(f: &FieldConfig, cone: &MPoly) -> Vec<u32> {
    f.elements()
        .filter(|&x| cone.eval_raw(&[x, 1]) == 0)
        .collect()
}

#[test]
fn step_succeeds_after_mobius_change() {
    let f16 = fld(2, 4);
    let t = triple(&fld(2, 1), 1, 0, "z0^2 + z0*z1 + z1^2", vec![0, 1])
        .embed(&f16)
        .unwrap();
    let roots: Vec<FieldElement> = affine_roots(&f16, &t.cone)
        .into_iter()
        .map(|r| f16.element(r))
        .collect();
    assert_eq!(roots.len(), 2);
    let x = f16.element(0);
    let tau = mobius_search(&roots, Some(&x), &f16, 1, 10_000).unwrap();
    // ratio z0/z1 moves by tau
    let ch = CoordChange::new(
        &f16,
        vec![
            vec![tau.b.value(), tau.a.value()],
            vec![tau.d.value(), tau.c.value()],
        ],
    )
    .unwrap();
    let step = step2_map(&t, &ch).unwrap();
    assert_eq!(step.degree, 4);
    assert_eq!(step.next.cone, MPoly::var(&f16, 2, 1));
    step.next.validate().unwrap();
    let moved: Vec<FieldElement> = affine_roots(&f16, &step.cone)
        .into_iter()
        .map(|r| f16.element(r))
        .collect();
    assert!(fp_lin_indep(&moved).unwrap());
}

/// `z0 + a z1 + z2` over F_16, with `a` generating F_4, at the first point
/// where the step succeeds. Over F_4 itself condition (e) fails everywhere.
fn linear_cone_step() -> Step2 {
    let f4 = fld(2, 2);
    let a = f4.gen();
    let cone = MPoly::from_terms(
        &f4,
        3,
        [(vec![1, 0, 0], 1), (vec![0, 1, 0], a), (vec![0, 0, 1], 1)],
    );
    let f16 = fld(2, 4);
    let cone = cone.embed(&f16).unwrap();
    let id = CoordChange::identity(&f16, 2);
    let mut e_failures = 0;
    for x1 in f16.elements() {
        let t = GoodTriple {
            n: 2,
            field: f16.clone(),
            i: 0,
            cone: cone.clone(),
            point: vec![1, x1, 1],
        };
        if t.validate().is_err() {
            continue;
        }
        match step2_map(&t, &id) {
            Ok(s) => return s,
            Err(Error::ConditionFailed(Condition::E)) => e_failures += 1,
            Err(_) => {}
        }
    }
    panic!("no point found ({e_failures} failed condition e)");
}

#[test]
fn linear_cone_in_three_variables() {
    let step = linear_cone_step();
    assert_eq!(step.degree, 2);
    let next = &step.next;
    assert_eq!(next.i, 1);
    assert!(!next.cone.mentions(0));
    assert_eq!(next.cone.homogeneous_degree().unwrap(), 2);
    assert_eq!(next.cone.degree_in(2), Some(2));
    assert_eq!(next.cone.degree_in(1), Some(1));
    next.validate().unwrap();
}

/// Every point of `V(r_0)` with `z_n = 1` over an extension maps into the
/// next cone.
fn assert_cone_covers_image(step: &Step2, ext: u32) {
    let field = step.map.field().clone();
    let big = field.extension(ext).unwrap();
    let map = step.map.embed(&big).unwrap();
    let r0 = step.r0().embed(&big).unwrap();
    let cone = step.next.cone.embed(&big).unwrap();
    let n = map.n();
    for mut x in projective_points(&big, n - 1) {
        x.push(1);
        if r0.eval_raw(&x) == 0 {
            let y = map.apply_raw(&x).unwrap();
            assert_eq!(cone.eval_raw(&y), 0, "point {x:?}");
        }
    }
}

#[test]
fn next_cone_contains_image_of_ramification() {
    assert_cone_covers_image(&linear_cone_step(), 2);

    let f3 = fld(3, 1);
    let t = triple(&f3, 2, 0, "z0^2 + z1*z2 + z2^2", vec![1, 1, 1]);
    if let Ok(step) = step2_map(&t, &CoordChange::identity(&f3, 2)) {
        assert_cone_covers_image(&step, 2);
    }
}

#[test]
fn coord_change_round_trip() {
    let f = fld(5, 1);
    let ch = CoordChange::new(&f, vec![vec![1, 2, 0], vec![0, 1, 3], vec![1, 0, 1]]).unwrap();
    let inv = ch.inverse();
    let x = vec![2, 3, 4];
    assert_eq!(inv.apply_point(&ch.apply_point(&x)), x);
    let poly = pp(&f, 3, "z0^2*z1 + 3*z2^3 + z0*z1*z2");
    let moved = ch.pullback(&poly).unwrap();
    assert_eq!(inv.pullback(&moved).unwrap(), poly);
    assert_eq!(moved.eval_raw(&ch.apply_point(&x)), poly.eval_raw(&x));
    assert!(ch.after(&inv).is_identity());
    assert_eq!(
        CoordChange::new(&f, vec![vec![1, 2], vec![2, 4]]),
        Err(Error::NotInGeneralPosition)
    );
}

fn arb_matrix(p: u32, n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..p, n), n)
}

fn arb_binary_form(p: u32, d: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..p, d as usize + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compose_commutes_with_apply(
        m1 in arb_matrix(3, 2), c in arb_binary_form(3, 2), x in prop::collection::vec(0u32..3, 2),
    ) {
        let f = fld(3, 1);
        prop_assume!(x.iter().any(|&v| v != 0));
        let Ok(lin) = CoordChange::new(&f, m1) else { return Ok(()) };
        let quad = ProjMap::new(vec![
            MPoly::from_terms(&f, 2, [(vec![2, 0], 1), (vec![1, 1], c[0]), (vec![0, 2], c[1])]),
            MPoly::from_terms(&f, 2, [(vec![0, 2], 1), (vec![1, 1], c[2])]),
        ]).unwrap();
        let outer = lin.to_map();
        let comp = ProjMap::compose_unchecked(&outer, &quad).unwrap();
        match quad.apply_raw(&x) {
            Ok(y) => prop_assert_eq!(comp.apply_raw(&x).unwrap(), outer.apply_raw(&y).unwrap()),
            Err(e) => prop_assert_eq!(e, Error::BasePointHit),
        }
    }

    #[test]
    fn coord_change_inverse_is_identity(m in arb_matrix(5, 3), x in prop::collection::vec(0u32..5, 3)) {
        let f = fld(5, 1);
        let Ok(ch) = CoordChange::new(&f, m) else { return Ok(()) };
        prop_assert_eq!(ch.inverse().apply_point(&ch.apply_point(&x)), x.clone());
        let poly = MPoly::from_terms(&f, 3, [(vec![1, 1, 0], 1), (vec![0, 0, 2], 2)]);
        let moved = ch.pullback(&poly).unwrap();
        prop_assert_eq!(ch.inverse().pullback(&moved).unwrap(), poly.clone());
        prop_assert_eq!(moved.eval_raw(&ch.apply_point(&x)), poly.eval_raw(&x));
    }

    #[test]
    fn step_output_invariants(
        p in prop::sample::select(vec![2u32, 3]),
        coeffs in prop::collection::vec(0u32..3, 5),
        m in arb_matrix(3, 3),
        x in prop::collection::vec(0u32..9, 3),
    ) {
        let f = fld(p as u64, 2);
        let q = f.q();
        let x: Vec<u32> = x.iter().map(|&v| v % q).collect();
        let m: Vec<Vec<u32>> = m.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
        let c: Vec<u32> = coeffs.iter().map(|&v| v % p).collect();
        // monic quadratic in z0 with coefficients in z1, z2
        let cone = MPoly::from_terms(&f, 3, [
            (vec![2, 0, 0], 1), (vec![1, 1, 0], c[0]), (vec![1, 0, 1], c[1]),
            (vec![0, 2, 0], c[2]), (vec![0, 1, 1], c[3]), (vec![0, 0, 2], c[4]),
        ]);
        let t = GoodTriple { n: 2, field: f.clone(), i: 0, cone, point: x };
        prop_assume!(t.validate().is_ok());
        let Ok(ch) = CoordChange::new(&f, m) else { return Ok(()) };
        let step = match step2_map(&t, &ch) {
            Ok(s) => s,
            Err(Error::ConditionFailed(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        let w = step.map.coords();
        prop_assert!(w[0].divisible_by(&step.cone).unwrap());
        prop_assert!(w[1].divisible_by(&MPoly::var(&f, 3, 1)).unwrap());
        prop_assert!(!step.next.cone.mentions(0));
        prop_assert!(step.next.validate().is_ok());
        prop_assert_eq!(step.map.apply_raw(&ch.apply_point(&t.point)).unwrap(), step.next.point.clone());
    }
}
