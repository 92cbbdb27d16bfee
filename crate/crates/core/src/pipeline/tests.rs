use super::*;
use crate::error::Condition;
use crate::poly::parse_poly;

fn fld(p: u64, k: u32) -> FieldConfig {
    FieldConfig::new(p, k).unwrap()
}

fn tri(f: &FieldConfig, n: usize, cone: &str, point: Vec<u32>) -> Result<GoodTriple> {
    make_triple(n, f, parse_poly(f, n + 1, cone)?, point)
}

const CONIC: &str = "z0^2 + z0*z1 + z1^2";

#[test]
fn make_triple_examples() {
    let f2 = fld(2, 1);
    let t = tri(&f2, 1, CONIC, vec![0, 1]).unwrap();
    assert_eq!(t.cone.eval_raw(&t.point), 1);
    let f4 = fld(2, 2);
    assert_eq!(
        tri(&f4, 1, CONIC, vec![1, f4.gen()]),
        Err(Error::PointOnDivisor)
    );
    assert_eq!(
        tri(&f2, 1, "z0^2 + z1", vec![0, 1]),
        Err(Error::NotHomogeneous)
    );
    assert_eq!(tri(&f2, 1, "0", vec![0, 1]), Err(Error::ZeroPolynomial));
}

#[test]
fn search_fails_over_small_fields() {
    for k in [1, 2] {
        let f = fld(2, k);
        let t = tri(&f, 1, CONIC, vec![0, 1]).unwrap();
        match coordinate_search(&t, 5, DEFAULT_MAX_TRIALS) {
            Err(Error::SearchFailed { tally }) => {
                assert!(tally.count(Condition::C) + tally.count(Condition::D) > 0);
            }
            other => panic!("expected failure over F_{}, got {other:?}", f.q()),
        }
    }
    let f16 = fld(2, 4);
    let t = tri(&f16, 1, CONIC, vec![0, 1]).unwrap();
    let s = coordinate_search(&t, 5, DEFAULT_MAX_TRIALS).unwrap();
    assert_eq!(s.step.degree, 4);
}

#[test]
fn repeated_root_cone_never_passes() {
    let f4 = fld(2, 2);
    let t = tri(&f4, 1, "z0^2", vec![1, 1]).unwrap();
    match coordinate_search(&t, 1, DEFAULT_MAX_TRIALS) {
        Err(Error::SearchFailed { tally }) => {
            assert_eq!(tally.dominant(), Some(Condition::C));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn linear_cone_succeeds_immediately() {
    // the point must avoid the F_3-span of the root
    let f9 = fld(3, 2);
    let t = tri(&f9, 1, "z0 + z1", vec![f9.gen(), 1]).unwrap();
    let s = coordinate_search(&t, 0, 1).unwrap();
    assert!(s.step.change.is_identity());
    assert_eq!(s.step.degree, 3);
}

#[test]
fn conic_over_f16_end_to_end() {
    let f16 = fld(2, 4);
    let t = tri(&f16, 1, CONIC, vec![0, 1]).unwrap();
    let (chain, cert) = run(&t, 7, &SearchPolicy::default()).unwrap();
    assert_eq!(chain.composite.degree(), 12);
    assert!(cert.passed(), "{cert}");
    assert!(!cert.used_sampling(), "{cert}");
    let y = chain.final_point().unwrap();
    assert_ne!(y[1], 0);
    assert_eq!(chain.apply_sequentially(&t.point).unwrap(), y);
}

#[test]
fn escalation_doubles_the_field() {
    let f2 = fld(2, 1);
    let t = tri(&f2, 1, CONIC, vec![0, 1]).unwrap();
    let chain = build_chain(&t, 3, &SearchPolicy::default()).unwrap();
    let ks: Vec<u32> = chain.field_history.iter().map(|f| f.k()).collect();
    assert_eq!(ks, vec![1, 2, 4]);
    assert_eq!(chain.composite.degree(), 12);
    let cert = certify_chain(&chain, &CheckPolicy::default(), None);
    assert!(cert.passed(), "{cert}");

    let policy = SearchPolicy {
        max_extensions: 1,
        ..SearchPolicy::default()
    };
    assert!(matches!(
        build_chain(&t, 3, &policy),
        Err(Error::SearchFailed { .. })
    ));
}

#[test]
fn hyperplane_at_infinity_skips_to_abhyankar() {
    let f2 = fld(2, 1);
    let t = tri(&f2, 1, "z1", vec![1, 1]).unwrap();
    let (chain, cert) = run(&t, 0, &SearchPolicy::default()).unwrap();
    assert_eq!(chain.steps[0].kind, StepKind::Skip);
    assert_eq!(chain.composite, abhyankar_map(1, &f2).unwrap());
    assert!(cert.passed());

    // a point on z0 = 0 is moved off it first
    let t = tri(&f2, 1, "z1^3", vec![0, 1]).unwrap();
    let (chain, cert) = run(&t, 0, &SearchPolicy::default()).unwrap();
    assert!(!chain.steps[0].change.is_identity());
    assert!(cert.passed());
}

#[test]
fn plane_with_a_line() {
    let f4 = fld(2, 2);
    let a = f4.gen();
    let t = tri(&f4, 2, "z0 + z1 + z2", vec![1, 1, a]).unwrap();
    let (chain, cert) = run(&t, 11, &SearchPolicy::default()).unwrap();
    let prod: u64 = chain.steps.iter().map(|s| s.degree).product();
    assert_eq!(chain.steps[0].degree, 2);
    assert_eq!(chain.composite.degree(), prod * 7);
    assert!(cert.passed(), "{cert}");
    for s in &chain.steps {
        s.next.validate().unwrap();
    }
}

#[test]
fn runs_are_deterministic() {
    let f16 = fld(2, 4);
    let t = tri(&f16, 1, CONIC, vec![0, 1]).unwrap();
    let a = build_chain(&t, 42, &SearchPolicy::default()).unwrap();
    let b = build_chain(&t, 42, &SearchPolicy::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn composite_agrees_with_steps_on_points() {
    let f16 = fld(2, 4);
    let t = tri(&f16, 1, CONIC, vec![0, 1]).unwrap();
    let chain = build_chain(&t, 9, &SearchPolicy::default()).unwrap();
    for x in crate::maps::projective_points(&f16, 1) {
        match chain.composite.apply_raw(&x) {
            Ok(y) => assert_eq!(chain.apply_sequentially(&x).unwrap(), y),
            Err(e) => panic!("base point {x:?}: {e}"),
        }
    }
}
