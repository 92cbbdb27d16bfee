use onepoint::certify::certify_chain;
use onepoint::pipeline::run;
use onepoint::{parse_chain, parse_triple, write_chain, write_triple, SearchPolicy};

const PLANE: &str = "onepoint-format: 1
field = \"2^2\"
n = 2
cone = \"z0 + z1 + z2\"
point = [\"1\", \"1\", \"a\"]
";

#[test]
fn plane_chain_survives_the_file_format() {
    let t = parse_triple(PLANE).unwrap();
    assert_eq!(parse_triple(&write_triple(&t)).unwrap(), t);
    let policy = SearchPolicy::default();
    let (chain, cert) = run(&t, 11, &policy).unwrap();
    assert!(cert.passed(), "{cert}");
    let prod: u64 = chain.steps.iter().map(|s| s.degree).product();
    assert_eq!(chain.composite.degree(), prod * 7);

    let text = write_chain(&chain);
    let back = parse_chain(&text).unwrap();
    assert_eq!(back, chain);
    assert_eq!(write_chain(&back), text);
    let again = certify_chain(&back, &policy.check, None);
    assert!(again.passed());
    assert!(!again.used_sampling());
    assert_eq!(again.to_json(), cert.to_json());
}

#[test]
fn escalated_chain_records_its_history() {
    let conic = "onepoint-format: 1\nfield = \"2\"\nn = 1\ncone = \"z0^2 + z0*z1 + z1^2\"\npoint = [\"0\", \"1\"]\n";
    let t = parse_triple(conic).unwrap();
    let (chain, _) = run(&t, 3, &SearchPolicy::default()).unwrap();
    let text = write_chain(&chain);
    assert!(text.contains("field_history = [\"2^1\", \"2^2;"), "{text}");
    let back = parse_chain(&text).unwrap();
    assert_eq!(back.input.field.k(), 1);
    assert!(certify_chain(&back, &SearchPolicy::default().check, None).passed());
}
