//! Text files for triples and chains: a `onepoint-format: 1` line followed
//! by a TOML body.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::maps::{CoordChange, GoodTriple, ProjMap};
use crate::pipeline::{make_triple, ChainStep, CoverChain, StepKind};
use crate::poly::{parse::parse_element, parse_poly, MPoly};

pub const FORMAT_VERSION: u32 = 1;
pub const HEADER: &str = "onepoint-format: 1";

fn fmt_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

/// Strip and check the version line.
fn body(text: &str) -> Result<&str> {
    let text = text.trim_start();
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let first = first.trim();
    match first.strip_prefix("onepoint-format:") {
        Some(v) if v.trim() == FORMAT_VERSION.to_string() => Ok(rest),
        Some(v) => Err(Error::Format(format!(
            "unsupported format version `{}`",
            v.trim()
        ))),
        None => Err(Error::Format(format!(
            "expected `{HEADER}` as the first line"
        ))),
    }
}

fn with_header(toml_body: String) -> String {
    format!("{HEADER}\n{toml_body}")
}

fn elems(field: &FieldConfig, xs: &[u32]) -> Vec<String> {
    xs.iter().map(|&x| field.format_elem(x)).collect()
}

fn parse_elems(field: &FieldConfig, xs: &[String]) -> Result<Vec<u32>> {
    xs.iter().map(|s| parse_element(field, s)).collect()
}

fn polys(ps: &[MPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn parse_polys(field: &FieldConfig, nv: usize, ps: &[String]) -> Result<Vec<MPoly>> {
    ps.iter().map(|s| parse_poly(field, nv, s)).collect()
}

fn matrix_strings(field: &FieldConfig, m: &[Vec<u32>]) -> Vec<Vec<String>> {
    m.iter().map(|r| elems(field, r)).collect()
}

fn parse_matrix(field: &FieldConfig, m: &[Vec<String>]) -> Result<CoordChange> {
    let rows = m
        .iter()
        .map(|r| parse_elems(field, r))
        .collect::<Result<Vec<_>>>()?;
    CoordChange::new(field, rows)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleFile {
    field: String,
    n: usize,
    cone: String,
    point: Vec<String>,
}

/// Read and validate a triple at step 0.
pub fn parse_triple(text: &str) -> Result<GoodTriple> {
    let t: TripleFile = toml::from_str(body(text)?).map_err(fmt_err)?;
    let field = FieldConfig::parse(&t.field)?;
    let cone = parse_poly(&field, t.n + 1, &t.cone)?;
    let point = parse_elems(&field, &t.point)?;
    make_triple(t.n, &field, cone, point)
}

pub fn write_triple(t: &GoodTriple) -> String {
    let file = TripleFile {
        field: t.field.spec(),
        n: t.n,
        cone: t.cone.to_string(),
        point: elems(&t.field, &t.point),
    };
    with_header(toml::to_string(&file).expect("triple serializes"))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepFile {
    kind: String,
    degree: u64,
    change: Vec<Vec<String>>,
    map: Vec<String>,
    next_cone: String,
    next_point: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    degree: u64,
    coords: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainFile {
    field: String,
    n: usize,
    seed: u64,
    field_history: Vec<String>,
    input: TripleFile,
    steps: Vec<StepFile>,
    final_normalization: Vec<Vec<String>>,
    abhyankar: MapFile,
    composite: MapFile,
}

fn map_file(m: &ProjMap) -> MapFile {
    MapFile {
        degree: m.degree(),
        coords: polys(m.coords()),
    }
}

fn parse_map(field: &FieldConfig, n: usize, m: &MapFile) -> Result<ProjMap> {
    let map = ProjMap::new(parse_polys(field, n + 1, &m.coords)?)?;
    if map.degree() != m.degree {
        return Err(Error::Format(format!(
            "stated degree {} but coordinates have degree {}",
            m.degree,
            map.degree()
        )));
    }
    Ok(map)
}

pub fn write_chain(c: &CoverChain) -> String {
    let field = c.field();
    let steps = c
        .steps
        .iter()
        .map(|s| StepFile {
            kind: s.kind.as_str().to_string(),
            degree: s.degree,
            change: matrix_strings(field, s.change.matrix()),
            map: polys(s.map.coords()),
            next_cone: s.next.cone.to_string(),
            next_point: elems(field, &s.next.point),
        })
        .collect();
    let file = ChainFile {
        field: field.spec(),
        n: c.input.n,
        seed: c.seed,
        field_history: c.field_history.iter().map(|f| f.spec()).collect(),
        input: TripleFile {
            field: c.input.field.spec(),
            n: c.input.n,
            cone: c.input.cone.to_string(),
            point: elems(&c.input.field, &c.input.point),
        },
        steps,
        final_normalization: matrix_strings(field, c.final_normalization.matrix()),
        abhyankar: map_file(&c.abhyankar),
        composite: map_file(&c.composite),
    };
    with_header(toml::to_string(&file).expect("chain serializes"))
}

/// Read a chain. Only the structure is checked here; whether the content
/// is correct is for the certificate to decide.
pub fn parse_chain(text: &str) -> Result<CoverChain> {
    let c: ChainFile = toml::from_str(body(text)?).map_err(fmt_err)?;
    let field = FieldConfig::parse(&c.field)?;
    let n = c.n;
    let input_field = FieldConfig::parse(&c.input.field)?;
    if c.input.n != n {
        return Err(Error::Format(
            "input dimension differs from the chain".into(),
        ));
    }
    let input = GoodTriple {
        n,
        field: input_field.clone(),
        i: 0,
        cone: parse_poly(&input_field, n + 1, &c.input.cone)?,
        point: parse_elems(&input_field, &c.input.point)?,
    };
    let steps = c
        .steps
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let kind = match s.kind.as_str() {
                "additive" => StepKind::Additive,
                "skip" => StepKind::Skip,
                other => return Err(Error::Format(format!("unknown step kind `{other}`"))),
            };
            Ok(ChainStep {
                kind,
                change: parse_matrix(&field, &s.change)?,
                map: ProjMap::new(parse_polys(&field, n + 1, &s.map)?)?,
                degree: s.degree,
                next: GoodTriple {
                    n,
                    field: field.clone(),
                    i: idx + 1,
                    cone: parse_poly(&field, n + 1, &s.next_cone)?,
                    point: parse_elems(&field, &s.next_point)?,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let field_history = c
        .field_history
        .iter()
        .map(|s| FieldConfig::parse(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverChain {
        input,
        steps,
        final_normalization: parse_matrix(&field, &c.final_normalization)?,
        abhyankar: parse_map(&field, n, &c.abhyankar)?,
        composite: parse_map(&field, n, &c.composite)?,
        field_history,
        seed: c.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{build_chain, SearchPolicy};

    const TRIPLE: &str = "onepoint-format: 1\nfield = \"2^4\"\nn = 1\ncone = \"z0^2 + z0*z1 + z1^2\"\npoint = [\"0\", \"1\"]\n";

    #[test]
    fn triple_round_trip() {
        let t = parse_triple(TRIPLE).unwrap();
        assert_eq!(t.field.q(), 16);
        let again = parse_triple(&write_triple(&t)).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn header_is_required() {
        let no_header = TRIPLE.replacen("onepoint-format: 1\n", "", 1);
        assert!(matches!(parse_triple(&no_header), Err(Error::Format(_))));
        let v2 = TRIPLE.replacen(": 1", ": 2", 1);
        assert!(matches!(parse_triple(&v2), Err(Error::Format(_))));
        let extra = format!("{TRIPLE}colour = \"red\"\n");
        assert!(matches!(parse_triple(&extra), Err(Error::Format(_))));
    }

    #[test]
    fn triple_errors_surface() {
        // a^5 = a^2 + a is a primitive cube root of unity, a root of the conic
        let on = TRIPLE.replace("[\"0\", \"1\"]", "[\"a^2+a\", \"1\"]");
        assert_eq!(parse_triple(&on), Err(Error::PointOnDivisor));
        let bad = TRIPLE.replace("z1^2\"", "z1\"");
        assert_eq!(parse_triple(&bad), Err(Error::NotHomogeneous));
    }

    #[test]
    fn chain_round_trip_is_byte_identical() {
        let t = parse_triple(TRIPLE).unwrap();
        let chain = build_chain(&t, 7, &SearchPolicy::default()).unwrap();
        let text = write_chain(&chain);
        assert!(text.starts_with(HEADER));
        let back = parse_chain(&text).unwrap();
        assert_eq!(back, chain);
        assert_eq!(write_chain(&back), text);
    }
}
