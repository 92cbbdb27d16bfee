use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use onepoint::additive::additive_multiple;
use onepoint::certify::{certify_chain, check_abhyankar, CheckRecord};
use onepoint::maps::abhyankar_map;
use onepoint::pipeline::build_chain;
use onepoint::poly::parse_poly_with_names;
use onepoint::{
    parse_chain, parse_triple, write_chain, Certificate, Error, FieldConfig, SearchPolicy,
    FORMAT_VERSION,
};

/// Exit codes. Clap's own usage errors also exit with 2.
const EXIT_INPUT: u8 = 2;
const EXIT_CONSTRUCTION: u8 = 3;
const EXIT_SEARCH: u8 = 4;
const EXIT_CERTIFICATION: u8 = 5;

#[derive(Parser)]
#[command(
    name = "onepoint",
    version,
    about = "Etale covers of affine space over finite fields"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical additive multiple of a polynomial in `t`.
    Additive {
        /// Field, e.g. `2`, `3^2` or `2^4;mod=t^4+t+1`.
        field: String,
        /// Polynomial in `t`; coefficients may use the generator `a`.
        poly: String,
    },
    /// Print the Abhyankar map of P^n in characteristic p.
    Abhyankar {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        p: u64,
        /// Also check degrees, term counts, base points and the Jacobian.
        #[arg(long)]
        verify: bool,
    },
    /// Build and certify a cover chain from a triple file.
    Cover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the chain file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = onepoint::pipeline::DEFAULT_MAX_TRIALS)]
        max_trials: u64,
        #[arg(long, default_value_t = onepoint::pipeline::DEFAULT_MAX_EXTENSIONS)]
        max_extensions: u32,
    },
    /// Re-certify a stored chain from scratch.
    Verify {
        #[arg(long)]
        chain: PathBuf,
        /// Sample fibers over the extension of this degree.
        #[arg(long)]
        fibers: Option<u32>,
    },
}

struct Failure {
    code: u8,
    message: String,
    extra: Value,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            extra: Value::Null,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SearchFailed { .. } | Error::Exhausted(_) => EXIT_SEARCH,
            Error::CertificationFailed(_) => EXIT_CERTIFICATION,
            Error::DegreeTooLarge { .. }
            | Error::ExponentOverflow
            | Error::SplittingNotFound
            | Error::ConditionFailed(_)
            | Error::NotInGeneralPosition
            | Error::BasePointHit
            | Error::DegenerateJacobian => EXIT_CONSTRUCTION,
            _ => EXIT_INPUT,
        };
        let extra = match &e {
            Error::SearchFailed { tally } => json!({
                "tally": tally.to_string(),
                "dominant": tally.dominant().map(|c| c.label()),
            }),
            _ => Value::Null,
        };
        Failure {
            code,
            message: e.to_string(),
            extra,
        }
    }
}

/// Collects output so text and JSON modes share one code path.
struct Report {
    json: bool,
    lines: Vec<String>,
    fields: serde_json::Map<String, Value>,
}

impl Report {
    fn new(json: bool, command: &str) -> Self {
        let mut fields = serde_json::Map::new();
        fields.insert("format_version".into(), json!(FORMAT_VERSION));
        fields.insert("command".into(), json!(command));
        Report {
            json,
            lines: vec![format!("onepoint-format: {FORMAT_VERSION}")],
            fields,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn set(&mut self, key: &str, v: Value) {
        self.fields.insert(key.into(), v);
    }

    fn print(&self) {
        if self.json {
            println!("{}", Value::Object(self.fields.clone()));
        } else {
            for l in &self.lines {
                println!("{l}");
            }
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn record_lines(r: &mut Report, recs: &[CheckRecord]) {
    for c in recs {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        r.line(format!("{tag} {}: {}", c.name, c.detail));
    }
}

fn cmd_additive(r: &mut Report, field: &str, poly: &str) -> Result<(), Failure> {
    let field = FieldConfig::parse(field)?;
    let p = parse_poly_with_names(&field, &["t"], poly)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial.into());
    }
    let q = additive_multiple(&p.up_view(0))?;
    let names = ["t"];
    let qs = q.to_mpoly().display_with(&names);
    let r0 = q.r0().display_with(&names);
    r.line(format!("field: {}", field.spec()));
    r.line(format!("Q: {qs}"));
    r.line(format!("degree: {}", q.degree()));
    r.line(format!("r0: {r0}"));
    r.set("field", json!(field.spec()));
    r.set("q", json!(qs));
    r.set("degree", json!(q.degree()));
    r.set("r0", json!(r0));
    Ok(())
}

fn cmd_abhyankar(r: &mut Report, n: usize, p: u64, verify: bool) -> Result<(), Failure> {
    let field = FieldConfig::new(p, 1)?;
    let g = abhyankar_map(n, &field)?;
    r.line(format!("degree: {}", g.degree()));
    for (i, c) in g.coords().iter().enumerate() {
        r.line(format!("g{i} = {c}"));
    }
    r.set("n", json!(n));
    r.set("p", json!(p));
    r.set("degree", json!(g.degree()));
    r.set(
        "coords",
        json!(g.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    );
    if verify {
        let recs = check_abhyankar(n, &field)?;
        record_lines(r, &recs);
        r.set(
            "checks",
            serde_json::to_value(&recs).expect("records serialize"),
        );
        if let Some(bad) = recs.iter().find(|c| !c.passed) {
            return Err(Failure::new(
                EXIT_CONSTRUCTION,
                format!("check failed: {}", bad.name),
            ));
        }
    }
    Ok(())
}

fn certificate_fields(r: &mut Report, cert: &Certificate) {
    for l in cert.to_text().lines() {
        r.line(l);
    }
    let v: Value = serde_json::from_str(&cert.to_json()).expect("certificate json");
    r.set("certificate", v);
}

fn verdict(cert: &Certificate) -> Result<(), Failure> {
    match &cert.verdict.first_failure {
        None => Ok(()),
        Some(f) => Err(Error::CertificationFailed(f.clone()).into()),
    }
}

fn cmd_cover(
    r: &mut Report,
    input: &PathBuf,
    seed: u64,
    out: Option<&PathBuf>,
    policy: SearchPolicy,
) -> Result<(), Failure> {
    let triple = parse_triple(&read(input)?)?;
    let chain = build_chain(&triple, seed, &policy)?;
    let cert = certify_chain(&chain, &policy.check, None);
    if let Some(path) = out {
        fs::write(path, write_chain(&chain))
            .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
        r.line(format!("chain written to {}", path.display()));
        r.set("chain", json!(path.display().to_string()));
    }
    let ks: Vec<u32> = chain.field_history.iter().map(|f| f.k()).collect();
    r.line(format!("field: {}", chain.field().spec()));
    r.line(format!(
        "step degrees: {:?}",
        chain.steps.iter().map(|s| s.degree).collect::<Vec<_>>()
    ));
    r.set("field", json!(chain.field().spec()));
    r.set("extension_history", json!(ks));
    r.set("composite_degree", json!(chain.composite.degree()));
    r.set("passed", json!(cert.passed()));
    certificate_fields(r, &cert);
    verdict(&cert)
}

fn cmd_verify(r: &mut Report, path: &PathBuf, fibers: Option<u32>) -> Result<(), Failure> {
    let chain = parse_chain(&read(path)?)?;
    let cert = certify_chain(&chain, &SearchPolicy::default().check, fibers);
    r.set("passed", json!(cert.passed()));
    r.set("composite_degree", json!(cert.composite_degree));
    certificate_fields(r, &cert);
    verdict(&cert)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Additive { .. } => "additive",
        Command::Abhyankar { .. } => "abhyankar",
        Command::Cover { .. } => "cover",
        Command::Verify { .. } => "verify",
    };
    let mut report = Report::new(cli.json, name);
    let outcome = match &cli.command {
        Command::Additive { field, poly } => cmd_additive(&mut report, field, poly),
        Command::Abhyankar { n, p, verify } => cmd_abhyankar(&mut report, *n, *p, *verify),
        Command::Cover {
            input,
            seed,
            out,
            max_trials,
            max_extensions,
        } => {
            let policy = SearchPolicy {
                max_trials: *max_trials,
                max_extensions: *max_extensions,
                ..SearchPolicy::default()
            };
            cmd_cover(&mut report, input, *seed, out.as_ref(), policy)
        }
        Command::Verify { chain, fibers } => cmd_verify(&mut report, chain, *fibers),
    };
    match outcome {
        Ok(()) => {
            report.set("exit_code", json!(0));
            report.print();
            ExitCode::SUCCESS
        }
        Err(f) => {
            report.set("exit_code", json!(f.code));
            report.set("error", json!(f.message));
            if !f.extra.is_null() {
                report.set("detail", f.extra.clone());
            }
            report.print();
            if !cli.json {
                eprintln!("error: {}", f.message);
                if let Some(t) = f.extra.get("tally").and_then(Value::as_str) {
                    eprintln!("condition tally: {t}");
                }
            }
            ExitCode::from(f.code)
        }
    }
}
