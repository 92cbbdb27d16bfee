//! Verification of maps and chains: containment of zero sets, chart
//! Jacobians, the point and divisor conditions, and fiber counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::maps::{abhyankar_map, projective_points, ProjMap};
use crate::pipeline::{replay_step, residual_normalization, CoverChain, StepKind};
use crate::poly::{det, MPoly, UPoly, DEFAULT_DEGREE_CAP};

/// Largest estimated term count of `g^e` tried by the exact test.
pub const DEFAULT_TERM_BUDGET: u64 = 200_000;
/// Largest estimated cost, in term products, of the exact division.
pub const DEFAULT_DIVISION_BUDGET: u64 = 50_000_000;
/// Points on the zero set checked by the sampling fallback.
pub const DEFAULT_SAMPLES: u64 = 64;
/// Default cap on points enumerated by `fiber_sample`.
pub const FIBER_ENUMERATION_CAP: u64 = 1 << 20;

/// Tunables for the containment test.
#[derive(Clone, Debug)]
pub struct CheckPolicy {
    pub degree_cap: u64,
    pub term_budget: u64,
    pub division_budget: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Default for CheckPolicy {
    fn default() -> Self {
        CheckPolicy {
            degree_cap: DEFAULT_DEGREE_CAP,
            term_budget: DEFAULT_TERM_BUDGET,
            division_budget: DEFAULT_DIVISION_BUDGET,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// How a check reached its answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    /// `F | g^exponent`, or a conclusive failure at `exponent >= deg F`.
    ExactDivision { exponent: u64 },
    /// Points on the zero set over `field`. A pass is probabilistic; a
    /// failure comes with a witness and is conclusive.
    PointSampling { samples: u64, field: String },
    /// Evaluation at a single point.
    Evaluation,
    /// Rebuilding the stored object and comparing.
    Recomputation,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::ExactDivision { exponent } => write!(f, "exact division (exponent {exponent})"),
            Method::PointSampling { samples, field } => {
                write!(f, "point sampling ({samples} samples over {field})")
            }
            Method::Evaluation => write!(f, "evaluation"),
            Method::Recomputation => write!(f, "recomputation"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub method: Method,
    pub detail: String,
}

impl CheckRecord {
    fn new(name: &str, passed: bool, method: Method, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.to_string(),
            passed,
            method,
            detail: detail.into(),
        }
    }

    fn from_containment(name: &str, c: Containment) -> Self {
        CheckRecord::new(name, c.holds, c.method, c.detail)
    }

    fn failed(name: &str, method: Method, err: &Error) -> Self {
        CheckRecord::new(name, false, method, err.to_string())
    }

    pub fn is_probabilistic(&self) -> bool {
        matches!(self.method, Method::PointSampling { .. })
    }
}

/// Outcome of `V(f) ⊆ V(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    pub method: Method,
    pub detail: String,
}

/// Repeatedly take `p`-th roots; the zero set does not change.
fn strip_pth_powers(f: &MPoly) -> MPoly {
    let mut f = f.clone();
    while !f.is_constant() {
        match f.pth_power_part() {
            Some(r) => f = r,
            None => break,
        }
    }
    f
}

fn binomial_estimate(n: u64, k: u64) -> u64 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Upper bound on the number of terms of `g^e`.
fn power_terms_estimate(g: &MPoly, e: u64) -> u64 {
    let nv = g.support_vars().len() as u64;
    let deg = g.total_degree().unwrap_or(0).saturating_mul(e);
    let dense = binomial_estimate(deg + nv, nv);
    let by_terms = (g.num_terms() as u64)
        .checked_pow(e.min(64) as u32)
        .unwrap_or(u64::MAX);
    dense.min(by_terms)
}

/// Decide whether the zero set of `f` lies in that of `g`.
///
/// Both are reduced by stripping `p`-th powers. The exact test asks whether
/// `f | g^e` for `e = 1, 2, 4, ...`; success is sound, and failure at
/// `e >= deg f` is conclusive because no irreducible factor of `f` occurs
/// more than `deg f` times. When `g^e` would exceed the degree cap or the
/// term budget the test falls back to sampling points of `V(f)`.
pub fn zero_set_contained(f: &MPoly, g: &MPoly, policy: &CheckPolicy) -> Result<Containment> {
    if f.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if f.nvars() != g.nvars() || !f.field().same(g.field()) {
        return Err(Error::MixedRings);
    }
    let exact = |e: u64, holds: bool, detail: String| Containment {
        holds,
        method: Method::ExactDivision { exponent: e },
        detail,
    };
    if f.is_constant() {
        return Ok(exact(0, true, "empty zero set".into()));
    }
    if g.is_zero() {
        return Ok(exact(1, true, "target is the zero polynomial".into()));
    }
    let f = strip_pth_powers(f);
    let g = strip_pth_powers(g);
    let deg_f = f.total_degree().expect("nonzero");
    let deg_g = g.total_degree().expect("nonzero");
    let mut e = 1u64;
    loop {
        let too_big = deg_g.saturating_mul(e) > policy.degree_cap
            || power_terms_estimate(&g, e) > policy.term_budget
            || power_terms_estimate(&g, e).saturating_mul(f.num_terms() as u64)
                > policy.division_budget;
        if too_big {
            return sample_containment(&f, &g, policy);
        }
        let ge = g.pow_capped(e, policy.degree_cap)?;
        if ge.divisible_by(&f)? {
            return Ok(exact(e, true, format!("divides g^{e}")));
        }
        if e >= deg_f {
            return Ok(exact(
                e,
                false,
                format!("does not divide g^{e}, e >= deg {deg_f}"),
            ));
        }
        e = (e * 2).min(deg_f);
    }
}

/// Extension degree used for sampling: the largest `e <= 4` with
/// `q^e <= 2^16`, at least 1.
fn sampling_field(base: &FieldConfig) -> Result<FieldConfig> {
    let q = base.q() as u64;
    let e = (1..=4u32)
        .rev()
        .find(|&e| q.checked_pow(e).is_some_and(|s| s <= 1 << 16))
        .unwrap_or(1);
    base.extension(e)
}

/// Evaluate `g` at points of `V(f)` found on random lines parallel to a
/// coordinate axis.
fn sample_containment(f: &MPoly, g: &MPoly, policy: &CheckPolicy) -> Result<Containment> {
    let big = sampling_field(f.field())?;
    let fb = f.embed(&big)?;
    let gb = g.embed(&big)?;
    let nv = f.nvars();
    let vars = fb.support_vars();
    let v = *vars
        .iter()
        .max_by_key(|&&v| fb.degree_in(v).unwrap_or(0))
        .expect("nonconstant");
    let q = big.q();
    let x = UPoly::x(&big);
    let frob = |h: &UPoly| -> Result<UPoly> { Ok(x.powmod(q as u128, h)?.sub(&x)) };
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut found = 0u64;
    let max_slices = policy.samples.saturating_mul(64).max(256);
    for _ in 0..max_slices {
        if found >= policy.samples {
            break;
        }
        let mut point: Vec<u32> = (0..nv).map(|_| rng.gen_range(0..q)).collect();
        let mut slice = fb.clone();
        for j in (0..nv).filter(|&j| j != v) {
            slice = slice.specialize(j, point[j]);
        }
        let uni = slice.to_univariate(v).expect("one variable left");
        let roots = match uni.degree() {
            None => vec![point[v]],
            Some(0) => continue,
            Some(_) => {
                let r = uni.monic().gcd(&frob(&uni.monic())?);
                if r.degree() == Some(0) {
                    continue;
                }
                r.roots()
            }
        };
        for root in roots {
            point[v] = root;
            if point.iter().all(|&c| c == 0) {
                continue;
            }
            found += 1;
            if gb.eval_raw(&point) != 0 {
                let coords: Vec<String> = point.iter().map(|&c| big.format_elem(c)).collect();
                return Ok(Containment {
                    holds: false,
                    method: Method::PointSampling {
                        samples: found,
                        field: big.spec(),
                    },
                    detail: format!("witness ({}) off the target", coords.join(", ")),
                });
            }
        }
    }
    Ok(Containment {
        holds: true,
        method: Method::PointSampling {
            samples: found,
            field: big.spec(),
        },
        detail: format!("probabilistic: {found} points on the zero set checked"),
    })
}

/// Numerator of the Jacobian of the affine map `u_j = w_j / w_n` on the
/// chart `z_k = 1`, as `det[w_j | d w_j / d z_l (l != k)]` with `z_k = 1`.
pub fn chart_jacobian(f: &ProjMap, k: usize) -> Result<MPoly> {
    let n = f.n();
    if k > n {
        return Err(Error::InvalidArgument(format!("chart z{k} out of range")));
    }
    let rows: Vec<Vec<MPoly>> = f
        .coords()
        .iter()
        .map(|w| {
            std::iter::once(w.specialize(k, 1))
                .chain(
                    (0..=n)
                        .filter(|&l| l != k)
                        .map(|l| w.derivative(l).specialize(k, 1)),
                )
                .collect()
        })
        .collect();
    det(&rows)
}

/// `V(F) ⊆ V(w_n)`: the divisor maps into the hyperplane at infinity.
pub fn check_divisor_into_h(
    divisor: &MPoly,
    f: &ProjMap,
    policy: &CheckPolicy,
) -> Result<CheckRecord> {
    let c = zero_set_contained(divisor, f.last(), policy)?;
    Ok(CheckRecord::from_containment("divisor into H", c))
}

/// The image of `x` has nonzero last coordinate.
pub fn check_point_off_h(f: &ProjMap, x: &[u32]) -> Result<CheckRecord> {
    let y = f.apply_raw(x)?;
    let field = f.field();
    let shown: Vec<String> = y.iter().map(|&c| field.format_elem(c)).collect();
    Ok(CheckRecord::new(
        "point off H",
        y[f.n()] != 0,
        Method::Evaluation,
        format!("image ({})", shown.join(" : ")),
    ))
}

/// The map is étale wherever `w_n != 0`. Every chart `z_k = 1` is
/// checked, so source points with `z_n = 0` are covered too.
pub fn check_etale_off_h(f: &ProjMap, policy: &CheckPolicy) -> Result<CheckRecord> {
    let n = f.n();
    let mut details = Vec::new();
    let mut method = Method::ExactDivision { exponent: 0 };
    for k in (0..=n).rev() {
        let j = chart_jacobian(f, k)?;
        if j.is_zero() {
            return Err(Error::DegenerateJacobian);
        }
        let c = zero_set_contained(&j, &f.last().specialize(k, 1), policy)?;
        details.push(format!("chart z{k}: {}", c.detail));
        method = merge_methods(method, c.method);
        if !c.holds {
            return Ok(CheckRecord::new(
                "etale off H",
                false,
                method,
                details.join("; "),
            ));
        }
    }
    Ok(CheckRecord::new(
        "etale off H",
        true,
        method,
        details.join("; "),
    ))
}

/// Keep the weakest method: sampling beats exact, larger exponents win.
fn merge_methods(a: Method, b: Method) -> Method {
    match (&a, &b) {
        (
            Method::PointSampling { samples: s1, field },
            Method::PointSampling { samples: s2, .. },
        ) => Method::PointSampling {
            samples: s1 + s2,
            field: field.clone(),
        },
        (Method::PointSampling { .. }, _) => a,
        (_, Method::PointSampling { .. }) => b,
        (Method::ExactDivision { exponent: e1 }, Method::ExactDivision { exponent: e2 }) => {
            Method::ExactDivision {
                exponent: (*e1).max(*e2),
            }
        }
        _ => b,
    }
}

/// A step map is étale off `V(z_n r0)`, checked on the chart `z_n = 1`
/// (points with `z_n = 0` lie in the allowed locus anyway).
pub fn check_step_nonetale_locus(
    f: &ProjMap,
    r0: &MPoly,
    policy: &CheckPolicy,
) -> Result<CheckRecord> {
    let n = f.n();
    let j = chart_jacobian(f, n)?;
    if j.is_zero() {
        return Err(Error::DegenerateJacobian);
    }
    let c = zero_set_contained(&j, &r0.specialize(n, 1), policy)?;
    Ok(CheckRecord::from_containment(
        "non-etale locus in V(z_n r0)",
        c,
    ))
}

/// One sampled target and its fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSample {
    pub target: Vec<String>,
    /// Source points over the sampling field.
    pub rational: u64,
    /// Distinct geometric preimages (only for `n = 1`).
    pub geometric: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberStats {
    pub field: String,
    pub samples: Vec<FiberSample>,
    pub rational_sizes: BTreeMap<u64, u64>,
    pub geometric_sizes: BTreeMap<u64, u64>,
}

impl FiberStats {
    /// The common geometric fiber size, if every sample has the same one.
    pub fn constant_geometric_size(&self) -> Option<u64> {
        let mut it = self.geometric_sizes.keys();
        match (it.next(), it.next()) {
            (Some(&s), None) if self.samples.iter().all(|x| x.geometric.is_some()) => Some(s),
            _ => None,
        }
    }
}

/// Distinct roots of `h` over the algebraic closure: the radical is split
/// by `gcd(r, x^(Q^m) - x)` for `m = 1, 2, ...` until nothing is left.
pub fn distinct_roots(h: &UPoly) -> Result<u64> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut r = h.squarefree_part();
    let field = h.field().clone();
    let x = UPoly::x(&field);
    let q = field.q() as u128;
    let mut y = x.clone();
    let mut count = 0u64;
    let mut m = 0u32;
    while r.degree().unwrap_or(0) > 0 {
        m += 1;
        y = y.powmod(q, &r)?;
        let g = r.gcd(&y.sub(&x));
        let dg = g.degree().unwrap_or(0);
        if dg > 0 {
            count += dg as u64;
            r = r.divrem(&g)?.0;
            y = y.rem(&r)?;
        }
        if m as usize > h.degree().unwrap_or(0) {
            return Err(Error::InvalidArgument(
                "root count did not terminate".into(),
            ));
        }
    }
    Ok(count)
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Structural checks on the Abhyankar map of `P^n` over `F_p`: common
/// degree, term counts, absence of base points over `F_{p^2}` (or `F_p` when
/// that is too many points) and a monomial Jacobian.
pub fn check_abhyankar(n: usize, field: &FieldConfig) -> Result<Vec<CheckRecord>> {
    let g = abhyankar_map(n, field)?;
    let want = crate::maps::abhyankar_degree(n, field.p());
    let mut out = Vec::new();

    let homogeneous = g
        .coords()
        .iter()
        .all(|c| c.homogeneous_degree().ok() == Some(want));
    out.push(CheckRecord::new(
        "homogeneity",
        homogeneous,
        Method::Recomputation,
        format!("degree {want}"),
    ));

    let counts: Vec<usize> = g.coords().iter().map(MPoly::num_terms).collect();
    let expected: Vec<usize> = (0..=n).map(|i| binom(n + 1, i + 1)).collect();
    out.push(CheckRecord::new(
        "term counts",
        counts == expected,
        Method::Recomputation,
        format!("{counts:?}"),
    ));

    let q = field.q() as u64;
    let ext = [2u32, 1]
        .into_iter()
        .find(|&e| {
            q.pow(e)
                .checked_pow(n as u32 + 1)
                .is_some_and(|s| s <= FIBER_ENUMERATION_CAP)
        })
        .ok_or(Error::EnumerationCapExceeded(
            q.saturating_pow(n as u32 + 1),
        ))?;
    let big = field.extension(ext)?;
    let gb = g.embed(&big)?;
    let hit = projective_points(&big, n).find(|x| gb.coords().iter().all(|c| c.eval_raw(x) == 0));
    out.push(CheckRecord::new(
        "no base points",
        hit.is_none(),
        Method::Evaluation,
        match &hit {
            None => format!("no common zero over {}", big.spec()),
            Some(x) => format!("common zero {x:?} over {}", big.spec()),
        },
    ));

    let vars: Vec<usize> = (0..=n).collect();
    let j = crate::poly::jacobian_det(g.coords(), &vars)?;
    out.push(CheckRecord::new(
        "monomial jacobian",
        j.num_terms() == 1,
        Method::Recomputation,
        j.to_string(),
    ));
    Ok(out)
}

/// Field used for fibers at `ext`: the smallest one containing both the
/// map's field and `F_{p^ext}`.
pub fn fiber_field(base: &FieldConfig, ext: u32) -> Result<FieldConfig> {
    if ext == 0 {
        return Err(Error::InvalidArgument(
            "extension degree must be positive".into(),
        ));
    }
    let k = base.k();
    let mut g = (k, ext);
    while g.1 != 0 {
        g = (g.1, g.0 % g.1);
    }
    base.extension(ext / g.0)
}

/// Fiber sizes over sampled targets off `H` in `P^n(F)`, with `F` given by
/// `fiber_field`. For `n = 1` the geometric fiber size is also computed.
pub fn fiber_sample(f: &ProjMap, ext: u32, samples: usize, seed: u64) -> Result<FiberStats> {
    let big = fiber_field(f.field(), ext)?;
    let n = f.n();
    let qb = big.q() as u64;
    let total = (0..=n as u32).try_fold(0u64, |acc, e| acc.checked_add(qb.checked_pow(e)?));
    match total {
        Some(t) if t <= FIBER_ENUMERATION_CAP => {}
        t => return Err(Error::EnumerationCapExceeded(t.unwrap_or(u64::MAX))),
    }
    let fb = f.embed(&big)?;
    let mut buckets: HashMap<Vec<u32>, u64> = HashMap::new();
    for x in projective_points(&big, n) {
        let y = fb.apply_raw(&x)?;
        if y[n] != 0 {
            let inv = big.inv(y[n])?;
            let key: Vec<u32> = y.iter().map(|&c| big.mul(c, inv)).collect();
            *buckets.entry(key).or_default() += 1;
        }
    }
    let affine = qb.pow(n as u32);
    let mut targets: Vec<Vec<u32>> = (0..affine)
        .map(|idx| {
            let mut t: Vec<u32> = (0..n)
                .map(|j| ((idx / qb.pow(j as u32)) % qb) as u32)
                .collect();
            t.push(1);
            t
        })
        .collect();
    if samples < targets.len() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        targets.shuffle(&mut rng);
        targets.truncate(samples);
        targets.sort();
    }
    let mut out = FiberStats {
        field: big.spec(),
        samples: Vec::new(),
        rational_sizes: BTreeMap::new(),
        geometric_sizes: BTreeMap::new(),
    };
    for t in targets {
        let rational = buckets.get(&t).copied().unwrap_or(0);
        let geometric = if n == 1 {
            geometric_fiber_1d(&fb, t[0])?
        } else {
            None
        };
        *out.rational_sizes.entry(rational).or_default() += 1;
        if let Some(g) = geometric {
            *out.geometric_sizes.entry(g).or_default() += 1;
        }
        out.samples.push(FiberSample {
            target: t.iter().map(|&c| big.format_elem(c)).collect(),
            rational,
            geometric,
        });
    }
    Ok(out)
}

/// Distinct preimages of `(u : 1)` under a map of `P^1`.
fn geometric_fiber_1d(f: &ProjMap, u: u32) -> Result<Option<u64>> {
    let field = f.field();
    let w0 = f.coords()[0]
        .specialize(1, 1)
        .to_univariate(0)
        .expect("one variable");
    let w1 = f.coords()[1]
        .specialize(1, 1)
        .to_univariate(0)
        .expect("one variable");
    let h = w0.sub(&w1.scale(u));
    if h.is_zero() {
        return Ok(None);
    }
    let mut count = distinct_roots(&h)?;
    let at_inf = (
        f.coords()[0].eval_raw(&[1, 0]),
        f.coords()[1].eval_raw(&[1, 0]),
    );
    if at_inf.1 != 0 && at_inf.0 == field.mul(u, at_inf.1) {
        count += 1;
    }
    Ok(Some(count))
}

/// Checks for one stored step of a chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub skipped: bool,
    pub degree: u64,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub input: CheckRecord,
    pub per_step: Vec<StepRecord>,
    pub composite: Vec<CheckRecord>,
    pub composite_degree: u64,
    pub fiber_stats: Option<FiberStats>,
    pub verdict: Verdict,
}

impl Certificate {
    fn assemble(
        input: CheckRecord,
        per_step: Vec<StepRecord>,
        composite: Vec<CheckRecord>,
        composite_degree: u64,
        fiber_stats: Option<FiberStats>,
    ) -> Self {
        let first_failure = std::iter::once((None, &input))
            .chain(
                per_step
                    .iter()
                    .flat_map(|s| s.checks.iter().map(move |c| (Some(s.index), c))),
            )
            .chain(composite.iter().map(|c| (None, c)))
            .find(|(_, c)| !c.passed)
            .map(|(i, c)| match i {
                Some(i) => format!("step {i}: {}", c.name),
                None => c.name.clone(),
            });
        Certificate {
            input,
            per_step,
            composite,
            composite_degree,
            fiber_stats,
            verdict: Verdict {
                passed: first_failure.is_none(),
                first_failure,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed
    }

    /// Whether any record relied on point sampling.
    pub fn used_sampling(&self) -> bool {
        std::iter::once(&self.input)
            .chain(self.per_step.iter().flat_map(|s| &s.checks))
            .chain(&self.composite)
            .any(CheckRecord::is_probabilistic)
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.composite.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Plain `key: value` lines in a fixed order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let line = |s: &mut String, c: &CheckRecord, indent: &str| {
            let _ = writeln!(
                s,
                "{indent}{}: {} [{}] {}",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.method,
                c.detail
            );
        };
        line(&mut s, &self.input, "");
        for st in &self.per_step {
            let kind = if st.skipped { "skipped" } else { "additive" };
            let _ = writeln!(s, "step {}: {kind}, degree {}", st.index, st.degree);
            for c in &st.checks {
                line(&mut s, c, "  ");
            }
        }
        let _ = writeln!(s, "composite degree: {}", self.composite_degree);
        for c in &self.composite {
            line(&mut s, c, "");
        }
        if let Some(fs) = &self.fiber_stats {
            let _ = writeln!(s, "fibers over {}: {} targets", fs.field, fs.samples.len());
            for (size, count) in &fs.rational_sizes {
                let _ = writeln!(s, "  rational size {size}: {count}");
            }
            for (size, count) in &fs.geometric_sizes {
                let _ = writeln!(s, "  geometric size {size}: {count}");
            }
        }
        let _ = writeln!(
            s,
            "verdict: {}",
            match &self.verdict.first_failure {
                None => "pass".to_string(),
                Some(f) => format!("fail ({f})"),
            }
        );
        s
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Run `check` and turn an error into a failed record.
fn guarded(name: &str, method: Method, check: impl FnOnce() -> Result<CheckRecord>) -> CheckRecord {
    check().unwrap_or_else(|e| CheckRecord::failed(name, method, &e))
}

fn equality(name: &str, ok: bool, what: &str) -> CheckRecord {
    let detail = if ok {
        format!("{what} matches")
    } else {
        format!("{what} differs from the stored one")
    };
    CheckRecord::new(name, ok, Method::Recomputation, detail)
}

/// Re-derive and check every part of a chain without trusting stored
/// results. `fibers` requests fiber sampling at that extension degree.
pub fn certify_chain(chain: &CoverChain, policy: &CheckPolicy, fibers: Option<u32>) -> Certificate {
    let field = chain.field().clone();
    let n = chain.input.n;
    let mut per_step = Vec::new();
    let mut composite = Vec::new();

    let input = chain.input.embed(&field);
    let input_record = guarded("input triple", Method::Evaluation, || {
        let t = input.clone()?;
        t.validate()?;
        Ok(CheckRecord::new(
            "input triple",
            t.i == 0,
            Method::Evaluation,
            "valid triple at step 0",
        ))
    });

    let mut prev = input.ok();
    for (idx, step) in chain.steps.iter().enumerate() {
        let mut checks = Vec::new();
        let skipped = step.kind == StepKind::Skip;
        match prev.as_ref().map(|t| replay_step(t, &step.change)) {
            None => checks.push(CheckRecord::new(
                "replay",
                false,
                Method::Recomputation,
                "no valid triple to start from",
            )),
            Some(Err(e)) => checks.push(CheckRecord::failed("replay", Method::Recomputation, &e)),
            Some(Ok(replayed)) => {
                let same = replayed.step == *step;
                checks.push(equality("replay", same, "recomputed step"));
                if let Some(r0) = &replayed.r0 {
                    let i = step.next.i - 1;
                    let w = step.map.coords();
                    checks.push(guarded(
                        "cone divides w_i",
                        Method::ExactDivision { exponent: 1 },
                        || {
                            let ok = w[i].divisible_by(&replayed.cone)?;
                            Ok(CheckRecord::new(
                                "cone divides w_i",
                                ok,
                                Method::ExactDivision { exponent: 1 },
                                format!("w_{i} by the transformed cone"),
                            ))
                        },
                    ));
                    checks.push(guarded(
                        "z_j divides w_j",
                        Method::ExactDivision { exponent: 1 },
                        || {
                            let mut ok = true;
                            for j in (0..n).filter(|&j| j != i) {
                                ok &= w[j].divisible_by(&MPoly::var(&field, n + 1, j))?;
                            }
                            Ok(CheckRecord::new(
                                "z_j divides w_j",
                                ok,
                                Method::ExactDivision { exponent: 1 },
                                "hyperplane coordinates",
                            ))
                        },
                    ));
                    let name = "non-etale locus in V(z_n r0)";
                    checks.push(guarded(name, Method::Evaluation, || {
                        check_step_nonetale_locus(&step.map, r0, policy)
                    }));
                }
            }
        }
        checks.push(guarded("next triple", Method::Evaluation, || {
            step.next.validate()?;
            let ok = step.next.i == idx + 1 && step.next.field.same(&field);
            Ok(CheckRecord::new(
                "next triple",
                ok,
                Method::Evaluation,
                format!("valid at step {}", idx + 1),
            ))
        }));
        per_step.push(StepRecord {
            index: idx,
            skipped,
            degree: step.degree,
            checks,
        });
        prev = Some(step.next.clone());
    }

    composite.push(CheckRecord::new(
        "step count",
        chain.steps.len() == n,
        Method::Recomputation,
        format!("{} steps for n = {n}", chain.steps.len()),
    ));
    composite.push(guarded("field history", Method::Recomputation, || {
        let h = &chain.field_history;
        let ok = h.last().is_some_and(|f| f.same(&field))
            && h.first().is_some_and(|f| f.same(&chain.input.field))
            && h.windows(2)
                .all(|w| w[1].p() == w[0].p() && w[1].k() == 2 * w[0].k());
        Ok(equality("field history", ok, "escalation history"))
    }));
    composite.push(guarded(
        "final normalization",
        Method::Recomputation,
        || {
            let last = prev
                .as_ref()
                .ok_or(Error::InvalidArgument("no final triple".into()))?;
            let want = residual_normalization(last)?;
            Ok(equality(
                "final normalization",
                want == chain.final_normalization,
                "normalization",
            ))
        },
    ));
    composite.push(guarded("abhyankar map", Method::Recomputation, || {
        let want = abhyankar_map(n, &field)?;
        Ok(equality(
            "abhyankar map",
            want == chain.abhyankar,
            "Abhyankar map",
        ))
    }));
    composite.push(guarded("recomposition", Method::Recomputation, || {
        let want = chain.recompose()?;
        Ok(equality(
            "recomposition",
            want == chain.composite,
            "composite",
        ))
    }));

    let f = &chain.composite;
    composite.push(guarded("divisor into H", Method::Evaluation, || {
        let t = chain.input.embed(&field)?;
        check_divisor_into_h(&t.cone, f, policy)
    }));
    composite.push(guarded("point off H", Method::Evaluation, || {
        let t = chain.input.embed(&field)?;
        check_point_off_h(f, &t.point)
    }));
    composite.push(guarded("etale off H", Method::Evaluation, || {
        check_etale_off_h(f, policy)
    }));

    let fiber_stats =
        fibers.and_then(
            |e| match fiber_sample(f, e, DEFAULT_SAMPLES as usize, policy.seed) {
                Ok(s) => Some(s),
                Err(err) => {
                    composite.push(CheckRecord::failed(
                        "fiber sampling",
                        Method::Evaluation,
                        &err,
                    ));
                    None
                }
            },
        );
    if let Some(fs) = &fiber_stats {
        if n == 1 {
            let ok = fs.constant_geometric_size().is_some();
            composite.push(CheckRecord::new(
                "constant geometric fiber",
                ok,
                Method::PointSampling {
                    samples: fs.samples.len() as u64,
                    field: fs.field.clone(),
                },
                format!("sizes {:?}", fs.geometric_sizes),
            ));
        }
    }
    Certificate::assemble(input_record, per_step, composite, f.degree(), fiber_stats)
}
