//! The driver: coordinate search for each step, field escalation, the
//! final Abhyankar map, composition and certification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certify::{certify_chain, Certificate, CheckPolicy};
use crate::error::{ConditionTally, Error, Result};
use crate::field::FieldConfig;
use crate::maps::{
    abhyankar_map, normalize_hyperplanes, step2_map, CoordChange, GoodTriple, ProjMap, Step2,
};
use crate::poly::MPoly;

pub const DEFAULT_MAX_TRIALS: u64 = 20_000;
pub const DEFAULT_MAX_EXTENSIONS: u32 = 3;

#[derive(Clone, Debug)]
pub struct SearchPolicy {
    /// Coordinate changes tried per step and field.
    pub max_trials: u64,
    /// How many times the field may be replaced by its quadratic extension.
    pub max_extensions: u32,
    pub check: CheckPolicy,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy {
            max_trials: DEFAULT_MAX_TRIALS,
            max_extensions: DEFAULT_MAX_EXTENSIONS,
            check: CheckPolicy::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// A map built from the additive multiple of the cone.
    Additive,
    /// The cone is already a power of `z_n`; only the coordinate change.
    Skip,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Additive => "additive",
            StepKind::Skip => "skip",
        }
    }
}

/// One link of the chain: `map ∘ change`, and the triple it produces.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainStep {
    pub kind: StepKind,
    pub change: CoordChange,
    pub map: ProjMap,
    pub degree: u64,
    pub next: GoodTriple,
}

impl ChainStep {
    pub fn embed(&self, target: &FieldConfig) -> Result<ChainStep> {
        Ok(ChainStep {
            kind: self.kind,
            change: self.change.embed(target)?,
            map: self.map.embed(target)?,
            degree: self.degree,
            next: self.next.embed(target)?,
        })
    }
}

/// A step rebuilt from a triple and a coordinate change, with the data the
/// certificate checks against.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub step: ChainStep,
    /// The cone in the changed coordinates.
    pub cone: MPoly,
    /// Constant coefficient of the additive multiple, for additive steps.
    pub r0: Option<MPoly>,
}

/// Rebuild the step for `triple` under `change`. Triples whose cone is a
/// power of `z_n` give a skip step.
pub fn replay_step(triple: &GoodTriple, change: &CoordChange) -> Result<StepOutcome> {
    if triple.cone_is_last_power() {
        return skip_with(triple, change);
    }
    step2_map(triple, change).map(additive_outcome)
}

fn additive_outcome(s: Step2) -> StepOutcome {
    StepOutcome {
        cone: s.cone.clone(),
        r0: Some(s.r0().clone()),
        step: ChainStep {
            kind: StepKind::Additive,
            change: s.change,
            degree: s.degree,
            map: s.map,
            next: s.next,
        },
    }
}

fn skip_with(triple: &GoodTriple, change: &CoordChange) -> Result<StepOutcome> {
    let (n, i) = (triple.n, triple.i);
    if i >= n || !change.preserves_first(i) {
        return Err(Error::InvalidArgument("invalid skip step".into()));
    }
    let field = &triple.field;
    let cone = change.pullback(&triple.cone)?;
    let point = change.apply_point(&triple.point);
    let zn = MPoly::var(field, n + 1, n);
    let next = GoodTriple {
        n,
        field: field.clone(),
        i: i + 1,
        cone: zn,
        point,
    };
    next.validate()?;
    Ok(StepOutcome {
        cone,
        r0: None,
        step: ChainStep {
            kind: StepKind::Skip,
            change: change.clone(),
            map: ProjMap::identity(field, n),
            degree: 1,
            next,
        },
    })
}

/// The skip step: identity coordinates, or `z_i -> z_i + z_n` when the
/// point lies on `z_i = 0`.
pub fn skip_step(triple: &GoodTriple) -> Result<StepOutcome> {
    let (n, i) = (triple.n, triple.i);
    let mut matrix: Vec<Vec<u32>> = (0..=n)
        .map(|r| (0..=n).map(|c| u32::from(r == c)).collect())
        .collect();
    if triple.point[i] == 0 {
        matrix[i][n] = 1;
    }
    skip_with(triple, &CoordChange::new(&triple.field, matrix)?)
}

/// Entry point: validate the data and build the triple at step 0.
pub fn make_triple(
    n: usize,
    field: &FieldConfig,
    cone: MPoly,
    point: Vec<u32>,
) -> Result<GoodTriple> {
    if cone.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if cone.nvars() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "cone has {} variables, expected {}",
            cone.nvars(),
            n + 1
        )));
    }
    cone.homogeneous_degree()?;
    let t = GoodTriple {
        n,
        field: field.clone(),
        i: 0,
        cone,
        point,
    };
    t.validate()?;
    Ok(t)
}

/// Number of matrices in the block stabilizer at step `i`, counting
/// singular ones: `(q-1)^i q^((n+1-i)^2)`, or `None` on overflow.
fn stabilizer_space(q: u64, n: usize, i: usize) -> Option<u64> {
    let b = (n + 1 - i) as u32;
    (q - 1)
        .checked_pow(i as u32)?
        .checked_mul(q.checked_pow(b * b)?)
}

fn stabilizer_matrix(n: usize, i: usize, diag: &[u32], block: &[u32]) -> Vec<Vec<u32>> {
    let b = n + 1 - i;
    (0..=n)
        .map(|r| {
            (0..=n)
                .map(|c| {
                    if r < i || c < i {
                        if r == c {
                            diag[r]
                        } else {
                            0
                        }
                    } else {
                        block[(r - i) * b + (c - i)]
                    }
                })
                .collect()
        })
        .collect()
}

/// Try coordinate changes from the block stabilizer at the triple's step:
/// the identity first, then every matrix when the space has at most
/// `max_trials` elements, otherwise seeded uniform samples. Singular
/// samples count as trials.
pub fn coordinate_search(triple: &GoodTriple, seed: u64, max_trials: u64) -> Result<StepOutcome> {
    let (n, i) = (triple.n, triple.i);
    let field = &triple.field;
    let q = field.q() as u64;
    let b = n + 1 - i;
    let mut tally = ConditionTally::default();
    let attempt = |m: Vec<Vec<u32>>, tally: &mut ConditionTally| -> Result<Option<StepOutcome>> {
        let Ok(ch) = CoordChange::new(field, m) else {
            return Ok(None);
        };
        match step2_map(triple, &ch) {
            Ok(s) => Ok(Some(additive_outcome(s))),
            Err(Error::ConditionFailed(c)) => {
                tally.record(c);
                Ok(None)
            }
            Err(e) => Err(e),
        }
    };
    if max_trials == 0 {
        return Err(Error::SearchFailed { tally });
    }
    if let Some(s) = attempt(
        CoordChange::identity(field, n).matrix().to_vec(),
        &mut tally,
    )? {
        return Ok(s);
    }
    let qu = q as u32;
    match stabilizer_space(q, n, i) {
        Some(space) if space <= max_trials => {
            for idx in 0..space {
                let mut r = idx;
                let mut digit = |base: u64| {
                    let d = (r % base) as u32;
                    r /= base;
                    d
                };
                let diag: Vec<u32> = (0..i).map(|_| 1 + digit(q - 1)).collect();
                let block: Vec<u32> = (0..b * b).map(|_| digit(q)).collect();
                if let Some(s) = attempt(stabilizer_matrix(n, i, &diag, &block), &mut tally)? {
                    return Ok(s);
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 1..max_trials {
                let diag: Vec<u32> = (0..i).map(|_| rng.gen_range(1..qu)).collect();
                let block: Vec<u32> = (0..b * b).map(|_| rng.gen_range(0..qu)).collect();
                if let Some(s) = attempt(stabilizer_matrix(n, i, &diag, &block), &mut tally)? {
                    return Ok(s);
                }
            }
        }
    }
    Err(Error::SearchFailed { tally })
}

/// The change sending the hyperplanes of the last triple to coordinate
/// hyperplanes. The residual cone must be a power of a linear form.
pub fn residual_normalization(last: &GoodTriple) -> Result<CoordChange> {
    let n = last.n;
    if last.i != n {
        return Err(Error::InvalidArgument(format!(
            "final triple is at step {}",
            last.i
        )));
    }
    let field = &last.field;
    let linear = if last.cone_is_last_power() {
        MPoly::var(field, n + 1, n)
    } else if last.cone.homogeneous_degree()? == 1 {
        last.cone.clone()
    } else {
        return Err(Error::InvalidArgument(
            "residual cone is not a union of hyperplanes".into(),
        ));
    };
    let mut forms: Vec<MPoly> = (0..n).map(|j| MPoly::var(field, n + 1, j)).collect();
    forms.push(linear);
    normalize_hyperplanes(&forms)
}

/// The whole construction, ready for certification.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverChain {
    /// The triple as given, over the first field of the history.
    pub input: GoodTriple,
    pub steps: Vec<ChainStep>,
    pub final_normalization: CoordChange,
    pub abhyankar: ProjMap,
    pub composite: ProjMap,
    pub field_history: Vec<FieldConfig>,
    pub seed: u64,
}

impl CoverChain {
    /// The field every map is defined over.
    pub fn field(&self) -> &FieldConfig {
        self.field_history.last().unwrap_or(&self.input.field)
    }

    /// `abhyankar ∘ normalization ∘ f_{n-1} ∘ L_{n-1} ∘ ... ∘ f_0 ∘ L_0`,
    /// rejecting rational base points when the field is small.
    pub fn recompose(&self) -> Result<ProjMap> {
        let f = compose_chain(&self.steps, &self.final_normalization, &self.abhyankar)?;
        if f.rational_base_point().is_some() {
            return Err(Error::BasePointHit);
        }
        Ok(f)
    }

    /// Image of the input point under the composite.
    pub fn final_point(&self) -> Result<Vec<u32>> {
        let t = self.input.embed(self.field())?;
        self.composite.apply_raw(&t.point)
    }

    /// Apply every stored map in turn.
    pub fn apply_sequentially(&self, x: &[u32]) -> Result<Vec<u32>> {
        let mut y = x.to_vec();
        for s in &self.steps {
            y = s.map.apply_raw(&s.change.apply_point(&y))?;
        }
        y = self.final_normalization.apply_point(&y);
        self.abhyankar.apply_raw(&y)
    }
}

fn compose_chain(steps: &[ChainStep], norm: &CoordChange, abh: &ProjMap) -> Result<ProjMap> {
    let field = abh.field();
    let mut acc = ProjMap::identity(field, abh.n());
    for s in steps {
        acc = ProjMap::compose_unchecked(&s.change.to_map(), &acc)?;
        if s.kind == StepKind::Additive {
            acc = ProjMap::compose_unchecked(&s.map, &acc)?;
        }
    }
    acc = ProjMap::compose_unchecked(&norm.to_map(), &acc)?;
    ProjMap::compose_unchecked(abh, &acc)
}

fn step_seed(seed: u64, i: usize, level: u32) -> u64 {
    seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((level as u64) << 48)
}

/// Build the chain for `input` (at step 0) without certifying it.
pub fn build_chain(input: &GoodTriple, seed: u64, policy: &SearchPolicy) -> Result<CoverChain> {
    if input.i != 0 {
        return Err(Error::InvalidArgument(
            "input triple must be at step 0".into(),
        ));
    }
    input.validate()?;
    let n = input.n;
    let mut history = vec![input.field.clone()];
    let mut steps: Vec<ChainStep> = Vec::new();
    let mut triple = input.clone();
    let mut escalations = 0u32;
    let mut tally = ConditionTally::default();
    while triple.i < n {
        let i = triple.i;
        let outcome = if triple.cone_is_last_power() {
            skip_step(&triple)
        } else {
            coordinate_search(&triple, step_seed(seed, i, escalations), policy.max_trials)
        };
        match outcome {
            Ok(o) => {
                triple = o.step.next.clone();
                steps.push(o.step);
            }
            Err(Error::SearchFailed { tally: t }) => {
                tally.merge(&t);
                if escalations >= policy.max_extensions {
                    return Err(Error::SearchFailed { tally });
                }
                escalations += 1;
                let big = triple.field.extension(2)?;
                triple = triple.embed(&big)?;
                steps = steps.iter().map(|s| s.embed(&big)).collect::<Result<_>>()?;
                history.push(big);
            }
            Err(e) => return Err(e),
        }
    }
    let field = history.last().expect("nonempty").clone();
    let final_normalization = residual_normalization(&triple)?;
    let abhyankar = abhyankar_map(n, &field)?;
    let mut chain = CoverChain {
        input: input.clone(),
        steps,
        final_normalization,
        abhyankar,
        composite: ProjMap::identity(&field, n),
        field_history: history,
        seed,
    };
    chain.composite = chain.recompose()?;
    Ok(chain)
}

/// Build and certify. A chain that fails its own certificate is an error.
pub fn run(
    input: &GoodTriple,
    seed: u64,
    policy: &SearchPolicy,
) -> Result<(CoverChain, Certificate)> {
    let chain = build_chain(input, seed, policy)?;
    let cert = certify_chain(&chain, &policy.check, None);
    if let Some(f) = &cert.verdict.first_failure {
        return Err(Error::CertificationFailed(f.clone()));
    }
    Ok((chain, cert))
}

#[cfg(test)]
mod tests;
