//! Search for a fractional linear map `x -> (a + b x) / (c + d x)` with
//! coefficients in a given field that makes a set of field elements
//! `F_p`-independent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp_rank;
use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldElement};

pub const DEFAULT_MOBIUS_TRIALS: u64 = 10_000;

/// The map `x -> (a + b x) / (c + d x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl Mobius {
    /// Image of `x` in the common extension, or `None` at the pole.
    pub fn apply(&self, x: &FieldElement) -> Result<Option<FieldElement>> {
        let target = FieldConfig::common_extension([self.a.field(), x.field()])?;
        let [a, b, c, d] = [&self.a, &self.b, &self.c, &self.d].map(|v| v.embed(&target));
        let x = x.embed(&target)?;
        let den = c?.add(&d?.mul(&x)?)?;
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(a?.add(&b?.mul(&x)?)?.div(&den)?))
    }
}

/// Images of `vals` under the raw tuple, or `None` if the tuple is
/// degenerate or has a pole at one of them.
fn images(work: &FieldConfig, t: [u32; 4], vals: &[u32]) -> Option<Vec<u32>> {
    let [a, b, c, d] = t;
    if work.mul(a, d) == work.mul(b, c) {
        return None;
    }
    vals.iter()
        .map(|&x| {
            let den = work.add(c, work.mul(d, x));
            (den != 0).then(|| work.div(work.add(a, work.mul(b, x)), den).expect("nonzero"))
        })
        .collect()
}

/// Find `(a, b, c, d)` over `coeffs` such that the images of `vals` and of
/// `extra` are defined and `F_p`-independent.
///
/// The identity is tried first. When the whole tuple space has at most
/// `max_trials` elements it is then enumerated in order; otherwise tuples are
/// drawn uniformly with a ChaCha generator seeded by `seed`. Degenerate
/// tuples count as failed trials.
pub fn mobius_search(
    vals: &[FieldElement],
    extra: Option<&FieldElement>,
    coeffs: &FieldConfig,
    seed: u64,
    max_trials: u64,
) -> Result<Mobius> {
    if vals.is_empty() {
        return Err(Error::InvalidArgument("no values to separate".into()));
    }
    let all: Vec<&FieldElement> = vals.iter().chain(extra).collect();
    let work = FieldConfig::common_extension(
        all.iter().map(|v| v.field()).chain(std::iter::once(coeffs)),
    )?;
    let raw: Vec<u32> = all
        .iter()
        .map(|v| v.embed(&work).map(|e| e.value()))
        .collect::<Result<_>>()?;
    let emb = coeffs.embedder(&work)?;
    let witness = |t: [u32; 4]| -> Option<Mobius> {
        let te = t.map(&emb);
        let im = images(&work, te, &raw)?;
        (fp_rank(&work, &im) == im.len()).then(|| Mobius {
            a: coeffs.element(t[0]),
            b: coeffs.element(t[1]),
            c: coeffs.element(t[2]),
            d: coeffs.element(t[3]),
        })
    };
    if max_trials == 0 {
        return Err(Error::Exhausted(0));
    }
    // the identity is always the first candidate
    if let Some(w) = witness([0, 1, 1, 0]) {
        return Ok(w);
    }
    let q = coeffs.q() as u64;
    let space = q.checked_pow(4);
    if space.is_some_and(|s| s <= max_trials) {
        let q = q as u32;
        for idx in 0..space.expect("checked") {
            let t = [0, 1, 2, 3].map(|j| ((idx / (q as u64).pow(j)) % q as u64) as u32);
            if let Some(w) = witness(t) {
                return Ok(w);
            }
        }
        return Err(Error::Exhausted(space.expect("checked")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 1..max_trials {
        let t = [(); 4].map(|_| rng.gen_range(0..coeffs.q()));
        if let Some(w) = witness(t) {
            return Ok(w);
        }
    }
    Err(Error::Exhausted(max_trials))
}
