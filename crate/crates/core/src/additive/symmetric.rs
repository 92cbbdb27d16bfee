//! The span product `S(x) = prod_{h in F_p^m} (x + h_1 t_1 + ... + h_m t_m)`
//! over `F_p[t_1..t_m, x]`, and its coefficients rewritten as polynomials in
//! the elementary symmetric functions of the `t_j`.
//!
//! Symmetric polynomials are handled through their dominant monomials only
//! (exponent vectors sorted in non-increasing order); a symmetric polynomial
//! is determined by those coefficients, and the leading term under graded lex
//! order is always dominant.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::poly::{Exps, MPoly, Monomial};

/// Largest `p^m` for which the span product is built symbolically.
pub const MAX_SPAN_DEGREE: u64 = 256;

/// `S(x)` with each coefficient written in `s_1..s_m`, the elementary
/// symmetric functions of `t_1..t_m`.
#[derive(Debug)]
pub struct UniversalForm {
    pub p: u32,
    pub m: usize,
    /// `(e, C_e)` where `C_e(s_1..s_m)` is the coefficient of `x^e`, in
    /// increasing order of `e`. The polynomials live over `F_p` in `m`
    /// variables.
    pub coeffs: Vec<(u32, MPoly)>,
}

type FormCache = Mutex<HashMap<(u32, usize), Arc<UniversalForm>>>;

fn cache() -> &'static FormCache {
    static CACHE: OnceLock<FormCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The universal form for `(p, m)`, built once and cached.
pub fn universal_form(p: u32, m: usize) -> Result<Arc<UniversalForm>> {
    if m == 0 {
        return Err(Error::InvalidArgument("span of no roots".into()));
    }
    if let Some(u) = cache().lock().unwrap().get(&(p, m)) {
        return Ok(u.clone());
    }
    let deg = (p as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    if deg > MAX_SPAN_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: deg,
            cap: MAX_SPAN_DEGREE,
        });
    }
    let fp = FieldConfig::new(p as u64, 1)?;
    let s = span_product(&fp, m)?;
    let mut by_x: BTreeMap<u32, Dom> = BTreeMap::new();
    for (mono, c) in s.terms() {
        let t_part = &mono.0[..m];
        if t_part.windows(2).all(|w| w[0] >= w[1]) {
            by_x.entry(mono.0[m])
                .or_default()
                .insert(Monomial(SmallVec::from_slice(t_part)), c);
        }
    }
    let mut coeffs = Vec::new();
    for (e, dom) in by_x {
        coeffs.push((e, reduce_symmetric(&fp, m, dom)?));
    }
    let u = Arc::new(UniversalForm { p, m, coeffs });
    let mut guard = cache().lock().unwrap();
    Ok(guard.entry((p, m)).or_insert(u).clone())
}

/// `S(x)` in `F_p[t_1..t_m, x]` (variables `0..m` are the `t_j`, variable `m`
/// is `x`), built as `S_0 = x`, `S_j(x) = prod_{c in F_p} S_{j-1}(x + c t_j)`.
pub fn span_product(fp: &FieldConfig, m: usize) -> Result<MPoly> {
    let nv = m + 1;
    let x = MPoly::var(fp, nv, m);
    let mut s = x.clone();
    for j in 0..m {
        let tj = MPoly::var(fp, nv, j);
        let mut acc = MPoly::one(fp, nv);
        for c in fp.elements() {
            let mut images: Vec<MPoly> = (0..nv).map(|v| MPoly::var(fp, nv, v)).collect();
            images[m] = &x + &tj.scale(c);
            let shifted = s.subst_capped(&images, MAX_SPAN_DEGREE)?;
            acc = acc.checked_mul(&shifted)?;
        }
        s = acc;
    }
    Ok(s)
}

type Dom = BTreeMap<Monomial, u32>;

fn sorted_desc(mut e: Exps) -> Exps {
    e.sort_unstable_by(|a, b| b.cmp(a));
    e
}

/// Multiply a symmetric polynomial (dominant form) by `e_k`.
fn mul_by_elementary(fp: &FieldConfig, g: &Dom, subsets: &[u32], m: usize) -> Dom {
    let mut cands: HashSet<Exps> = HashSet::new();
    for mu in g.keys() {
        for &s in subsets {
            let mut nu = mu.0.clone();
            for (i, e) in nu.iter_mut().enumerate() {
                if s & (1 << i) != 0 {
                    *e += 1;
                }
            }
            cands.insert(sorted_desc(nu));
        }
    }
    let mut out = Dom::new();
    for nu in cands {
        let mut acc = 0;
        for &s in subsets {
            if (0..m).any(|i| s & (1 << i) != 0 && nu[i] == 0) {
                continue;
            }
            let mut mu = nu.clone();
            for (i, e) in mu.iter_mut().enumerate() {
                if s & (1 << i) != 0 {
                    *e -= 1;
                }
            }
            if let Some(&c) = g.get(&Monomial(sorted_desc(mu))) {
                acc = fp.add(acc, c);
            }
        }
        if acc != 0 {
            out.insert(Monomial(nu), acc);
        }
    }
    out
}

/// `e_1^{a_1} ... e_m^{a_m}` in dominant form.
fn elementary_product(fp: &FieldConfig, a: &[u32], subsets: &[Vec<u32>]) -> Dom {
    let m = a.len();
    let mut g = Dom::new();
    g.insert(Monomial::one(m), 1);
    for k in 1..m {
        for _ in 0..a[k - 1] {
            g = mul_by_elementary(fp, &g, &subsets[k], m);
        }
    }
    // e_m^c shifts every part by c
    let shift = a[m - 1];
    if shift == 0 {
        return g;
    }
    g.into_iter()
        .map(|(mo, c)| (Monomial(mo.0.iter().map(|&e| e + shift).collect()), c))
        .collect()
}

/// Rewrite a symmetric polynomial, given by its dominant coefficients, as a
/// polynomial in the elementary symmetric functions.
fn reduce_symmetric(fp: &FieldConfig, m: usize, mut f: Dom) -> Result<MPoly> {
    let mut subsets = vec![Vec::new(); m + 1];
    for s in 0u32..(1 << m) {
        subsets[s.count_ones() as usize].push(s);
    }
    let mut out = Vec::new();
    let mut prev: Option<Monomial> = None;
    while let Some((lam, &c)) = f.last_key_value() {
        if prev.as_ref().is_some_and(|p| lam >= p) {
            return Err(Error::InvalidArgument("input is not symmetric".into()));
        }
        prev = Some(lam.clone());
        let a: Vec<u32> = (0..m)
            .map(|k| lam.0[k] - if k + 1 < m { lam.0[k + 1] } else { 0 })
            .collect();
        let prod = elementary_product(fp, &a, &subsets);
        for (mo, x) in prod {
            let sub = fp.neg(fp.mul(c, x));
            match f.entry(mo) {
                Entry::Vacant(v) => {
                    v.insert(sub);
                }
                Entry::Occupied(mut o) => {
                    let s = fp.add(*o.get(), sub);
                    if s == 0 {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        out.push((a, c));
    }
    Ok(MPoly::from_terms(fp, m, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly_with_names;

    fn elementary(fp: &FieldConfig, m: usize, k: usize) -> MPoly {
        let mut acc = MPoly::zero(fp, m);
        for s in 0u32..(1 << m) {
            if s.count_ones() as usize == k {
                let e: Vec<u32> = (0..m).map(|i| (s >> i) & 1).collect();
                acc = &acc + &MPoly::from_terms(fp, m, [(e, 1)]);
            }
        }
        acc
    }

    #[test]
    fn two_roots_over_f2() {
        let u = universal_form(2, 2).unwrap();
        let fp = FieldConfig::new(2, 1).unwrap();
        let names = ["s1", "s2"];
        let want = [(1, "s1*s2"), (2, "s1^2 + s2"), (4, "1")];
        assert_eq!(u.coeffs.len(), 3);
        for ((e, c), (we, ws)) in u.coeffs.iter().zip(want) {
            assert_eq!(*e, we);
            assert_eq!(*c, parse_poly_with_names(&fp, &names, ws).unwrap());
        }
    }

    #[test]
    fn single_root_is_artin_schreier_shape() {
        // prod_{c in F_3} (x + c t) = x^3 - t^2 x
        let u = universal_form(3, 1).unwrap();
        let fp = FieldConfig::new(3, 1).unwrap();
        let names = ["s1"];
        assert_eq!(
            u.coeffs[0],
            (1, parse_poly_with_names(&fp, &names, "-s1^2").unwrap())
        );
        assert_eq!(
            u.coeffs[1],
            (3, parse_poly_with_names(&fp, &names, "1").unwrap())
        );
    }

    #[test]
    fn reexpansion_matches_span_product() {
        for (p, m) in [(2u32, 3usize), (3, 2), (5, 2)] {
            let fp = FieldConfig::new(p as u64, 1).unwrap();
            let u = universal_form(p, m).unwrap();
            let s = span_product(&fp, m).unwrap();
            let es: Vec<MPoly> = (1..=m)
                .map(|k| elementary(&fp, m, k).extend_vars(m + 1))
                .collect();
            let mut rebuilt = MPoly::zero(&fp, m + 1);
            for (e, c) in &u.coeffs {
                let xe = MPoly::monomial(&fp, Monomial::var(m + 1, m, *e), 1);
                rebuilt = &rebuilt + &(&c.subst(&es).unwrap() * &xe);
            }
            assert_eq!(rebuilt, s, "p={p} m={m}");
        }
    }
}
