//! Additive polynomials: the canonical additive multiple of a polynomial in
//! one variable over a polynomial coefficient ring, Moore determinants,
//! `F_p`-independence, and the Möbius search that makes a set of field
//! elements independent.

mod mobius;
pub mod symmetric;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldElement};
use crate::poly::{det, MPoly, Monomial, UPoly, UPolyView};

pub use mobius::{mobius_search, Mobius, DEFAULT_MOBIUS_TRIALS};
pub use symmetric::{span_product, universal_form, UniversalForm, MAX_SPAN_DEGREE};

/// `sum_i r_i t^(p^i)` where `t` is variable `main_var` of the ring the
/// `r_i` live in (the `r_i` do not mention it).
#[derive(Clone, Debug, PartialEq)]
pub struct AdditivePoly {
    pub main_var: usize,
    pub coeffs: Vec<MPoly>,
}

impl AdditivePoly {
    pub fn p(&self) -> u32 {
        self.coeffs[0].field().p()
    }

    /// The index `m` of the top coefficient.
    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree in `t`, i.e. `p^m`.
    pub fn degree(&self) -> u64 {
        (self.p() as u64).pow(self.m() as u32)
    }

    /// The coefficient of `t`.
    pub fn r0(&self) -> &MPoly {
        &self.coeffs[0]
    }

    /// The full polynomial in the ambient ring.
    pub fn to_mpoly(&self) -> MPoly {
        let first = &self.coeffs[0];
        let nv = first.nvars();
        let mut out = MPoly::zero(first.field(), nv);
        let mut e: u32 = 1;
        for r in &self.coeffs {
            let t = r
                .mul_monomial(&Monomial::var(nv, self.main_var, e), 1)
                .expect("degree fits");
            out = &out + &t;
            e = e.saturating_mul(self.p());
        }
        out
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        let t = names[self.main_var];
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, r)| {
                let pw = match i {
                    0 => t.to_string(),
                    _ => format!("{t}^{}", (self.p() as u64).pow(i as u32)),
                };
                let rs = r.display_with(names);
                if r.constant_value() == Some(1) {
                    pw
                } else if r.num_terms() == 1 && !rs.contains('+') {
                    format!("{rs}*{pw}")
                } else {
                    format!("({rs})*{pw}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for AdditivePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nv = self.coeffs[0].nvars();
        let names: Vec<String> = (0..nv).map(|i| format!("z{i}")).collect();
        let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// Determinant of the matrix whose `(i, j)` entry is `vals[i]^(p^j)`.
pub fn moore_det(vals: &[MPoly]) -> Result<MPoly> {
    let first = vals
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty Moore matrix".into()))?;
    let p = first.field().p() as u64;
    let r = vals.len();
    let mut rows = Vec::with_capacity(r);
    for v in vals {
        let mut row = Vec::with_capacity(r);
        let mut x = v.clone();
        for j in 0..r {
            if j > 0 {
                x = x.pow(p)?;
            }
            row.push(x.clone());
        }
        rows.push(row);
    }
    det(&rows)
}

/// Leading coefficient and monic coefficient list `a_0..a_{m-1}` of `view`.
fn monic_coeffs(view: &UPolyView) -> Result<(usize, Vec<MPoly>)> {
    let m = view.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 {
        return Err(Error::InvalidArgument(
            "polynomial has degree 0 in the main variable".into(),
        ));
    }
    let lc = view
        .leading()
        .and_then(|l| l.constant_value())
        .filter(|&c| c != 0)
        .ok_or(Error::NonConstantLeadingCoeff)?;
    let field = view.coeffs[0].field().clone();
    let inv = field.inv(lc)?;
    Ok((m, view.coeffs[..m].iter().map(|c| c.scale(inv)).collect()))
}

/// The canonical additive multiple of a polynomial in `main_var`.
///
/// The monic normalization `P = t^m + a_{m-1} t^{m-1} + ... + a_0` is
/// matched against `prod_j (t + t_j)`, so the elementary symmetric function
/// `s_i` is sent to `a_{m-i}` in the universal form of the span product. The
/// result is checked to be divisible by `P`.
pub fn additive_multiple(view: &UPolyView) -> Result<AdditivePoly> {
    let (m, a) = monic_coeffs(view)?;
    let ring = &a[0];
    let p = ring.field().p();
    let u = universal_form(p, m)?;
    let images: Vec<MPoly> = (1..=m).map(|i| a[m - i].clone()).collect();
    let mut coeffs = vec![MPoly::zero(ring.field(), ring.nvars()); m + 1];
    for (e, c) in &u.coeffs {
        let j = power_index(*e, p).ok_or_else(|| {
            Error::InvalidArgument(format!("span product has non-additive exponent {e}"))
        })?;
        coeffs[j] = c.subst(&images)?;
    }
    let q = AdditivePoly {
        main_var: view.main_var,
        coeffs,
    };
    let input = view.reassemble().ok_or(Error::ZeroPolynomial)?;
    if !q.to_mpoly().divisible_by(&input)? {
        return Err(Error::InvalidArgument(
            "additive multiple is not divisible by its input".into(),
        ));
    }
    Ok(q)
}

/// `Some(j)` if `e == p^j`.
fn power_index(e: u32, p: u32) -> Option<usize> {
    let mut x = 1u32;
    let mut j = 0;
    while x < e {
        x = x.checked_mul(p)?;
        j += 1;
    }
    (x == e).then_some(j)
}

/// Reduce a dense polynomial in `t` (coefficients in the ring) modulo the
/// monic polynomial with lower coefficients `a`.
fn reduce_mod_monic(mut v: Vec<MPoly>, a: &[MPoly]) -> Vec<MPoly> {
    let m = a.len();
    while v.len() > m {
        let top = v.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let base = v.len() - m;
        for (i, ai) in a.iter().enumerate() {
            v[base + i] = &v[base + i] - &(&top * ai);
        }
    }
    v.resize(m, MPoly::zero(a[0].field(), a[0].nvars()));
    v
}

fn dense_mul(x: &[MPoly], y: &[MPoly]) -> Vec<MPoly> {
    let z = MPoly::zero(x[0].field(), x[0].nvars());
    let mut out = vec![z; x.len() + y.len() - 1];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                out[i + j] = &out[i + j] + &(xi * yj);
            }
        }
    }
    out
}

/// An additive multiple found by linear algebra: the residues of
/// `t^(p^j)` modulo the monic `P` for `j = 0..m` are `m + 1` vectors in an
/// `m`-dimensional space, and the signed maximal minors give a dependence.
/// Returns `None` when every minor vanishes (the residues span less than
/// `m` dimensions, which happens when the roots are `F_p`-dependent).
pub fn linear_multiple(view: &UPolyView) -> Result<Option<AdditivePoly>> {
    let (m, a) = monic_coeffs(view)?;
    let field = a[0].field().clone();
    let nv = a[0].nvars();
    let p = field.p();
    let zero = MPoly::zero(&field, nv);
    let mut t = vec![zero.clone(), MPoly::one(&field, nv)];
    t = reduce_mod_monic(t, &a);
    let mut residues = vec![t.clone()];
    for _ in 0..m {
        let mut acc = vec![MPoly::one(&field, nv)];
        for _ in 0..p {
            acc = reduce_mod_monic(dense_mul(&acc, &t), &a);
        }
        t = acc;
        residues.push(t.clone());
    }
    let mut coeffs = Vec::with_capacity(m + 1);
    for skip in 0..=m {
        let rows: Vec<Vec<MPoly>> = (0..m)
            .map(|i| {
                (0..=m)
                    .filter(|&j| j != skip)
                    .map(|j| residues[j][i].clone())
                    .collect()
            })
            .collect();
        let d = det(&rows)?;
        coeffs.push(if skip % 2 == 1 { -&d } else { d });
    }
    if coeffs.iter().all(|c| c.is_zero()) {
        return Ok(None);
    }
    Ok(Some(AdditivePoly {
        main_var: view.main_var,
        coeffs,
    }))
}

/// Whether `q` is additive in `var`: every exponent of `var` is a power of
/// `p` and no term is free of it. For at most 64 terms the identity
/// `q(t + u) = q(t) + q(u)` is also checked by expansion.
pub fn is_additive(q: &MPoly, var: usize) -> bool {
    let p = q.field().p();
    if q.terms()
        .any(|(m, _)| power_index(m.exps()[var], p).is_none() || m.exps()[var] == 0)
    {
        return false;
    }
    if q.num_terms() > 64 {
        return true;
    }
    let nv = q.nvars() + 1;
    let f = q.field();
    let qe = q.extend_vars(nv);
    let u = MPoly::var(f, nv, nv - 1);
    let mut shifted: Vec<MPoly> = (0..nv).map(|v| MPoly::var(f, nv, v)).collect();
    shifted[var] = &shifted[var] + &u;
    let mut only_u: Vec<MPoly> = (0..nv).map(|v| MPoly::var(f, nv, v)).collect();
    only_u[var] = u;
    match (qe.subst(&shifted), qe.subst(&only_u)) {
        (Ok(a), Ok(b)) => (&a - &(&qe + &b)).is_zero(),
        _ => false,
    }
}

/// Rank over `F_p` of the coordinate vectors of `vals`.
pub fn fp_rank(field: &FieldConfig, vals: &[u32]) -> usize {
    let p = field.p();
    let mut rows: Vec<Vec<u32>> = vals.iter().map(|&v| field.digits(v)).collect();
    let cols = field.k() as usize;
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = crate::field::fp_inv(rows[rank][col], p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = (rows[r][col] as u64 * inv as u64 % p as u64) as u32;
                let pivot_row = rows[rank].clone();
                for (x, &y) in rows[r][col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                    let sub = (f as u64 * y as u64 % p as u64) as u32;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `vals` are linearly independent over `F_p`.
pub fn fp_lin_indep(vals: &[FieldElement]) -> Result<bool> {
    let Some(first) = vals.first() else {
        return Ok(true);
    };
    let field = first.field();
    if vals.iter().any(|v| !v.field().same(field)) {
        return Err(Error::MixedFields);
    }
    let raw: Vec<u32> = vals.iter().map(|v| v.value()).collect();
    Ok(fp_rank(field, &raw) == vals.len())
}

/// Roots of the monic `h` in `field`, with multiplicity, if it splits there.
fn roots_with_multiplicity(h: &UPoly) -> Option<Vec<u32>> {
    let field = h.field().clone();
    let mut rest = h.clone();
    let mut roots = Vec::new();
    for x in field.elements() {
        while rest.degree().unwrap_or(0) > 0 && rest.eval(x) == 0 {
            let lin = UPoly::new(&field, vec![field.neg(x), 1]);
            rest = rest.divrem(&lin).expect("monic").0;
            roots.push(x);
        }
        if rest.degree() == Some(0) {
            return Some(roots);
        }
    }
    None
}

/// Brute-force `prod_{h in F_p^m} (x + sum_j h_j rho_j)` where the `rho_j` are
/// the roots of the monic normalization of the univariate `poly`, found in
/// the smallest extension where it splits. The result is in the same ring as
/// `poly`.
pub fn span_product_oracle(poly: &MPoly) -> Result<MPoly> {
    let vars = poly.support_vars();
    let v = match vars.as_slice() {
        [v] => *v,
        [] => {
            return Err(Error::InvalidArgument(
                "constant polynomial has no roots".into(),
            ))
        }
        _ => {
            return Err(Error::InvalidArgument(
                "polynomial is not univariate".into(),
            ))
        }
    };
    let base = poly.field().clone();
    let h = poly.to_univariate(v).expect("univariate").monic();
    let m = h.degree().expect("nonconstant");
    let p = base.p() as u64;
    let span = p.checked_pow(m as u32).unwrap_or(u64::MAX);
    if span > MAX_SPAN_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: span,
            cap: MAX_SPAN_DEGREE,
        });
    }
    let lcm = (1..=m as u64).fold(1u64, |acc, d| acc / gcd(acc, d) * d);
    let mut found = None;
    for e in (1..=lcm).filter(|e| lcm % e == 0) {
        let ext = match base.extension(e as u32) {
            Ok(f) => f,
            Err(Error::FieldTooLarge(_)) => break,
            Err(err) => return Err(err),
        };
        let emb = base.embedder(&ext)?;
        let he = UPoly::new(&ext, h.coeffs().iter().map(|&c| emb(c)).collect());
        if let Some(r) = roots_with_multiplicity(&he) {
            found = Some((ext, r));
            break;
        }
    }
    let (ext, roots) = found.ok_or(Error::SplittingNotFound)?;
    let mut acc = UPoly::one(&ext);
    let mut h_vec = vec![0u32; m];
    loop {
        let mut shift = 0;
        for (hj, &rj) in h_vec.iter().zip(&roots) {
            shift = ext.add(shift, ext.mul(*hj, rj));
        }
        acc = acc.mul(&UPoly::new(&ext, vec![shift, 1]));
        // next h in F_p^m
        let mut i = 0;
        loop {
            if i == m {
                let coeffs = acc
                    .coeffs()
                    .iter()
                    .map(|&c| {
                        base.restrict_value(c, &ext)?.ok_or_else(|| {
                            Error::InvalidArgument(
                                "span product is not defined over the base".into(),
                            )
                        })
                    })
                    .collect::<Result<Vec<u32>>>()?;
                return Ok(MPoly::from_univariate(
                    &UPoly::new(&base, coeffs),
                    poly.nvars(),
                    v,
                ));
            }
            h_vec[i] += 1;
            if h_vec[i] < p as u32 {
                break;
            }
            h_vec[i] = 0;
            i += 1;
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
