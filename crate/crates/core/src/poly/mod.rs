//! Sparse multivariate polynomials over a [`FieldConfig`].
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with `z0 > z1 > ...`. The last entry of the map is
//! therefore the leading term used by exact division.

pub mod parse;
pub mod upoly;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldElement};

pub use parse::{parse_poly, parse_poly_with_names};
pub use upoly::UPoly;

/// Default cap on the total degree of any polynomial produced by `pow` or
/// `subst`.
pub const DEFAULT_DEGREE_CAP: u64 = 4096;

pub type Exps = SmallVec<[u32; 6]>;

/// An exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Exps);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, v: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[v] = e;
        m
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = self.0.clone();
        for (a, b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with coefficients in `field`.
#[derive(Clone)]
pub struct MPoly {
    field: FieldConfig,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl MPoly {
    pub fn zero(field: &FieldConfig, nvars: usize) -> Self {
        MPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldConfig, nvars: usize, c: u32) -> Self {
        let mut p = MPoly::zero(field, nvars);
        if c != 0 {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: &FieldConfig, nvars: usize) -> Self {
        MPoly::constant(field, nvars, 1)
    }

    pub fn var(field: &FieldConfig, nvars: usize, v: usize) -> Self {
        MPoly::monomial(field, Monomial::var(nvars, v, 1), 1)
    }

    pub fn monomial(field: &FieldConfig, m: Monomial, c: u32) -> Self {
        let mut p = MPoly::zero(field, m.0.len());
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    /// Build from `(exponents, coefficient)` pairs; like terms are combined.
    pub fn from_terms<I, E>(field: &FieldConfig, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (E, u32)>,
        E: AsRef<[u32]>,
    {
        let mut p = MPoly::zero(field, nvars);
        for (e, c) in terms {
            let e = e.as_ref();
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(SmallVec::from_slice(e)), c);
        }
        p
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, exps: &[u32]) -> u32 {
        self.terms
            .get(&Monomial(SmallVec::from_slice(exps)))
            .copied()
            .unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn constant_value(&self) -> Option<u32> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.nvars]))
        } else {
            None
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    pub fn mentions(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    /// The common exponent sum of all terms.
    pub fn homogeneous_degree(&self) -> Result<u64> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let d = degs.next().ok_or(Error::ZeroPolynomial)?;
        if degs.all(|e| e == d) {
            Ok(d)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, other: &MPoly) -> Result<()> {
        if self.nvars == other.nvars && self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MPoly::zero(&self.field, self.nvars));
        }
        let f = &self.field;
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let c = f.mul(ca, cb);
                let e = acc.entry(m).or_insert(0);
                *e = f.add(*e, c);
            }
        }
        Ok(MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
        })
    }

    pub fn scale(&self, c: u32) -> MPoly {
        if c == 0 {
            return MPoly::zero(&self.field, self.nvars);
        }
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &x)| (m.clone(), self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Result<MPoly> {
        let mut out = MPoly::zero(&self.field, self.nvars);
        if c == 0 {
            return Ok(out);
        }
        for (t, &x) in &self.terms {
            out.terms.insert(t.checked_mul(m)?, self.field.mul(x, c));
        }
        Ok(out)
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field.inv(c).expect("nonzero")),
        }
    }

    pub fn pow(&self, e: u64) -> Result<MPoly> {
        self.pow_capped(e, DEFAULT_DEGREE_CAP)
    }

    pub fn pow_capped(&self, e: u64, cap: u64) -> Result<MPoly> {
        let d = self.total_degree().unwrap_or(0);
        let total = d.saturating_mul(e);
        if total > cap {
            return Err(Error::DegreeTooLarge { degree: total, cap });
        }
        let mut result = MPoly::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: usize) -> MPoly {
        let f = &self.field;
        let mut out = MPoly::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let factor = f.from_int((e % f.p()) as i64);
            if factor == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[v] -= 1;
            out.add_term(m2, f.mul(c, factor));
        }
        out
    }

    /// Evaluate at a point whose coordinates may live in an extension of the
    /// coefficient field. The result lives in the common extension.
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let target = FieldConfig::common_extension(
            std::iter::once(&self.field).chain(point.iter().map(|x| x.field())),
        )?;
        let coords: Vec<u32> = point
            .iter()
            .map(|x| x.field().embed_value(x.value(), &target))
            .collect::<Result<_>>()?;
        let emb = self.field.embedder(&target)?;
        Ok(target.element(self.eval_with(&target, &coords, &emb)))
    }

    /// Evaluate at coordinates already in `target`, mapping coefficients via `emb`.
    pub fn eval_with(&self, target: &FieldConfig, coords: &[u32], emb: &dyn Fn(u32) -> u32) -> u32 {
        let mut cache: Vec<HashMap<u32, u32>> = vec![HashMap::new(); self.nvars];
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = emb(c);
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = *cache[v]
                    .entry(e)
                    .or_insert_with(|| target.pow(coords[v], e as u128));
                t = target.mul(t, x);
                if t == 0 {
                    break;
                }
            }
            acc = target.add(acc, t);
        }
        acc
    }

    /// Evaluate at coordinates in the coefficient field.
    pub fn eval_raw(&self, coords: &[u32]) -> u32 {
        self.eval_with(&self.field.clone(), coords, &|c| c)
    }

    /// Substitute `images[v]` for variable `v`; the result lives in the ring
    /// of the images.
    pub fn subst(&self, images: &[MPoly]) -> Result<MPoly> {
        self.subst_capped(images, DEFAULT_DEGREE_CAP)
    }

    pub fn subst_capped(&self, images: &[MPoly], cap: u64) -> Result<MPoly> {
        if images.len() != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let (field, nvars) = match images.first() {
            Some(img) => (img.field.clone(), img.nvars),
            None => {
                return Err(Error::InvalidArgument(
                    "substitution into a ring without variables".into(),
                ))
            }
        };
        for img in images {
            if img.nvars != nvars || !img.field.same(&field) {
                return Err(Error::MixedRings);
            }
        }
        let emb = self.field.embedder(&field)?;
        let img_deg: Vec<u64> = images
            .iter()
            .map(|g| g.total_degree().unwrap_or(0))
            .collect();
        for m in self.terms.keys() {
            let d: u64 = m.0.iter().zip(&img_deg).map(|(&e, &d)| e as u64 * d).sum();
            if d > cap {
                return Err(Error::DegreeTooLarge { degree: d, cap });
            }
        }
        let mut cache: Vec<HashMap<u32, MPoly>> = vec![HashMap::new(); self.nvars];
        let mut out = MPoly::zero(&field, nvars);
        for (m, &c) in &self.terms {
            let mut t = MPoly::constant(&field, nvars, emb(c));
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[v].contains_key(&e) {
                    let pw = images[v].pow_capped(e as u64, u64::MAX)?;
                    cache[v].insert(e, pw);
                }
                t = t.checked_mul(&cache[v][&e])?;
                if t.is_zero() {
                    break;
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Exact division by leading-term elimination. Fails with
    /// [`Error::NotDivisible`] when `g` does not divide `self`.
    pub fn div_exact(&self, g: &MPoly) -> Result<MPoly> {
        self.same_ring(g)?;
        let (lm_g, lc_g) = g.leading_term().ok_or(Error::DivisorZero)?;
        let lm_g = lm_g.clone();
        let inv = self.field.inv(lc_g)?;
        let f = &self.field;
        let mut r = self.terms.clone();
        let mut quot = MPoly::zero(f, self.nvars);
        while let Some((lm_r, &lc_r)) = r.iter().next_back() {
            if !lm_g.divides(lm_r) {
                return Err(Error::NotDivisible);
            }
            let qm = lm_r.div(&lm_g);
            let qc = f.mul(lc_r, inv);
            for (gm, &gc) in &g.terms {
                let m = gm.checked_mul(&qm)?;
                let sub = f.neg(f.mul(gc, qc));
                use std::collections::btree_map::Entry;
                match r.entry(m) {
                    Entry::Vacant(v) => {
                        v.insert(sub);
                    }
                    Entry::Occupied(mut o) => {
                        let s = f.add(*o.get(), sub);
                        if s == 0 {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
            quot.terms.insert(qm, qc);
        }
        Ok(quot)
    }

    /// Whether `g` divides `self`.
    pub fn divisible_by(&self, g: &MPoly) -> Result<bool> {
        match self.div_exact(g) {
            Ok(_) => Ok(true),
            Err(Error::NotDivisible) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// View as a polynomial in `main_var` with coefficients in the others.
    pub fn up_view(&self, main_var: usize) -> UPolyView {
        let deg = self.degree_in(main_var);
        let mut coeffs = match deg {
            None => Vec::new(),
            Some(d) => vec![MPoly::zero(&self.field, self.nvars); d as usize + 1],
        };
        for (m, &c) in &self.terms {
            let e = m.0[main_var] as usize;
            let mut m2 = m.clone();
            m2.0[main_var] = 0;
            coeffs[e].terms.insert(m2, c);
        }
        UPolyView { main_var, coeffs }
    }

    /// `Some(root)` iff every exponent is divisible by `p`; the root takes
    /// coefficient `p`-th roots.
    pub fn pth_power_part(&self) -> Option<MPoly> {
        let p = self.field.p();
        if self.terms.keys().any(|m| m.0.iter().any(|&e| e % p != 0)) {
            return None;
        }
        Some(MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| {
                    (
                        Monomial(m.0.iter().map(|&e| e / p).collect()),
                        self.field.pth_root(c),
                    )
                })
                .collect(),
        })
    }

    /// Map coefficients into an extension field.
    pub fn embed(&self, target: &FieldConfig) -> Result<MPoly> {
        let emb = self.field.embedder(target)?;
        Ok(MPoly {
            field: target.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), emb(c)))
                .collect(),
        })
    }

    /// Pull coefficients back into the subfield `base`, if they all lie there.
    pub fn restrict(&self, base: &FieldConfig) -> Result<Option<MPoly>> {
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            match base.restrict_value(c, &self.field)? {
                Some(x) => {
                    terms.insert(m.clone(), x);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(MPoly {
            field: base.clone(),
            nvars: self.nvars,
            terms,
        }))
    }

    /// Reinterpret in a ring with more (trailing) variables.
    pub fn extend_vars(&self, nvars: usize) -> MPoly {
        assert!(nvars >= self.nvars);
        MPoly {
            field: self.field.clone(),
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c)
                })
                .collect(),
        }
    }

    /// Set variable `v` to the constant `c`.
    pub fn specialize(&self, v: usize, c: u32) -> MPoly {
        let f = &self.field;
        let mut out = MPoly::zero(f, self.nvars);
        for (m, &x) in &self.terms {
            let e = m.0[v];
            let mut m2 = m.clone();
            m2.0[v] = 0;
            out.add_term(m2, f.mul(x, f.pow(c, e as u128)));
        }
        out
    }

    /// Dense univariate form, if only `v` occurs.
    pub fn to_univariate(&self, v: usize) -> Option<UPoly> {
        let mut coeffs = Vec::new();
        for (m, &c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != v && e > 0) {
                return None;
            }
            let e = m.0[v] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = c;
        }
        Some(UPoly::new(&self.field, coeffs))
    }

    pub fn from_univariate(u: &UPoly, nvars: usize, v: usize) -> MPoly {
        let mut out = MPoly::zero(u.field(), nvars);
        for (e, &c) in u.coeffs().iter().enumerate() {
            if c != 0 {
                out.terms.insert(Monomial::var(nvars, v, e as u32), c);
            }
        }
        out
    }

    /// Homogenize with respect to variable `h` to the given degree.
    pub fn homogenize(&self, h: usize, degree: u64) -> Result<MPoly> {
        let mut out = MPoly::zero(&self.field, self.nvars);
        for (m, &c) in &self.terms {
            let d = m.degree();
            if d > degree || m.0[h] != 0 {
                return Err(Error::InvalidArgument("cannot homogenize".into()));
            }
            let mut m2 = m.clone();
            m2.0[h] = (degree - d) as u32;
            out.terms.insert(m2, c);
        }
        Ok(out)
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        parse::format_poly(self, names)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("z{i}")).collect();
        let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.display_with(&names))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.field.spec(), self)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs)
            .expect("polynomials from the same ring")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs)
            .expect("polynomials from the same ring")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs)
            .expect("polynomials from the same ring")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(self.field.neg(1))
    }
}

/// A polynomial regarded as univariate in `main_var`; `coeffs[e]` is the
/// coefficient of `main_var^e`, an element of the same ring that does not
/// mention `main_var`.
#[derive(Clone, Debug, PartialEq)]
pub struct UPolyView {
    pub main_var: usize,
    pub coeffs: Vec<MPoly>,
}

impl UPolyView {
    /// Degree in the main variable; `None` when zero.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&MPoly> {
        self.coeffs.last()
    }

    pub fn reassemble(&self) -> Option<MPoly> {
        let first = self.coeffs.first()?;
        let mut out = MPoly::zero(first.field(), first.nvars());
        for (e, c) in self.coeffs.iter().enumerate() {
            let m = Monomial::var(first.nvars(), self.main_var, e as u32);
            out = &out + &c.mul_monomial(&m, 1).expect("small exponents");
        }
        Some(out)
    }
}

/// Determinant of a square matrix of polynomials (Laplace expansion with
/// memoised minors).
pub fn det(matrix: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    let field = matrix[0][0].field().clone();
    let nvars = matrix[0][0].nvars();
    // minors[mask] = det of rows (n - popcount(mask) ..) and the columns in mask
    let mut minors: HashMap<u32, MPoly> = HashMap::new();
    minors.insert(0, MPoly::one(&field, nvars));
    for size in 1..=n {
        let row = n - size;
        let masks: Vec<u32> = (0u32..(1 << n))
            .filter(|m| m.count_ones() as usize == size)
            .collect();
        for mask in masks {
            let mut acc = MPoly::zero(&field, nvars);
            let mut sign_pos = true;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = &matrix[row][col];
                if !entry.is_zero() {
                    let sub = &minors[&(mask & !(1 << col))];
                    if !sub.is_zero() {
                        let t = entry.checked_mul(sub)?;
                        acc = if sign_pos { &acc + &t } else { &acc - &t };
                    }
                }
                sign_pos = !sign_pos;
            }
            minors.insert(mask, acc);
        }
    }
    Ok(minors.remove(&((1u32 << n) - 1)).expect("full minor"))
}

/// Determinant of the matrix of partials `d fs[r] / d vars[c]`.
pub fn jacobian_det(fs: &[MPoly], vars: &[usize]) -> Result<MPoly> {
    if fs.len() != vars.len() {
        return Err(Error::InvalidArgument(
            "jacobian needs as many functions as variables".into(),
        ));
    }
    let m: Vec<Vec<MPoly>> = fs
        .iter()
        .map(|f| vars.iter().map(|&v| f.derivative(v)).collect())
        .collect();
    det(&m)
}

#[cfg(test)]
mod tests;
