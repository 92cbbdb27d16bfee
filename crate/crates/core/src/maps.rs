//! Projective self-maps of `P^n`: coordinate changes, the additive-multiple
//! step maps, the Abhyankar map, composition and evaluation.

use std::fmt;

use crate::additive::{additive_multiple, AdditivePoly};
use crate::error::{Condition, Error, Result};
use crate::field::{FieldConfig, FieldElement};
use crate::poly::{MPoly, Monomial};

/// Largest `q^(n+1)` for which `compose` searches for rational base points.
pub const BASE_POINT_SEARCH_LIMIT: u64 = 1 << 16;

/// A map `(z_0 : ... : z_n) -> (w_0 : ... : w_n)` given by homogeneous
/// polynomials of one common degree.
#[derive(Clone, PartialEq)]
pub struct ProjMap {
    field: FieldConfig,
    coords: Vec<MPoly>,
    degree: u64,
}

impl ProjMap {
    /// Validates that there are `nvars` nonzero homogeneous coordinates of
    /// equal degree.
    pub fn new(coords: Vec<MPoly>) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| Error::InvalidArgument("map without coordinates".into()))?;
        let field = first.field().clone();
        let nv = first.nvars();
        if coords.len() != nv || nv < 2 {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates in {} variables",
                coords.len(),
                nv
            )));
        }
        let mut degree = None;
        for c in &coords {
            if c.nvars() != nv || !c.field().same(&field) {
                return Err(Error::MixedRings);
            }
            let d = c.homogeneous_degree()?;
            if *degree.get_or_insert(d) != d {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(ProjMap {
            field,
            coords,
            degree: degree.expect("nonempty"),
        })
    }

    pub fn identity(field: &FieldConfig, n: usize) -> Self {
        let coords = (0..=n).map(|j| MPoly::var(field, n + 1, j)).collect();
        ProjMap {
            field: field.clone(),
            coords,
            degree: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn coords(&self) -> &[MPoly] {
        &self.coords
    }

    /// The coordinate whose zero locus is the hyperplane at infinity.
    pub fn last(&self) -> &MPoly {
        &self.coords[self.n()]
    }

    /// Image of a point with coordinates in this field.
    pub fn apply_raw(&self, point: &[u32]) -> Result<Vec<u32>> {
        check_point(point, self.n())?;
        let img: Vec<u32> = self.coords.iter().map(|c| c.eval_raw(point)).collect();
        if img.iter().all(|&v| v == 0) {
            return Err(Error::BasePointHit);
        }
        Ok(img)
    }

    /// Image of a point whose coordinates may live in an extension.
    pub fn apply(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if point.len() != self.n() + 1 {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                self.n() + 1,
                point.len()
            )));
        }
        if point.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        }
        let img: Vec<FieldElement> = self
            .coords
            .iter()
            .map(|c| c.eval(point))
            .collect::<Result<_>>()?;
        if img.iter().all(|x| x.is_zero()) {
            return Err(Error::BasePointHit);
        }
        Ok(img)
    }

    pub fn embed(&self, target: &FieldConfig) -> Result<ProjMap> {
        Ok(ProjMap {
            field: target.clone(),
            coords: self
                .coords
                .iter()
                .map(|c| c.embed(target))
                .collect::<Result<_>>()?,
            degree: self.degree,
        })
    }

    /// `outer ∘ inner`, without the base-point search.
    pub fn compose_unchecked(outer: &ProjMap, inner: &ProjMap) -> Result<ProjMap> {
        if outer.n() != inner.n() || !outer.field.same(&inner.field) {
            return Err(Error::MixedRings);
        }
        let cap = outer.degree.saturating_mul(inner.degree);
        let coords = outer
            .coords
            .iter()
            .map(|c| c.subst_capped(&inner.coords, cap.max(crate::poly::DEFAULT_DEGREE_CAP)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjMap {
            field: outer.field.clone(),
            coords,
            degree: cap,
        })
    }

    /// `outer ∘ inner`. When the field is small enough every rational point
    /// is checked not to be a common zero.
    pub fn compose(outer: &ProjMap, inner: &ProjMap) -> Result<ProjMap> {
        let f = ProjMap::compose_unchecked(outer, inner)?;
        if f.rational_base_point().is_some() {
            return Err(Error::BasePointHit);
        }
        Ok(f)
    }

    /// A rational common zero, searched exhaustively when
    /// `q^(n+1) <= BASE_POINT_SEARCH_LIMIT`; `None` otherwise or if none
    /// exists.
    pub fn rational_base_point(&self) -> Option<Vec<u32>> {
        let q = self.field.q() as u64;
        let n = self.n();
        if q.checked_pow(n as u32 + 1)
            .is_none_or(|s| s > BASE_POINT_SEARCH_LIMIT)
        {
            return None;
        }
        projective_points(&self.field, n).find(|x| self.coords.iter().all(|c| c.eval_raw(x) == 0))
    }

    pub fn display_with(&self, names: &[&str]) -> Vec<String> {
        self.coords.iter().map(|c| c.display_with(names)).collect()
    }
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "ProjMap[{}]({})", self.field.spec(), parts.join(" : "))
    }
}

fn check_point(point: &[u32], n: usize) -> Result<()> {
    if point.len() != n + 1 {
        return Err(Error::InvalidPoint(format!(
            "expected {} coordinates, got {}",
            n + 1,
            point.len()
        )));
    }
    if point.iter().all(|&v| v == 0) {
        return Err(Error::InvalidPoint("all coordinates are zero".into()));
    }
    Ok(())
}

/// Every point of `P^n(F_q)`, normalized so the first nonzero coordinate is 1.
pub fn projective_points(field: &FieldConfig, n: usize) -> impl Iterator<Item = Vec<u32>> + '_ {
    let q = field.q() as u64;
    (0..=n).flat_map(move |lead| {
        let free = n - lead;
        (0..q.pow(free as u32)).map(move |idx| {
            let mut x = vec![0u32; n + 1];
            x[lead] = 1;
            let mut r = idx;
            for slot in x.iter_mut().skip(lead + 1) {
                *slot = (r % q) as u32;
                r /= q;
            }
            x
        })
    })
}

/// Scale a nonzero point so that its last nonzero coordinate is 1.
pub fn normalize_point(field: &FieldConfig, x: &[u32]) -> Vec<u32> {
    match x.iter().rev().find(|&&v| v != 0) {
        None => x.to_vec(),
        Some(&v) => {
            let inv = field.inv(v).expect("nonzero");
            x.iter().map(|&c| field.mul(c, inv)).collect()
        }
    }
}

/// An invertible linear change of coordinates. Points move by `x -> A x`;
/// a polynomial `F` is carried to `F ∘ A^-1`, so that the new polynomial
/// vanishes exactly on the moved points.
#[derive(Clone, PartialEq, Debug)]
pub struct CoordChange {
    field: FieldConfig,
    matrix: Vec<Vec<u32>>,
    inverse: Vec<Vec<u32>>,
}

impl CoordChange {
    pub fn new(field: &FieldConfig, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let inverse = invert(field, &matrix).ok_or(Error::NotInGeneralPosition)?;
        Ok(CoordChange {
            field: field.clone(),
            matrix,
            inverse,
        })
    }

    pub fn identity(field: &FieldConfig, n: usize) -> Self {
        let id: Vec<Vec<u32>> = (0..=n)
            .map(|r| (0..=n).map(|c| u32::from(r == c)).collect())
            .collect();
        CoordChange {
            field: field.clone(),
            matrix: id.clone(),
            inverse: id,
        }
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.matrix.len() - 1
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(r, row)| row.iter().enumerate().all(|(c, &v)| v == u32::from(r == c)))
    }

    pub fn inverse(&self) -> CoordChange {
        CoordChange {
            field: self.field.clone(),
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn apply_point(&self, x: &[u32]) -> Vec<u32> {
        mat_vec(&self.field, &self.matrix, x)
    }

    /// `F ∘ A^-1`.
    pub fn pullback(&self, poly: &MPoly) -> Result<MPoly> {
        poly.subst(&linear_forms(&self.field, &self.inverse))
    }

    /// The linear map `x -> A x` as a projective map.
    pub fn to_map(&self) -> ProjMap {
        ProjMap {
            field: self.field.clone(),
            coords: linear_forms(&self.field, &self.matrix),
            degree: 1,
        }
    }

    /// `self` after `first`: points move by `A_self A_first`.
    pub fn after(&self, first: &CoordChange) -> CoordChange {
        CoordChange {
            field: self.field.clone(),
            matrix: mat_mul(&self.field, &self.matrix, &first.matrix),
            inverse: mat_mul(&self.field, &first.inverse, &self.inverse),
        }
    }

    pub fn embed(&self, target: &FieldConfig) -> Result<CoordChange> {
        let emb = self.field.embedder(target)?;
        let conv = |m: &Vec<Vec<u32>>| -> Vec<Vec<u32>> {
            m.iter()
                .map(|r| r.iter().map(|&v| emb(v)).collect())
                .collect()
        };
        Ok(CoordChange {
            field: target.clone(),
            matrix: conv(&self.matrix),
            inverse: conv(&self.inverse),
        })
    }

    /// Whether the change fixes each hyperplane `z_j = 0` for `j < i` and
    /// mixes only `z_i..z_n` among themselves.
    pub fn preserves_first(&self, i: usize) -> bool {
        self.matrix.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, &v)| {
                if r < i || c < i {
                    (r == c) == (v != 0)
                } else {
                    true
                }
            })
        })
    }
}

fn linear_forms(field: &FieldConfig, m: &[Vec<u32>]) -> Vec<MPoly> {
    let nv = m.len();
    m.iter()
        .map(|row| {
            MPoly::from_terms(
                field,
                nv,
                row.iter().enumerate().map(|(c, &v)| {
                    let mut e = vec![0u32; nv];
                    e[c] = 1;
                    (e, v)
                }),
            )
        })
        .collect()
}

fn mat_vec(f: &FieldConfig, m: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        })
        .collect()
}

fn mat_mul(f: &FieldConfig, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).fold(0, |acc, k| f.add(acc, f.mul(a[r][k], b[k][c]))))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` if singular or not square.
pub fn invert(f: &FieldConfig, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u32::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = f.inv(a[col][col]).ok()?;
        for v in a[col].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col];
                let pivot_row = a[col].clone();
                for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The change of coordinates sending each linear form `forms[j]` to `z_j`.
pub fn normalize_hyperplanes(forms: &[MPoly]) -> Result<CoordChange> {
    let first = forms
        .first()
        .ok_or_else(|| Error::InvalidArgument("no forms".into()))?;
    let field = first.field().clone();
    let nv = first.nvars();
    if forms.len() != nv {
        return Err(Error::InvalidArgument(format!(
            "{} forms in {} variables",
            forms.len(),
            nv
        )));
    }
    let mut matrix = Vec::with_capacity(nv);
    for f in forms {
        if f.homogeneous_degree()? != 1 {
            return Err(Error::InvalidArgument("forms must be linear".into()));
        }
        matrix.push(
            (0..nv)
                .map(|c| {
                    let mut e = vec![0u32; nv];
                    e[c] = 1;
                    f.coeff(&e)
                })
                .collect(),
        );
    }
    CoordChange::new(&field, matrix)
}

/// The data `(P^n, D_i, x_i)` at step `i`: the divisor is the union of the
/// hyperplanes `z_0 .. z_{i-1}` and the cone `V(cone)`, where `cone` uses
/// only `z_i .. z_n`.
#[derive(Clone, PartialEq, Debug)]
pub struct GoodTriple {
    pub n: usize,
    pub field: FieldConfig,
    pub i: usize,
    pub cone: MPoly,
    pub point: Vec<u32>,
}

impl GoodTriple {
    pub fn point_elements(&self) -> Vec<FieldElement> {
        self.point.iter().map(|&v| self.field.element(v)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.cone.nvars() != self.n + 1 || !self.cone.field().same(&self.field) {
            return Err(Error::MixedRings);
        }
        check_point(&self.point, self.n)?;
        self.cone.homogeneous_degree()?;
        if (0..self.i).any(|j| self.cone.mentions(j)) {
            return Err(Error::InvalidArgument(format!(
                "cone mentions a variable before z{}",
                self.i
            )));
        }
        if self.cone.eval_raw(&self.point) == 0 {
            return Err(Error::PointOnDivisor);
        }
        if (0..self.i).any(|j| self.point[j] == 0) {
            return Err(Error::PointOnDivisor);
        }
        if self.i > 0 && self.point[self.n] == 0 {
            return Err(Error::PointOnDivisor);
        }
        Ok(())
    }

    pub fn embed(&self, target: &FieldConfig) -> Result<GoodTriple> {
        let emb = self.field.embedder(target)?;
        Ok(GoodTriple {
            n: self.n,
            field: target.clone(),
            i: self.i,
            cone: self.cone.embed(target)?,
            point: self.point.iter().map(|&v| emb(v)).collect(),
        })
    }

    /// Whether the cone is a constant times a power of `z_n`.
    pub fn cone_is_last_power(&self) -> bool {
        self.cone.num_terms() == 1 && (0..self.n).all(|j| !self.cone.mentions(j))
    }
}

/// The result of one step: the map in the changed coordinates, and the
/// next triple.
#[derive(Clone, Debug)]
pub struct Step2 {
    pub change: CoordChange,
    /// The cone after the coordinate change.
    pub cone: MPoly,
    pub additive: AdditivePoly,
    pub degree: u64,
    pub map: ProjMap,
    pub next: GoodTriple,
}

impl Step2 {
    /// The constant coefficient of the additive multiple.
    pub fn r0(&self) -> &MPoly {
        self.additive.r0()
    }
}

fn fail(c: Condition) -> Error {
    Error::ConditionFailed(c)
}

/// Build the step map for `triple` after the coordinate change `change`.
///
/// The next cone is `z_n` times the reduced image of `V(r_0)`, where `r_0`
/// is the constant coefficient of the additive multiple: the step map is
/// ramified along both, so the next divisor has to contain their images.
pub fn step2_map(triple: &GoodTriple, change: &CoordChange) -> Result<Step2> {
    let (n, i) = (triple.n, triple.i);
    if i >= n {
        return Err(Error::InvalidArgument(format!(
            "step index {i} needs i < n = {n}"
        )));
    }
    if change.n() != n || !change.field().same(&triple.field) {
        return Err(Error::MixedRings);
    }
    if !change.preserves_first(i) {
        return Err(Error::InvalidArgument(
            "coordinate change moves a fixed hyperplane".into(),
        ));
    }
    let field = &triple.field;
    let cone = change.pullback(&triple.cone)?;
    let x = change.apply_point(&triple.point);

    let total = cone.homogeneous_degree()?;
    if cone.degree_in(i).unwrap_or(0) as u64 != total || total == 0 {
        return Err(fail(Condition::A));
    }
    let additive = additive_multiple(&cone.up_view(i))?;
    let d = additive.degree();
    let d32 = u32::try_from(d).map_err(|_| Error::ExponentOverflow)?;

    let xn = x[n];
    if xn == 0 {
        return Err(fail(Condition::B));
    }
    let xn_pow = field.pow(xn, (d - 1) as u128);
    let w_at = |j: usize| field.sub(field.pow(x[j], d as u128), field.mul(x[j], xn_pow));
    if (0..n).filter(|&j| j != i).any(|j| w_at(j) == 0) {
        return Err(fail(Condition::B));
    }
    if additive.r0().is_zero() {
        return Err(fail(Condition::C));
    }
    let q = additive.to_mpoly();
    let qx = q.eval_raw(&x);
    if qx == 0 {
        return Err(fail(Condition::D));
    }

    let nv = n + 1;
    let zn = MPoly::var(field, nv, n);
    let zn_pow = zn.pow(d - 1)?;
    let coords: Vec<MPoly> = (0..=n)
        .map(|j| {
            if j == i {
                Ok(q.clone())
            } else if j == n {
                zn.pow(d)
            } else {
                let zj = MPoly::var(field, nv, j);
                Ok(&zj.pow(d)? - &(&zj * &zn_pow))
            }
        })
        .collect::<Result<_>>()?;
    let map = ProjMap::new(coords)?;
    let y: Vec<u32> = (0..=n)
        .map(|j| {
            if j == i {
                qx
            } else if j == n {
                field.pow(xn, d32 as u128)
            } else {
                w_at(j)
            }
        })
        .collect();

    let next_cone = pushforward_cone(additive.r0(), i, n, additive.m() as u32)?;
    if next_cone.eval_raw(&y) == 0 {
        return Err(fail(Condition::E));
    }
    Ok(Step2 {
        change: change.clone(),
        cone,
        additive,
        degree: d,
        map,
        next: GoodTriple {
            n,
            field: field.clone(),
            i: i + 1,
            cone: next_cone,
            point: y,
        },
    })
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Divide by `y^d - y` in variable `v` repeatedly, collecting the
/// remainders as the coefficients of `u^k` in the same variable slot.
/// Fails if a remainder still mentions `v`.
fn artin_schreier_expand(poly: &MPoly, v: usize, d: usize) -> Result<MPoly> {
    let field = poly.field().clone();
    let nv = poly.nvars();
    let mut rest: Vec<MPoly> = poly.up_view(v).coeffs;
    let mut out = MPoly::zero(&field, nv);
    let mut k = 0u32;
    while !rest.is_empty() {
        // rest = quot * (y^d - y) + rem with deg rem < d
        let mut quot = vec![MPoly::zero(&field, nv); rest.len().saturating_sub(d)];
        for e in (d..rest.len()).rev() {
            let c = std::mem::replace(&mut rest[e], MPoly::zero(&field, nv));
            if c.is_zero() {
                continue;
            }
            rest[e - d + 1] = &rest[e - d + 1] + &c;
            quot[e - d] = c;
        }
        rest.truncate(d);
        if rest.iter().skip(1).any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument(
                "polynomial is not invariant under the translation group".into(),
            ));
        }
        if let Some(c0) = rest.first() {
            out = &out + &c0.mul_monomial(&Monomial::var(nv, v, k), 1)?;
        }
        while quot.last().is_some_and(|c| c.is_zero()) {
            quot.pop();
        }
        rest = quot;
        k += 1;
    }
    Ok(out)
}

/// Radical of a univariate polynomial in `v`; `p`-th power stripping for
/// anything else.
fn reduce_cone(poly: &MPoly, v: Option<usize>) -> MPoly {
    if let Some(u) = v.and_then(|v| poly.to_univariate(v).map(|u| (u, v))) {
        return MPoly::from_univariate(&u.0.squarefree_part(), poly.nvars(), u.1);
    }
    let mut p = poly.clone();
    while !p.is_constant() {
        match p.pth_power_part() {
            Some(root) => p = root,
            None => break,
        }
    }
    p
}

/// `z_n` times the image of `V(r0)` under `z_j -> z_j^d - z_j z_n^(d-1)`
/// for `i < j < n`, where `d = p^m`.
///
/// In the chart `z_n = 1` that map is `y -> y^d - y` on each coordinate, a
/// Galois cover with group `F_d^r` acting by translation, so the image of
/// `V(h)` is cut out by the norm `prod_{c in F_d^r} h(y + c)` rewritten in
/// `u = y^d - y`.
pub fn pushforward_cone(r0: &MPoly, i: usize, n: usize, m: u32) -> Result<MPoly> {
    let field = r0.field().clone();
    let nv = n + 1;
    let zn = MPoly::var(&field, nv, n);
    let affine: Vec<usize> = (i + 1..n).collect();
    let h = r0.specialize(n, 1);
    if affine.is_empty() || h.is_constant() {
        return Ok(zn);
    }
    let single = (affine.len() == 1).then_some(affine[0]);
    let h = reduce_cone(&h, single);
    let d = (field.p() as usize).pow(m);
    let big = FieldConfig::new(field.p() as u64, lcm(field.k(), m))?;
    let sub_d: Vec<u32> = big
        .elements()
        .filter(|&x| big.frobenius(x, m as u64) == x)
        .collect();
    let mut norm = h.embed(&big)?;
    for &v in &affine {
        let zv = MPoly::var(&big, nv, v);
        let mut images: Vec<MPoly> = (0..nv).map(|j| MPoly::var(&big, nv, j)).collect();
        let mut acc = MPoly::one(&big, nv);
        for &c in &sub_d {
            images[v] = &zv + &MPoly::constant(&big, nv, c);
            acc = acc.checked_mul(&norm.subst(&images)?)?;
        }
        norm = acc;
    }
    for &v in &affine {
        norm = artin_schreier_expand(&norm, v, d)?;
    }
    let reduced = norm
        .restrict(&field)?
        .ok_or_else(|| Error::InvalidArgument("norm is not defined over the base field".into()))?;
    let reduced = reduce_cone(&reduced, single);
    if reduced.is_constant() {
        return Ok(zn);
    }
    let deg = reduced.total_degree().expect("nonzero");
    Ok((&zn * &reduced.homogenize(n, deg)?).monic())
}

/// The map `(g_0 : ... : g_n)` with `g_i` the sum over `(i+1)`-subsets
/// `j_0 < ... < j_i` of `z_{j_0}^(1+p+...+p^(n-i)) z_{j_1}^(p^(n-i+1)) ... z_{j_i}^(p^n)`.
pub fn abhyankar_map(n: usize, field: &FieldConfig) -> Result<ProjMap> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    let p = field.p() as u64;
    let total: u64 = (0..=n as u32).map(|e| p.pow(e)).sum();
    if total > crate::poly::DEFAULT_DEGREE_CAP {
        return Err(Error::DegreeTooLarge {
            degree: total,
            cap: crate::poly::DEFAULT_DEGREE_CAP,
        });
    }
    let nv = n + 1;
    let mut coords = Vec::with_capacity(nv);
    for i in 0..=n {
        let first: u64 = (0..=(n - i) as u32).map(|e| p.pow(e)).sum();
        let mut terms = Vec::new();
        for mask in 0u32..(1 << nv) {
            if mask.count_ones() as usize != i + 1 {
                continue;
            }
            let js: Vec<usize> = (0..nv).filter(|&j| mask & (1 << j) != 0).collect();
            let mut e = vec![0u32; nv];
            e[js[0]] = first as u32;
            for (t, &j) in js.iter().enumerate().skip(1) {
                e[j] = p.pow((n - i + t) as u32) as u32;
            }
            terms.push((e, 1));
        }
        coords.push(MPoly::from_terms(field, nv, terms));
    }
    ProjMap::new(coords)
}

/// Exponent-sum of the Abhyankar coordinates, `1 + p + ... + p^n`.
pub fn abhyankar_degree(n: usize, p: u32) -> u64 {
    (0..=n as u32).map(|e| (p as u64).pow(e)).sum()
}

#[cfg(test)]
mod tests;
