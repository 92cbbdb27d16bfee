//! Exact arithmetic in `F_p` and `F_{p^k}`.
//!
//! Elements are packed as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where
//! `c_j` is the coefficient of `a^j` and `a` is a root of the defining
//! modulus. Enumeration order is the order of these integers, so it always
//! starts `0, 1, 2, ...`.
//!
//! Configurations are interned: two calls with the same `(p, k, modulus)`
//! return handles to the same shared state, which holds the log/exp tables
//! and the embedding caches.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Default bound on the characteristic.
pub const DEFAULT_MAX_PRIME: u64 = 17;
/// Default bound on the field order.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;
/// Fields up to this order get log/exp tables.
const TABLE_ORDER_LIMIT: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldLimits {
    pub max_prime: u64,
    pub max_order: u64,
}

impl Default for FieldLimits {
    fn default() -> Self {
        FieldLimits {
            max_prime: DEFAULT_MAX_PRIME,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct FieldKey {
    p: u32,
    modulus: Vec<u32>,
}

struct Tables {
    /// `exp[i] = g^i` for `i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    key: FieldKey,
    p: u32,
    k: u32,
    q: u32,
    pow_p: Vec<u32>,
    tables: Option<Tables>,
    /// Source field -> images of `1, a, ..., a^{k-1}` in this field.
    embed_cache: Mutex<HashMap<FieldKey, Arc<Vec<u32>>>>,
    /// Source field -> inverse of the embedding on its image.
    restrict_cache: Mutex<HashMap<FieldKey, Arc<HashMap<u32, u32>>>>,
}

/// A finite field `F_{p^k}` together with its defining modulus.
#[derive(Clone)]
pub struct FieldConfig(Arc<Inner>);

fn registry() -> &'static Mutex<HashMap<FieldKey, FieldConfig>> {
    static REG: OnceLock<Mutex<HashMap<FieldKey, FieldConfig>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense F_p[t] helpers, ascending coefficients.

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = fp_inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] as u64 * inv_lead as u64 % p as u64) as u32;
        if c != 0 {
            let shift = top - dm;
            for (j, &mj) in m.iter().enumerate() {
                let sub = (c as u64 * mj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        fp_trim(&mut r);
    }
    r
}

pub(crate) fn fp_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Trial division by every monic polynomial of degree `1..=k/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    if k == 1 {
        return true;
    }
    for deg in 1..=k / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(deg + 1);
            let mut x = idx;
            for _ in 0..deg {
                div.push((x % p as u64) as u32);
                x /= p as u64;
            }
            div.push(1);
            if fp_rem(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k);
    for idx in 0..count {
        let mut m = Vec::with_capacity(k as usize + 1);
        let mut x = idx;
        for _ in 0..k {
            m.push((x % p as u64) as u32);
            x /= p as u64;
        }
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn modulus_string(m: &[u32]) -> String {
    let mut parts = Vec::new();
    for (j, &c) in m.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match j {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{j}"),
        };
        parts.push(match (c, j) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl FieldConfig {
    /// `F_{p^k}` with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::make(p, k, None, FieldLimits::default())
    }

    /// `F_p[t]/(modulus)`; `modulus` is ascending and must be monic.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidArgument(
                "modulus must have degree >= 1".into(),
            ));
        }
        Self::make(
            p,
            (modulus.len() - 1) as u32,
            Some(modulus),
            FieldLimits::default(),
        )
    }

    pub fn make(p: u64, k: u32, modulus: Option<&[u64]>, limits: FieldLimits) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if p > limits.max_prime {
            return Err(Error::FieldTooLarge(format!(
                "characteristic {p} exceeds limit {}",
                limits.max_prime
            )));
        }
        if k == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be >= 1".into(),
            ));
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > limits.max_order as u128 {
            return Err(Error::FieldTooLarge(format!("{p}^{k} exceeds order limit")));
        }
        let p32 = p as u32;
        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                let m: Vec<u32> = m.iter().map(|&c| (c % p) as u32).collect();
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::InvalidArgument(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                if !is_irreducible(&m, p32) {
                    return Err(Error::ReducibleModulus(modulus_string(&m)));
                }
                m
            }
            None => smallest_irreducible(p32, k),
        };
        let key = FieldKey { p: p32, modulus };
        if let Some(f) = registry().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let field = FieldConfig::build(key.clone(), p32, k, q as u32);
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry(key).or_insert(field).clone())
    }

    /// Parse `p^k`, `p`, optionally followed by `;mod=<poly in t>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, modulus) = match spec.split_once(';') {
            Some((h, rest)) => {
                let rest = rest.trim();
                let m = rest
                    .strip_prefix("mod=")
                    .ok_or_else(|| Error::Parse(format!("expected mod=..., got `{rest}`")))?;
                (h.trim(), Some(m.trim()))
            }
            None => (spec, None),
        };
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (p.trim(), k.trim()),
            None => (head, "1"),
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic `{p}`")))?;
        let k: u32 = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad extension degree `{k}`")))?;
        match modulus {
            None => FieldConfig::new(p, k),
            Some(m) => {
                if !is_prime(p) {
                    return Err(Error::NonPrime(p));
                }
                let coeffs = parse_t_poly(m, p)?;
                if coeffs.len() != k as usize + 1 {
                    return Err(Error::Parse(format!("modulus `{m}` must have degree {k}")));
                }
                FieldConfig::make(p, k, Some(&coeffs), FieldLimits::default())
            }
        }
    }

    fn build(key: FieldKey, p: u32, k: u32, q: u32) -> Self {
        let mut pow_p = Vec::with_capacity(k as usize + 1);
        let mut acc = 1u32;
        for _ in 0..=k {
            pow_p.push(acc);
            acc = acc.saturating_mul(p);
        }
        let mut inner = Inner {
            key,
            p,
            k,
            q,
            pow_p,
            tables: None,
            embed_cache: Mutex::new(HashMap::new()),
            restrict_cache: Mutex::new(HashMap::new()),
        };
        if q <= TABLE_ORDER_LIMIT && q > 2 {
            let f = FieldConfig(Arc::new(inner));
            let tables = f.build_tables();
            inner = Arc::try_unwrap(f.0).ok().expect("fresh field is unshared");
            inner.tables = Some(tables);
        }
        FieldConfig(Arc::new(inner))
    }

    fn build_tables(&self) -> Tables {
        let q = self.q();
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let g = (1..q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..(q as usize - 1) {
            exp[i] = x;
            exp[i + q as usize - 1] = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, g);
        }
        Tables { exp, log }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Field order `p^k`.
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Ascending coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.0.key.modulus
    }

    pub fn same(&self, other: &FieldConfig) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.key == other.0.key
    }

    /// Canonical text form, e.g. `2^4;mod=t^4+t+1`.
    pub fn spec(&self) -> String {
        if self.k() == 1 {
            format!("{}^1", self.p())
        } else {
            format!(
                "{}^{};mod={}",
                self.p(),
                self.k(),
                modulus_string(self.modulus())
            )
        }
    }

    /// The extension of degree `factor` over this field, with default modulus.
    pub fn extension(&self, factor: u32) -> Result<FieldConfig> {
        FieldConfig::new(self.p() as u64, self.k() * factor)
    }

    // ---- raw arithmetic on packed indices ----

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        1
    }

    /// The generator `a` (a root of the modulus).
    pub fn gen(&self) -> u32 {
        if self.k() == 1 {
            (self.p() - self.modulus()[0]) % self.p()
        } else {
            self.p()
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.p() as i64) as u32
    }

    pub fn digits(&self, mut x: u32) -> Vec<u32> {
        let p = self.p();
        (0..self.k())
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter()
            .take(self.k() as usize)
            .enumerate()
            .map(|(j, &c)| (c % self.p()) * self.0.pow_p[j])
            .sum()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for j in 0..self.0.k as usize {
            let s = (a % p + b % p) % p;
            out += s * self.0.pow_p[j];
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        for j in 0..self.0.k as usize {
            let d = a % p;
            out += ((p - d) % p) * self.0.pow_p[j];
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.k == 1 {
            return ((a as u64 * b as u64) % self.0.p as u64) as u32;
        }
        match &self.0.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.slow_mul(a, b),
        }
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let r = fp_rem(&prod, self.modulus(), self.0.p);
        self.from_digits(&r)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.slow_mul(result, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let q1 = self.0.q - 1;
            return Ok(t.exp[((q1 - t.log[a as usize]) % q1) as usize]);
        }
        Ok(self.pow(a, self.0.q as u128 - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any non-negative `e`.
    pub fn pow(&self, a: u32, e: u128) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let q1 = (self.0.q - 1) as u128;
        let e = (e % q1) as u64;
        if let Some(t) = &self.0.tables {
            let l = (t.log[a as usize] as u64 * e) % q1 as u64;
            return t.exp[l as usize];
        }
        let mut result = 1;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `a^(p^iterations)`.
    pub fn frobenius(&self, a: u32, iterations: u64) -> u32 {
        let r = (iterations % self.k() as u64) as u32;
        self.pow(a, (self.p() as u128).pow(r))
    }

    /// The unique `b` with `b^p = a` (the field is perfect).
    pub fn pth_root(&self, a: u32) -> u32 {
        // inverse of Frobenius is Frobenius^(k-1)
        self.frobenius(a, self.k() as u64 - 1)
    }

    /// `F_p`-coordinates of an element (length `k`).
    pub fn coordinates(&self, a: u32) -> Vec<u32> {
        self.digits(a)
    }

    /// Every element, in packed-index order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q()
    }

    pub fn element(&self, value: u32) -> FieldElement {
        debug_assert!(value < self.q());
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    pub fn format_elem(&self, x: u32) -> String {
        let d = self.digits(x);
        let mut parts = Vec::new();
        for (j, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match j {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{j}"),
            };
            parts.push(match (c, j) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    /// Number of monomial terms in the printed form of `x`.
    pub(crate) fn elem_weight(&self, x: u32) -> usize {
        self.digits(x).iter().filter(|&&c| c != 0).count()
    }

    // ---- embeddings ----

    fn basis_images(&self, target: &FieldConfig) -> Result<Arc<Vec<u32>>> {
        if self.p() != target.p() || !target.k().is_multiple_of(self.k()) {
            return Err(Error::IncompatibleTower {
                from: self.spec(),
                to: target.spec(),
            });
        }
        if let Some(v) = target.0.embed_cache.lock().unwrap().get(&self.0.key) {
            return Ok(v.clone());
        }
        let images = if self.k() == 1 {
            vec![1]
        } else {
            let m: Vec<u32> = self.modulus().to_vec();
            let root = target
                .elements()
                .find(|&x| {
                    let mut acc = 0;
                    for &c in m.iter().rev() {
                        acc = target.add(target.mul(acc, x), c);
                    }
                    acc == 0
                })
                .expect("the modulus splits in any extension of degree divisible by k");
            let mut imgs = Vec::with_capacity(self.k() as usize);
            let mut x = 1;
            for _ in 0..self.k() {
                imgs.push(x);
                x = target.mul(x, root);
            }
            imgs
        };
        let images = Arc::new(images);
        let mut cache = target.0.embed_cache.lock().unwrap();
        Ok(cache.entry(self.0.key.clone()).or_insert(images).clone())
    }

    /// Map `x` of this field into `target` under the cached embedding.
    pub fn embed_value(&self, x: u32, target: &FieldConfig) -> Result<u32> {
        if self.same(target) {
            return Ok(x);
        }
        let images = self.basis_images(target)?;
        let mut acc = 0;
        for (c, &img) in self.digits(x).into_iter().zip(images.iter()) {
            if c != 0 {
                acc = target.add(acc, target.mul(c, img));
            }
        }
        Ok(acc)
    }

    /// An embedding function `self -> target`, resolving the cache once.
    pub fn embedder(&self, target: &FieldConfig) -> Result<impl Fn(u32) -> u32 + '_> {
        let images = if self.same(target) {
            None
        } else {
            Some(self.basis_images(target)?)
        };
        let target = target.clone();
        Ok(move |x: u32| match &images {
            None => x,
            Some(images) => {
                let mut acc = 0;
                for (c, &img) in self.digits(x).into_iter().zip(images.iter()) {
                    if c != 0 {
                        acc = target.add(acc, target.mul(c, img));
                    }
                }
                acc
            }
        })
    }

    /// Pull an element of the extension `ext` back into this field, if it
    /// lies in the image of the embedding.
    pub fn restrict_value(&self, x: u32, ext: &FieldConfig) -> Result<Option<u32>> {
        if self.same(ext) {
            return Ok(Some(x));
        }
        let cached = ext
            .0
            .restrict_cache
            .lock()
            .unwrap()
            .get(&self.0.key)
            .cloned();
        let map = match cached {
            Some(m) => m,
            None => {
                let mut m = HashMap::with_capacity(self.q() as usize);
                for y in self.elements() {
                    m.insert(self.embed_value(y, ext)?, y);
                }
                let m = Arc::new(m);
                let mut cache = ext.0.restrict_cache.lock().unwrap();
                cache.entry(self.0.key.clone()).or_insert(m).clone()
            }
        };
        Ok(map.get(&x).copied())
    }

    /// Smallest field (by extension degree) among `fields` that every other
    /// one embeds into.
    pub fn common_extension<'a>(
        fields: impl IntoIterator<Item = &'a FieldConfig>,
    ) -> Result<FieldConfig> {
        let fields: Vec<&FieldConfig> = fields.into_iter().collect();
        let big = fields
            .iter()
            .max_by_key(|f| f.k())
            .ok_or_else(|| Error::InvalidArgument("no fields".into()))?;
        for f in &fields {
            if f.p() != big.p() || big.k() % f.k() != 0 {
                return Err(Error::IncompatibleTower {
                    from: f.spec(),
                    to: big.spec(),
                });
            }
        }
        Ok((*big).clone())
    }
}

impl fmt::Debug for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({})", self.spec())
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl PartialEq for FieldConfig {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldConfig {}

/// Parse an ascending coefficient list from a polynomial in `t` with
/// integer coefficients, e.g. `t^2+t+1`.
fn parse_t_poly(s: &str, p: u64) -> Result<Vec<u64>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty modulus".into()));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body[1.min(body.len())..]
            .find(['+', '-'])
            .map(|i| i + 1)
            .unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (c, mono) = match term.split_once('*') {
            Some((c, m)) => (c.parse::<i64>().map_err(|_| bad_term(term))?, m),
            None if term.starts_with('t') => (1, term),
            None => (term.parse::<i64>().map_err(|_| bad_term(term))?, ""),
        };
        let e: usize = if mono.is_empty() {
            0
        } else if mono == "t" {
            1
        } else if let Some(e) = mono.strip_prefix("t^") {
            e.parse().map_err(|_| bad_term(term))?
        } else {
            return Err(bad_term(term));
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] += sign * c;
    }
    let mut out: Vec<u64> = coeffs
        .into_iter()
        .map(|c| c.rem_euclid(p as i64) as u64)
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

fn bad_term(t: &str) -> Error {
    Error::Parse(format!("bad modulus term `{t}`"))
}

/// An element of a [`FieldConfig`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldConfig,
    value: u32,
}

impl FieldElement {
    pub fn new(field: &FieldConfig, value: u32) -> Result<Self> {
        if value >= field.q() {
            return Err(Error::InvalidArgument(format!(
                "index {value} out of range for {}",
                field.spec()
            )));
        }
        Ok(FieldElement {
            field: field.clone(),
            value,
        })
    }

    pub fn zero(field: &FieldConfig) -> Self {
        field.element(0)
    }

    pub fn one(field: &FieldConfig) -> Self {
        field.element(1)
    }

    pub fn from_int(field: &FieldConfig, v: i64) -> Self {
        field.element(field.from_int(v))
    }

    /// Parse an element written as a polynomial in the generator `a`.
    pub fn parse(field: &FieldConfig, s: &str) -> Result<Self> {
        let v = crate::poly::parse::parse_element(field, s)?;
        Ok(field.element(v))
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.element(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u128) -> FieldElement {
        self.field.element(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self, iterations: u64) -> FieldElement {
        self.field
            .element(self.field.frobenius(self.value, iterations))
    }

    pub fn embed(&self, target: &FieldConfig) -> Result<FieldElement> {
        Ok(target.element(self.field.embed_value(self.value, target)?))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field.spec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = FieldConfig::new(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn f4_default_modulus_is_t2_t_1() {
        let f = FieldConfig::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.spec(), "2^2;mod=t^2+t+1");
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(FieldConfig::new(4, 1).unwrap_err(), Error::NonPrime(4));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 1 = (t + 1)^2 over F_2
        assert!(matches!(
            FieldConfig::with_modulus(2, &[1, 0, 1]),
            Err(Error::ReducibleModulus(_))
        ));
    }

    #[test]
    fn f5_inverse_of_two() {
        let f = FieldConfig::new(5, 1).unwrap();
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn f4_generator_squared() {
        let f = FieldConfig::new(2, 2).unwrap();
        let a = f.gen();
        assert_eq!(f.format_elem(f.mul(a, a)), "a+1");
        assert_eq!(f.format_elem(f.frobenius(a, 1)), "a+1");
        assert_eq!(f.frobenius(a, 2), a);
        let f2 = FieldConfig::new(2, 1).unwrap();
        assert_eq!(f2.frobenius(1, 7), 1);
    }

    #[test]
    fn element_printing() {
        let f = FieldConfig::new(3, 3).unwrap();
        assert_eq!(f.format_elem(0), "0");
        assert_eq!(f.format_elem(f.from_digits(&[1, 0, 2])), "2*a^2+1");
        assert_eq!(f.format_elem(f.from_digits(&[1, 1, 0])), "a+1");
    }

    #[test]
    fn field_spec_round_trip() {
        let f = FieldConfig::parse("2^2;mod=t^2+t+1").unwrap();
        assert_eq!(f, FieldConfig::new(2, 2).unwrap());
        let g = FieldConfig::parse("2^4").unwrap();
        assert_eq!(FieldConfig::parse(&g.spec()).unwrap(), g);
        assert_eq!(FieldConfig::parse("3").unwrap().q(), 3);
        assert!(FieldConfig::parse("2^3;mod=t^3+t^2+t+1").is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f2 = FieldConfig::new(2, 1).unwrap();
        let f3 = FieldConfig::new(3, 1).unwrap();
        let x = FieldElement::one(&f2);
        let y = FieldElement::one(&f3);
        assert_eq!(x.add(&y), Err(Error::MixedFields));
    }

    #[test]
    fn embed_prime_subfield_and_tower() {
        let f2 = FieldConfig::new(2, 1).unwrap();
        let f4 = FieldConfig::new(2, 2).unwrap();
        let f8 = FieldConfig::new(2, 3).unwrap();
        let f16 = FieldConfig::new(2, 4).unwrap();
        assert_eq!(f2.embed_value(1, &f4).unwrap(), 1);
        // image of a is the first root of t^2+t+1 found by enumeration
        let img = f4.embed_value(f4.gen(), &f16).unwrap();
        let first_root = f16
            .elements()
            .find(|&x| f16.add(f16.add(f16.mul(x, x), x), 1) == 0)
            .unwrap();
        assert_eq!(img, first_root);
        assert!(matches!(
            f4.embed_value(1, &f8),
            Err(Error::IncompatibleTower { .. })
        ));
    }

    #[test]
    fn frobenius_is_additive_exhaustively() {
        for (p, k) in [(2, 6), (3, 3), (5, 2), (7, 2)] {
            let f = FieldConfig::new(p, k).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        f.frobenius(f.add(a, b), 1),
                        f.add(f.frobenius(a, 1), f.frobenius(b, 1))
                    );
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn embedding_commutes_with_frobenius() {
        let pairs = [((2, 1), (2, 4)), ((2, 2), (2, 4)), ((3, 1), (3, 2))];
        for ((p, k), (p2, k2)) in pairs {
            let src = FieldConfig::new(p, k).unwrap();
            let dst = FieldConfig::new(p2, k2).unwrap();
            let mut seen = std::collections::HashSet::new();
            for a in src.elements() {
                let e = src.embed_value(a, &dst).unwrap();
                assert!(seen.insert(e), "embedding must be injective");
                assert_eq!(
                    src.embed_value(src.frobenius(a, 1), &dst).unwrap(),
                    dst.frobenius(e, 1)
                );
                for b in src.elements() {
                    assert_eq!(
                        src.embed_value(src.mul(a, b), &dst).unwrap(),
                        dst.mul(e, src.embed_value(b, &dst).unwrap())
                    );
                    assert_eq!(
                        src.embed_value(src.add(a, b), &dst).unwrap(),
                        dst.add(e, src.embed_value(b, &dst).unwrap())
                    );
                }
                assert_eq!(src.restrict_value(e, &dst).unwrap(), Some(a));
            }
        }
    }

    #[test]
    fn enumeration_is_closed_and_distinct() {
        for (p, k) in [(2, 2), (2, 4), (3, 2)] {
            let f = FieldConfig::new(p, k).unwrap();
            let all: Vec<u32> = f.elements().collect();
            assert_eq!(all.len() as u32, f.q());
            assert_eq!(&all[..2], &[0, 1]);
            for &a in &all {
                for &b in &all {
                    assert!(f.add(a, b) < f.q());
                    assert!(f.mul(a, b) < f.q());
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = FieldConfig::new(2, 17).unwrap();
        let a = f.gen();
        let x = f.pow(a, 12345);
        assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        assert_eq!(f.frobenius(x, 17), x);
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = FieldConfig::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(f.pth_root(a), 1), a);
        }
    }
}
