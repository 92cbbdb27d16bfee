//! Dense univariate polynomials, used for gcds and root counting.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldConfig;

/// Coefficients in ascending order, with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: FieldConfig,
    coeffs: Vec<u32>,
}

impl UPoly {
    pub fn new(field: &FieldConfig, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldConfig) -> Self {
        UPoly::new(field, Vec::new())
    }

    pub fn one(field: &FieldConfig) -> Self {
        UPoly::new(field, vec![1])
    }

    /// The polynomial `x`.
    pub fn x(field: &FieldConfig) -> Self {
        UPoly::new(field, vec![0, 1])
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    o.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        UPoly::new(f, c)
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u32) -> UPoly {
        UPoly::new(
            &self.field,
            self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect(),
        )
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        UPoly::new(f, c)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()).expect("nonzero"))
    }

    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let dd = d.degree().ok_or(Error::DivisorZero)?;
        let f = &self.field;
        let inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UPoly::zero(f), self.clone()));
        }
        let mut q = vec![0; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let t = f.mul(c, inv);
            q[i - dd] = t;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(r[idx], f.mul(t, b));
            }
        }
        r.truncate(dd);
        Ok((UPoly::new(f, q), UPoly::new(f, r)))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| f.mul(x, f.from_int((i as u64 % f.p() as u64) as i64)))
            .collect();
        UPoly::new(f, c)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &UPoly) -> Result<UPoly> {
        let mut base = self.rem(m)?;
        let mut acc = UPoly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> UPoly {
        let f = &self.field;
        let p = f.p() as usize;
        let c = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&x| f.pth_root(x))
            .collect();
        UPoly::new(f, c)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return UPoly::one(&self.field);
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.pth_root().squarefree_part();
        }
        // c collects the factors of multiplicity prime to p; the others
        // survive in g, which has smaller degree
        let g = self.gcd(&d);
        let c = self.divrem(&g).expect("gcd divides").0.monic();
        let rg = g.squarefree_part();
        let common = c.gcd(&rg);
        c.mul(&rg).divrem(&common).expect("gcd divides").0.monic()
    }

    /// Roots in the coefficient field, by enumeration.
    pub fn roots(&self) -> Vec<u32> {
        if self.is_zero() {
            return Vec::new();
        }
        self.field
            .elements()
            .filter(|&x| self.eval(x) == 0)
            .collect()
    }

    /// Number of distinct roots in the degree-`m` extension of the
    /// coefficient field: `deg gcd(self, x^(q^m) - x)`.
    pub fn count_roots_in_extension(&self, m: u32) -> Result<usize> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Ok(0);
        }
        let h = self.monic();
        let q = self.field.q() as u128;
        let x = UPoly::x(&self.field);
        let mut y = x.rem(&h)?;
        for _ in 0..m {
            y = y.powmod(q, &h)?;
        }
        let g = h.gcd(&y.sub(&x));
        Ok(g.degree().unwrap_or(0))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| format!("({})*x^{i}", self.field.format_elem(c)))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, k: u32) -> FieldConfig {
        FieldConfig::new(p, k).unwrap()
    }

    #[test]
    fn divrem_reconstructs() {
        let fl = f(5, 1);
        let a = UPoly::new(&fl, vec![1, 2, 3, 4, 1]);
        let b = UPoly::new(&fl, vec![2, 0, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_products() {
        let fl = f(3, 1);
        let x1 = UPoly::new(&fl, vec![1, 1]);
        let x2 = UPoly::new(&fl, vec![2, 1]);
        let x0 = UPoly::x(&fl);
        let a = x1.mul(&x2).mul(&x2);
        let b = x2.mul(&x0);
        assert_eq!(a.gcd(&b), x2);
    }

    #[test]
    fn squarefree_strips_pth_powers() {
        let fl = f(2, 1);
        let x1 = UPoly::new(&fl, vec![1, 1]);
        let x0 = UPoly::x(&fl);
        // (x+1)^2 * x^3
        let a = x1.mul(&x1).mul(&x0).mul(&x0).mul(&x0);
        assert_eq!(a.squarefree_part(), x1.mul(&x0));
        // (x+1)^4
        let b = x1.mul(&x1).mul(&x1).mul(&x1);
        assert_eq!(b.squarefree_part(), x1);
    }

    #[test]
    fn root_count_in_extension() {
        let fl = f(2, 1);
        // x^2 + x + 1 has no roots over F_2 and two over F_4
        let h = UPoly::new(&fl, vec![1, 1, 1]);
        assert_eq!(h.count_roots_in_extension(1).unwrap(), 0);
        assert_eq!(h.count_roots_in_extension(2).unwrap(), 2);
        assert!(h.roots().is_empty());
        // x^3 + x over F_2 = x (x+1)^2: two distinct roots
        let g = UPoly::new(&fl, vec![0, 1, 0, 1]);
        assert_eq!(g.count_roots_in_extension(1).unwrap(), 2);
    }
}
