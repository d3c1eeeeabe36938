//! Ring operations of `F_q[T]`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::{FiniteField, Poly};
use crate::{Error, Result};

fn check_same(a: &Poly, b: &Poly) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.q(),
            right: b.q(),
        });
    }
    Ok(())
}

pub(crate) fn add_raw(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add(*o, s);
    }
    out
}

pub(crate) fn sub_raw(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = f.sub(x, y);
    }
    out
}

pub(crate) fn mul_raw(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if f.e() == 1 {
        let p = f.p() as u64;
        let mut acc = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
            // keep the accumulators small enough for any length
            if i % 1024 == 1023 {
                acc.iter_mut().for_each(|v| *v %= p);
            }
        }
        acc.into_iter().map(|v| (v % p) as u32).collect()
    } else {
        let mut out = vec![0u32; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        out
    }
}

/// In-place remainder of `a` modulo the non-zero `b` (trailing zeros of `b` trimmed).
pub(crate) fn rem_raw(f: &FiniteField, a: &mut Vec<u32>, b: &[u32]) {
    let db = b.len() - 1;
    let inv_lead = f.inv(b[db]).expect("non-zero leading coefficient");
    while a.last() == Some(&0) {
        a.pop();
    }
    while a.len() > db {
        let k = a.len() - 1;
        let c = f.mul(a[k], inv_lead);
        let neg_c = f.neg(c);
        for (i, &bi) in b.iter().enumerate() {
            a[k - db + i] = f.add(a[k - db + i], f.mul(neg_c, bi));
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

impl Poly {
    pub fn add(&self, other: &Poly) -> Result<Poly> {
        check_same(self, other)?;
        Ok(Poly::new(self.field(), add_raw(self.field(), self.coeffs(), other.coeffs())))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        check_same(self, other)?;
        Ok(Poly::new(self.field(), sub_raw(self.field(), self.coeffs(), other.coeffs())))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        check_same(self, other)?;
        Ok(Poly::new(self.field(), mul_raw(self.field(), self.coeffs(), other.coeffs())))
    }

    pub fn neg(&self) -> Poly {
        let f = self.field();
        Poly::new(f, self.coeffs().iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field();
        Poly::new(f, self.coeffs().iter().map(|&x| f.mul(x, c)).collect())
    }

    /// `(quotient, remainder)` with `self = quotient * d + remainder`, `deg remainder < deg d`.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        check_same(self, d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field();
        let dd = d.deg();
        let inv_lead = f.inv(d.leading().unwrap()).unwrap();
        let mut r = self.coeffs().to_vec();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quo = vec![0u32; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], inv_lead);
            if c == 0 {
                continue;
            }
            quo[k - dd] = c;
            let neg_c = f.neg(c);
            for (i, &di) in d.coeffs().iter().enumerate() {
                r[k - dd + i] = f.add(r[k - dd + i], f.mul(neg_c, di));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, quo), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        check_same(self, d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.coeffs().to_vec();
        rem_raw(self.field(), &mut r, d.coeffs());
        Ok(Poly::new(self.field(), r))
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument(alloc::format!("{d:?} does not divide {self:?}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Scale to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.field().inv(c).unwrap()),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        check_same(self, other)?;
        let f = self.field();
        let mut a = self.coeffs().to_vec();
        let mut b = other.coeffs().to_vec();
        while !b.is_empty() {
            rem_raw(f, &mut a, &b);
            core::mem::swap(&mut a, &mut b);
        }
        Ok(Poly::new(f, a).monic())
    }

    pub fn is_coprime(&self, other: &Poly) -> Result<bool> {
        Ok(self.gcd(other)?.is_one())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        check_same(self, m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field();
        let mut base = self.coeffs().to_vec();
        rem_raw(f, &mut base, m.coeffs());
        let mut acc = vec![1u32];
        rem_raw(f, &mut acc, m.coeffs());
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_raw(f, &acc, &base);
                rem_raw(f, &mut acc, m.coeffs());
            }
            e >>= 1;
            if e > 0 {
                base = mul_raw(f, &base, &base);
                rem_raw(f, &mut base, m.coeffs());
            }
        }
        Ok(Poly::new(f, acc))
    }

    /// `self * other mod m`.
    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        check_same(self, other)?;
        check_same(self, m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = mul_raw(self.field(), self.coeffs(), other.coeffs());
        rem_raw(self.field(), &mut r, m.coeffs());
        Ok(Poly::new(self.field(), r))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let f = self.field();
        let c: Vec<u32> = self
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.from_int(i as i64)))
            .collect();
        Poly::new(f, c)
    }

    /// Value at a field element.
    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field();
        self.coeffs().iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

/// Free-function forms mirroring the methods.
pub fn poly_add(a: &Poly, b: &Poly) -> Result<Poly> {
    a.add(b)
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    a.mul(b)
}

pub fn poly_divrem(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    a.divrem(b)
}

pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.gcd(b)
}

// Operator forms panic on a field mismatch; use the methods for a `Result`.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs).expect("field mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs).expect("field mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs).expect("field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
