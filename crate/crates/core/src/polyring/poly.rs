use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use super::FiniteField;
use crate::Error;

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An element of `F_q[T]`: coefficient codes lowest degree first, with no
/// trailing zeros stored.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Build from coefficient codes (lowest first); trailing zeros are trimmed.
    pub fn new(field: &FiniteField, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| c < field.q()));
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &FiniteField) -> Self {
        Self::new(field, alloc::vec![1])
    }

    /// The indeterminate `T`.
    pub fn t(field: &FiniteField) -> Self {
        Self::new(field, alloc::vec![0, 1])
    }

    pub fn constant(field: &FiniteField, c: u32) -> Self {
        Self::new(field, alloc::vec![c])
    }

    /// `T^n`.
    pub fn monomial(field: &FiniteField, n: usize) -> Self {
        let mut coeffs = alloc::vec![0; n + 1];
        coeffs[n] = 1;
        Self::new(field, coeffs)
    }

    #[inline]
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree of a non-zero polynomial.
    ///
    /// # Panics
    /// On the zero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().finite().expect("degree of the zero polynomial")
    }

    pub fn leading(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    /// `|A| = q^{deg A}`, and `|0| = 0`.
    pub fn norm(&self) -> f64 {
        match self.degree() {
            Degree::NegInfinity => 0.0,
            Degree::Finite(d) => libm::pow(self.q() as f64, d as f64),
        }
    }

    /// Base-`q` integer encoding `sum c_i q^i`.
    pub fn to_index(&self) -> u64 {
        let q = self.q() as u64;
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    /// Inverse of [`to_index`](Self::to_index).
    pub fn from_index(field: &FiniteField, mut idx: u64) -> Self {
        let q = field.q() as u64;
        let mut coeffs = Vec::new();
        while idx > 0 {
            coeffs.push((idx % q) as u32);
            idx /= q;
        }
        Self::new(field, coeffs)
    }

    /// The `i`-th monic polynomial of degree `n` (`i < q^n`); its index is `q^n + i`.
    pub fn monic_from_index(field: &FiniteField, n: usize, i: u64) -> Self {
        let q = field.q() as u64;
        let mut coeffs = alloc::vec![0u32; n + 1];
        let mut x = i;
        for c in coeffs.iter_mut().take(n) {
            *c = (x % q) as u32;
            x /= q;
        }
        coeffs[n] = 1;
        Self::new(field, coeffs)
    }

    /// Canonical text form, e.g. `q=3:[1,2,1]` for `T^2 + 2T + 1`.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(|c| format!("{c}")).collect();
        format!("q={}:[{}]", self.q(), body.join(","))
    }

    /// Parse the canonical text form.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(String::from(s));
        let rest = s.trim().strip_prefix("q=").ok_or_else(bad)?;
        let (q, list) = rest.split_once(':').ok_or_else(bad)?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        let field = FiniteField::new(q)?;
        Self::parse_coeffs(&field, list).ok_or_else(bad)
    }

    /// Parse the text form against an existing field; the `q=` prefix is optional
    /// but must agree with `field` when present.
    pub fn parse_in(field: &FiniteField, s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(String::from(s));
        let s = s.trim();
        let list = match s.strip_prefix("q=") {
            Some(rest) => {
                let (q, list) = rest.split_once(':').ok_or_else(bad)?;
                let q: u32 = q.trim().parse().map_err(|_| bad())?;
                if q != field.q() {
                    return Err(Error::FieldMismatch {
                        left: field.q(),
                        right: q,
                    });
                }
                list
            }
            None => s,
        };
        Self::parse_coeffs(field, list).ok_or_else(bad)
    }

    fn parse_coeffs(field: &FiniteField, list: &str) -> Option<Self> {
        let list = list.trim().strip_prefix('[')?.strip_suffix(']')?;
        let mut coeffs = Vec::new();
        if !list.trim().is_empty() {
            for tok in list.split(',') {
                let c: u32 = tok.trim().parse().ok()?;
                if c >= field.q() {
                    return None;
                }
                coeffs.push(c);
            }
        }
        Some(Self::new(field, coeffs))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q()
            .cmp(&other.q())
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("T")?,
                (1, c) => write!(f, "{c}T")?,
                (i, 1) => write!(f, "T^{i}")?,
                (i, c) => write!(f, "{c}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Self::parse(s)
    }
}

impl TryFrom<String> for Poly {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        Self::parse(&s)
    }
}

impl From<Poly> for String {
    fn from(p: Poly) -> String {
        p.to_text()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        let p = Poly::parse("q=3:[1,2,1]").unwrap();
        let f3 = p.field().clone();
        assert_eq!(p.deg(), 2);
        assert!(p.is_monic());
        assert_eq!(p.to_text(), "q=3:[1,2,1]");
        assert_eq!(Poly::parse("q=3:[]").unwrap(), Poly::zero(&f3));
        assert_eq!(Poly::parse("q=3:[1,0,0]").unwrap(), Poly::one(&f3));
        assert!(Poly::parse("q=3:[3]").is_err());
        assert!(Poly::parse("[1,2]").is_err());
        assert!(Poly::parse("q=6:[1]").is_err());
        assert_eq!(format!("{p}"), "T^2 + 2T + 1");
        assert_eq!(Poly::parse_in(&f3, "[0,1]").unwrap(), Poly::t(&f3));
        assert!(Poly::parse_in(&f3, "q=5:[0,1]").is_err());
    }

    #[test]
    fn zero_degree_sentinel() {
        let f5 = FiniteField::new(5).unwrap();
        assert_eq!(Poly::zero(&f5).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Poly::zero(&f5).norm(), 0.0);
        assert_eq!(Poly::monomial(&f5, 2).norm(), 25.0);
    }

    #[test]
    fn index_round_trip() {
        let f3 = FiniteField::new(3).unwrap();
        for idx in 0..243 {
            assert_eq!(Poly::from_index(&f3, idx).to_index(), idx);
        }
        assert_eq!(Poly::monic_from_index(&f3, 2, 0), Poly::monomial(&f3, 2));
        assert_eq!(Poly::monic_from_index(&f3, 2, 5).to_index(), 9 + 5);
    }
}
