use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::group::UnitGroup;
use crate::math::gcd_u64;
use crate::polyring::Poly;
use crate::Result;

/// Rotation-table marker for residues where the character vanishes.
pub const ZERO_VALUE: u32 = u32::MAX;

/// An exact character value: zero or `e^{2 pi i num/den}` with `num/den` reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CharValue {
    Zero,
    Root { num: u64, den: u64 },
}

impl CharValue {
    pub fn from_rotation(k: u64, n: u64) -> Self {
        let k = k % n;
        let g = gcd_u64(k, n).max(1);
        CharValue::Root {
            num: k / g,
            den: n / g,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            CharValue::Zero => Complex64::new(0.0, 0.0),
            CharValue::Root { num, den } => root_of_unity(num, den),
        }
    }

    pub fn is_zero(self) -> bool {
        self == CharValue::Zero
    }
}

/// `e^{2 pi i k / n}`, exact on the real and imaginary axes.
pub fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    if 4 * k % n == 0 {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let t = 2.0 * PI * k as f64 / n as f64;
    Complex64::new(libm::cos(t), libm::sin(t))
}

/// Table of `e^{2 pi i k / n}` for `k < n`.
pub fn roots_of_unity(n: u64) -> Vec<Complex64> {
    (0..n).map(|k| root_of_unity(k, n)).collect()
}

/// A Dirichlet character modulo `R`, given by its exponent vector against the
/// generators of the unit group: `chi(g_i) = e^{2 pi i a_i / o_i}`.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
    primitive: bool,
    even: bool,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("modulus", self.group.modulus())
            .field("exponents", &self.exps)
            .field("primitive", &self.primitive)
            .field("even", &self.even)
            .finish()
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus() == other.group.modulus() && self.exps == other.exps
    }
}

impl DirichletCharacter {
    /// Character with the given exponents, each reduced modulo its generator order.
    pub fn new(group: &Arc<UnitGroup>, exps: &[u64]) -> Self {
        assert_eq!(exps.len(), group.rank(), "one exponent per generator");
        let exps: Vec<u64> = exps
            .iter()
            .zip(group.orders())
            .map(|(&a, &o)| a % o)
            .collect();
        let mut chi = Self {
            group: group.clone(),
            exps,
            primitive: false,
            even: false,
        };
        chi.primitive = chi.compute_primitive();
        chi.even = chi.compute_even();
        chi
    }

    /// The `i`-th character in the mixed-radix order of exponent vectors.
    pub fn from_index(group: &Arc<UnitGroup>, mut i: u64) -> Self {
        let mut exps = Vec::with_capacity(group.rank());
        for &o in group.orders() {
            exps.push(i % o);
            i /= o;
        }
        Self::new(group, &exps)
    }

    pub fn trivial(group: &Arc<UnitGroup>) -> Self {
        Self::new(group, &vec![0; group.rank()])
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> &Poly {
        self.group.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    /// Position in [`all_characters`](super::all_characters).
    pub fn index(&self) -> u64 {
        let mut idx = 0;
        for (&a, &o) in self.exps.iter().zip(self.group.orders()).rev() {
            idx = idx * o + a;
        }
        idx
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(self.group.orders())
            .fold(1, |acc, (&a, &o)| {
                let k = o / gcd_u64(a, o);
                acc / gcd_u64(acc, k) * k
            })
    }

    pub fn conj(&self) -> Self {
        let exps: Vec<u64> = self
            .exps
            .iter()
            .zip(self.group.orders())
            .map(|(&a, &o)| (o - a) % o)
            .collect();
        Self {
            group: self.group.clone(),
            exps,
            primitive: self.primitive,
            even: self.even,
        }
    }

    /// Rotation number `k` (value `e^{2 pi i k/N}`, `N` the group exponent) at a
    /// residue index, or `None` for non-units.
    pub fn rotation_at(&self, residue: usize) -> Option<u64> {
        let logs = self.group.log_index(residue)?;
        let n = self.group.exponent() as u128;
        let mut k: u128 = 0;
        for ((&a, &l), &o) in self.exps.iter().zip(logs).zip(self.group.orders()) {
            k += a as u128 * l as u128 * (n / o as u128);
        }
        Some((k % n) as u64)
    }

    /// Rotation numbers for every residue, [`ZERO_VALUE`] where `chi` vanishes.
    pub fn rotation_table(&self) -> Vec<u32> {
        (0..self.group.residue_count())
            .map(|r| self.rotation_at(r).map_or(ZERO_VALUE, |k| k as u32))
            .collect()
    }

    pub fn value_at_index(&self, residue: usize) -> CharValue {
        match self.rotation_at(residue) {
            None => CharValue::Zero,
            Some(k) => CharValue::from_rotation(k, self.group.exponent()),
        }
    }

    /// `chi(A)`, reducing `A` modulo `R`.
    pub fn evaluate(&self, a: &Poly) -> Result<CharValue> {
        Ok(self.value_at_index(self.group.residue_index(a)?))
    }

    pub fn evaluate_complex(&self, a: &Poly) -> Result<Complex64> {
        Ok(self.evaluate(a)?.to_complex())
    }

    fn compute_primitive(&self) -> bool {
        // chi is induced from R/P iff it is trivial on {A = 1 mod R/P}
        self.group
            .kernels()
            .iter()
            .all(|ker| ker.iter().any(|&r| self.rotation_at(r) != Some(0)))
    }

    fn compute_even(&self) -> bool {
        let q = self.group.field().q() as usize;
        (1..q).all(|a| self.rotation_at(a) == Some(0))
    }
}
