use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::math::binomial;
use crate::polyring::prime_count;
use crate::{Result, EXP_EULER_GAMMA};

fn int(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficients of `(1 - x)^{k^2} sum_m d_k(P^m)^2 x^m`, a polynomial in
/// `x = |P|^{-1}` of degree `k(k - 1)`.
///
/// Uses `sum_m C(m+k-1, k-1)^2 x^m = sum_j C(k-1, j)^2 x^j / (1 - x)^{2k-1}`.
pub fn local_euler_polynomial(k: u32) -> Vec<BigInt> {
    if k == 0 {
        // only m = 0 survives, and (1 - x)^0 = 1
        return alloc::vec![BigInt::one()];
    }
    let km = (k - 1) as u64;
    let top: Vec<BigInt> = (0..=km)
        .map(|j| BigInt::from(binomial(km, j)).pow(2))
        .collect();
    let e = km * km;
    let mut out = alloc::vec![BigInt::zero(); top.len() + e as usize];
    for i in 0..=e {
        let c = BigInt::from(binomial(e, i)) * if i % 2 == 0 { 1 } else { -1 };
        for (j, t) in top.iter().enumerate() {
            out[i as usize + j] += &c * t;
        }
    }
    out
}

/// `sum_{m >= 0} d_k(P^m)^2 x^m` in closed form, exact.
pub fn local_moment_sum(k: u32, x: &BigRational) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let km = (k - 1) as u64;
    let mut num = BigRational::zero();
    let mut xp = BigRational::one();
    for j in 0..=km {
        num += int(binomial(km, j).pow(2)) * &xp;
        xp *= x;
    }
    let den = (BigRational::one() - x).pow(2 * k as i32 - 1);
    num / den
}

/// `a(k)` truncated to primes of degree `<= cutoff`, with a bound on the
/// relative contribution of the omitted degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArithmeticFactor {
    pub k: u32,
    pub q: u32,
    pub cutoff: usize,
    pub value: f64,
    /// `|log a(k) - log value|` is at most this.
    pub tail: f64,
}

/// Degree cutoff after which `q^{-n}` drops below `2^{-55}`.
pub fn default_cutoff(q: u32) -> usize {
    libm::ceil(55.0 * core::f64::consts::LN_2 / libm::log(q as f64)) as usize
}

/// `a(k) = prod_P (1 - |P|^{-1})^{k^2} sum_m d_k(P^m)^2 |P|^{-m}`.
pub fn a_k(q: u32, k: u32, cutoff: usize) -> Result<ArithmeticFactor> {
    let poly: Vec<f64> = local_euler_polynomial(k)
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    // poly[0] = 1 and poly[1] = 0, so L(x) - 1 is O(x^2)
    let minus_one = |x: f64, abs: bool| -> f64 {
        let mut acc = 0.0;
        let mut xp = x;
        for &c in &poly[1..] {
            acc += if abs { c.abs() } else { c } * xp;
            xp *= x;
        }
        acc
    };
    let mut log = 0.0;
    for n in 1..=cutoff {
        let x = libm::pow(q as f64, -(n as f64));
        let count = prime_count(q, n)? as f64;
        log += count * libm::log1p(minus_one(x, false));
    }
    let mut tail = 0.0;
    for n in cutoff + 1..cutoff + 400 {
        let x = libm::pow(q as f64, -(n as f64));
        let y = minus_one(x, true);
        if y >= 1.0 {
            tail = f64::INFINITY;
            break;
        }
        // |P_n| <= q^n / n and |log(1 + t)| <= |t| / (1 - |t|)
        let term = libm::pow(q as f64, n as f64) / n as f64 * y / (1.0 - y);
        tail += term;
        if term < 1e-30 {
            break;
        }
    }
    Ok(ArithmeticFactor {
        k,
        q,
        cutoff,
        value: libm::exp(log),
        tail,
    })
}

/// `f(k) = G(k+1)^2 / G(2k+1) = prod_{i<k} i! / (i+k)!`.
pub fn f_k(k: u32) -> BigRational {
    let fact = |n: u32| (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    (0..k).fold(BigRational::one(), |acc, i| {
        acc * BigRational::new(fact(i), fact(i + k))
    })
}

/// Mertens product over primes of degree `<= n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MertensProduct {
    pub q: u32,
    pub n: usize,
    /// `prod_{deg P <= n} (1 - 1/|P|)^{-1}`, exact.
    pub exact: BigRational,
    pub value: f64,
    /// `value / (e^gamma n)`.
    pub ratio: f64,
}

pub fn mertens_product(q: u32, n: usize) -> Result<MertensProduct> {
    let mut exact = BigRational::one();
    for d in 1..=n {
        let qd = BigInt::from(q).pow(d as u32);
        let factor = BigRational::new(qd.clone(), qd - 1);
        let count = prime_count(q, d)?;
        exact *= factor.pow(count as i32);
    }
    let value = ratio_to_f64(&exact);
    Ok(MertensProduct {
        q,
        n,
        exact,
        value,
        ratio: value / (EXP_EULER_GAMMA * n as f64),
    })
}

/// Float value of a rational whose numerator and denominator may exceed `f64`.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64().filter(|v| v.is_finite() && *v != 0.0) {
        return v;
    }
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let (n, d) = (r.numer().abs(), r.denom().clone());
    let shift = n.bits() as i64 - d.bits() as i64;
    let (n, d) = if shift > 0 {
        (n, d << shift as usize)
    } else {
        (n << (-shift) as usize, d)
    };
    let m = BigRational::new(n, d).to_f64().unwrap_or(f64::NAN);
    sign * m * libm::exp2(shift as f64)
}
