use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::math::{factor_u64, is_prime_u64};
use crate::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 12;

/// The finite field `F_q`, `q = p^e`.
///
/// Elements are `u32` codes in `0..q`. For a prime field the code is the
/// residue itself. For `e > 1` the code `sum a_i p^i` stands for
/// `sum a_i alpha^i` where `alpha` is a root of the lexicographically least
/// monic irreducible polynomial of degree `e` over `F_p`. In both cases the
/// codes `0` and `1` are the additive and multiplicative identities.
/// Multiplication and inversion go through discrete log / antilog tables.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus over F_p, lowest coefficient first (empty for prime fields).
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = g^i` for `i in 0..q-1`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.inner.p)
            .field("e", &self.inner.e)
            .field("q", &self.inner.q)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.q == other.inner.q
    }
}

impl Eq for FiniteField {}

impl core::hash::Hash for FiniteField {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.inner.q.hash(state);
    }
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        if !(2..=MAX_FIELD_ORDER).contains(&q) {
            return Err(Error::InvalidFieldOrder(q));
        }
        let f = factor_u64(q);
        if f.len() != 1 || !is_prime_u64(f[0].0) {
            return Err(Error::InvalidFieldOrder(q));
        }
        let (p, e) = (f[0].0 as u32, f[0].1);
        let q = q as u32;
        let modulus = if e == 1 { Vec::new() } else { least_irreducible(p, e) };

        let mul_raw = |a: u32, b: u32| -> u32 {
            if e == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                ext_mul(p, e, &modulus, a, b)
            }
        };

        let mut generator = 0;
        let mut exp = vec![0u32; (q - 1) as usize];
        for g in 1..q {
            exp[0] = 1;
            let mut x = 1;
            let mut order = 0;
            for i in 1..q {
                x = mul_raw(x, g);
                if x == 1 {
                    order = i;
                    break;
                }
                if i < q - 1 {
                    exp[i as usize] = x;
                }
            }
            if order == q - 1 {
                generator = g;
                break;
            }
        }
        debug_assert!(generator != 0);
        let mut log = vec![0u32; q as usize];
        for (i, &a) in exp.iter().enumerate() {
            log[a as usize] = i as u32;
        }
        Ok(Self {
            inner: Arc::new(Inner {
                p,
                e,
                q,
                modulus,
                generator,
                exp,
                log,
            }),
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.inner.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Defining polynomial of the extension over `F_p` (empty for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// A generator of the cyclic group `F_q^*`.
    pub fn generator(&self) -> u32 {
        self.inner.generator
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.e == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else if p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let (mut r, mut pw) = (0, 1);
            for _ in 0..self.inner.e {
                r += ((a % p + b % p) % p) * pw;
                a /= p;
                b /= p;
                pw *= p;
            }
            r
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.e == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else if p == 2 {
            a
        } else {
            let mut a = a;
            let (mut r, mut pw) = (0, 1);
            for _ in 0..self.inner.e {
                r += ((p - a % p) % p) * pw;
                a /= p;
                pw *= p;
            }
            r
        }
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
        if self.inner.e == 1 {
            return ((a as u64 * b as u64) % self.inner.p as u64) as u32;
        }
        let n = self.inner.q - 1;
        let s = self.inner.log[a as usize] + self.inner.log[b as usize];
        self.inner.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.inner.q - 1;
        let l = self.inner.log[a as usize];
        Some(self.inner.exp[((n - l) % n) as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.inner.q - 1) as u64;
        let l = self.inner.log[a as usize] as u64;
        self.inner.exp[((l * (k % n)) % n) as usize]
    }

    /// Discrete logarithm to the base [`generator`](Self::generator).
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inner.log[a as usize])
    }

    /// Element from an integer (reduced into the prime subfield).
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.inner.q
    }
}

/// Multiply two extension-field codes as polynomials over F_p modulo `modulus`.
fn ext_mul(p: u32, e: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let e = e as usize;
    let digits = |mut x: u32| {
        let mut d = vec![0u32; e];
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u32; 2 * e - 1];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate().take(e) {
                let idx = k - e + i;
                prod[idx] = (prod[idx] + (p - c) * m % p) % p;
            }
            prod[k] = 0;
        }
    }
    let mut r = 0;
    for i in (0..e).rev() {
        r = r * p + prod[i];
    }
    r
}

/// Lexicographically least monic irreducible polynomial of degree `e` over F_p.
fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for idx in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut x = idx;
        for _ in 0..e {
            f.push((x % p as u64) as u32);
            x /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && small_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by all monic polynomials of degree <= deg f / 2.
fn small_irreducible(p: u32, f: &[u32]) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if remainder_is_zero(p, f, &g) {
                return false;
            }
        }
    }
    true
}

fn remainder_is_zero(p: u32, f: &[u32], g: &[u32]) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for k in (dg..r.len()).rev() {
        let c = r[k];
        if c != 0 {
            for i in 0..=dg {
                let idx = k - dg + i;
                r[idx] = (r[idx] + (p - c) * g[i] % p) % p;
            }
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}
