use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::math::{factor_u64, lcm_u64};
use crate::polyring::{factorize, phi_of, FiniteField, Poly};
use crate::{Error, Result};

/// Marker in the log table for residues that are not units.
pub const NOT_A_UNIT: u32 = u32::MAX;

/// `(F_q[T]/R)^*` with an explicit basis.
///
/// Residues are the polynomials of degree `< deg R`, indexed by
/// [`Poly::to_index`]. Every unit has an exponent vector `e` with
/// `unit = prod g_i^{e_i}`, `0 <= e_i < orders[i]`.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: Poly,
    generators: Vec<Poly>,
    orders: Vec<u64>,
    exponent: u64,
    order: u64,
    /// Flattened `residue -> exponent vector`, `generators.len()` entries per residue.
    logs: Vec<u32>,
    /// Monic primes dividing the modulus, with multiplicity.
    prime_factors: Vec<(Poly, u32)>,
    /// For each prime `P | R`, the unit residues `A = 1 mod R/P`.
    kernels: Vec<Vec<usize>>,
}

/// Serialisable description of a [`UnitGroup`], used for on-disk caches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitGroupData {
    pub modulus: Poly,
    pub generators: Vec<Poly>,
    pub orders: Vec<u64>,
    pub logs: Vec<u32>,
}

struct Ctx<'a> {
    field: &'a FiniteField,
    m: &'a Poly,
}

impl Ctx<'_> {
    fn mul(&self, a: u64, b: u64) -> u64 {
        let pa = Poly::from_index(self.field, a);
        let pb = Poly::from_index(self.field, b);
        pa.mulmod(&pb, self.m).unwrap().to_index()
    }

    fn pow(&self, a: u64, e: u64) -> u64 {
        Poly::from_index(self.field, a)
            .powmod(e, self.m)
            .unwrap()
            .to_index()
    }
}

impl UnitGroup {
    /// Build the unit group of `F_q[T]/R` for monic `R` of degree `>= 1`.
    pub fn new(modulus: &Poly) -> Result<Self> {
        validate_modulus(modulus)?;
        let field = modulus.field();
        let d = modulus.deg();
        let size = (field.q() as u64).pow(d as u32);
        let units: Vec<u64> = (0..size)
            .filter(|&i| Poly::from_index(field, i).is_coprime(modulus).unwrap())
            .collect();
        let order = units.len() as u64;
        let fac = factorize(modulus)?;
        debug_assert_eq!(order as u128, phi_of(field.q(), &fac));
        let ctx = Ctx { field, m: modulus };

        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (ell, a) in factor_u64(order) {
            let sylow_order = ell.pow(a);
            let cofactor = order / sylow_order;
            // ell-parts of all units; the image is the Sylow subgroup
            let mut sylow: Vec<u64> = units.iter().map(|&u| ctx.pow(u, cofactor)).collect();
            sylow.sort_unstable();
            sylow.dedup();
            debug_assert_eq!(sylow.len() as u64, sylow_order);
            for (g, o) in sylow_basis(&ctx, &sylow, ell) {
                generators.push(Poly::from_index(field, g));
                orders.push(o);
            }
        }
        Self::assemble(modulus.clone(), generators, orders, fac.primes)
    }

    fn assemble(
        modulus: Poly,
        generators: Vec<Poly>,
        orders: Vec<u64>,
        prime_factors: Vec<(Poly, u32)>,
    ) -> Result<Self> {
        let field = modulus.field().clone();
        let d = modulus.deg();
        let size = (field.q() as u64).pow(d as u32) as usize;
        let ng = generators.len();
        let ctx = Ctx {
            field: &field,
            m: &modulus,
        };
        let mut logs = vec![NOT_A_UNIT; size * ng.max(1)];
        let order: u64 = orders.iter().product();
        let gens: Vec<u64> = generators.iter().map(|g| g.to_index()).collect();
        // mixed-radix walk over exponent vectors, one multiplication per step
        let mut e = vec![0u64; ng];
        let mut powers: Vec<u64> = vec![1; ng + 1];
        let mut seen = 0u64;
        loop {
            let r = powers[0] as usize;
            if ng == 0 {
                logs[r] = 0;
            } else {
                if logs[r * ng] != NOT_A_UNIT {
                    return Err(Error::InvalidArgument(format!(
                        "generators of {modulus:?} are not independent"
                    )));
                }
                for i in 0..ng {
                    logs[r * ng + i] = e[i] as u32;
                }
            }
            seen += 1;
            // increment
            let mut i = 0;
            loop {
                if i == ng {
                    break;
                }
                e[i] += 1;
                if e[i] < orders[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
            if i == ng {
                break;
            }
            // powers[j] = prod_{k >= j} g_k^{e_k}
            powers[i] = ctx.mul(powers[i], gens[i]);
            for j in (0..i).rev() {
                powers[j] = powers[j + 1];
            }
        }
        if seen != order {
            return Err(Error::InvalidArgument("generator orders inconsistent".into()));
        }
        let exponent = orders.iter().fold(1, |acc, &o| lcm_u64(acc, o));
        let kernels = prime_factors
            .iter()
            .map(|(p, _)| {
                let s = modulus.div_exact(p).unwrap();
                let count = (field.q() as u64).pow(p.deg() as u32);
                (0..count)
                    .map(|b| {
                        let a = &Poly::one(&field) + &(&s * &Poly::from_index(&field, b));
                        a.rem(&modulus).unwrap().to_index() as usize
                    })
                    .filter(|&r| {
                        if ng == 0 {
                            logs[r] != NOT_A_UNIT
                        } else {
                            logs[r * ng] != NOT_A_UNIT
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            modulus,
            generators,
            orders,
            exponent,
            order,
            logs,
            prime_factors,
            kernels,
        })
    }

    /// Rebuild from cached data, verifying the table against the generators.
    pub fn from_data(data: UnitGroupData) -> Result<Self> {
        validate_modulus(&data.modulus)?;
        let fac = factorize(&data.modulus)?;
        let g = Self::assemble(data.modulus, data.generators, data.orders, fac.primes)?;
        if g.order as u128 != phi_of(g.modulus.q(), &factorize(&g.modulus)?) {
            return Err(Error::InvalidArgument("cached group has wrong order".into()));
        }
        if g.logs != data.logs {
            return Err(Error::InvalidArgument("cached log table does not match".into()));
        }
        Ok(g)
    }

    pub fn to_data(&self) -> UnitGroupData {
        UnitGroupData {
            modulus: self.modulus.clone(),
            generators: self.generators.clone(),
            orders: self.orders.clone(),
            logs: self.logs.clone(),
        }
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn field(&self) -> &FiniteField {
        self.modulus.field()
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// `phi(R)`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Least common multiple of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Number of residues, `q^{deg R}`.
    pub fn residue_count(&self) -> usize {
        self.logs.len() / self.rank().max(1)
    }

    pub fn prime_factors(&self) -> &[(Poly, u32)] {
        &self.prime_factors
    }

    /// Unit residues congruent to 1 modulo `R/P`, one list per prime `P | R`.
    pub fn kernels(&self) -> &[Vec<usize>] {
        &self.kernels
    }

    /// Exponent vector of the residue with the given index, `None` for non-units.
    pub fn log_index(&self, residue: usize) -> Option<&[u32]> {
        let ng = self.rank();
        if ng == 0 {
            return (self.logs[residue] != NOT_A_UNIT).then_some(&[][..]);
        }
        let v = &self.logs[residue * ng..(residue + 1) * ng];
        (v[0] != NOT_A_UNIT).then_some(v)
    }

    /// Exponent vector of `A mod R`.
    pub fn log(&self, a: &Poly) -> Result<Option<&[u32]>> {
        let r = a.rem(&self.modulus)?;
        Ok(self.log_index(r.to_index() as usize))
    }

    /// `prod g_i^{e_i} mod R`.
    pub fn element(&self, e: &[u64]) -> Poly {
        let mut acc = Poly::one(self.field()).rem(&self.modulus).unwrap();
        for (g, &k) in self.generators.iter().zip(e) {
            acc = acc.mulmod(&g.powmod(k, &self.modulus).unwrap(), &self.modulus).unwrap();
        }
        acc
    }

    /// Indices of all unit residues in increasing order.
    pub fn units(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.residue_count()).filter(|&r| self.log_index(r).is_some())
    }

    /// Reduce `A` modulo `R` and return the residue index.
    pub fn residue_index(&self, a: &Poly) -> Result<usize> {
        Ok(a.rem(&self.modulus)?.to_index() as usize)
    }
}

fn validate_modulus(r: &Poly) -> Result<()> {
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !r.is_monic() {
        return Err(Error::NotMonic);
    }
    if r.deg() == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(())
}

/// Basis of an abelian `ell`-group given as a list of residue indices.
///
/// Repeatedly takes an element of maximal order in the quotient by the
/// subgroup generated so far and corrects it so that its order in the whole
/// group equals its order in the quotient.
fn sylow_basis(ctx: &Ctx<'_>, elems: &[u64], ell: u64) -> Vec<(u64, u64)> {
    let mut basis: Vec<(u64, u64)> = Vec::new();
    // subgroup membership: residue -> exponent vector w.r.t. `basis`
    let one = 1u64;
    let mut member: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    member.insert(one, Vec::new());
    let total = elems.len();
    while member.len() < total {
        // order of each element in the quotient
        let mut best = (0u64, 1u64, 0u32);
        for &h in elems {
            if member.contains_key(&h) {
                continue;
            }
            let mut x = h;
            let mut ord = 1u64;
            let mut k = 0u32;
            while !member.contains_key(&x) {
                x = ctx.pow(x, ell);
                ord *= ell;
                k += 1;
            }
            if ord > best.1 {
                best = (h, ord, k);
            }
        }
        let (mut h, ord, _) = best;
        // h^ord lies in the subgroup: h^ord = prod b_i^{c_i}, each c_i divisible by ord
        let x = ctx.pow(h, ord);
        let c = member[&x].clone();
        for (i, &(b, bo)) in basis.iter().enumerate() {
            let ci = c[i];
            debug_assert_eq!(ci % ord, 0);
            let k = (ci / ord) % bo;
            if k != 0 {
                // multiply h by b^{-k}
                h = ctx.mul(h, ctx.pow(b, bo - k));
            }
        }
        debug_assert_eq!(ctx.pow(h, ord), one);
        // extend membership: new elements s * h^j for j = 1..ord
        let old: Vec<(u64, Vec<u64>)> = member.iter().map(|(k, v)| (*k, v.clone())).collect();
        for (_, v) in member.iter_mut() {
            v.push(0);
        }
        let mut hp = one;
        for j in 1..ord {
            hp = ctx.mul(hp, h);
            for (s, v) in &old {
                let mut nv = v.clone();
                nv.push(j);
                member.insert(ctx.mul(*s, hp), nv);
            }
        }
        basis.push((h, ord));
    }
    basis
}
