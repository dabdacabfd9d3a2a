//! Table-driven finite fields.
//!
//! An element of `GF(Q)` is stored as its *index*: the base-`q` integer whose
//! digits are its coordinates in the power basis of the defining polynomial.
//! Since each base coordinate is itself a base-`r` digit string, every index is
//! a plain base-`r` digit string (`r` the characteristic), so addition is
//! digitwise. Multiplication and Frobenius go through discrete-log tables.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

const NO_LOG: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct GaloisField {
    chr: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    // log(1 + g^i), odd characteristic only
    zech: Vec<u32>,
}

impl GaloisField {
    pub fn prime(r: u32) -> Result<Self> {
        if !is_prime(r as u64) {
            return Err(Error::InvalidConfig(alloc::format!("{r} is not prime")));
        }
        let unit_count = (r - 1) as u64;
        let factors = prime_factors(unit_count);
        let pow_mod = |mut b: u64, mut e: u64| {
            let mut acc = 1u64;
            b %= r as u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * b % r as u64;
                }
                b = b * b % r as u64;
                e >>= 1;
            }
            acc
        };
        let generator = (1..r as u64)
            .find(|&g| factors.iter().all(|&l| pow_mod(g, unit_count / l) != 1))
            .unwrap_or(1);
        let mut exp = Vec::with_capacity(unit_count as usize);
        let mut x = 1u64;
        for _ in 0..unit_count {
            exp.push(x as u32);
            x = x * generator % r as u64;
        }
        Ok(Self::from_exp(r, r, exp))
    }

    /// Builds `base[x]/(poly)`; `poly` must be monic and irreducible over `base`.
    pub fn extension(base: &GaloisField, poly: &[u32]) -> Result<Self> {
        let degree = poly.len() - 1;
        if degree == 1 {
            return Ok(base.clone());
        }
        let ring = PolyRing { base };
        if poly.last() != Some(&1) || !ring.is_irreducible(poly) {
            return Err(Error::InvalidConfig(
                "defining polynomial is not monic irreducible".into(),
            ));
        }
        let q = base.order as u64;
        let order = crate::arith::checked_pow(q, degree as u64)
            .filter(|&o| o <= u32::MAX as u64 / 2)
            .ok_or_else(|| Error::Budget(alloc::format!("GF({q}^{degree}) too large")))?;
        let unit_count = order - 1;
        let factors = prime_factors(unit_count);
        let to_coords = |idx: u64| -> Vec<u32> {
            let mut c = vec![0u32; degree];
            let mut rest = idx;
            for slot in c.iter_mut() {
                *slot = (rest % q) as u32;
                rest /= q;
            }
            c
        };
        let to_index =
            |c: &[u32]| -> u64 { c.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64) };
        let one = to_coords(1);
        let generator = (2..order)
            .map(to_coords)
            .find(|c| {
                factors
                    .iter()
                    .all(|&l| ring.pow_mod(c, unit_count / l, poly) != one)
            })
            .ok_or_else(|| Error::InvalidConfig("defining polynomial is not irreducible".into()))?;
        let mut exp = Vec::with_capacity(unit_count as usize);
        let mut x = one.clone();
        for i in 0..unit_count {
            let idx = to_index(&x);
            if i > 0 && idx == 1 {
                return Err(Error::InvalidConfig(
                    "defining polynomial is not irreducible".into(),
                ));
            }
            exp.push(idx as u32);
            x = ring.mul_mod(&x, &generator, poly);
        }
        Ok(Self::from_exp(base.chr, order as u32, exp))
    }

    fn from_exp(chr: u32, order: u32, exp: Vec<u32>) -> Self {
        let mut log = vec![NO_LOG; order as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let mut field = GaloisField {
            chr,
            order,
            exp,
            log,
            zech: Vec::new(),
        };
        if chr != 2 {
            let zech = (0..field.exp.len())
                .map(|i| {
                    let s = field.add_digitwise(1, field.exp[i]);
                    field.log[s as usize]
                })
                .collect();
            field.zech = zech;
        }
        field
    }

    fn add_digitwise(&self, mut a: u32, mut b: u32) -> u32 {
        let r = self.chr;
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % r + b % r) % r) * place;
            a /= r;
            b /= r;
            place = place.wrapping_mul(r);
        }
        out
    }

    pub fn characteristic(&self) -> u32 {
        self.chr
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn units(&self) -> u64 {
        self.order as u64 - 1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.chr == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let la = self.log[a as usize] as u64;
        let lb = self.log[b as usize] as u64;
        let diff = (lb + self.units() - la) % self.units();
        match self.zech[diff as usize] {
            NO_LOG => 0,
            z => self.exp[((la + z as u64) % self.units()) as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.chr == 2 || a == 0 {
            return a;
        }
        let l = self.log[a as usize] as u64 + self.units() / 2;
        self.exp[(l % self.units()) as usize]
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
        let l = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(l % self.units()) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = (self.units() - self.log[a as usize] as u64) % self.units();
        Ok(self.exp[l as usize])
    }

    /// `a^e` for any integer `e` (negative powers invert).
    pub fn pow(&self, a: u32, e: i128) -> Result<u32> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(Error::DivisionByZero),
            };
        }
        let l = self.log[a as usize] as i128 * e;
        Ok(self.exp[l.rem_euclid(self.units() as i128) as usize])
    }

    /// Multiplies the discrete log of `a` by `factor` modulo `Q - 1`.
    #[inline]
    pub fn scale_log(&self, a: u32, factor: u64) -> u32 {
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u128 * factor as u128) % self.units() as u128;
        self.exp[l as usize]
    }

    /// The `i`-th power of the table generator.
    pub fn generator_power(&self, i: u64) -> u32 {
        self.exp[(i % self.units()) as usize]
    }
}

/// Dense polynomial arithmetic over a table field, used while constructing
/// fields and embeddings. Coefficients are stored lowest degree first.
pub(crate) struct PolyRing<'a> {
    pub base: &'a GaloisField,
}

impl PolyRing<'_> {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.base.add(out[i + j], self.base.mul(x, y));
            }
        }
        Self::trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a nonzero `f` (any leading coefficient).
    pub fn rem(&self, a: &[u32], f: &[u32]) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        Self::trim(&mut r);
        let mut f = f.to_vec();
        Self::trim(&mut f);
        let df = f.len() - 1;
        let lead_inv = self.base.inv(f[df]).expect("nonzero divisor");
        while r.len() > df {
            let top = r.len() - 1;
            let c = self.base.mul(r[top], lead_inv);
            let shift = top - df;
            for (i, &fc) in f.iter().enumerate() {
                r[shift + i] = self.base.sub(r[shift + i], self.base.mul(c, fc));
            }
            Self::trim(&mut r);
        }
        r
    }

    /// Product modulo `f`, returned as a length-`deg f` coefficient vector.
    pub fn mul_mod(&self, a: &[u32], b: &[u32], f: &[u32]) -> Vec<u32> {
        let mut r = self.rem(&self.mul(a, b), f);
        r.resize(f.len() - 1, 0);
        r
    }

    pub fn pow_mod(&self, a: &[u32], mut e: u64, f: &[u32]) -> Vec<u32> {
        let mut acc = vec![0u32; f.len() - 1];
        acc[0] = 1;
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &b, f);
            }
            b = self.mul_mod(&b, &b, f);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        x
    }

    /// Ben-Or irreducibility test for a monic polynomial.
    pub fn is_irreducible(&self, f: &[u32]) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let q = self.base.order() as u64;
        let mut x = vec![0u32; d];
        x[1] = 1;
        let mut h = x.clone();
        for _ in 0..d / 2 {
            h = self.pow_mod(&h, q, f);
            let mut diff: Vec<u32> = h
                .iter()
                .zip(&x)
                .map(|(&a, &b)| self.base.sub(a, b))
                .collect();
            Self::trim(&mut diff);
            if diff.is_empty() || self.gcd(f, &diff).len() > 1 {
                return false;
            }
        }
        true
    }

    /// Lexicographically least monic irreducible polynomial of degree `d`,
    /// comparing coefficients from degree `d - 1` down to the constant term.
    pub fn least_irreducible(&self, d: usize) -> Vec<u32> {
        let q = self.base.order() as u64;
        let mut f = vec![0u32; d + 1];
        f[d] = 1;
        if d == 1 {
            return f;
        }
        let mut idx: u64 = 0;
        loop {
            let mut rest = idx;
            for c in f.iter_mut().take(d) {
                *c = (rest % q) as u32;
                rest /= q;
            }
            if f[0] != 0 && self.is_irreducible(&f) {
                return f;
            }
            idx += 1;
        }
    }
}
