//! The finite-field tower `GF(q) = L_0 ⊆ L_1 ⊆ … ⊆ L_kmax` with
//! `[L_m : GF(q)] = p^m`, explicit embeddings and the Frobenius `x ↦ x^q`.
//!
//! Each level is represented by the lexicographically least monic irreducible
//! polynomial of degree `p^m` over `GF(q)`. The image of level `m`'s generator
//! in level `m + 1` is the lexicographically least root of that polynomial
//! there; all roots lie in the unique subfield of order `q^{p^m}`, so only that
//! subfield is searched.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{checked_pow, gcd_u64, is_prime, prime_power};
use crate::error::{Error, Result};
use crate::field::{GaloisField, PolyRing};

/// Default cap on the order of the largest materialized field.
pub const DEFAULT_ORDER_BUDGET: u64 = 1 << 20;
/// Hard ceiling regardless of overrides; log tables are kept in memory.
pub const MAX_ORDER_BUDGET: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerConfig {
    pub p: u32,
    pub q: u32,
    pub k_max: usize,
    pub order_budget: u64,
}

impl TowerConfig {
    pub fn new(p: u32, q: u32, k_max: usize) -> Self {
        TowerConfig {
            p,
            q,
            k_max,
            order_budget: DEFAULT_ORDER_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.order_budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p as u64) {
            return Err(Error::InvalidConfig(format!(
                "tower prime p = {} is not prime",
                self.p
            )));
        }
        if prime_power(self.q as u64).is_none() {
            return Err(Error::InvalidConfig(format!(
                "q = {} is not a prime power",
                self.q
            )));
        }
        if self.k_max < 1 {
            return Err(Error::InvalidConfig("k_max must be at least 1".into()));
        }
        if self.order_budget > MAX_ORDER_BUDGET {
            return Err(Error::Budget(format!(
                "order budget {} exceeds the hard ceiling {MAX_ORDER_BUDGET}",
                self.order_budget
            )));
        }
        let top = self.top_order();
        match top {
            Some(order) if order <= self.order_budget => Ok(()),
            _ => Err(Error::Budget(format!(
                "level {} has order {}^{}^{} which exceeds the budget {}",
                self.k_max, self.q, self.p, self.k_max, self.order_budget
            ))),
        }
    }

    fn top_order(&self) -> Option<u64> {
        let degree = checked_pow(self.p as u64, self.k_max as u64)?;
        checked_pow(self.q as u64, degree)
    }
}

/// One field `L_m` of the tower.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    m: usize,
    degree: usize,
    defining_polynomial: Vec<u32>,
    embedding_up: Option<u32>,
    field: GaloisField,
    embed_table: Vec<u32>,
    // q^t mod (Q - 1) for t in 0..degree
    frob_factors: Vec<u64>,
}

impl TowerLevel {
    pub fn level(&self) -> usize {
        self.m
    }

    /// `[L_m : GF(q)] = p^m`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.field.order() as u64
    }

    /// Monic, lowest degree first, coefficients as `GF(q)` indices.
    pub fn defining_polynomial(&self) -> &[u32] {
        &self.defining_polynomial
    }

    /// Image of this level's generator in level `m + 1`.
    pub fn embedding_up(&self) -> Option<FieldElement> {
        self.embedding_up.map(|index| FieldElement {
            level: self.m as u8 + 1,
            index,
        })
    }
}

/// An element of some level `L_m`, stored by its packed coordinate index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    level: u8,
    index: u32,
}

impl FieldElement {
    pub fn level(&self) -> usize {
        self.level as usize
    }

    /// Packed coordinates: `Σ c_i q^i`. Ordering by index is lexicographic
    /// ordering of coordinate vectors read from the top coordinate down.
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }
}

#[derive(Clone, Debug)]
pub struct Tower {
    config: TowerConfig,
    base: GaloisField,
    levels: Vec<TowerLevel>,
}

impl Tower {
    pub fn build(config: TowerConfig) -> Result<Self> {
        config.validate()?;
        let base = base_field(config.q)?;
        let ring = PolyRing { base: &base };
        let polys = (0..=config.k_max)
            .map(|m| ring.least_irreducible((config.p as usize).pow(m as u32)))
            .collect::<Vec<_>>();
        Self::assemble(config, base, polys, None)
    }

    /// Rebuilds a tower from exported defining polynomials and embedding
    /// images (coordinates in the next level). Every polynomial must be
    /// monic irreducible of degree `p^m` and every image a root.
    pub fn from_parts(
        config: TowerConfig,
        polynomials: Vec<Vec<u32>>,
        embeddings: Vec<Vec<u32>>,
    ) -> Result<Self> {
        config.validate()?;
        if polynomials.len() != config.k_max + 1 || embeddings.len() != config.k_max {
            return Err(Error::InvalidConfig(
                "level count does not match k_max".into(),
            ));
        }
        let base = base_field(config.q)?;
        for (m, poly) in polynomials.iter().enumerate() {
            let degree = (config.p as usize).pow(m as u32);
            if poly.len() != degree + 1 || poly.iter().any(|&c| c >= config.q) {
                return Err(Error::InvalidConfig(format!(
                    "level {m} polynomial has wrong shape"
                )));
            }
        }
        let tower = Self::assemble(config, base, polynomials, Some(embeddings))?;
        Ok(tower)
    }

    fn assemble(
        config: TowerConfig,
        base: GaloisField,
        polys: Vec<Vec<u32>>,
        given_embeddings: Option<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let q = config.q as u64;
        let mut fields = Vec::with_capacity(polys.len());
        for poly in &polys {
            fields.push(GaloisField::extension(&base, poly)?);
        }
        let mut levels: Vec<TowerLevel> = Vec::with_capacity(polys.len());
        for (m, (poly, field)) in polys.iter().zip(fields.iter()).enumerate() {
            let degree = poly.len() - 1;
            let units = field.order() as u64 - 1;
            let mut frob_factors = Vec::with_capacity(degree);
            let mut f = 1u64 % units.max(1);
            for _ in 0..degree {
                frob_factors.push(f);
                f = ((f as u128 * q as u128) % units.max(1) as u128) as u64;
            }
            let (embedding_up, embed_table) = match fields.get(m + 1) {
                None => (None, Vec::new()),
                Some(upper) => {
                    let root = match &given_embeddings {
                        None => least_root(poly, upper, field.order() as u64),
                        Some(given) => {
                            let idx = coords_to_index(&given[m], q);
                            let ok = given[m].len() == polys[m + 1].len() - 1
                                && given[m].iter().all(|&c| (c as u64) < q)
                                && idx < upper.order() as u64
                                && eval(poly, upper, idx as u32) == 0;
                            if !ok {
                                return Err(Error::InvalidConfig(format!(
                                    "embedding of level {m} is not a root in level {}",
                                    m + 1
                                )));
                            }
                            idx as u32
                        }
                    };
                    (
                        Some(root),
                        embed_table(degree, field.order(), q, root, upper),
                    )
                }
            };
            levels.push(TowerLevel {
                m,
                degree,
                defining_polynomial: poly.clone(),
                embedding_up,
                field: field.clone(),
                embed_table,
                frob_factors,
            });
        }
        Ok(Tower {
            config,
            base,
            levels,
        })
    }

    pub fn config(&self) -> &TowerConfig {
        &self.config
    }

    pub fn p(&self) -> u32 {
        self.config.p
    }

    pub fn q(&self) -> u32 {
        self.config.q
    }

    pub fn k_max(&self) -> usize {
        self.config.k_max
    }

    pub fn levels(&self) -> &[TowerLevel] {
        &self.levels
    }

    pub fn level(&self, m: usize) -> Result<&TowerLevel> {
        self.levels.get(m).ok_or_else(|| {
            Error::Usage(format!(
                "level {m} is not materialized (k_max = {})",
                self.k_max()
            ))
        })
    }

    /// Arithmetic of `GF(q)` on raw indices.
    pub fn base_field(&self) -> &GaloisField {
        &self.base
    }

    #[inline]
    fn field(&self, m: usize) -> &GaloisField {
        &self.levels[m].field
    }

    pub fn zero(&self, m: usize) -> FieldElement {
        FieldElement {
            level: m as u8,
            index: 0,
        }
    }

    pub fn one(&self, m: usize) -> FieldElement {
        FieldElement {
            level: m as u8,
            index: 1,
        }
    }

    /// The class of `t` in `GF(q)[t]/(f_m)`; it generates `L_m` over `GF(q)`
    /// for `m ≥ 1`. At level 0 the defining polynomial is `t` itself.
    pub fn generator(&self, m: usize) -> FieldElement {
        let index = if self.levels[m].degree > 1 {
            self.q()
        } else {
            0
        };
        FieldElement {
            level: m as u8,
            index,
        }
    }

    /// The image of a `GF(q)` index at level `m`.
    pub fn scalar(&self, m: usize, c: u32) -> FieldElement {
        debug_assert!(c < self.q());
        FieldElement {
            level: m as u8,
            index: c,
        }
    }

    /// The image of an integer under `Z → GF(q)`.
    pub fn integer(&self, m: usize, n: i64) -> FieldElement {
        let r = self.base.characteristic() as i64;
        self.scalar(m, n.rem_euclid(r) as u32)
    }

    pub fn from_index(&self, m: usize, index: u32) -> Result<FieldElement> {
        if index as u64 >= self.level(m)?.order() {
            return Err(Error::Usage(format!(
                "index {index} out of range at level {m}"
            )));
        }
        Ok(FieldElement {
            level: m as u8,
            index,
        })
    }

    pub fn from_coords(&self, m: usize, coords: &[u32]) -> Result<FieldElement> {
        let level = self.level(m)?;
        if coords.len() != level.degree || coords.iter().any(|&c| c >= self.q()) {
            return Err(Error::Usage(format!(
                "coordinate vector does not fit level {m}"
            )));
        }
        Ok(FieldElement {
            level: m as u8,
            index: coords_to_index(coords, self.q() as u64) as u32,
        })
    }

    /// Coordinates over `GF(q)` in the power basis `1, t, …, t^{p^m - 1}`.
    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        let q = self.q();
        let mut rest = x.index;
        (0..self.levels[x.level()].degree)
            .map(|_| {
                let c = rest % q;
                rest /= q;
                c
            })
            .collect()
    }

    /// Iterates all elements of `L_m` in index order.
    pub fn elements(&self, m: usize) -> impl Iterator<Item = FieldElement> + '_ {
        let order = self.levels[m].order() as u32;
        (0..order).map(move |index| FieldElement {
            level: m as u8,
            index,
        })
    }

    /// True when `x` lies in the embedded copy of `GF(q)`.
    pub fn is_base(&self, x: FieldElement) -> bool {
        x.index < self.q()
    }

    #[inline]
    fn same_level(a: FieldElement, b: FieldElement) {
        debug_assert_eq!(a.level, b.level, "field elements from different levels");
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        Self::same_level(a, b);
        FieldElement {
            level: a.level,
            index: self.field(a.level()).add(a.index, b.index),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        Self::same_level(a, b);
        FieldElement {
            level: a.level,
            index: self.field(a.level()).sub(a.index, b.index),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement {
            level: a.level,
            index: self.field(a.level()).neg(a.index),
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        Self::same_level(a, b);
        FieldElement {
            level: a.level,
            index: self.field(a.level()).mul(a.index, b.index),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(FieldElement {
            level: a.level,
            index: self.field(a.level()).inv(a.index)?,
        })
    }

    pub fn pow(&self, a: FieldElement, e: i128) -> Result<FieldElement> {
        Ok(FieldElement {
            level: a.level,
            index: self.field(a.level()).pow(a.index, e)?,
        })
    }

    /// `x^{q^times}`; negative `times` are reduced modulo the order `p^m` of
    /// the Frobenius on `L_m`.
    #[inline]
    pub fn frobenius(&self, x: FieldElement, times: i64) -> FieldElement {
        let level = &self.levels[x.level()];
        let t = times.rem_euclid(level.degree as i64) as usize;
        if t == 0 {
            return x;
        }
        FieldElement {
            level: x.level,
            index: level.field.scale_log(x.index, level.frob_factors[t]),
        }
    }

    /// Image of `x` in level `target` under the composed embeddings.
    pub fn embed(&self, x: FieldElement, target: usize) -> Result<FieldElement> {
        if target < x.level() {
            return Err(Error::Usage(format!(
                "cannot embed level {} into lower level {target}",
                x.level()
            )));
        }
        self.level(target)?;
        let mut index = x.index;
        for m in x.level()..target {
            index = self.levels[m].embed_table[index as usize];
        }
        Ok(FieldElement {
            level: target as u8,
            index,
        })
    }

    /// Degree over `GF(q)` of the subfield of `L_level` fixed by
    /// `Frobenius^times`, namely `gcd(times, p^level)`.
    pub fn fixed_subfield_dim(&self, times: i64, level: usize) -> Result<u64> {
        let degree = self.level(level)?.degree as u64;
        let t = times.rem_euclid(degree as i64) as u64;
        Ok(gcd_u64(t, degree))
    }
}

fn base_field(q: u32) -> Result<GaloisField> {
    let (r, e) = prime_power(q as u64)
        .ok_or_else(|| Error::InvalidConfig(format!("q = {q} is not a prime power")))?;
    let prime = GaloisField::prime(r as u32)?;
    if e == 1 {
        return Ok(prime);
    }
    let poly = PolyRing { base: &prime }.least_irreducible(e as usize);
    GaloisField::extension(&prime, &poly)
}

fn coords_to_index(coords: &[u32], q: u64) -> u64 {
    coords.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
}

/// Evaluates a `GF(q)`-polynomial at an element of a larger level. Base
/// scalars keep their index under every embedding, so coefficients can be
/// used directly.
fn eval(poly: &[u32], field: &GaloisField, x: u32) -> u32 {
    poly.iter()
        .rev()
        .fold(0u32, |acc, &c| field.add(field.mul(acc, x), c))
}

fn least_root(poly: &[u32], upper: &GaloisField, sub_order: u64) -> u32 {
    let stride = (upper.order() as u64 - 1) / (sub_order - 1).max(1);
    let candidates =
        core::iter::once(0u32).chain((0..sub_order - 1).map(|j| upper.generator_power(j * stride)));
    candidates
        .filter(|&y| eval(poly, upper, y) == 0)
        .min()
        .expect("an irreducible polynomial of degree p^m splits in the next level")
}

fn embed_table(degree: usize, order: u32, q: u64, root: u32, upper: &GaloisField) -> Vec<u32> {
    let mut powers = vec![1u32; degree];
    for i in 1..degree {
        powers[i] = upper.mul(powers[i - 1], root);
    }
    (0..order)
        .map(|idx| {
            let mut rest = idx as u64;
            let mut acc = 0u32;
            for &pw in &powers {
                let c = (rest % q) as u32;
                rest /= q;
                if c != 0 {
                    acc = upper.add(acc, upper.mul(c, pw));
                }
            }
            acc
        })
        .collect()
}
