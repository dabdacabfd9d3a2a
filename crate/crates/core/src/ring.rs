//! Arithmetic in `S_k = L_k # G`: finitely supported sums `Σ c_g g` with
//! `(c g)(d h) = (c · ψ(g)(d)) (g + h)`.
//!
//! Elements are stored in group-ring form, keyed by the exponent vector in
//! lexicographic order, with zero coefficients never stored. The iterated
//! skew-Laurent description `L_k[x_1^{±1}; σ_1]…[x_n^{±1}; σ_n]` is the same
//! ring with `x_i = 1·e_i`.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::action::{ActionConfig, Certificate, GroupWord};
use crate::error::{Error, Result};
use crate::tower::{FieldElement, Tower};

/// A tower and an action whose exponents were certified independent.
/// Ring contexts are handed out from here.
#[derive(Clone, Debug)]
pub struct Construction {
    tower: Arc<Tower>,
    action: Arc<ActionConfig>,
    certificate: Certificate,
}

/// Coefficient bound used when none is configured.
pub const DEFAULT_CERT_BOUND: u64 = 8;

impl Construction {
    /// Certifies `action` at `bound`, searching every level up to the
    /// exponent horizon; refuses dependent exponents.
    pub fn new(tower: Tower, action: ActionConfig, bound: u64) -> Result<Self> {
        if tower.p() != action.p() {
            return Err(Error::InvalidConfig(format!(
                "tower prime {} differs from action prime {}",
                tower.p(),
                action.p()
            )));
        }
        let certificate = action.certify(bound, crate::action::level_horizon(action.p()))?;
        Ok(Construction {
            tower: Arc::new(tower),
            action: Arc::new(action),
            certificate,
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn action(&self) -> &ActionConfig {
        &self.action
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn rank(&self) -> usize {
        self.action.rank()
    }

    pub fn k_max(&self) -> usize {
        self.tower.k_max()
    }

    pub fn context(&self, k: usize) -> Result<RingContext> {
        self.tower.level(k)?;
        let unit_exponents = self.action.truncations(k as u32);
        Ok(RingContext {
            tower: self.tower.clone(),
            action: self.action.clone(),
            level: k,
            modulus: self.action.modulus(k as u32),
            unit_exponents,
        })
    }
}

/// The ring `S_k` for one level `k`.
#[derive(Clone, Debug)]
pub struct RingContext {
    tower: Arc<Tower>,
    action: Arc<ActionConfig>,
    level: usize,
    modulus: u64,
    unit_exponents: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    level: usize,
    rank: usize,
    terms: BTreeMap<GroupWord, FieldElement>,
}

impl RingElement {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of support points.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&GroupWord, &FieldElement)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupWord> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, g: &GroupWord) -> Option<FieldElement> {
        self.terms.get(g).copied()
    }

    /// Homogeneous: at most one support point.
    pub fn is_homogeneous(&self) -> bool {
        self.terms.len() <= 1
    }
}

/// A total order on `Z^n` compatible with addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Lex,
    /// Compare `⟨w, g⟩` first, then lexicographically.
    Weighted(Vec<i64>),
}

impl TermOrder {
    pub fn compare(&self, a: &GroupWord, b: &GroupWord) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::Weighted(w) => {
                let dot = |g: &GroupWord| g.iter().zip(w).map(|(x, y)| x * y).sum::<i64>();
                dot(a).cmp(&dot(b)).then_with(|| a.cmp(b))
            }
        }
    }
}

impl RingContext {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn action(&self) -> &ActionConfig {
        &self.action
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn rank(&self) -> usize {
        self.unit_exponents.len()
    }

    /// `p^k`, the order of `Gal(L_k/F)`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn describe(&self) -> alloc::string::String {
        format!("S_{} (n = {})", self.level, self.rank())
    }

    pub fn check(&self, r: &RingElement) -> Result<()> {
        if r.level != self.level || r.rank != self.rank() {
            return Err(Error::ContextMismatch {
                expected: self.describe(),
                found: format!("S_{} (n = {})", r.level, r.rank),
            });
        }
        Ok(())
    }

    fn from_terms(&self, terms: BTreeMap<GroupWord, FieldElement>) -> RingElement {
        RingElement {
            level: self.level,
            rank: self.rank(),
            terms,
        }
    }

    /// Builds an element from `(word, coefficient)` pairs, summing repeats.
    pub fn from_pairs(
        &self,
        pairs: impl IntoIterator<Item = (GroupWord, FieldElement)>,
    ) -> Result<RingElement> {
        let mut terms = BTreeMap::new();
        for (g, c) in pairs {
            if g.rank() != self.rank() || c.level() != self.level {
                return Err(Error::ContextMismatch {
                    expected: self.describe(),
                    found: format!("term of rank {} at level {}", g.rank(), c.level()),
                });
            }
            accumulate(&self.tower, &mut terms, g, c);
        }
        Ok(self.from_terms(terms))
    }

    pub fn zero(&self) -> RingElement {
        self.from_terms(BTreeMap::new())
    }

    pub fn one(&self) -> RingElement {
        self.monomial(self.tower.one(self.level), GroupWord::zero(self.rank()))
    }

    /// `c · g`; the zero element when `c = 0`.
    pub fn monomial(&self, c: FieldElement, g: GroupWord) -> RingElement {
        debug_assert_eq!(c.level(), self.level);
        debug_assert_eq!(g.rank(), self.rank());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        self.from_terms(terms)
    }

    /// The coefficient `c` in degree zero.
    pub fn constant(&self, c: FieldElement) -> RingElement {
        self.monomial(c, GroupWord::zero(self.rank()))
    }

    /// `x_i^e` (0-based `i`).
    pub fn x(&self, i: usize, e: i64) -> RingElement {
        self.monomial(
            self.tower.one(self.level),
            GroupWord::unit(self.rank(), i).scaled(e),
        )
    }

    /// The level generator `θ` in degree zero.
    pub fn theta(&self) -> RingElement {
        self.constant(self.tower.generator(self.level))
    }

    /// `Σ g_i a_i mod p^k`.
    pub fn action_exponent(&self, g: &[i64]) -> u64 {
        let m = self.modulus as i128;
        let s = g
            .iter()
            .zip(&self.unit_exponents)
            .fold(0i128, |acc, (&gi, &a)| (acc + gi as i128 * a as i128) % m);
        s.rem_euclid(m) as u64
    }

    /// `ψ(g)(d)`.
    pub fn act(&self, g: &[i64], d: FieldElement) -> FieldElement {
        self.tower.frobenius(d, self.action_exponent(g) as i64)
    }

    pub fn add(&self, r: &RingElement, s: &RingElement) -> RingElement {
        self.try_add(r, s).expect("operands from this ring")
    }

    pub fn try_add(&self, r: &RingElement, s: &RingElement) -> Result<RingElement> {
        self.check(r)?;
        self.check(s)?;
        let mut terms = r.terms.clone();
        for (g, c) in &s.terms {
            accumulate(&self.tower, &mut terms, g.clone(), *c);
        }
        Ok(self.from_terms(terms))
    }

    pub fn neg(&self, r: &RingElement) -> RingElement {
        let terms = r
            .terms
            .iter()
            .map(|(g, c)| (g.clone(), self.tower.neg(*c)))
            .collect();
        self.from_terms(terms)
    }

    pub fn sub(&self, r: &RingElement, s: &RingElement) -> RingElement {
        self.add(r, &self.neg(s))
    }

    /// `c · r` with the scalar on the left (no twist).
    pub fn scale_left(&self, c: FieldElement, r: &RingElement) -> RingElement {
        let terms = r
            .terms
            .iter()
            .map(|(g, d)| (g.clone(), self.tower.mul(c, *d)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        self.from_terms(terms)
    }

    pub fn mul(&self, r: &RingElement, s: &RingElement) -> RingElement {
        self.try_mul(r, s).expect("operands from this ring")
    }

    pub fn try_mul(&self, r: &RingElement, s: &RingElement) -> Result<RingElement> {
        self.check(r)?;
        self.check(s)?;
        let tower = &*self.tower;
        let mut terms = BTreeMap::new();
        for (g, c) in &r.terms {
            let e = self.action_exponent(g) as i64;
            for (h, d) in &s.terms {
                let coeff = tower.mul(*c, tower.frobenius(*d, e));
                accumulate(tower, &mut terms, g + h, coeff);
            }
        }
        Ok(self.from_terms(terms))
    }

    /// `r^e`; negative exponents require a unit.
    pub fn pow(&self, r: &RingElement, e: i64) -> Result<RingElement> {
        let base = if e < 0 {
            self.invert_unit(r)?
        } else {
            r.clone()
        };
        let mut acc = self.one();
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn commutator(&self, r: &RingElement, s: &RingElement) -> RingElement {
        self.sub(&self.mul(r, s), &self.mul(s, r))
    }

    pub fn commutes(&self, r: &RingElement, s: &RingElement) -> bool {
        self.mul(r, s) == self.mul(s, r)
    }

    /// Projection onto the component of degree `g`.
    pub fn grade_component(&self, r: &RingElement, g: &GroupWord) -> RingElement {
        match r.terms.get(g) {
            Some(c) => self.monomial(*c, g.clone()),
            None => self.zero(),
        }
    }

    /// Inverse of a nonzero homogeneous element: `(c g)^{-1} = ψ(-g)(c^{-1}) (-g)`.
    /// Inhomogeneous elements are never units.
    pub fn invert_unit(&self, r: &RingElement) -> Result<RingElement> {
        self.check(r)?;
        if r.terms.len() != 1 {
            return Err(Error::NotAUnit);
        }
        let (g, c) = r.terms.iter().next().unwrap();
        let neg = -g;
        let inv = self.act(&neg, self.tower.inv(*c)?);
        Ok(self.monomial(inv, neg))
    }

    /// The support point that is greatest in `order`, with its coefficient.
    pub fn leading_term(
        &self,
        r: &RingElement,
        order: &TermOrder,
    ) -> Result<(GroupWord, FieldElement)> {
        r.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
            .map(|(g, c)| (g.clone(), *c))
            .ok_or_else(|| Error::Usage("leading term of zero".into()))
    }

    /// The support point that is least in `order`.
    pub fn trailing_term(
        &self,
        r: &RingElement,
        order: &TermOrder,
    ) -> Result<(GroupWord, FieldElement)> {
        r.terms
            .iter()
            .min_by(|a, b| order.compare(a.0, b.0))
            .map(|(g, c)| (g.clone(), *c))
            .ok_or_else(|| Error::Usage("trailing term of zero".into()))
    }

    /// The image of `r` under the coefficientwise embedding `S_k → S_{k'}`.
    pub fn embed_into(&self, r: &RingElement, target: &RingContext) -> Result<RingElement> {
        self.check(r)?;
        if target.rank() != self.rank() || target.level < self.level {
            return Err(Error::Usage(format!(
                "cannot embed {} into {}",
                self.describe(),
                target.describe()
            )));
        }
        let terms = r
            .terms
            .iter()
            .map(|(g, c)| Ok((g.clone(), self.tower.embed(*c, target.level)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(target.from_terms(terms))
    }

    /// The field generators used for commutation tests: `x_1, …, x_n, θ`.
    pub fn generators(&self) -> Vec<RingElement> {
        let mut gens: Vec<RingElement> = (0..self.rank()).map(|i| self.x(i, 1)).collect();
        gens.push(self.theta());
        gens
    }
}

fn accumulate(
    tower: &Tower,
    terms: &mut BTreeMap<GroupWord, FieldElement>,
    g: GroupWord,
    c: FieldElement,
) {
    if c.is_zero() {
        return;
    }
    match terms.entry(g) {
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
        Entry::Occupied(mut slot) => {
            let sum = tower.add(*slot.get(), c);
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}
