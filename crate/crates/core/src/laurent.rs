//! Sparse multivariate Laurent polynomials over `GF(q)`, used for the center
//! `F[H_k] ≅ F[t_1^{±1}, …, t_n^{±1}]` and its fraction field.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::GaloisField;

/// Exponent vector → nonzero `GF(q)` index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Vec<i64>, u32>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: u32) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<i64>, c: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &u32)> + '_ {
        self.terms.iter()
    }

    /// Lexicographically greatest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Vec<i64>, u32)> {
        self.terms.iter().next_back().map(|(e, &c)| (e, c))
    }

    /// Componentwise minimum of the exponents.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()
        }))
    }

    pub fn shift(&self, by: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c))
            .collect();
        LaurentPoly { terms }
    }

    /// The single coefficient of a constant polynomial.
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (e, &c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then_some(c)
            }
            _ => None,
        }
    }
}

/// Arithmetic on [`LaurentPoly`] over a given coefficient field.
#[derive(Clone, Copy)]
pub struct LaurentRing<'a> {
    pub field: &'a GaloisField,
    pub nvars: usize,
}

impl<'a> LaurentRing<'a> {
    pub fn new(field: &'a GaloisField, nvars: usize) -> Self {
        LaurentRing { field, nvars }
    }

    pub fn one(&self) -> LaurentPoly {
        LaurentPoly::constant(self.nvars, 1)
    }

    fn accumulate(&self, terms: &mut BTreeMap<Vec<i64>, u32>, e: Vec<i64>, c: u32) {
        if c == 0 {
            return;
        }
        match terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let s = self.field.add(*slot.get(), c);
                if s == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut terms = a.terms.clone();
        for (e, &c) in &b.terms {
            self.accumulate(&mut terms, e.clone(), c);
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        let terms = a
            .terms
            .iter()
            .map(|(e, &c)| (e.clone(), self.field.neg(c)))
            .collect();
        LaurentPoly { terms }
    }

    pub fn sub(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &LaurentPoly, c: u32) -> LaurentPoly {
        if c == 0 {
            return LaurentPoly::zero();
        }
        let terms = a
            .terms
            .iter()
            .map(|(e, &x)| (e.clone(), self.field.mul(x, c)))
            .collect();
        LaurentPoly { terms }
    }

    pub fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        for (ea, &ca) in &a.terms {
            for (eb, &cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.accumulate(&mut terms, e, self.field.mul(ca, cb));
            }
        }
        LaurentPoly { terms }
    }

    /// `a / b` when `b` divides `a` in the Laurent ring; an error otherwise.
    ///
    /// Both operands are shifted into the polynomial ring with no monomial
    /// content in the divisor, then divided with respect to lex order.
    pub fn exact_div(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
        let Some(min_b) = b.min_exponents() else {
            return Err(Error::DivisionByZero);
        };
        let Some(min_a) = a.min_exponents() else {
            return Ok(LaurentPoly::zero());
        };
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let divisor = b.shift(&neg(&min_b));
        let mut rem = a.shift(&neg(&min_a));
        let (lead_e, lead_c) = divisor.leading().map(|(e, c)| (e.clone(), c)).unwrap();
        let lead_inv = self.field.inv(lead_c)?;
        let mut quotient = BTreeMap::new();
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c)) {
            let diff: Vec<i64> = re.iter().zip(&lead_e).map(|(x, y)| x - y).collect();
            if diff.iter().any(|&d| d < 0) {
                return Err(Error::InternalConsistency(
                    "inexact Laurent division".into(),
                ));
            }
            let c = self.field.mul(rc, lead_inv);
            let t = LaurentPoly::monomial(diff.clone(), c);
            rem = self.sub(&rem, &self.mul(&t, &divisor));
            quotient.insert(diff, c);
        }
        let offset: Vec<i64> = min_a.iter().zip(&min_b).map(|(x, y)| x - y).collect();
        Ok(LaurentPoly { terms: quotient }.shift(&offset))
    }

    /// Evaluates at a point of `(F^*)^n` given as field indices.
    pub fn eval(&self, a: &LaurentPoly, point: &[u32]) -> Result<u32> {
        let mut acc = 0u32;
        for (e, &c) in &a.terms {
            let mut term = c;
            for (&x, &k) in point.iter().zip(e) {
                term = self.field.mul(term, self.field.pow(x, k as i128)?);
            }
            acc = self.field.add(acc, term);
        }
        Ok(acc)
    }
}
