//! The division ring `q(S_k) = S_k ⊗ q(Z(S_k))`, with elements written as
//! fractions over central denominators.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::center::FreeBasis;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, LaurentRing};
use crate::ring::{RingContext, RingElement};

/// `num · den^{-1}` with `den ∈ F[H_k]` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralFraction {
    num: RingElement,
    den: RingElement,
}

impl CentralFraction {
    pub fn num(&self) -> &RingElement {
        &self.num
    }

    pub fn den(&self) -> &RingElement {
        &self.den
    }

    pub fn level(&self) -> usize {
        self.num.level()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// An element of the center of `q(S_k)` as a quotient of Laurent polynomials
/// in the center variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCentral {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

/// Largest regular representation `invert` accepts without an override.
pub const DEFAULT_MAX_MATRIX: usize = 16;
/// Largest rank `invert` accepts without an override.
pub const DEFAULT_MAX_RANK: usize = 2;

/// Fraction arithmetic at one level.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    basis: FreeBasis,
    allow_large: bool,
}

impl QuotientRing {
    pub fn new(ctx: &RingContext) -> Result<Self> {
        Ok(QuotientRing {
            basis: FreeBasis::new(ctx)?,
            allow_large: false,
        })
    }

    /// Lifts the size guard on [`QuotientRing::invert`].
    pub fn allow_large(mut self, allow: bool) -> Self {
        self.allow_large = allow;
        self
    }

    pub fn context(&self) -> &RingContext {
        self.basis.context()
    }

    pub fn basis(&self) -> &FreeBasis {
        &self.basis
    }

    pub fn level(&self) -> usize {
        self.context().level()
    }

    fn laurent(&self) -> LaurentRing<'_> {
        self.basis.laurent_ring()
    }

    pub fn fraction(&self, num: RingElement, den: RingElement) -> Result<CentralFraction> {
        let ctx = self.context();
        ctx.check(&num)?;
        ctx.check(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.basis.to_laurent(&den)?;
        Ok(CentralFraction { num, den })
    }

    pub fn from_ring(&self, r: RingElement) -> Result<CentralFraction> {
        self.context().check(&r)?;
        Ok(CentralFraction {
            num: r,
            den: self.context().one(),
        })
    }

    pub fn one(&self) -> CentralFraction {
        CentralFraction {
            num: self.context().one(),
            den: self.context().one(),
        }
    }

    pub fn zero(&self) -> CentralFraction {
        CentralFraction {
            num: self.context().zero(),
            den: self.context().one(),
        }
    }

    fn check(&self, f: &CentralFraction) -> Result<()> {
        self.context().check(&f.num)?;
        self.context().check(&f.den)
    }

    pub fn add(&self, a: &CentralFraction, b: &CentralFraction) -> Result<CentralFraction> {
        self.check(a)?;
        self.check(b)?;
        let ctx = self.context();
        let num = ctx.add(&ctx.mul(&a.num, &b.den), &ctx.mul(&b.num, &a.den));
        Ok(CentralFraction {
            num,
            den: ctx.mul(&a.den, &b.den),
        })
    }

    pub fn neg(&self, a: &CentralFraction) -> CentralFraction {
        CentralFraction {
            num: self.context().neg(&a.num),
            den: a.den.clone(),
        }
    }

    pub fn sub(&self, a: &CentralFraction, b: &CentralFraction) -> Result<CentralFraction> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &CentralFraction, b: &CentralFraction) -> Result<CentralFraction> {
        self.check(a)?;
        self.check(b)?;
        let ctx = self.context();
        Ok(CentralFraction {
            num: ctx.mul(&a.num, &b.num),
            den: ctx.mul(&a.den, &b.den),
        })
    }

    /// Cross-multiplication: `a/b = c/d` iff `a·d = c·b`.
    pub fn equals(&self, a: &CentralFraction, b: &CentralFraction) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        let ctx = self.context();
        Ok(ctx.mul(&a.num, &b.den) == ctx.mul(&b.num, &a.den))
    }

    pub fn is_one(&self, f: &CentralFraction) -> bool {
        f.num == f.den
    }

    /// Divides numerator and denominator by the monomial content of the
    /// denominator and makes its lex-leading coefficient 1.
    pub fn normalize(&self, f: &CentralFraction) -> Result<CentralFraction> {
        self.check(f)?;
        let den = self.basis.to_laurent(&f.den)?;
        let shift = den.min_exponents().ok_or(Error::DivisionByZero)?;
        let field = self.context().tower().base_field();
        let lead = den.shift(&neg(&shift)).leading().map(|(_, c)| c).unwrap();
        let unit = self
            .basis
            .from_laurent(&LaurentPoly::monomial(neg(&shift), field.inv(lead)?));
        let ctx = self.context();
        Ok(CentralFraction {
            num: ctx.mul(&f.num, &unit),
            den: ctx.mul(&f.den, &unit),
        })
    }

    /// Matrix of left multiplication by `r` on the free basis; column `b` holds
    /// the coordinates of `r · basis(b)`. Indexed `[row][column]`.
    pub fn regular_representation(&self, r: &RingElement) -> Result<Vec<Vec<LaurentPoly>>> {
        let size = self.basis.len();
        let mut m = vec![vec![LaurentPoly::zero(); size]; size];
        for col in 0..size {
            let image = self.context().try_mul(r, &self.basis.element(col))?;
            for (row, z) in self.basis.decompose(&image)?.into_iter().enumerate() {
                m[row][col] = z;
            }
        }
        Ok(m)
    }

    /// `det` of the regular representation of `r`.
    pub fn determinant(&self, r: &RingElement) -> Result<LaurentPoly> {
        let m = self.regular_representation(r)?;
        let (det, _) = fraction_free_solve(&self.laurent(), m, None)?;
        Ok(det)
    }

    /// `(s, w)` with `r · s = w`, `w` central and nonzero.
    pub fn central_multiplier(&self, r: &RingElement) -> Result<(RingElement, RingElement)> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = self.context();
        if r.is_homogeneous() {
            return Ok((ctx.invert_unit(r)?, ctx.one()));
        }
        let m = self.regular_representation(r)?;
        let mut rhs = vec![LaurentPoly::zero(); self.basis.len()];
        rhs[0] = self.laurent().one();
        let (det, sol) = fraction_free_solve(&self.laurent(), m, Some(rhs))?;
        let (pivot, coords) = sol.expect("right-hand side was supplied");
        let s = self.basis.recompose(&coords)?;
        let w = self.basis.from_laurent(&pivot);
        if ctx.mul(r, &s) != w {
            return Err(Error::InternalConsistency(format!(
                "central multiplier check failed (det has {} terms)",
                det.len()
            )));
        }
        Ok((s, w))
    }

    fn guard(&self) -> Result<()> {
        let size = self.basis.len();
        let n = self.context().rank();
        if !self.allow_large && (size > DEFAULT_MAX_MATRIX || n > DEFAULT_MAX_RANK) {
            return Err(Error::Budget(format!(
                "inversion needs a {size}×{size} system at rank {n}; \
                 the default limit is {DEFAULT_MAX_MATRIX} and rank {DEFAULT_MAX_RANK}"
            )));
        }
        Ok(())
    }

    /// Inverse of a nonzero fraction, verified by exact multiplication.
    pub fn invert(&self, f: &CentralFraction) -> Result<CentralFraction> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !f.num.is_homogeneous() {
            self.guard()?;
        }
        let (s, w) = self.central_multiplier(&f.num)?;
        let ctx = self.context();
        let inv = self.normalize(&CentralFraction {
            num: ctx.mul(&f.den, &s),
            den: w,
        })?;
        if !self.is_one(&self.mul(f, &inv)?) {
            return Err(Error::InternalConsistency("inverse check failed".into()));
        }
        Ok(inv)
    }

    /// Rewrites the right fraction `r · s^{-1}` over a central denominator.
    pub fn ore_to_central(&self, r: &RingElement, s: &RingElement) -> Result<CentralFraction> {
        self.context().check(r)?;
        let (t, w) = self.central_multiplier(s)?;
        Ok(CentralFraction {
            num: self.context().mul(r, &t),
            den: w,
        })
    }

    /// The same element of `D` written at a higher level. A denominator that
    /// is no longer central there is cleared with its central multiplier.
    pub fn lift(&self, f: &CentralFraction, target: &QuotientRing) -> Result<CentralFraction> {
        self.check(f)?;
        let num = self.context().embed_into(&f.num, target.context())?;
        let den = self.context().embed_into(&f.den, target.context())?;
        if target.basis.to_laurent(&den).is_ok() {
            return Ok(CentralFraction { num, den });
        }
        let (s, w) = target.central_multiplier(&den)?;
        Ok(CentralFraction {
            num: target.context().mul(&num, &s),
            den: w,
        })
    }

    /// Laurent form of a fraction whose numerator is central.
    pub fn as_rational_central(&self, f: &CentralFraction) -> Option<RationalCentral> {
        Some(RationalCentral {
            num: self.basis.to_laurent(&f.num).ok()?,
            den: self.basis.to_laurent(&f.den).ok()?,
        })
    }

    /// Lifts `f` to `probe` and checks that it commutes with `x_1, …, x_n`
    /// and the probe level's field generator.
    pub fn center_of_quotient_test(
        &self,
        f: &CentralFraction,
        probe: &QuotientRing,
    ) -> Result<bool> {
        if probe.level() < self.level() {
            return Err(Error::Usage(format!(
                "probe level {} is below the fraction's level {}",
                probe.level(),
                self.level()
            )));
        }
        let lifted = self.lift(f, probe)?;
        let ctx = probe.context();
        Ok(ctx
            .generators()
            .iter()
            .all(|g| ctx.commutes(&lifted.num, g)))
    }
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// Fraction-free Gauss–Jordan elimination over the Laurent ring.
///
/// Returns the determinant and, when `rhs` is given, `(D, y)` with
/// `M · y = D · rhs`, where `D` is the final common pivot (`±det`).
#[allow(clippy::type_complexity)]
pub fn fraction_free_solve(
    ring: &LaurentRing<'_>,
    mut m: Vec<Vec<LaurentPoly>>,
    rhs: Option<Vec<LaurentPoly>>,
) -> Result<(LaurentPoly, Option<(LaurentPoly, Vec<LaurentPoly>)>)> {
    let size = m.len();
    let has_rhs = rhs.is_some();
    if let Some(rhs) = rhs {
        for (row, b) in m.iter_mut().zip(rhs) {
            row.push(b);
        }
    }
    let width = m.first().map_or(0, |r| r.len());
    let mut prev = ring.one();
    let mut negate = false;
    for k in 0..size {
        let Some(p) = (k..size).find(|&i| !m[i][k].is_zero()) else {
            return Err(Error::InternalConsistency(
                "singular regular representation for a nonzero element".into(),
            ));
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in 0..width {
                let t = ring.sub(
                    &ring.mul(&pivot_row[k], &row[j]),
                    &ring.mul(&factor, &pivot_row[j]),
                );
                row[j] = ring.exact_div(&t, &prev)?;
            }
        }
        prev = pivot_row[k].clone();
    }
    let det = if negate {
        ring.neg(&prev)
    } else {
        prev.clone()
    };
    let solution = has_rhs.then(|| {
        (
            prev,
            m.into_iter().map(|mut row| row.pop().unwrap()).collect(),
        )
    });
    Ok((det, solution))
}
