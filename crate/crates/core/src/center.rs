//! The center `Z(S_k) = F[H_k]` and the free basis `{c_i g_j}` of `S_k` over it.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::GroupWord;
use crate::error::{Error, Result};
use crate::lattice::KernelLattice;
use crate::laurent::{LaurentPoly, LaurentRing};
use crate::ring::{RingContext, RingElement};
use crate::tower::FieldElement;

/// Commutator test: `r` commutes with `x_1, …, x_n` and with `θ`.
pub fn is_central(ctx: &RingContext, r: &RingElement) -> bool {
    ctx.generators().iter().all(|g| ctx.commutes(r, g))
}

/// Structural test: support inside `H_k` and every coefficient in `F`.
pub fn is_structurally_central(
    ctx: &RingContext,
    lattice: &KernelLattice,
    r: &RingElement,
) -> bool {
    r.terms()
        .all(|(g, c)| lattice.contains(g) && ctx.tower().is_base(*c))
}

/// `S_k` as a free `F[H_k]`-module on `θ^i g_j`, where `θ^i` runs over the
/// power basis of `L_k / F` and `g_j` over the coset box of `H_k`.
///
/// Basis element `b` is `θ^i g_j` with `b = i · cosets + j`, so `b = 0` is `1`.
/// Center elements are exchanged as Laurent polynomials in `t_1, …, t_n`,
/// where `t_j` is the `j`-th Hermite basis row of `H_k`.
#[derive(Clone, Debug)]
pub struct FreeBasis {
    ctx: RingContext,
    lattice: KernelLattice,
    field_basis: Vec<FieldElement>,
    coset_reps: Vec<GroupWord>,
}

impl FreeBasis {
    pub fn new(ctx: &RingContext) -> Result<Self> {
        let lattice = KernelLattice::compute(ctx)?;
        let tower = ctx.tower();
        let k = ctx.level();
        let degree = tower.level(k)?.degree();
        let q = tower.q() as u64;
        let field_basis = (0..degree)
            .map(|i| tower.from_index(k, q.pow(i as u32) as u32))
            .collect::<Result<Vec<_>>>()?;
        let coset_reps = lattice.coset_representatives();
        Ok(FreeBasis {
            ctx: ctx.clone(),
            lattice,
            field_basis,
            coset_reps,
        })
    }

    pub fn context(&self) -> &RingContext {
        &self.ctx
    }

    pub fn lattice(&self) -> &KernelLattice {
        &self.lattice
    }

    pub fn field_basis(&self) -> &[FieldElement] {
        &self.field_basis
    }

    pub fn coset_reps(&self) -> &[GroupWord] {
        &self.coset_reps
    }

    /// `p^{2k}`.
    pub fn len(&self) -> usize {
        self.field_basis.len() * self.coset_reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn laurent_ring(&self) -> LaurentRing<'_> {
        LaurentRing::new(self.ctx.tower().base_field(), self.ctx.rank())
    }

    /// `θ^i g_j` for `b = i · cosets + j`.
    pub fn element(&self, b: usize) -> RingElement {
        let count = self.coset_reps.len();
        self.ctx.monomial(
            self.field_basis[b / count],
            self.coset_reps[b % count].clone(),
        )
    }

    fn rep_index(&self, rep: &GroupWord) -> usize {
        self.coset_reps
            .binary_search(rep)
            .expect("reduced word lies in the coset box")
    }

    /// Coordinates `z_b ∈ F[H_k]` with `r = Σ_b z_b · (θ^i g_j)`.
    pub fn decompose(&self, r: &RingElement) -> Result<Vec<LaurentPoly>> {
        self.ctx.check(r)?;
        let tower = self.ctx.tower();
        let ring = self.laurent_ring();
        let count = self.coset_reps.len();
        let mut out = vec![LaurentPoly::zero(); self.len()];
        for (g, c) in r.terms() {
            let (rep, lambda) = self.lattice.reduce(g);
            let j = self.rep_index(&rep);
            for (i, &coord) in tower.coords(*c).iter().enumerate() {
                if coord != 0 {
                    let b = i * count + j;
                    out[b] = ring.add(&out[b], &LaurentPoly::monomial(lambda.clone(), coord));
                }
            }
        }
        Ok(out)
    }

    /// Same as [`FreeBasis::decompose`] with the coordinates as ring elements.
    pub fn decompose_in_ring(&self, r: &RingElement) -> Result<Vec<RingElement>> {
        Ok(self
            .decompose(r)?
            .iter()
            .map(|z| self.from_laurent(z))
            .collect())
    }

    pub fn recompose(&self, coords: &[LaurentPoly]) -> Result<RingElement> {
        if coords.len() != self.len() {
            return Err(Error::Usage(format!(
                "expected {} coordinates, got {}",
                self.len(),
                coords.len()
            )));
        }
        let mut acc = self.ctx.zero();
        for (b, z) in coords.iter().enumerate() {
            if !z.is_zero() {
                acc = self
                    .ctx
                    .add(&acc, &self.ctx.mul(&self.from_laurent(z), &self.element(b)));
            }
        }
        Ok(acc)
    }

    /// The central element with the given Laurent coordinates.
    pub fn from_laurent(&self, z: &LaurentPoly) -> RingElement {
        let tower = self.ctx.tower();
        let k = self.ctx.level();
        let pairs = z.terms().map(|(lambda, &c)| {
            (
                self.lattice.combine(lambda),
                tower.from_index(k, c).expect("base field index"),
            )
        });
        self.ctx
            .from_pairs(pairs)
            .expect("words and coefficients of this context")
    }

    /// Laurent coordinates of a central element; an error if `z` is not in `F[H_k]`.
    pub fn to_laurent(&self, z: &RingElement) -> Result<LaurentPoly> {
        self.ctx.check(z)?;
        if !is_structurally_central(&self.ctx, &self.lattice, z) {
            return Err(Error::Usage("element is not in F[H_k]".into()));
        }
        let ring = self.laurent_ring();
        Ok(z.terms().fold(LaurentPoly::zero(), |acc, (g, c)| {
            let lambda = self.lattice.coordinates(g).expect("checked membership");
            ring.add(&acc, &LaurentPoly::monomial(lambda, c.index()))
        }))
    }
}
