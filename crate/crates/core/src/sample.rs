//! Random elements for property checks and identity testing.
//!
//! The default distribution draws 1–3 distinct support points uniformly from
//! words with coordinates in `[-2, 2]`, each with a coefficient uniform over
//! the nonzero elements of `L_k`.

use alloc::collections::BTreeMap;
use rand::Rng;

use crate::action::GroupWord;
use crate::center::FreeBasis;
use crate::laurent::LaurentPoly;
use crate::ring::{RingContext, RingElement};
use crate::tower::{FieldElement, Tower};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementSampler {
    pub min_terms: usize,
    pub max_terms: usize,
    pub radius: i64,
}

impl Default for ElementSampler {
    fn default() -> Self {
        ElementSampler {
            min_terms: 1,
            max_terms: 3,
            radius: 2,
        }
    }
}

impl ElementSampler {
    pub fn with_terms(min_terms: usize, max_terms: usize) -> Self {
        ElementSampler {
            min_terms,
            max_terms,
            ..Self::default()
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, ctx: &RingContext, rng: &mut R) -> RingElement {
        let n = ctx.rank();
        let box_size = (2 * self.radius + 1).pow(n as u32) as usize;
        let terms = rng.gen_range(self.min_terms..=self.max_terms).min(box_size);
        let mut picked = BTreeMap::new();
        while picked.len() < terms {
            let g: GroupWord = (0..n)
                .map(|_| rng.gen_range(-self.radius..=self.radius))
                .collect::<alloc::vec::Vec<_>>()
                .into();
            picked
                .entry(g)
                .or_insert_with(|| random_nonzero(ctx.tower(), ctx.level(), rng));
        }
        ctx.from_pairs(picked)
            .expect("sampled terms fit the context")
    }
}

pub fn random_field_element<R: Rng + ?Sized>(
    tower: &Tower,
    level: usize,
    rng: &mut R,
) -> FieldElement {
    let order = tower.levels()[level].order() as u32;
    tower.from_index(level, rng.gen_range(0..order)).unwrap()
}

pub fn random_nonzero<R: Rng + ?Sized>(tower: &Tower, level: usize, rng: &mut R) -> FieldElement {
    let order = tower.levels()[level].order() as u32;
    tower.from_index(level, rng.gen_range(1..order)).unwrap()
}

/// A uniformly random element of `GF(q)` as a `GF(q)` index.
pub fn random_scalar<R: Rng + ?Sized>(tower: &Tower, rng: &mut R) -> u32 {
    rng.gen_range(0..tower.q())
}

/// A nonzero element of `F[H_k]` with 1 to `max_terms` terms whose Hermite
/// coordinates lie in `[-radius, radius]`.
pub fn random_central<R: Rng + ?Sized>(
    basis: &FreeBasis,
    max_terms: usize,
    radius: i64,
    rng: &mut R,
) -> RingElement {
    let n = basis.context().rank();
    let q = basis.context().tower().q();
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut picked = BTreeMap::new();
    while picked.len() < terms {
        let lambda: alloc::vec::Vec<i64> =
            (0..n).map(|_| rng.gen_range(-radius..=radius)).collect();
        picked.entry(lambda).or_insert_with(|| rng.gen_range(1..q));
    }
    let ring = basis.laurent_ring();
    let z = picked.into_iter().fold(LaurentPoly::zero(), |acc, (e, c)| {
        ring.add(&acc, &LaurentPoly::monomial(e, c))
    });
    basis.from_laurent(&z)
}

/// Draws from a mixture aimed at the boundary of the center: generic
/// elements, central ones, and central ones spoiled by one term or by one
/// coefficient outside `F`.
pub fn random_center_probe<R: Rng + ?Sized>(basis: &FreeBasis, rng: &mut R) -> RingElement {
    let ctx = basis.context();
    let tower = ctx.tower();
    let k = ctx.level();
    match rng.gen_range(0..4) {
        0 => ElementSampler::default().sample(ctx, rng),
        1 => random_central(basis, 3, 2, rng),
        2 => {
            let z = random_central(basis, 3, 2, rng);
            let extra = ElementSampler::with_terms(1, 1).sample(ctx, rng);
            ctx.add(&z, &extra)
        }
        _ => {
            let z = random_central(basis, 3, 2, rng);
            let g = z.support().next().cloned().expect("nonzero");
            let c = random_nonzero(tower, k, rng);
            let spoiled = ctx.sub(&z, &ctx.grade_component(&z, &g));
            ctx.add(&spoiled, &ctx.monomial(c, g))
        }
    }
}
