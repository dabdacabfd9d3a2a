//! Support shrinking: from any nonzero `r` of `R = K # G`, a homogeneous unit
//! inside the two-sided ideal generated by `r`.
//!
//! One step replaces `r` by `r·d − ψ(g0)(d)·r`, which kills the `g0` term and
//! keeps the `g1` term. It needs a level where `g0` and `g1` act differently,
//! so the engine first climbs to a level separating every pair of support
//! points.

use alloc::format;
use alloc::vec::Vec;

use crate::action::GroupWord;
use crate::error::{Error, Result};
use crate::ring::{Construction, RingContext, RingElement};
use crate::tower::FieldElement;

/// One elimination, `output = input · d − lambda · input`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkStep {
    pub level: usize,
    pub d: FieldElement,
    pub lambda: FieldElement,
    pub g0: GroupWord,
    pub g1: GroupWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkTrace {
    pub input: RingElement,
    pub separating_level: usize,
    pub steps: Vec<ShrinkStep>,
    pub final_unit: RingElement,
}

/// Least level `k ≤ k_max` at which all points of `support` act by distinct
/// automorphisms of `L_k`.
pub fn separating_level(c: &Construction, support: &[GroupWord]) -> Result<usize> {
    if support.len() < 2 {
        return Err(Error::Usage(
            "a separating level needs at least two support points".into(),
        ));
    }
    let action = c.action();
    let k_max = c.k_max();
    let mut level = 0;
    for (i, g) in support.iter().enumerate() {
        for h in &support[i + 1..] {
            let diff = g - h;
            match (level..=k_max).find(|&k| action.action_exponent(&diff, k as u32) != 0) {
                Some(k) => level = k,
                None => {
                    return Err(Error::IncreaseKMax {
                        k_max,
                        blocking: (g.to_vec(), h.to_vec()),
                    })
                }
            }
        }
    }
    Ok(level)
}

/// First power-basis element `θ^i` on which `g0` and `g1` disagree.
pub fn separating_multiplier(
    ctx: &RingContext,
    g0: &GroupWord,
    g1: &GroupWord,
) -> Option<FieldElement> {
    let tower = ctx.tower();
    let k = ctx.level();
    let degree = tower.levels()[k].degree();
    let q = tower.q() as u64;
    (0..degree)
        .map(|i| {
            tower
                .from_index(k, q.pow(i as u32) as u32)
                .expect("power basis index")
        })
        .find(|&d| ctx.act(g0, d) != ctx.act(g1, d))
}

fn apply_step(
    ctx: &RingContext,
    r: &RingElement,
    d: FieldElement,
    lambda: FieldElement,
) -> RingElement {
    ctx.sub(&ctx.mul(r, &ctx.constant(d)), &ctx.scale_left(lambda, r))
}

/// `r·d − ψ(g0)(d)·r` for the first separating `d`; the `g0` term cancels.
pub fn shrink_once(
    ctx: &RingContext,
    r: &RingElement,
    g0: &GroupWord,
    g1: &GroupWord,
) -> Result<(RingElement, ShrinkStep)> {
    ctx.check(r)?;
    if r.is_homogeneous() {
        return Err(Error::Usage(
            "element is homogeneous and already a unit".into(),
        ));
    }
    if g0 == g1 || r.coefficient(g0).is_none() || r.coefficient(g1).is_none() {
        return Err(Error::Usage(
            "g0 and g1 must be distinct support points".into(),
        ));
    }
    if ctx.action_exponent(&(g0 - g1)) == 0 {
        return Err(Error::Usage(format!(
            "level {} does not separate {:?} and {:?}; ascend first",
            ctx.level(),
            g0.to_vec(),
            g1.to_vec()
        )));
    }
    let d = separating_multiplier(ctx, g0, g1).ok_or_else(|| {
        Error::InternalConsistency("distinct automorphisms agree on the power basis".into())
    })?;
    let lambda = ctx.act(g0, d);
    let out = apply_step(ctx, r, d, lambda);
    let step = ShrinkStep {
        level: ctx.level(),
        d,
        lambda,
        g0: g0.clone(),
        g1: g1.clone(),
    };
    Ok((out, step))
}

/// Climbs to the separating level and shrinks until one term is left.
pub fn unit_in_ideal(c: &Construction, r: &RingElement) -> Result<ShrinkTrace> {
    if r.is_zero() {
        return Err(Error::Usage(
            "the zero element generates the zero ideal".into(),
        ));
    }
    let base = c.context(r.level())?;
    base.check(r)?;
    if r.is_homogeneous() {
        return Ok(ShrinkTrace {
            input: r.clone(),
            separating_level: r.level(),
            steps: Vec::new(),
            final_unit: r.clone(),
        });
    }
    let support: Vec<GroupWord> = r.support().cloned().collect();
    let level = separating_level(c, &support)?.max(r.level());
    let ctx = c.context(level)?;
    let mut current = base.embed_into(r, &ctx)?;
    let mut steps = Vec::new();
    while !current.is_homogeneous() {
        let (g0, g1) = {
            let mut it = current.support();
            (it.next().unwrap().clone(), it.next().unwrap().clone())
        };
        let before = current.len();
        let (next, step) = shrink_once(&ctx, &current, &g0, &g1)?;
        if next.is_zero() || next.len() >= before {
            return Err(Error::InternalConsistency(
                "shrink step did not reduce the support".into(),
            ));
        }
        current = next;
        steps.push(step);
    }
    Ok(ShrinkTrace {
        input: r.clone(),
        separating_level: level,
        steps,
        final_unit: current,
    })
}

/// Replays `trace` from its input and checks every recorded invariant.
pub fn audit(c: &Construction, trace: &ShrinkTrace) -> Result<bool> {
    let base = c.context(trace.input.level())?;
    let ctx = c.context(trace.separating_level)?;
    let mut current = base.embed_into(&trace.input, &ctx)?;
    for step in &trace.steps {
        if step.level != ctx.level() || step.lambda != ctx.act(&step.g0, step.d) {
            return Ok(false);
        }
        let next = apply_step(&ctx, &current, step.d, step.lambda);
        if next.is_zero() || next.len() >= current.len() || next.coefficient(&step.g0).is_some() {
            return Ok(false);
        }
        current = next;
    }
    if current != trace.final_unit || !current.is_homogeneous() || current.is_zero() {
        return Ok(false);
    }
    let inv = ctx.invert_unit(&current)?;
    Ok(ctx.mul(&current, &inv) == ctx.one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::ActionConfig;
    use crate::tower::{Tower, TowerConfig};

    fn construction(n: usize, k_max: usize) -> Construction {
        let tower = Tower::build(TowerConfig::new(2, 2, k_max)).unwrap();
        Construction::new(tower, ActionConfig::default_for(2, n).unwrap(), 8).unwrap()
    }

    #[test]
    fn one_plus_x_shrinks_in_one_step() {
        let c = construction(1, 2);
        let ctx = c.context(1).unwrap();
        let r = ctx.add(&ctx.one(), &ctx.x(0, 1));
        let trace = unit_in_ideal(&c, &r).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].d, ctx.tower().generator(1));
        assert_eq!(trace.final_unit, ctx.x(0, 1));
        assert!(audit(&c, &trace).unwrap());
    }

    #[test]
    fn separating_levels() {
        let c = construction(2, 3);
        let w = |v: [i64; 2]| GroupWord::new(v.to_vec());
        assert_eq!(separating_level(&c, &[w([0, 0]), w([1, 0])]).unwrap(), 1);
        assert_eq!(separating_level(&c, &[w([0, 0]), w([2, 0])]).unwrap(), 2);
        // default a_2 has its lowest digit at position 4
        assert_eq!(separating_level(&c, &[w([0, 0]), w([1, -1])]).unwrap(), 1);
        let err = separating_level(&c, &[w([0, 0]), w([0, 1])]).unwrap_err();
        assert!(matches!(err, Error::IncreaseKMax { k_max: 3, .. }));
        let action = c.action();
        assert_eq!(action.action_exponent(&[0, 1], 4), 0);
        assert_ne!(action.action_exponent(&[0, 1], 5), 0);
    }

    #[test]
    fn homogeneous_input_is_refused_by_shrink() {
        let c = construction(1, 1);
        let ctx = c.context(1).unwrap();
        let x = ctx.x(0, 1);
        let g = GroupWord::new([1].to_vec());
        assert!(shrink_once(&ctx, &x, &g, &g).is_err());
        let trace = unit_in_ideal(&c, &x).unwrap();
        assert!(trace.steps.is_empty());
    }
}
