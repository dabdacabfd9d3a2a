//! Standard polynomials `S_m` and randomized identity checks on `S_k`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::{Construction, RingContext, RingElement};
use crate::sample::ElementSampler;

/// Largest standard polynomial degree evaluated.
pub const MAX_DEGREE: usize = 8;

/// `S_m(r_1, …, r_m) = Σ_π sign(π) r_{π(1)} ⋯ r_{π(m)}`.
///
/// Expanded along the first factor with every subset value memoized, so the
/// cost is `m · 2^{m-1}` products instead of `m!`.
pub fn standard_polynomial(ctx: &RingContext, elements: &[RingElement]) -> Result<RingElement> {
    let m = elements.len();
    if m > MAX_DEGREE {
        return Err(Error::Budget(format!(
            "S_{m} exceeds the degree limit {MAX_DEGREE}"
        )));
    }
    for r in elements {
        ctx.check(r)?;
    }
    let full = (1usize << m) - 1;
    let mut memo: Vec<Option<RingElement>> = vec![None; full + 1];
    memo[0] = Some(ctx.one());
    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|s| s.count_ones());
    for set in masks {
        let mut acc = ctx.zero();
        for (pos, i) in (0..m).filter(|i| set & (1 << i) != 0).enumerate() {
            let rest = memo[set & !(1 << i)]
                .as_ref()
                .expect("smaller subsets come first");
            let term = ctx.mul(&elements[i], rest);
            acc = if pos % 2 == 0 {
                ctx.add(&acc, &term)
            } else {
                ctx.sub(&acc, &term)
            };
        }
        memo[set] = Some(acc);
    }
    Ok(memo[full].take().unwrap())
}

/// A tuple on which `S_m` does not vanish, with the exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiWitness {
    pub elements: Vec<RingElement>,
    pub value: RingElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiReport {
    pub level: usize,
    pub degree: usize,
    pub trials: u64,
    pub vanish_count: u64,
    pub witness: Option<PiWitness>,
    pub seed: u64,
}

impl PiReport {
    pub fn vanished(&self) -> bool {
        self.vanish_count == self.trials
    }
}

fn run_trials(
    ctx: &RingContext,
    m: usize,
    trials: u64,
    seed: u64,
    sampler: &ElementSampler,
    stop_on_witness: bool,
) -> Result<PiReport> {
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::Budget(format!(
            "degree {m} is outside 1..={MAX_DEGREE}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PiReport {
        level: ctx.level(),
        degree: m,
        trials: 0,
        vanish_count: 0,
        witness: None,
        seed,
    };
    for _ in 0..trials {
        let elements: Vec<RingElement> = (0..m).map(|_| sampler.sample(ctx, &mut rng)).collect();
        let value = standard_polynomial(ctx, &elements)?;
        report.trials += 1;
        if value.is_zero() {
            report.vanish_count += 1;
        } else if report.witness.is_none() {
            report.witness = Some(PiWitness { elements, value });
            if stop_on_witness {
                break;
            }
        }
    }
    Ok(report)
}

/// Evaluates `S_m` on `trials` random tuples from `S_k`.
pub fn test_identity(ctx: &RingContext, m: usize, trials: u64, seed: u64) -> Result<PiReport> {
    run_trials(ctx, m, trials, seed, &ElementSampler::default(), false)
}

/// Like [`test_identity`] but stops at the first non-vanishing tuple.
pub fn find_witness(ctx: &RingContext, m: usize, max_trials: u64, seed: u64) -> Result<PiReport> {
    run_trials(ctx, m, max_trials, seed, &ElementSampler::default(), true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeStatus {
    /// A witness was found.
    Fails,
    /// Vanished in every one of this many trials.
    Vanished(u64),
    /// Beyond the evaluation budget.
    Untested,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierRow {
    pub level: usize,
    pub degrees: Vec<(usize, DegreeStatus)>,
}

impl FrontierRow {
    pub fn largest_failing(&self) -> Option<usize> {
        self.degrees
            .iter()
            .filter(|(_, s)| *s == DegreeStatus::Fails)
            .map(|(m, _)| *m)
            .max()
    }

    pub fn smallest_vanishing(&self) -> Option<usize> {
        self.degrees
            .iter()
            .filter(|(_, s)| matches!(s, DegreeStatus::Vanished(_)))
            .map(|(m, _)| *m)
            .min()
    }
}

/// For each level in `levels`, tests the even degrees up to `max_degree`.
/// Degrees above [`MAX_DEGREE`] are reported as untested.
pub fn pi_degree_scan(
    c: &Construction,
    levels: &[usize],
    max_degree: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<FrontierRow>> {
    let mut rows = Vec::new();
    for &k in levels {
        let ctx = c.context(k)?;
        let mut degrees = Vec::new();
        for m in (2..=max_degree).step_by(2) {
            let status = if m > MAX_DEGREE {
                DegreeStatus::Untested
            } else {
                let report = find_witness(&ctx, m, trials, seed ^ ((k as u64) << 32 | m as u64))?;
                if report.witness.is_some() {
                    DegreeStatus::Fails
                } else {
                    DegreeStatus::Vanished(report.trials)
                }
            };
            degrees.push((m, status));
        }
        rows.push(FrontierRow { level: k, degrees });
    }
    Ok(rows)
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
    fn commutator_is_s2() {
        let c = construction(1, 1);
        let ctx = c.context(1).unwrap();
        let x = ctx.x(0, 1);
        let t = ctx.theta();
        let s2 = standard_polynomial(&ctx, &[x.clone(), t.clone()]).unwrap();
        assert_eq!(s2, ctx.commutator(&x, &t));
        assert!(!s2.is_zero());
        assert!(standard_polynomial(&ctx, &[x.clone(), x.clone()])
            .unwrap()
            .is_zero());
        assert_eq!(standard_polynomial(&ctx, &[]).unwrap(), ctx.one());
    }

    #[test]
    fn degree_guard() {
        let c = construction(1, 1);
        let ctx = c.context(1).unwrap();
        let many = vec![ctx.one(); 9];
        assert!(matches!(
            standard_polynomial(&ctx, &many),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn s4_vanishes_at_level_one() {
        let c = construction(2, 1);
        let report = test_identity(&c.context(1).unwrap(), 4, 50, 3).unwrap();
        assert!(report.vanished());
        assert!(report.witness.is_none());
    }
}
