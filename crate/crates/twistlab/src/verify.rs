//! `verify-all`: every module's invariant suite at the configured size.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use twistlab_core::growth::default_generators;
use twistlab_core::pi::{find_witness, test_identity, MAX_DEGREE};
use twistlab_core::sample::{
    random_center_probe, random_central, random_field_element, random_nonzero, ElementSampler,
};
use twistlab_core::simplicity::{audit, separating_level};
use twistlab_core::{
    gk_estimate, growth_table, is_central, is_structurally_central, Construction, Error, FreeBasis,
    GroupWord, KernelLattice, QuotientRing, Result, TermOrder, Tower,
};

use crate::config::ExperimentConfig;
use crate::formats::TowerJson;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub invariant: String,
    pub passed: bool,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub suites: Vec<Suite>,
}

impl Summary {
    pub fn failures(&self) -> Vec<String> {
        self.suites
            .iter()
            .flat_map(|s| {
                s.checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(move |c| format!("{}: {}", s.name, c.invariant))
            })
            .collect()
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: Vec::new() }
    }

    fn check(
        &mut self,
        invariant: impl Into<String>,
        passed: bool,
        count: u64,
        detail: Option<String>,
    ) {
        self.checks.push(Check {
            invariant: invariant.into(),
            passed,
            count,
            detail,
        });
    }
}

fn rng_for(config: &ExperimentConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    rng
}

pub fn verify_all(config: &ExperimentConfig) -> Result<Summary> {
    let c = config.construction()?;
    let trials = config.trials.unwrap_or(200);
    let suites = vec![
        Suite {
            name: "field_tower".into(),
            checks: tower_suite(config, c.tower(), trials)?,
        },
        Suite {
            name: "galois_action".into(),
            checks: action_suite(config, &c, trials),
        },
        Suite {
            name: "twisted_ring".into(),
            checks: ring_suite(config, &c, trials)?,
        },
        Suite {
            name: "center_lattice".into(),
            checks: center_suite(config, &c, trials)?,
        },
        Suite {
            name: "simplicity_engine".into(),
            checks: simplicity_suite(config, &c, trials)?,
        },
        Suite {
            name: "pi_lab".into(),
            checks: pi_suite(config, &c, trials)?,
        },
        Suite {
            name: "growth_meter".into(),
            checks: growth_suite(config, &c)?,
        },
        Suite {
            name: "quotient_division".into(),
            checks: quotient_suite(config, &c, trials)?,
        },
    ];
    let passed = suites.iter().all(|s| s.checks.iter().all(|c| c.passed));
    Ok(Summary { passed, suites })
}

fn tower_suite(config: &ExperimentConfig, tower: &Tower, trials: u64) -> Result<Vec<Check>> {
    let mut rec = Recorder::new();
    let mut rng = rng_for(config, 1);
    let (mut axioms, mut frob, mut embed) = (true, true, true);
    for m in 0..=tower.k_max() {
        let degree = tower.levels()[m].degree() as i64;
        for _ in 0..trials {
            let a = random_field_element(tower, m, &mut rng);
            let b = random_field_element(tower, m, &mut rng);
            let d = random_field_element(tower, m, &mut rng);
            axioms &= tower.mul(tower.mul(a, b), d) == tower.mul(a, tower.mul(b, d))
                && tower.mul(a, tower.add(b, d)) == tower.add(tower.mul(a, b), tower.mul(a, d))
                && (a.is_zero() || tower.mul(a, tower.inv(a)?) == tower.one(m));
            frob &= tower.frobenius(a, 1) == tower.pow(a, tower.q() as i128)?
                && tower.frobenius(a, degree) == a
                && tower.frobenius(tower.mul(a, b), 1)
                    == tower.mul(tower.frobenius(a, 1), tower.frobenius(b, 1));
            if m < tower.k_max() {
                let up = |x| tower.embed(x, m + 1);
                embed &= up(tower.mul(a, b))? == tower.mul(up(a)?, up(b)?)
                    && up(tower.add(a, b))? == tower.add(up(a)?, up(b)?)
                    && up(tower.frobenius(a, 1))? == tower.frobenius(up(a)?, 1);
            }
        }
    }
    let count = trials * (tower.k_max() as u64 + 1);
    rec.check("field axioms", axioms, count, None);
    rec.check(
        "frobenius is the q-power automorphism of order [L_m:F]",
        frob,
        count,
        None,
    );
    rec.check(
        "embeddings are homomorphisms commuting with frobenius",
        embed,
        trials * tower.k_max() as u64,
        None,
    );
    let json = TowerJson::from_tower(tower);
    let round = TowerJson::from_tower(&json.to_tower(config.order_budget)?) == json;
    rec.check("tower JSON round trip", round, 1, None);
    Ok(rec.checks)
}

fn action_suite(config: &ExperimentConfig, c: &Construction, trials: u64) -> Vec<Check> {
    let mut rec = Recorder::new();
    let cert = c.certificate();
    rec.check(
        "exponents certified independent",
        true,
        1,
        Some(format!("bound {} at level {}", cert.bound, cert.level)),
    );
    let action = c.action();
    let mut rng = rng_for(config, 2);
    let mut ok = true;
    for k in 1..=c.k_max() as u32 {
        let m = action.modulus(k);
        for _ in 0..trials {
            let g: Vec<i64> = (0..c.rank()).map(|_| rng.gen_range(-50..=50)).collect();
            let h: Vec<i64> = (0..c.rank()).map(|_| rng.gen_range(-50..=50)).collect();
            let sum: Vec<i64> = g.iter().zip(&h).map(|(a, b)| a + b).collect();
            ok &= action.action_exponent(&sum, k)
                == (action.action_exponent(&g, k) + action.action_exponent(&h, k)) % m
                && action.action_exponent(&g, k + 1) % m == action.action_exponent(&g, k);
        }
    }
    rec.check(
        "psi_k is a homomorphism compatible with restriction",
        ok,
        trials * c.k_max() as u64,
        None,
    );
    rec.check("a_1 = 1", action.exponents()[0].is_one(), 1, None);
    rec.checks
}

fn ring_suite(config: &ExperimentConfig, c: &Construction, trials: u64) -> Result<Vec<Check>> {
    let mut rec = Recorder::new();
    let mut rng = rng_for(config, 3);
    let sampler = ElementSampler::default();
    let inhomogeneous = ElementSampler::with_terms(2, 3);
    let (mut axioms, mut units, mut leading) = (true, true, true);
    for k in 0..=c.k_max() {
        let ctx = c.context(k)?;
        for _ in 0..trials {
            let a = sampler.sample(&ctx, &mut rng);
            let b = sampler.sample(&ctx, &mut rng);
            let d = sampler.sample(&ctx, &mut rng);
            axioms &= ctx.mul(&ctx.mul(&a, &b), &d) == ctx.mul(&a, &ctx.mul(&b, &d))
                && ctx.mul(&a, &ctx.add(&b, &d)) == ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &d))
                && ctx.mul(&ctx.one(), &a) == a;
            let r = inhomogeneous.sample(&ctx, &mut rng);
            let s = inhomogeneous.sample(&ctx, &mut rng);
            let g: Vec<i64> = (0..c.rank()).map(|_| rng.gen_range(-5..=5)).collect();
            let u = ctx.monomial(random_nonzero(ctx.tower(), k, &mut rng), GroupWord::new(g));
            let inv = ctx.invert_unit(&u)?;
            units &= ctx.mul(&r, &s) != ctx.one()
                && ctx.invert_unit(&r).is_err()
                && ctx.mul(&u, &inv) == ctx.one()
                && ctx.mul(&inv, &u) == ctx.one();
            let prod = ctx.mul(&a, &b);
            let (ga, ca) = ctx.leading_term(&a, &TermOrder::Lex)?;
            let (gb, cb) = ctx.leading_term(&b, &TermOrder::Lex)?;
            let (gp, cp) = ctx.leading_term(&prod, &TermOrder::Lex)?;
            leading &=
                ctx.monomial(cp, gp) == ctx.mul(&ctx.monomial(ca, ga), &ctx.monomial(cb, gb));
        }
    }
    let count = trials * (c.k_max() as u64 + 1);
    rec.check("ring axioms", axioms, count, None);
    rec.check(
        "units are exactly the nonzero homogeneous elements",
        units,
        count,
        None,
    );
    rec.check(
        "leading terms multiply (no zero divisors)",
        leading,
        count,
        None,
    );
    Ok(rec.checks)
}

fn center_suite(config: &ExperimentConfig, c: &Construction, trials: u64) -> Result<Vec<Check>> {
    let mut rec = Recorder::new();
    let mut rng = rng_for(config, 4);
    let p = c.tower().p() as u64;
    let mut previous: Option<KernelLattice> = None;
    for k in 0..=c.k_max() {
        let ctx = c.context(k)?;
        let basis = FreeBasis::new(&ctx)?;
        let mut agree = true;
        let mut central = 0;
        for _ in 0..trials {
            let r = random_center_probe(&basis, &mut rng);
            let by_commutators = is_central(&ctx, &r);
            agree &= by_commutators == is_structurally_central(&ctx, basis.lattice(), &r);
            central += by_commutators as u64;
        }
        rec.check(
            format!("k={k}: commutator centrality equals support in H_k with coefficients in F"),
            agree,
            trials,
            Some(format!("{central} central")),
        );
        let lattice = basis.lattice();
        let nested = previous
            .as_ref()
            .is_none_or(|prev| lattice.is_sublattice_of(prev));
        rec.check(
            format!("k={k}: |G:H_k| = p^k and H_k nested"),
            lattice.index() == p.pow(k as u32) && nested,
            1,
            Some(format!("basis {:?}", lattice.basis())),
        );
        let sampler = ElementSampler::with_terms(1, 6);
        let mut round = basis.len() as u64 == p.pow(2 * k as u32);
        for _ in 0..trials {
            let r = sampler.sample(&ctx, &mut rng);
            round &= basis.recompose(&basis.decompose(&r)?)? == r;
        }
        rec.check(
            format!("k={k}: free of rank p^2k with exact decomposition"),
            round,
            trials,
            None,
        );
        previous = Some(lattice.clone());
    }
    Ok(rec.checks)
}

fn simplicity_suite(
    config: &ExperimentConfig,
    c: &Construction,
    trials: u64,
) -> Result<Vec<Check>> {
    let mut rec = Recorder::new();
    let ctx = c.context(1)?;
    let one_plus_x = ctx.add(&ctx.one(), &ctx.x(0, 1));
    let trace = twistlab_core::unit_in_ideal(c, &one_plus_x)?;
    rec.check(
        "1 + x1 shrinks in exactly one step",
        trace.steps.len() == 1 && audit(c, &trace)?,
        1,
        None,
    );
    let mut rng = rng_for(config, 5);
    let sampler = ElementSampler::with_terms(1, 5);
    let (mut ok, mut succeeded, mut blocked) = (true, 0u64, 0u64);
    for _ in 0..trials {
        let r = sampler.sample(&ctx, &mut rng);
        match twistlab_core::unit_in_ideal(c, &r) {
            Ok(trace) => {
                ok &= trace.steps.len() < r.len().max(1) && audit(c, &trace)?;
                succeeded += 1;
            }
            Err(Error::IncreaseKMax {
                blocking: (g, h), ..
            }) => {
                // the blocking pair must really be inseparable below k_max
                ok &= separating_level(c, &[GroupWord::new(g), GroupWord::new(h)]).is_err();
                blocked += 1;
            }
            Err(e) => return Err(e),
        }
    }
    rec.check(
        "traces audit; refusals name a pair no materialized level separates",
        ok,
        trials,
        Some(format!(
            "{succeeded} reached a unit, {blocked} need a larger k_max"
        )),
    );
    Ok(rec.checks)
}

fn pi_suite(config: &ExperimentConfig, c: &Construction, trials: u64) -> Result<Vec<Check>> {
    let mut rec = Recorder::new();
    let p = c.tower().p() as usize;
    for k in 0..=c.k_max() {
        let ctx = c.context(k)?;
        let bound = 2 * p.pow(k as u32);
        if bound <= MAX_DEGREE {
            // keep the 2^m-sized evaluations affordable
            let t = if bound >= 8 { trials.min(50) } else { trials };
            let report = test_identity(&ctx, bound, t, config.seed ^ (k as u64))?;
            rec.check(
                format!("k={k}: S_{bound} vanishes"),
                report.vanished(),
                report.trials,
                Some(format!(
                    "{} of {} vanished",
                    report.vanish_count, report.trials
                )),
            );
        }
        if k > 0 && bound - 2 <= MAX_DEGREE {
            let report = find_witness(&ctx, bound - 2, trials, config.seed ^ (k as u64))?;
            rec.check(
                format!("k={k}: S_{} has a witness", bound - 2),
                report.witness.is_some(),
                report.trials,
                None,
            );
        }
    }
    Ok(rec.checks)
}

fn growth_suite(config: &ExperimentConfig, c: &Construction) -> Result<Vec<Check>> {
    let mut rec = Recorder::new();
    let n = c.rank() as f64;
    let mut slopes = Vec::new();
    for k in 1..=c.k_max().min(2) {
        let ctx = c.context(k)?;
        let table = growth_table(
            &ctx,
            &default_generators(&ctx),
            config.n_max.unwrap_or(24),
            config.grade_budget,
        )?;
        if table.cutoff.is_some() {
            rec.check(
                format!("k={k}: growth table within grade budget"),
                false,
                1,
                None,
            );
            continue;
        }
        let est = gk_estimate(&table)?;
        slopes.push(est.slope);
        if k == 1 {
            rec.check(
                "k=1: GK estimate within 0.15 of n",
                (est.slope - n).abs() <= 0.15,
                est.points as u64,
                Some(format!("slope {:.4}", est.slope)),
            );
        }
    }
    if slopes.len() == 2 {
        rec.check(
            "GK estimates at k=1 and k=2 agree within 0.2",
            (slopes[0] - slopes[1]).abs() <= 0.2,
            2,
            Some(format!("slopes {:.4} and {:.4}", slopes[0], slopes[1])),
        );
    }
    Ok(rec.checks)
}

fn quotient_suite(config: &ExperimentConfig, c: &Construction, trials: u64) -> Result<Vec<Check>> {
    let mut rec = Recorder::new();
    let ctx = c.context(1)?;
    let quot = QuotientRing::new(&ctx)?;
    let mut rng = rng_for(config, 6);
    if c.rank() <= 2 {
        let one_plus_x = quot.from_ring(ctx.add(&ctx.one(), &ctx.x(0, 1)))?;
        let mut exact = quot.is_one(&quot.mul(&one_plus_x, &quot.invert(&one_plus_x)?)?);
        let count = (trials / 2).max(1);
        for _ in 0..count {
            let num = ElementSampler::default().sample(&ctx, &mut rng);
            let den = random_central(quot.basis(), 2, 2, &mut rng);
            let f = quot.fraction(num, den)?;
            let inv = quot.invert(&f)?;
            exact &= quot.is_one(&quot.mul(&f, &inv)?) && quot.equals(&quot.invert(&inv)?, &f)?;
        }
        rec.check(
            "k=1: inverses are exact and invert(invert(f)) = f",
            exact,
            count + 1,
            None,
        );
    } else {
        rec.check(
            "k=1: inversion",
            true,
            0,
            Some("skipped: n > 2 is behind the size guard".into()),
        );
    }
    // Z(D) = F as far as the materialized levels can see
    let probes: Vec<QuotientRing> = (1..=c.k_max())
        .map(|k| QuotientRing::new(&c.context(k)?))
        .collect::<Result<_>>()?;
    let lattices: Vec<&KernelLattice> = probes.iter().map(|q| q.basis().lattice()).collect();
    let tower = ctx.tower();
    let mut f_ok = true;
    for i in 0..tower.q() {
        let a = quot.from_ring(ctx.constant(tower.embed(tower.from_index(0, i)?, 1)?))?;
        for probe in &probes {
            f_ok &= quot.center_of_quotient_test(&a, probe)?;
        }
    }
    rec.check(
        "elements of F pass at every probe level",
        f_ok,
        tower.q() as u64,
        None,
    );
    let (mut ok, mut beyond) = (true, 0u64);
    let mut tested = 0u64;
    while tested < trials {
        let z = random_central(quot.basis(), 3, 2, &mut rng);
        if z.support().all(|g| g.is_zero()) {
            continue;
        }
        tested += 1;
        let f = quot.from_ring(z.clone())?;
        let leaves = lattices
            .iter()
            .position(|h| z.support().any(|g| !h.contains(g)));
        for (i, probe) in probes.iter().enumerate() {
            let expected = leaves.is_none_or(|l| i < l);
            ok &= quot.center_of_quotient_test(&f, probe)? == expected;
        }
        beyond += leaves.is_none() as u64;
    }
    rec.check(
        "central non-F elements of q(S_1) fail exactly once their support leaves H_k",
        ok,
        tested,
        Some(format!("{beyond} stay central through k_max")),
    );
    Ok(rec.checks)
}
