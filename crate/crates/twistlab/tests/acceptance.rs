//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Failing criteria are reported, not hidden. The process exits nonzero on a
//! failure only when TWISTLAB_ACCEPTANCE_STRICT=1, so that the rest of the
//! workspace suite still runs.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistlab_core::pi::{find_witness, pi_degree_scan, test_identity};
use twistlab_core::sample::{random_center_probe, random_central, random_nonzero, ElementSampler};
use twistlab_core::simplicity::audit;
use twistlab_core::{
    gk_estimate, growth::default_generators, growth::DEFAULT_GRADE_BUDGET, growth_table,
    is_central, is_structurally_central, unit_in_ideal, ActionConfig, Construction, Error,
    FreeBasis, GroupWord, KernelLattice, QuotientRing, Tower, TowerConfig,
};

fn construction(p: u32, q: u32, n: usize, k_max: usize) -> Construction {
    let tower = Tower::build(TowerConfig::new(p, q, k_max)).unwrap();
    Construction::new(tower, ActionConfig::default_for(p, n).unwrap(), 8).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn center_agreement() -> Verdict {
    let c = construction(2, 2, 2, 2);
    let mut rng = rng(101);
    let (mut disagreements, mut tested, mut indices) = (0, 0, Vec::new());
    for k in 1..=2 {
        let ctx = c.context(k).unwrap();
        let basis = FreeBasis::new(&ctx).unwrap();
        for _ in 0..1000 {
            let r = random_center_probe(&basis, &mut rng);
            disagreements +=
                (is_central(&ctx, &r) != is_structurally_central(&ctx, basis.lattice(), &r)) as u32;
            tested += 1;
        }
        indices.push(KernelLattice::compute(&ctx).unwrap().index());
    }
    verdict(
        disagreements == 0 && indices == [2, 4],
        format!("{disagreements} disagreements over {tested} elements; |G:H_k| = {indices:?}"),
    )
}

fn freeness_rank() -> Verdict {
    let c = construction(2, 2, 2, 2);
    let mut rng = rng(102);
    let (mut ok, mut sizes) = (true, Vec::new());
    for k in 1..=2 {
        let ctx = c.context(k).unwrap();
        let basis = FreeBasis::new(&ctx).unwrap();
        sizes.push(basis.len());
        ok &= basis.len() == 4usize.pow(k as u32);
        let sampler = ElementSampler::with_terms(1, 6);
        for _ in 0..1000 {
            let r = sampler.sample(&ctx, &mut rng);
            ok &= basis.recompose(&basis.decompose(&r).unwrap()).unwrap() == r;
        }
    }
    verdict(ok, format!("2000 exact round trips; basis sizes {sizes:?}"))
}

fn units() -> Verdict {
    let c = construction(2, 2, 2, 2);
    let mut rng = rng(103);
    let inhomogeneous = ElementSampler::with_terms(2, 3);
    let (mut ones, mut bad_inverses) = (0, 0);
    for k in 1..=2 {
        let ctx = c.context(k).unwrap();
        for _ in 0..10_000 {
            let r = inhomogeneous.sample(&ctx, &mut rng);
            let s = inhomogeneous.sample(&ctx, &mut rng);
            ones += (ctx.mul(&r, &s) == ctx.one()) as u32;
            let g: Vec<i64> = (0..2).map(|_| rng.gen_range(-5..=5)).collect();
            let u = ctx.monomial(random_nonzero(ctx.tower(), k, &mut rng), GroupWord::new(g));
            let exact = ctx
                .invert_unit(&u)
                .map(|inv| ctx.mul(&u, &inv) == ctx.one() && ctx.mul(&inv, &u) == ctx.one());
            bad_inverses += (exact != Ok(true)) as u32;
        }
    }
    verdict(
        ones == 0 && bad_inverses == 0,
        format!("20000 inhomogeneous pairs, {ones} products equal 1; 20000 homogeneous units, {bad_inverses} bad inverses"),
    )
}

fn simplicity() -> Verdict {
    let c = construction(2, 2, 2, 3);
    let ctx1 = c.context(1).unwrap();
    let one_plus_x = ctx1.add(&ctx1.one(), &ctx1.x(0, 1));
    let example =
        unit_in_ideal(&c, &one_plus_x).map(|t| t.steps.len() == 1 && audit(&c, &t).unwrap());
    let mut rng = rng(104);
    let sampler = ElementSampler::with_terms(1, 5);
    let (mut succeeded, mut audited, mut blocked, mut other) = (0, 0, 0, 0);
    for i in 0..1000 {
        let ctx = c.context(i % 4).unwrap();
        let r = sampler.sample(&ctx, &mut rng);
        match unit_in_ideal(&c, &r) {
            Ok(trace) => {
                succeeded += 1;
                audited += audit(&c, &trace).unwrap() as u32;
            }
            Err(Error::IncreaseKMax { .. }) => blocked += 1,
            Err(_) => other += 1,
        }
    }
    verdict(
        example == Ok(true) && succeeded == 1000 && audited == succeeded,
        format!(
            "1+x1 in one step: {}; {succeeded}/1000 reached a unit ({audited} audited), \
             {blocked} need k_max > 3, {other} other errors",
            example == Ok(true)
        ),
    )
}

fn pi_frontier() -> Verdict {
    let c = construction(2, 2, 2, 2);
    let k1 = c.context(1).unwrap();
    let k2 = c.context(2).unwrap();
    let s4 = test_identity(&k1, 4, 1000, 105).unwrap();
    let s2 = find_witness(&k1, 2, 1000, 105).unwrap();
    let w4 = find_witness(&k2, 4, 1000, 106).unwrap();
    let w6 = find_witness(&k2, 6, 1000, 107).unwrap();
    let exact = |ctx: &twistlab_core::RingContext, r: &twistlab_core::PiReport| {
        r.witness.as_ref().is_some_and(|w| {
            !w.value.is_zero()
                && twistlab_core::standard_polynomial(ctx, &w.elements).unwrap() == w.value
        })
    };
    let rows = pi_degree_scan(&c, &[0, 1, 2], 8, 200, 108).unwrap();
    let frontier: Vec<usize> = rows
        .iter()
        .map(|r| r.largest_failing().unwrap_or(0))
        .collect();
    let monotone = frontier.windows(2).all(|w| w[0] <= w[1]);
    verdict(
        s4.vanished() && s4.trials == 1000 && exact(&k1, &s2) && exact(&k2, &w4) && exact(&k2, &w6) && monotone,
        format!(
            "k=1: S_4 vanished {}/{}, S_2 witness {}; k=2: S_4 witness after {} trials, S_6 after {}; \
             largest failing degree by k = {frontier:?}",
            s4.vanish_count,
            s4.trials,
            exact(&k1, &s2),
            w4.trials,
            w6.trials
        ),
    )
}

fn gk_dimension() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=3 {
        let c = construction(2, 2, n, 2);
        let slopes: Vec<f64> = (1..=2)
            .map(|k| {
                let ctx = c.context(k).unwrap();
                let table = growth_table(&ctx, &default_generators(&ctx), 24, DEFAULT_GRADE_BUDGET)
                    .unwrap();
                gk_estimate(&table).unwrap().slope
            })
            .collect();
        ok &= (slopes[0] - n as f64).abs() <= 0.15 && (slopes[0] - slopes[1]).abs() <= 0.2;
        parts.push(format!(
            "n={n}: {:.4} (k=1), {:.4} (k=2)",
            slopes[0], slopes[1]
        ));
    }
    verdict(ok, parts.join("; "))
}

fn division_ring() -> Verdict {
    let c = construction(2, 2, 1, 1);
    let ctx = c.context(1).unwrap();
    let quot = QuotientRing::new(&ctx).unwrap();
    let mut rng = rng(109);
    let mut fractions = vec![quot.from_ring(ctx.add(&ctx.one(), &ctx.x(0, 1))).unwrap()];
    while fractions.len() < 100 {
        let num = ElementSampler::default().sample(&ctx, &mut rng);
        let den = random_central(quot.basis(), 2, 2, &mut rng);
        fractions.push(quot.fraction(num, den).unwrap());
    }
    let (mut exact, mut involutive) = (0, 0);
    for f in &fractions {
        if let Ok(inv) = quot.invert(f) {
            exact += quot.is_one(&quot.mul(f, &inv).unwrap()) as u32;
            involutive += quot
                .invert(&inv)
                .is_ok_and(|back| quot.equals(&back, f).unwrap()) as u32;
        }
    }
    verdict(
        exact == 100 && involutive == 100,
        format!("4x4 regular representation; {exact}/100 exact inverses, {involutive}/100 invert(invert(f)) = f"),
    )
}

fn center_of_division_ring() -> Verdict {
    let c = construction(2, 2, 2, 3);
    let q1 = QuotientRing::new(&c.context(1).unwrap()).unwrap();
    let probes: Vec<QuotientRing> = (1..=3)
        .map(|k| QuotientRing::new(&c.context(k).unwrap()).unwrap())
        .collect();
    let ctx = q1.context();
    let tower = ctx.tower();
    let constants: Vec<_> = (0..tower.q())
        .map(|i| {
            q1.from_ring(ctx.constant(tower.embed(tower.from_index(0, i).unwrap(), 1).unwrap()))
                .unwrap()
        })
        .collect();
    let f_pass = constants.iter().all(|a| {
        probes
            .iter()
            .all(|p| q1.center_of_quotient_test(a, p).unwrap())
    });
    let mut rng = rng(110);
    let (mut tested, mut failed_at_2) = (0, 0);
    let mut survivor = None;
    while tested < 100 {
        let num = random_central(q1.basis(), 3, 2, &mut rng);
        let den = if rng.gen_bool(0.5) {
            ctx.one()
        } else {
            random_central(q1.basis(), 2, 1, &mut rng)
        };
        let f = q1.fraction(num, den).unwrap();
        if constants.iter().any(|a| q1.equals(&f, a).unwrap()) {
            continue;
        }
        tested += 1;
        if q1.center_of_quotient_test(&f, &probes[1]).unwrap() {
            survivor.get_or_insert_with(|| twistlab::literal::format_element(ctx, f.num()));
        } else {
            failed_at_2 += 1;
        }
    }
    verdict(
        f_pass && failed_at_2 == tested,
        format!(
            "F passes at probe levels 1..3: {f_pass}; {failed_at_2}/{tested} non-F central elements fail at level 2{}",
            survivor.map_or(String::new(), |s| format!(" (e.g. numerator {s} stays central)"))
        ),
    )
}

fn infrastructure() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_twistlab"))
            .arg("verify-all")
            .env_remove("TWISTLAB_ORDER_BUDGET")
            .env_remove("TWISTLAB_GRADE_BUDGET")
            .output()
            .expect("run twistlab")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    verdict(
        same && a.status.success() && b.status.success(),
        format!(
            "exit codes {:?} and {:?}; {} report bytes, byte-identical: {same}",
            a.status.code(),
            b.status.code(),
            a.stdout.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("center", center_agreement),
        ("freeness rank", freeness_rank),
        ("units", units),
        ("simplicity", simplicity),
        ("PI frontier", pi_frontier),
        ("GK-dimension", gk_dimension),
        ("division ring", division_ring),
        ("Z(D) = F", center_of_division_ring),
        ("infrastructure", infrastructure),
    ];
    let mut failing = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let mark = if v.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {} {mark} {name}: {} [{:.1}s]",
            i + 1,
            v.detail,
            start.elapsed().as_secs_f64()
        );
        if !v.passed {
            failing.push((i + 1).to_string());
        }
    }
    println!(
        "acceptance: {}/{} criteria pass{}",
        criteria.len() - failing.len(),
        criteria.len(),
        if failing.is_empty() {
            String::new()
        } else {
            format!(" (failing: {})", failing.join(", "))
        }
    );
    if !failing.is_empty() && std::env::var("TWISTLAB_ACCEPTANCE_STRICT").as_deref() == Ok("1") {
        std::process::exit(1);
    }
}
