mod common;

use common::{construction, rng};
use proptest::prelude::*;
use twistlab_core::pi::{find_witness, pi_degree_scan, test_identity, DegreeStatus};
use twistlab_core::sample::{random_scalar, ElementSampler};
use twistlab_core::{standard_polynomial, RingContext, RingElement};

/// All permutations by Heap's algorithm, each with its sign.
fn permutations(m: usize) -> Vec<(Vec<usize>, bool)> {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut out = vec![(perm.clone(), true)];
    let mut even = true;
    let mut c = vec![0; m];
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            even = !even;
            out.push((perm.clone(), even));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn naive_standard(ctx: &RingContext, r: &[RingElement]) -> RingElement {
    let mut acc = ctx.zero();
    for (perm, even) in permutations(r.len()) {
        let prod = perm.iter().fold(ctx.one(), |p, &i| ctx.mul(&p, &r[i]));
        acc = if even {
            ctx.add(&acc, &prod)
        } else {
            ctx.sub(&acc, &prod)
        };
    }
    acc
}

#[test]
fn memoized_matches_permutation_sum() {
    assert_eq!(permutations(4).len(), 24);
    assert_eq!(permutations(4).iter().filter(|(_, e)| *e).count(), 12);
    let c = construction(2, 3, 2, 1);
    let ctx = c.context(1).unwrap();
    let mut rng = rng(67);
    let sampler = ElementSampler::default();
    for m in 1..=5 {
        for _ in 0..40 {
            let r: Vec<RingElement> = (0..m).map(|_| sampler.sample(&ctx, &mut rng)).collect();
            assert_eq!(
                standard_polynomial(&ctx, &r).unwrap(),
                naive_standard(&ctx, &r)
            );
        }
    }
}

#[test]
fn s4_vanishes_at_level_one() {
    for n in 1..=2 {
        let c = construction(2, 2, n, 1);
        let report = test_identity(&c.context(1).unwrap(), 4, 1000, 71).unwrap();
        assert_eq!(report.trials, 1000);
        assert!(report.vanished(), "n={n}");
    }
}

#[test]
fn witnesses_below_the_bound() {
    let c = construction(2, 2, 2, 2);
    let k1 = c.context(1).unwrap();
    let report = find_witness(&k1, 2, 100, 73).unwrap();
    let w = report.witness.expect("S_1 is not commutative");
    assert_eq!(standard_polynomial(&k1, &w.elements).unwrap(), w.value);
    let k2 = c.context(2).unwrap();
    for m in [4, 6] {
        let report = find_witness(&k2, m, 200, 79).unwrap();
        let w = report
            .witness
            .unwrap_or_else(|| panic!("no witness for S_{m}"));
        assert!(!w.value.is_zero());
        assert_eq!(naive_standard(&k2, &w.elements), w.value);
    }
    let report = test_identity(&k2, 8, 30, 83).unwrap();
    assert!(report.vanished());
}

#[test]
fn frontier_is_monotone() {
    let c = construction(2, 2, 1, 2);
    let rows = pi_degree_scan(&c, &[0, 1, 2], 10, 60, 89).unwrap();
    for row in &rows {
        let statuses: Vec<&DegreeStatus> = row.degrees.iter().map(|(_, s)| s).collect();
        let first_vanish = statuses
            .iter()
            .position(|s| matches!(s, DegreeStatus::Vanished(_)));
        if let Some(v) = first_vanish {
            assert!(statuses[v..]
                .iter()
                .all(|s| !matches!(s, DegreeStatus::Fails)));
        }
        assert_eq!(row.degrees.last().unwrap(), &(10, DegreeStatus::Untested));
        assert_eq!(row.smallest_vanishing(), Some(2 * (1 << row.level)));
    }
    assert_eq!(rows[0].largest_failing(), None);
    assert_eq!(rows[2].largest_failing(), Some(6));
}

#[test]
fn reports_are_reproducible() {
    let c = construction(2, 2, 1, 2);
    let ctx = c.context(2).unwrap();
    assert_eq!(
        test_identity(&ctx, 4, 20, 5).unwrap(),
        test_identity(&ctx, 4, 20, 5).unwrap()
    );
    assert!(test_identity(&ctx, 9, 1, 5).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multilinear_and_alternating(seed in any::<u64>(), m in 2usize..5, slot in 0usize..4) {
        let c = construction(2, 3, 1, 1);
        let ctx = c.context(1).unwrap();
        let slot = slot % m;
        let mut rng = rng(seed);
        let sampler = ElementSampler::default();
        let r: Vec<RingElement> = (0..m).map(|_| sampler.sample(&ctx, &mut rng)).collect();
        let base = standard_polynomial(&ctx, &r).unwrap();
        // additive in each slot
        let extra = sampler.sample(&ctx, &mut rng);
        let mut sum = r.clone();
        sum[slot] = ctx.add(&r[slot], &extra);
        let mut other = r.clone();
        other[slot] = extra;
        prop_assert_eq!(
            standard_polynomial(&ctx, &sum).unwrap(),
            ctx.add(&base, &standard_polynomial(&ctx, &other).unwrap())
        );
        // F-homogeneous in each slot
        let a = random_scalar(ctx.tower(), &mut rng);
        let tower = ctx.tower();
        let scalar = ctx.constant(tower.embed(tower.from_index(0, a).unwrap(), 1).unwrap());
        let mut scaled = r.clone();
        scaled[slot] = ctx.mul(&scalar, &r[slot]);
        prop_assert_eq!(standard_polynomial(&ctx, &scaled).unwrap(), ctx.mul(&scalar, &base));
        // a repeated argument kills it
        let mut repeated = r.clone();
        repeated[(slot + 1) % m] = r[slot].clone();
        prop_assert!(standard_polynomial(&ctx, &repeated).unwrap().is_zero());
        // a transposition flips the sign
        let mut swapped = r.clone();
        swapped.swap(slot, (slot + 1) % m);
        prop_assert_eq!(standard_polynomial(&ctx, &swapped).unwrap(), ctx.neg(&base));
    }
}
