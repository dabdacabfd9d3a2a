mod common;

use common::{construction, rng};
use proptest::prelude::*;
use twistlab_core::sample::{random_center_probe, random_central, ElementSampler};
use twistlab_core::{is_central, is_structurally_central, FreeBasis, KernelLattice, LaurentPoly};

#[test]
fn commutator_test_agrees_with_structure() {
    for (p, q, n, k_max) in [(2, 2, 2, 2), (3, 2, 1, 1), (2, 3, 2, 2), (2, 2, 3, 1)] {
        let c = construction(p, q, n, k_max);
        let mut rng = rng(17);
        for k in 0..=k_max {
            let ctx = c.context(k).unwrap();
            let basis = FreeBasis::new(&ctx).unwrap();
            let mut central = 0;
            for _ in 0..1000 {
                let r = random_center_probe(&basis, &mut rng);
                let by_commutators = is_central(&ctx, &r);
                assert_eq!(
                    by_commutators,
                    is_structurally_central(&ctx, basis.lattice(), &r),
                    "p={p} q={q} n={n} k={k} r={r:?}"
                );
                central += by_commutators as usize;
            }
            assert!(central > 100, "mixture should hit the center often");
        }
    }
}

#[test]
fn lattice_matches_brute_force() {
    for (p, n, k_max) in [(2, 2, 3), (3, 2, 2), (2, 3, 2), (2, 1, 3)] {
        let c = construction(p, 2, n, k_max);
        let mut previous: Option<KernelLattice> = None;
        for k in 0..=k_max {
            let ctx = c.context(k).unwrap();
            let lattice = KernelLattice::compute(&ctx).unwrap();
            assert_eq!(lattice.index(), (p as u64).pow(k as u32));
            for row in lattice.basis() {
                assert_eq!(ctx.action_exponent(row), 0);
            }
            let bound = 2 * (p as i64).pow(k as u32);
            let mut g = vec![-bound; n];
            loop {
                assert_eq!(lattice.contains(&g), ctx.action_exponent(&g) == 0, "{g:?}");
                if let Some(lambda) = lattice.coordinates(&g) {
                    assert_eq!(lattice.combine(&lambda).to_vec(), g);
                }
                let mut i = 0;
                while i < n {
                    g[i] += 1;
                    if g[i] <= bound {
                        break;
                    }
                    g[i] = -bound;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
            if let Some(prev) = &previous {
                assert!(lattice.is_sublattice_of(prev));
            }
            previous = Some(lattice);
        }
    }
}

#[test]
fn spec_lattice_examples() {
    let c = construction(2, 2, 1, 1);
    let lattice = KernelLattice::compute(&c.context(1).unwrap()).unwrap();
    assert_eq!(lattice.basis(), &[vec![2]]);
    let c = construction(2, 2, 2, 2);
    let ctx = c.context(2).unwrap();
    let lattice = KernelLattice::compute(&ctx).unwrap();
    assert_eq!(lattice.index(), 4);
    // default a_2 ≡ 0 mod 4, so H_2 = 4Z × Z
    assert_eq!(lattice.basis(), &[vec![4, 0], vec![0, 1]]);
}

#[test]
fn free_basis_has_rank_p_2k() {
    for (p, q, n, k_max) in [(2, 2, 2, 2), (3, 2, 1, 1), (2, 3, 1, 2)] {
        let c = construction(p, q, n, k_max);
        for k in 0..=k_max {
            let basis = FreeBasis::new(&c.context(k).unwrap()).unwrap();
            assert_eq!(basis.len() as u64, (p as u64).pow(2 * k as u32));
            assert_eq!(basis.field_basis().len() as u64, (p as u64).pow(k as u32));
            assert_eq!(basis.coset_reps().len() as u64, (p as u64).pow(k as u32));
        }
    }
}

#[test]
fn decomposition_round_trips_and_is_unique() {
    let c = construction(2, 2, 2, 2);
    let mut rng = rng(23);
    for k in 0..=2 {
        let ctx = c.context(k).unwrap();
        let basis = FreeBasis::new(&ctx).unwrap();
        let sampler = ElementSampler::with_terms(1, 6);
        for _ in 0..1000 {
            let r = sampler.sample(&ctx, &mut rng);
            let coords = basis.decompose(&r).unwrap();
            assert_eq!(coords.len(), basis.len());
            assert_eq!(basis.recompose(&coords).unwrap(), r);
            for z in basis.decompose_in_ring(&r).unwrap() {
                assert!(is_structurally_central(&ctx, basis.lattice(), &z));
            }
        }
        // independence: central coordinates survive a round trip unchanged
        for _ in 0..200 {
            let coords: Vec<LaurentPoly> = (0..basis.len())
                .map(|_| {
                    if rand::Rng::gen_bool(&mut rng, 0.5) {
                        basis
                            .to_laurent(&random_central(&basis, 2, 2, &mut rng))
                            .unwrap()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect();
            let r = basis.recompose(&coords).unwrap();
            assert_eq!(basis.decompose(&r).unwrap(), coords);
        }
    }
}

proptest! {
    #[test]
    fn kernel_words_are_central(seed in any::<u64>()) {
        let c = construction(2, 2, 2, 2);
        let ctx = c.context(2).unwrap();
        let basis = FreeBasis::new(&ctx).unwrap();
        let mut rng = rng(seed);
        let z = random_central(&basis, 4, 3, &mut rng);
        prop_assert!(is_central(&ctx, &z));
        let r = ElementSampler::default().sample(&ctx, &mut rng);
        prop_assert!(ctx.commutes(&z, &r));
    }
}
