use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistlab::formats::{
    growth_csv, parse_growth_csv, ActionJson, PiReportJson, TowerJson, TraceJson,
};
use twistlab::literal::{format_element, format_field, parse_element, parse_field};
use twistlab_core::growth::{default_generators, DEFAULT_GRADE_BUDGET};
use twistlab_core::pi::find_witness;
use twistlab_core::sample::{random_field_element, ElementSampler};
use twistlab_core::simplicity::audit;
use twistlab_core::{growth_table, unit_in_ideal, ActionConfig, Construction, Tower, TowerConfig};

const BUDGET: u64 = 1 << 20;

fn construction(p: u32, q: u32, n: usize, k_max: usize) -> Construction {
    let tower = Tower::build(TowerConfig::new(p, q, k_max)).unwrap();
    Construction::new(tower, ActionConfig::default_for(p, n).unwrap(), 8).unwrap()
}

#[test]
fn tower_json_round_trips_bit_exactly() {
    for (p, q, k) in [(2, 2, 3), (2, 3, 2), (3, 2, 1), (2, 4, 1), (3, 3, 1)] {
        let tower = Tower::build(TowerConfig::new(p, q, k)).unwrap();
        let text = serde_json::to_string(&TowerJson::from_tower(&tower)).unwrap();
        let parsed: TowerJson = serde_json::from_str(&text).unwrap();
        let rebuilt = parsed.to_tower(BUDGET).unwrap();
        assert_eq!(
            serde_json::to_string(&TowerJson::from_tower(&rebuilt)).unwrap(),
            text
        );
        // same arithmetic, element by element
        let top = tower.levels()[k].order() as u32;
        for i in (0..top).step_by((top as usize / 200).max(1)) {
            let a = tower.from_index(k, i).unwrap();
            let b = rebuilt.from_index(k, i).unwrap();
            let g = tower.generator(k);
            assert_eq!(
                tower.mul(a, g).index(),
                rebuilt.mul(b, rebuilt.generator(k)).index()
            );
        }
    }
}

#[test]
fn tampered_towers_are_rejected() {
    let tower = Tower::build(TowerConfig::new(2, 2, 2)).unwrap();
    let json = TowerJson::from_tower(&tower);
    let mut bad = json.clone();
    bad.levels[1].embedding_up = Some(vec![1, 0, 0, 0]);
    assert!(bad.to_tower(BUDGET).is_err());
    let mut bad = json.clone();
    bad.levels[2].defining_polynomial = vec![1, 0, 0, 0, 1];
    assert!(bad.to_tower(BUDGET).is_err());
    let mut bad = json.clone();
    bad.levels.swap(0, 1);
    assert!(bad.to_tower(BUDGET).is_err());
    assert!(json.to_tower(8).is_err());
}

#[test]
fn action_json_agrees_up_to_the_horizon() {
    for (p, n) in [(2, 1), (2, 3), (3, 2)] {
        let action = ActionConfig::default_for(p, n).unwrap();
        let json = ActionJson::from_action(&action);
        let text = serde_json::to_string(&json).unwrap();
        let back = serde_json::from_str::<ActionJson>(&text)
            .unwrap()
            .to_action()
            .unwrap();
        for k in 1..=json.horizon {
            assert_eq!(back.truncations(k), action.truncations(k));
        }
        assert_eq!(ActionJson::from_action(&back), json);
    }
    let given: ActionJson =
        serde_json::from_str(r#"{"n": 2, "p": 2, "horizon": 61, "exponents": [[0], [0, 3]]}"#)
            .unwrap();
    assert_eq!(given.to_action().unwrap().action_exponent(&[1, 1], 2), 2);
}

#[test]
fn traces_round_trip_and_audit() {
    let c = construction(2, 2, 1, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for level in 0..=2 {
        let ctx = c.context(level).unwrap();
        for _ in 0..50 {
            let r = ElementSampler::with_terms(1, 5).sample(&ctx, &mut rng);
            let trace = unit_in_ideal(&c, &r).unwrap();
            let work = c.context(trace.separating_level).unwrap();
            let json = TraceJson::from_trace(&ctx, &work, &trace);
            let text = serde_json::to_string(&json).unwrap();
            let back = serde_json::from_str::<TraceJson>(&text)
                .unwrap()
                .to_trace(&ctx, &work)
                .unwrap();
            assert_eq!(back, trace);
            assert!(audit(&c, &back).unwrap());
        }
    }
}

#[test]
fn pi_reports_carry_exact_witnesses() {
    let c = construction(2, 2, 2, 2);
    let ctx = c.context(2).unwrap();
    let report = find_witness(&ctx, 4, 100, 11).unwrap();
    let json = PiReportJson::from_report(&ctx, &report);
    let back: PiReportJson = serde_json::from_str(&serde_json::to_string(&json).unwrap()).unwrap();
    assert_eq!(back, json);
    let w = back.witness.unwrap();
    let elements: Vec<_> = w
        .elements
        .iter()
        .map(|s| parse_element(&ctx, s).unwrap())
        .collect();
    let value = twistlab_core::standard_polynomial(&ctx, &elements).unwrap();
    assert_eq!(format_element(&ctx, &value), w.value);
    assert!(!value.is_zero());
}

#[test]
fn growth_csv_round_trip() {
    let c = construction(2, 2, 2, 1);
    let ctx = c.context(1).unwrap();
    let table = growth_table(&ctx, &default_generators(&ctx), 10, DEFAULT_GRADE_BUDGET).unwrap();
    let text = growth_csv(&table).unwrap();
    assert!(text.starts_with("N,dim\n0,1\n"));
    assert_eq!(
        parse_growth_csv(&format!("# comment\n{text}")).unwrap(),
        table.rows
    );
    assert!(parse_growth_csv("N,dim\n1,4\n").is_err());
}

fn contexts() -> Vec<(Construction, usize)> {
    vec![
        (construction(2, 2, 2, 2), 2),
        (construction(2, 3, 1, 1), 1),
        (construction(3, 2, 2, 1), 1),
        (construction(2, 4, 3, 1), 1),
        (construction(2, 2, 1, 1), 0),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn literals_round_trip(seed in any::<u64>(), which in 0usize..5) {
        let (c, k) = &contexts()[which];
        let ctx = c.context(*k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ElementSampler::with_terms(0, 6).sample(&ctx, &mut rng);
        let text = format_element(&ctx, &r);
        prop_assert_eq!(parse_element(&ctx, &text).unwrap(), r);
        let d = random_field_element(ctx.tower(), *k, &mut rng);
        prop_assert_eq!(parse_field(&ctx, &format_field(ctx.tower(), d)).unwrap(), d);
    }
}
