//! Randomized invariants.

use limitsort::generate::{random_actions, random_parameters, random_valid_instance, InstanceShape};
use limitsort::instance::CriterionInfo;
use limitsort::io::{parse_model, render_model};
use limitsort::{
    check_condition1, check_proposition1, derive_preference, interval_dominates, pareto_dominates, possibility,
    validate_condition2, validate_condition3, validate_condition4, Action, Boundary, BoundarySystem, Direction,
    ElectreInstance, IntervalNumber, IntervalValueModel, LoadedInstance, ScoreScale, Violation,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn interval() -> impl Strategy<Value = IntervalNumber> {
    (-50.0..50.0f64, 0.0..20.0f64).prop_map(|(lo, w)| IntervalNumber::new(lo, lo + w).unwrap())
}

fn proper_interval() -> impl Strategy<Value = IntervalNumber> {
    (-50.0..50.0f64, 0.01..20.0f64).prop_map(|(lo, w)| IntervalNumber::new(lo, lo + w).unwrap())
}

fn scores(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0..=16).prop_map(|v| v as f64 * 0.5), m)
}

fn sorted_violations(mut v: Vec<Violation>) -> Vec<(String, Vec<String>)> {
    let mut out: Vec<(String, Vec<String>)> = v.drain(..).map(|v| (v.condition, v.witnesses)).collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn credibility_bounded_and_reflexive(seed in any::<u64>(), x in scores(4), y in scores(4)) {
        let p = random_parameters(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let sigma = p.credibility(&x, &y).unwrap();
        prop_assert!((0.0..=1.0).contains(&sigma));
        prop_assert_eq!(p.credibility(&x, &x).unwrap(), 1.0);
        if pareto_dominates(&x, &y).unwrap() {
            prop_assert_eq!(sigma, 1.0);
            prop_assert!(p.crisp_s(&x, &y).unwrap());
        }
    }

    #[test]
    fn credibility_monotone(seed in any::<u64>(), x in scores(4), y in scores(4), j in 0..4usize, bump in 0.01..3.0f64) {
        let p = random_parameters(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let mut up = x.clone();
        up[j] += bump;
        let base = p.credibility(&x, &y).unwrap();
        prop_assert!(p.credibility(&up, &y).unwrap() >= base - 1e-12);
        prop_assert!(p.credibility(&y, &up).unwrap() <= p.credibility(&y, &x).unwrap() + 1e-12);
    }

    #[test]
    fn preference_is_asymmetric(seed in any::<u64>(), x in scores(3), y in scores(3)) {
        let p = random_parameters(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        let (a, b) = (Action::new("a", x), Action::new("b", y));
        prop_assert!(!(derive_preference(&p, &a, &b).unwrap() && derive_preference(&p, &b, &a).unwrap()));
    }

    #[test]
    fn electre_pair_satisfies_condition1(seed in any::<u64>(), raw in prop::collection::vec(scores(3), 1..12)) {
        let p = random_parameters(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        let actions: Vec<_> = raw.into_iter().enumerate().map(|(i, s)| Action::new(format!("a{i}"), s)).collect();
        prop_assert!(check_condition1(&p, &actions).unwrap().is_empty());
        prop_assert!(check_proposition1(&p, &actions).unwrap().is_empty());
    }

    #[test]
    fn possibility_complementary(b in proper_interval(), c in proper_interval()) {
        prop_assert!((possibility(b, c) + possibility(c, b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn possibility_monotone_in_shift(b in interval(), c in interval(), shift in 0.0..10.0f64) {
        let moved = IntervalNumber::new(b.lo() + shift, b.hi() + shift).unwrap();
        prop_assert!(possibility(moved, c) >= possibility(b, c) - 1e-12);
        prop_assert!((0.0..=1.0).contains(&possibility(b, c)));
    }

    #[test]
    fn degenerate_dominance_is_pareto(x in scores(5), y in scores(5), alpha in 0.5..=1.0f64) {
        let xi: Vec<_> = x.iter().map(|v| IntervalNumber::point(*v)).collect();
        let yi: Vec<_> = y.iter().map(|v| IntervalNumber::point(*v)).collect();
        for scale in [ScoreScale::Real, ScoreScale::Interval] {
            let got = interval_dominates(&xi, &yi, alpha, &[scale; 5]).unwrap();
            prop_assert_eq!(got, pareto_dominates(&x, &y).unwrap());
        }
    }

    #[test]
    fn interval_model_satisfies_condition1(raw in prop::collection::vec(prop::collection::vec((0.0..10.0f64, 0.0..3.0f64), 3), 1..10)) {
        let weights = vec![
            IntervalNumber::new(0.2, 0.4).unwrap(),
            IntervalNumber::new(0.3, 0.5).unwrap(),
            IntervalNumber::new(0.25, 0.35).unwrap(),
        ];
        let model = IntervalValueModel::new(weights, 0.75).unwrap();
        let actions: Vec<_> = raw
            .into_iter()
            .enumerate()
            .map(|(i, cells)| {
                let s = cells.into_iter().map(|(lo, w)| IntervalNumber::new(lo, lo + w).unwrap()).collect();
                Action::new(format!("i{i}"), s)
            })
            .collect();
        prop_assert!(check_condition1(&model, &actions).unwrap().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn validators_ignore_layer_order(seed in any::<u64>(), classes in 2..5usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = InstanceShape { classes, criteria: 3, max_layer_size: 3 };
        let (params, system) = random_valid_instance(&mut rng, shape, 500).unwrap();
        // add a random action to every upper layer so some reports are non-empty
        let extra = random_actions(&mut rng, &system, classes - 1);
        let noisy = BoundarySystem::new(
            system.class_names().to_vec(),
            system
                .boundaries()
                .iter()
                .zip(&extra)
                .map(|(b, e)| {
                    let mut upper = b.upper.clone();
                    upper.push(Action::new(format!("{}#{}", e.id, upper.len()), e.scores.clone()));
                    Boundary::new(upper, b.lower.clone())
                })
                .collect(),
        )
        .unwrap();
        let reversed = noisy.map_boundaries(|b| {
            let mut u = b.upper.clone();
            let mut l = b.lower.clone();
            u.reverse();
            l.reverse();
            Boundary::new(u, l)
        });
        for check in [validate_condition2, validate_condition3, validate_condition4] {
            let a = check(&noisy, &params).unwrap();
            let b = check(&reversed, &params).unwrap();
            prop_assert_eq!(sorted_violations(a.violations), sorted_violations(b.violations));
        }
    }

    #[test]
    fn model_file_round_trip(seed in any::<u64>(), classes in 2..6usize, flip in prop::collection::vec(any::<bool>(), 4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = InstanceShape { classes, criteria: 4, max_layer_size: 2 };
        let (model, system) = random_valid_instance(&mut rng, shape, 500).unwrap();
        let criteria = flip
            .iter()
            .enumerate()
            .map(|(j, f)| CriterionInfo { name: format!("g{j}"), direction: if *f { Direction::Min } else { Direction::Max } })
            .collect();
        let original = LoadedInstance::Electre(ElectreInstance::new(criteria, model, system).unwrap());
        let text = render_model(&original).unwrap();
        let reloaded = parse_model(&text, "round trip").unwrap();
        prop_assert_eq!(&reloaded, &original);
        prop_assert_eq!(render_model(&reloaded).unwrap(), text);
    }
}
