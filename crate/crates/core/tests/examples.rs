//! Fixed checks on the two bundled instances.

use limitsort::io::parse_model;
use limitsort::{
    check_condition1, check_proposition1, classify_pair, derive_preference, pareto_dominates, Action, BoundarySystem,
    ElectreParameters, LoadedInstance, PerformanceVector, RelationKind,
};

fn electre(text: &str) -> (ElectreParameters, BoundarySystem<f64>) {
    match parse_model(text, "bundled").unwrap() {
        LoadedInstance::Electre(i) => (i.model, i.system),
        LoadedInstance::IntervalValue(_) => unreachable!(),
    }
}

fn example1() -> (ElectreParameters, BoundarySystem<f64>) {
    electre(include_str!("../data/example1.model"))
}

fn example2() -> (ElectreParameters, BoundarySystem<f64>) {
    electre(include_str!("../data/example2.model"))
}

fn get(system: &BoundarySystem<f64>, id: &str) -> PerformanceVector {
    system
        .limiting_actions()
        .find(|(_, _, a)| a.id == id)
        .unwrap()
        .2
        .clone()
}

fn x1() -> PerformanceVector {
    Action::new("x", vec![2.0, 1.0, 2.0, 1.0, 2.0])
}

#[test]
fn example2_first_boundary_by_hand() {
    // bU1,1 = (0.5, 2, 1, 0.5), bL1,1 = (1, 0.5, 0, 1): deficits 0.5, -1.5, -1, 0.5; no veto in range
    let c1 = (1.2 - 0.5) / (1.2 - 0.1);
    let c4 = (1.1 - 0.5) / (1.1 - 0.1);
    let expected = 0.24 * c1 + 0.23 + 0.27 + 0.26 * c4;
    let (p, s) = example2();
    let sigma = p
        .credibility(&get(&s, "bU1,1").scores, &get(&s, "bL1,1").scores)
        .unwrap();
    assert!((sigma - expected).abs() < 1e-12);
    assert!((sigma - 0.809).abs() < 0.001);
}

#[test]
fn example2_last_boundary_and_scan() {
    let (p, s) = example2();
    let sigma = p
        .credibility(&get(&s, "bU7,1").scores, &get(&s, "bL7,1").scores)
        .unwrap();
    assert!((sigma - 0.544).abs() < 0.001);
    let x = [4.0; 4];
    assert!(!p.crisp_s(&x, &get(&s, "bL4,1").scores).unwrap());
    assert!(p.crisp_s(&get(&s, "bU4,1").scores, &x).unwrap());
    assert!((p.credibility(&get(&s, "bU3,1").scores, &x).unwrap() - 0.033).abs() < 0.001);
}

#[test]
fn example1_veto_cancels_outranking() {
    let (p, s) = example1();
    let (u, l) = (get(&s, "bU2,1"), get(&s, "bL2,1"));
    // deficit 1.5 on g1 reaches v
    assert_eq!(p.discordance_marginal(0, &u.scores, &l.scores).unwrap(), 1.0);
    assert_eq!(p.credibility(&u.scores, &l.scores).unwrap(), 0.0);
}

#[test]
fn example1_cut_at_lambda_is_inclusive() {
    let (p, s) = example1();
    let (l, u) = (get(&s, "bL2,1"), get(&s, "bU2,1"));
    let sigma = p.credibility(&l.scores, &u.scores).unwrap();
    assert!((sigma - 0.6).abs() < 1e-9);
    assert!(p.crisp_s(&l.scores, &u.scores).unwrap());
    assert!(derive_preference(&p, &l, &u).unwrap());
}

#[test]
fn example1_relations_with_x() {
    let (p, s) = example1();
    let x = x1();
    let cases = [
        // x also dominates bU1,1, so the full notation is "D, P"
        (
            "bU1,1",
            RelationKind::Dominance {
                orientation: limitsort::relation::Orientation::Forward,
                strict: true,
            },
        ),
        (
            "bL1,1",
            RelationKind::Preference(limitsort::relation::Orientation::Forward),
        ),
        ("bU2,1", RelationKind::Indifference),
        ("bL2,1", RelationKind::Incomparable),
        ("bL2,2", RelationKind::Incomparable),
    ];
    for (id, _) in &cases[..2] {
        assert!(derive_preference(&p, &x, &get(&s, id)).unwrap());
    }
    for (id, want) in cases {
        assert_eq!(classify_pair(&p, &x, &get(&s, id)).unwrap(), want, "x vs {id}");
    }
    assert!(pareto_dominates(&get(&s, "bL2,1").scores, &get(&s, "bL1,1").scores).unwrap());
    assert!(!pareto_dominates(&get(&s, "bL2,1").scores, &get(&s, "bL2,2").scores).unwrap());
    assert!(!derive_preference(&p, &get(&s, "bL2,1"), &get(&s, "bL2,2")).unwrap());
}

#[test]
fn condition1_and_proposition1_on_examples() {
    for (p, s) in [example1(), example2()] {
        let mut actions: Vec<PerformanceVector> = s.limiting_actions().map(|(_, _, a)| a.clone()).collect();
        actions.push(Action::new("probe", vec![4.0; s.criteria_count().unwrap()]));
        assert!(check_condition1(&p, &actions).unwrap().is_empty());
        assert!(check_proposition1(&p, &actions).unwrap().is_empty());
    }
    let (p, s) = example1();
    let mut actions: Vec<PerformanceVector> = s.limiting_actions().map(|(_, _, a)| a.clone()).collect();
    actions.push(x1());
    assert!(check_condition1(&p, &actions).unwrap().is_empty());
}
