//! Seeded random instances and audit samples.

use rand::Rng;

use crate::boundary::{validate_condition2, validate_condition3, validate_condition4, Boundary, BoundarySystem};
use crate::electre::{CriterionThresholds, ElectreParameters, VetoThresholds};
use crate::interval::IntervalNumber;
use crate::relation::{Action, PerformanceVector};

/// Size of a random instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceShape {
    pub classes: usize,
    pub criteria: usize,
    /// Each layer gets between 1 and this many actions.
    pub max_layer_size: usize,
}

fn round_to(v: f64, step: f64) -> f64 {
    (v / step).round() * step
}

pub fn random_parameters<R: Rng>(rng: &mut R, criteria: usize) -> ElectreParameters {
    let raw: Vec<f64> = (0..criteria).map(|_| rng.gen_range(1.0..3.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let head: f64 = weights[..criteria - 1].iter().sum();
    weights[criteria - 1] = 1.0 - head;
    let thresholds = weights
        .into_iter()
        .map(|weight| {
            let q = round_to(rng.gen_range(0.0..0.3), 0.05);
            let p = q + round_to(rng.gen_range(0.3..1.0), 0.05);
            let veto = rng.gen_bool(0.8).then(|| {
                let pre_veto = p + round_to(rng.gen_range(0.2..1.0), 0.05);
                VetoThresholds {
                    pre_veto,
                    veto: pre_veto + round_to(rng.gen_range(0.1..1.0), 0.05),
                }
            });
            CriterionThresholds {
                weight,
                indifference: q,
                preference: p,
                veto,
            }
        })
        .collect();
    let lambda = round_to(rng.gen_range(0.55..0.9), 0.05);
    ElectreParameters::new(thresholds, lambda).expect("generated parameters are valid")
}

fn candidate_system<R: Rng>(rng: &mut R, params: &ElectreParameters, shape: InstanceShape) -> BoundarySystem<f64> {
    let m = shape.criteria;
    let thresholds = params.criteria();
    let noise: Vec<f64> = thresholds
        .iter()
        .map(|c| rng.gen_range(0.0..=c.preference + 0.5))
        .collect();
    let offset: Vec<f64> = thresholds
        .iter()
        .zip(&noise)
        .map(|(c, n)| 0.5 * n + rng.gen_range(0.3 * c.preference..1.2 * c.preference))
        .collect();
    let mut base: Vec<f64> = (0..m).map(|_| round_to(rng.gen_range(0.0..1.0), 0.25)).collect();
    let mut boundaries = Vec::with_capacity(shape.classes - 1);
    for k in 1..shape.classes {
        let mut layer = |tag: char, shift: &dyn Fn(usize) -> f64| -> Vec<PerformanceVector> {
            let count = rng.gen_range(1..=shape.max_layer_size);
            (1..=count)
                .map(|i| {
                    let scores = (0..m)
                        .map(|j| round_to(base[j] + shift(j) + rng.gen_range(0.0..=noise[j]), 0.05))
                        .collect();
                    Action::new(format!("b{tag}{k},{i}"), scores)
                })
                .collect()
        };
        let upper = layer('U', &|_| 0.0);
        let lower = layer('L', &|j| offset[j]);
        boundaries.push(Boundary::new(upper, lower));
        for (j, b) in base.iter_mut().enumerate() {
            *b += offset[j] + noise[j] + rng.gen_range(0.0..1.0) * thresholds[j].preference;
        }
    }
    let names = (1..=shape.classes).map(|c| format!("C{c}")).collect();
    BoundarySystem::new(names, boundaries).expect("generated system is well formed")
}

/// A random ELECTRE instance whose boundaries satisfy Conditions 2, 3 and 4.
///
/// Candidates are drawn until one validates; `None` after `attempts` failures.
pub fn random_valid_instance<R: Rng>(
    rng: &mut R,
    shape: InstanceShape,
    attempts: usize,
) -> Option<(ElectreParameters, BoundarySystem<f64>)> {
    assert!(shape.classes >= 2 && shape.criteria >= 1 && shape.max_layer_size >= 1);
    for _ in 0..attempts {
        let params = random_parameters(rng, shape.criteria);
        let system = candidate_system(rng, &params, shape);
        let valid = [validate_condition2, validate_condition3, validate_condition4]
            .iter()
            .all(|check| check(&system, &params).map(|r| r.is_empty()).unwrap_or(false));
        if valid {
            return Some((params, system));
        }
    }
    None
}

/// Uniform actions on a 0.5 grid spanning the limiting actions plus a margin,
/// each followed by a weakly dominating variant so dominance pairs occur.
pub fn random_actions<R: Rng>(rng: &mut R, system: &BoundarySystem<f64>, count: usize) -> Vec<PerformanceVector> {
    let Some(m) = system.criteria_count() else {
        return Vec::new();
    };
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for (_, _, a) in system.limiting_actions() {
        for (j, s) in a.scores.iter().enumerate() {
            lo[j] = lo[j].min(*s);
            hi[j] = hi[j].max(*s);
        }
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let i = out.len();
        let scores: Vec<f64> = (0..m)
            .map(|j| round_to(rng.gen_range(lo[j] - 1.0..=hi[j] + 1.0), 0.5))
            .collect();
        if i % 2 == 1 {
            let prev: &PerformanceVector = &out[i - 1];
            let bumped = prev
                .scores
                .iter()
                .map(|s| {
                    s + if rng.gen_bool(0.5) {
                        round_to(rng.gen_range(0.0..1.0), 0.5)
                    } else {
                        0.0
                    }
                })
                .collect();
            out.push(Action::new(format!("a{i}"), bumped));
        } else {
            out.push(Action::new(format!("a{i}"), scores));
        }
    }
    out
}

/// Limiting actions followed by `extra` random actions.
pub fn audit_set<R: Rng>(rng: &mut R, system: &BoundarySystem<f64>, extra: usize) -> Vec<PerformanceVector> {
    let mut actions: Vec<PerformanceVector> = system.limiting_actions().map(|(_, _, a)| a.clone()).collect();
    actions.extend(random_actions(rng, system, extra));
    actions
}

/// Random nonnegative interval actions inside the hull of the limiting actions
/// (or `[0, 10]` when the system has none), widened by one unit.
pub fn random_interval_actions<R: Rng>(
    rng: &mut R,
    system: &BoundarySystem<IntervalNumber>,
    criteria: usize,
    count: usize,
) -> Vec<Action<IntervalNumber>> {
    let mut lo = vec![f64::INFINITY; criteria];
    let mut hi = vec![f64::NEG_INFINITY; criteria];
    for (_, _, a) in system.limiting_actions() {
        for (j, s) in a.scores.iter().enumerate() {
            lo[j] = lo[j].min(s.lo());
            hi[j] = hi[j].max(s.hi());
        }
    }
    let bounds: Vec<(f64, f64)> = lo
        .into_iter()
        .zip(hi)
        .map(|(l, h)| {
            if l.is_finite() {
                ((l - 1.0).max(0.0), h + 1.0)
            } else {
                (0.0, 10.0)
            }
        })
        .collect();
    (0..count)
        .map(|i| {
            let scores = bounds
                .iter()
                .map(|&(l, h)| {
                    let a = round_to(rng.gen_range(l..=h), 0.25);
                    let b = round_to(rng.gen_range(l..=h), 0.25);
                    IntervalNumber::new(a.min(b), a.max(b)).expect("ordered finite bounds")
                })
                .collect();
            Action::new(format!("a{i}"), scores)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SHAPE: InstanceShape = InstanceShape {
        classes: 4,
        criteria: 3,
        max_layer_size: 3,
    };

    #[test]
    fn same_seed_same_instance() {
        let a = random_valid_instance(&mut ChaCha8Rng::seed_from_u64(9), SHAPE, 500).unwrap();
        let b = random_valid_instance(&mut ChaCha8Rng::seed_from_u64(9), SHAPE, 500).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn instances_are_valid_and_shaped() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (params, system) = random_valid_instance(&mut rng, SHAPE, 500).unwrap();
        assert_eq!(system.class_count(), 4);
        assert_eq!(system.criteria_count(), Some(3));
        assert!(system
            .boundaries()
            .iter()
            .all(|b| (1..=3).contains(&b.upper.len()) && (1..=3).contains(&b.lower.len())));
        assert!(validate_condition3(&system, &params).unwrap().is_empty());
        let actions = random_actions(&mut rng, &system, 10);
        assert_eq!(actions.len(), 10);
        // odd entries weakly dominate their predecessor
        for pair in actions.chunks(2) {
            assert!(pair[1].scores.iter().zip(&pair[0].scores).all(|(b, a)| b >= a));
        }
    }

    #[test]
    fn interval_actions_are_nonnegative() {
        let empty: BoundarySystem<IntervalNumber> = BoundarySystem::new(vec!["only".into()], vec![]).unwrap();
        let acts = random_interval_actions(&mut ChaCha8Rng::seed_from_u64(1), &empty, 2, 20);
        assert!(acts
            .iter()
            .flat_map(|a| &a.scores)
            .all(|s| s.lo() >= 0.0 && s.lo() <= s.hi()));
    }
}
