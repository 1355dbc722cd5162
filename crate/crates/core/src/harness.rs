//! Executable structural properties of the assignment rules, checked on a
//! concrete instance and an audit set of actions.
//!
//! A property whose hypotheses fail on the instance is reported as skipped with
//! the reason, never as failed: the rules still run, they just lose that
//! guarantee.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::assignment::{
    assign_scores, relation_at, transpose_action, transpose_system, transposed_class, Family, Rule,
};
use crate::boundary::{
    ensure_system_dimension, merge_classes, split_class, validate_condition2, validate_condition3, validate_condition4,
    BoundarySystem, Separability,
};
use crate::electre::ElectreParameters;
use crate::error::{Error, Result};
use crate::relation::{
    check_condition1, ensure_dimension, relation_kind, Action, PerformanceVector, RelationKind, RelationalModel,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum PropertyStatus {
    Pass,
    Fail,
    Skipped(String),
}

/// A replayable witness: the actions, boundaries, rule and classes involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub actions: Vec<String>,
    pub boundaries: Vec<usize>,
    pub rule: Option<Rule>,
    pub classes: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub status: PropertyStatus,
    /// Number of individual cases examined.
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl PropertyOutcome {
    fn skipped(property: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            property: property.into(),
            status: PropertyStatus::Skipped(reason.into()),
            checked: 0,
            counterexamples: Vec::new(),
        }
    }

    fn from_cases(property: impl Into<String>, checked: usize, counterexamples: Vec<Counterexample>) -> Self {
        let status = if counterexamples.is_empty() {
            PropertyStatus::Pass
        } else {
            PropertyStatus::Fail
        };
        Self {
            property: property.into(),
            status,
            checked,
            counterexamples,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == PropertyStatus::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    /// Seed of the audit sample, when it was generated.
    pub seed: Option<u64>,
    pub outcomes: Vec<PropertyOutcome>,
}

impl PropertyReport {
    fn single(outcome: PropertyOutcome) -> Self {
        Self {
            seed: None,
            outcomes: vec![outcome],
        }
    }

    pub fn merge(&mut self, other: PropertyReport) {
        self.outcomes.extend(other.outcomes);
    }

    /// No property failed. Skipped properties do not count as failures.
    pub fn is_clean(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != PropertyStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| o.status == PropertyStatus::Fail)
    }

    pub fn get(&self, property: &str) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| o.property == property)
    }

    /// Sorts outcomes by property name so reports compare independent of run order.
    pub fn sorted(mut self) -> Self {
        self.outcomes.sort_by(|a, b| a.property.cmp(&b.property));
        self
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(seed) = self.seed {
            writeln!(f, "seed {seed}")?;
        }
        for o in &self.outcomes {
            match &o.status {
                PropertyStatus::Pass => writeln!(f, "PASS  {} ({} cases)", o.property, o.checked)?,
                PropertyStatus::Fail => {
                    writeln!(f, "FAIL  {} ({} counterexamples)", o.property, o.counterexamples.len())?;
                    for c in o.counterexamples.iter().take(5) {
                        let rule = c.rule.map(|r| format!(" {r}")).unwrap_or_default();
                        writeln!(
                            f,
                            "      [{}]{rule} classes {:?}: {}",
                            c.actions.join(", "),
                            c.classes,
                            c.detail
                        )?;
                    }
                }
                PropertyStatus::Skipped(reason) => writeln!(f, "SKIP  {}: {reason}", o.property)?,
            }
        }
        Ok(())
    }
}

/// Selectable properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Condition1,
    Homogeneity,
    Independence,
    Monotonicity,
    TransitiveMonotonicity,
    Conformity,
    Stability,
    ScanMonotonicity,
    Transposition,
    Reduction,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Condition1,
        Property::Homogeneity,
        Property::Independence,
        Property::Monotonicity,
        Property::TransitiveMonotonicity,
        Property::Conformity,
        Property::Stability,
        Property::ScanMonotonicity,
        Property::Transposition,
        Property::Reduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Condition1 => "condition1",
            Property::Homogeneity => "homogeneity",
            Property::Independence => "independence",
            Property::Monotonicity => "monotonicity",
            Property::TransitiveMonotonicity => "transitive-monotonicity",
            Property::Conformity => "conformity",
            Property::Stability => "stability",
            Property::ScanMonotonicity => "scan-monotonicity",
            Property::Transposition => "transposition",
            Property::Reduction => "reduction",
        }
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::invalid("properties", format!("unknown property `{s}`")))
    }
}

fn ensure_actions<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Result<()> {
    ensure_system_dimension(model, system)?;
    actions.iter().try_for_each(|a| ensure_dimension(model, a))
}

/// Classes of every action under all four rules, indexed like [`Rule::ALL`].
fn classify_all<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Vec<[usize; 4]> {
    actions
        .iter()
        .map(|a| Rule::ALL.map(|r| assign_scores(model, &a.scores, system, r).class_index))
        .collect()
}

/// Checks the listed clauses; `Err(reason)` names the failing ones.
fn hypotheses<M: RelationalModel>(
    system: &BoundarySystem<M::Score>,
    model: &M,
    clauses: &[&str],
) -> Result<std::result::Result<(), String>> {
    let mut report = validate_condition2(system, model)?;
    if clauses.iter().any(|c| c.starts_with("3.")) {
        report.merge(validate_condition3(system, model)?);
    }
    if clauses.iter().any(|c| c.starts_with("4.")) {
        report.merge(validate_condition4(system, model)?);
    }
    let mut failing: Vec<&str> = report
        .violations
        .iter()
        .map(|v| v.condition.as_str())
        .filter(|c| c.starts_with("2.") || clauses.contains(c))
        .collect();
    failing.sort_unstable();
    failing.dedup();
    Ok(if failing.is_empty() {
        Ok(())
    } else {
        Err(format!("hypotheses not met: condition {} violated", failing.join(", ")))
    })
}

const S_SEPARABILITY_D: [&str; 4] = ["3.v", "3.vi", "3.vii", "3.viii"];
const P_SEPARABILITY_D: [&str; 2] = ["4.iv", "4.v"];

fn family_hypotheses(family: Family) -> &'static [&'static str] {
    match family {
        Family::S => &S_SEPARABILITY_D,
        Family::P => &P_SEPARABILITY_D,
    }
}

/// Condition 1 on the limiting actions plus the audit set.
pub fn check_condition1_on<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Result<PropertyReport>
where
    M::Score: Clone,
{
    let mut all: Vec<Action<M::Score>> = system.limiting_actions().map(|(_, _, a)| a.clone()).collect();
    all.extend(actions.iter().cloned());
    let report = check_condition1(model, &all)?;
    let n = all.len();
    let cexs = report
        .violations
        .iter()
        .map(|v| Counterexample {
            actions: v.witnesses.clone(),
            boundaries: Vec::new(),
            rule: None,
            classes: Vec::new(),
            detail: format!("{}: {}", v.condition, v.message),
        })
        .collect();
    Ok(PropertyReport::single(PropertyOutcome::from_cases(
        "condition1",
        n * n * n,
        cexs,
    )))
}

/// Actions relating identically to every limiting action get identical classes.
pub fn check_homogeneity<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Result<PropertyReport> {
    ensure_actions(model, system, actions)?;
    let limiting: Vec<_> = system.limiting_actions().map(|(_, _, a)| a).collect();
    let classes = classify_all(model, system, actions);
    let mut groups: HashMap<Vec<RelationKind>, usize> = HashMap::new();
    let mut cexs = Vec::new();
    for (i, a) in actions.iter().enumerate() {
        let profile: Vec<RelationKind> = limiting
            .iter()
            .map(|b| relation_kind(model, &a.scores, &b.scores))
            .collect();
        match groups.get(&profile) {
            Some(&first) => {
                for (r, rule) in Rule::ALL.into_iter().enumerate() {
                    if classes[first][r] != classes[i][r] {
                        cexs.push(Counterexample {
                            actions: vec![actions[first].id.clone(), a.id.clone()],
                            boundaries: Vec::new(),
                            rule: Some(rule),
                            classes: vec![classes[first][r], classes[i][r]],
                            detail: "identical relation profiles, different classes".into(),
                        });
                    }
                }
            }
            None => {
                groups.insert(profile, i);
            }
        }
    }
    Ok(PropertyReport::single(PropertyOutcome::from_cases(
        "homogeneity",
        actions.len(),
        cexs,
    )))
}

/// Assigning the audit set in reverse order changes nothing.
pub fn check_independence<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Result<PropertyReport> {
    ensure_actions(model, system, actions)?;
    let forward = classify_all(model, system, actions);
    let mut backward: Vec<[usize; 4]> = actions
        .iter()
        .rev()
        .map(|a| Rule::ALL.map(|r| assign_scores(model, &a.scores, system, r).class_index))
        .collect();
    backward.reverse();
    let cexs = actions
        .iter()
        .zip(forward.iter().zip(&backward))
        .filter(|(_, (f, b))| f != b)
        .map(|(a, (f, b))| Counterexample {
            actions: vec![a.id.clone()],
            boundaries: Vec::new(),
            rule: None,
            classes: f.iter().chain(b.iter()).copied().collect(),
            detail: "assignment depends on evaluation order".into(),
        })
        .collect();
    Ok(PropertyReport::single(PropertyOutcome::from_cases(
        "independence",
        actions.len(),
        cexs,
    )))
}

fn pairwise_monotonicity<M: RelationalModel>(
    name: &str,
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
    better: impl Fn(&[M::Score], &[M::Score]) -> bool,
    relation: &str,
) -> PropertyOutcome {
    let classes = classify_all(model, system, actions);
    let mut cexs = Vec::new();
    let mut checked = 0;
    for (iy, y) in actions.iter().enumerate() {
        for (ix, x) in actions.iter().enumerate() {
            if ix == iy || !better(&y.scores, &x.scores) {
                continue;
            }
            checked += 1;
            for (r, rule) in Rule::ALL.into_iter().enumerate() {
                if classes[iy][r] < classes[ix][r] {
                    cexs.push(Counterexample {
                        actions: vec![y.id.clone(), x.id.clone()],
                        boundaries: Vec::new(),
                        rule: Some(rule),
                        classes: vec![classes[iy][r], classes[ix][r]],
                        detail: format!("{} {relation} {} but lands in a lower class", y.id, x.id),
                    });
                }
            }
        }
    }
    PropertyOutcome::from_cases(name, checked, cexs)
}

/// `y D x` implies `class(y) ≥ class(x)` under every rule.
pub fn check_monotonicity<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Result<PropertyReport> {
    ensure_actions(model, system, actions)?;
    if let Err(reason) = hypotheses(system, model, &[])? {
        return Ok(PropertyReport::single(PropertyOutcome::skipped("monotonicity", reason)));
    }
    let outcome = pairwise_monotonicity(
        "monotonicity",
        model,
        system,
        actions,
        |a, b| model.dominates(a, b),
        "D",
    );
    Ok(PropertyReport::single(outcome))
}

/// With a transitive `S`, `y S x` implies `class(y) ≥ class(x)`.
pub fn check_transitive_monotonicity<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Result<PropertyReport> {
    ensure_actions(model, system, actions)?;
    const NAME: &str = "transitive-monotonicity";
    if !model.transitive_outranking() {
        return Ok(PropertyReport::single(PropertyOutcome::skipped(
            NAME,
            "model does not declare S transitive",
        )));
    }
    if let Err(reason) = hypotheses(system, model, &[])? {
        return Ok(PropertyReport::single(PropertyOutcome::skipped(NAME, reason)));
    }
    let outcome = pairwise_monotonicity(NAME, model, system, actions, |a, b| model.outranks(a, b), "S");
    Ok(PropertyReport::single(outcome))
}

/// Each limiting action lands in the class its layer declares, under both rules
/// of `family`.
pub fn check_conformity<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    family: Family,
) -> Result<PropertyReport> {
    ensure_system_dimension(model, system)?;
    let name = format!("conformity/{family}");
    let clauses: &[&str] = match family {
        Family::S => &["3.i", "3.ii", "3.iii", "3.iv"],
        Family::P => &["4.i", "4.ii", "4.iii", "4.iv", "4.v"],
    };
    if let Err(reason) = hypotheses(system, model, clauses)? {
        return Ok(PropertyReport::single(PropertyOutcome::skipped(name, reason)));
    }
    let mut cexs = Vec::new();
    let mut checked = 0;
    for (k, layer, a) in system.limiting_actions() {
        let declared = match layer {
            crate::boundary::Layer::Upper => k,
            crate::boundary::Layer::Lower => k + 1,
        };
        for rule in Rule::rules_of(family) {
            checked += 1;
            let got = assign_scores(model, &a.scores, system, rule).class_index;
            if got != declared {
                cexs.push(Counterexample {
                    actions: vec![a.id.clone()],
                    boundaries: vec![k],
                    rule: Some(rule),
                    classes: vec![got, declared],
                    detail: format!("assigned to C{got}, declared in C{declared}"),
                });
            }
        }
    }
    Ok(PropertyReport::single(PropertyOutcome::from_cases(name, checked, cexs)))
}

/// Merges at boundary `k` and checks that classes move as prescribed, then
/// re-splits with the removed boundary and checks every action returns to one
/// of the two restored classes (and unaffected actions keep theirs).
pub fn check_stability<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
    k: usize,
) -> Result<PropertyReport>
where
    M::Score: Clone,
{
    ensure_actions(model, system, actions)?;
    let merged = merge_classes(system, k)?;
    let removed = system.boundaries()[k - 1].clone();
    let names = (system.class_name(k).to_string(), system.class_name(k + 1).to_string());
    let before = classify_all(model, system, actions);
    let after_merge = classify_all(model, &merged, actions);
    let requirement_for = |family| match family {
        Family::S => Separability::Outranking,
        Family::P => Separability::Preference,
    };

    let mut report = PropertyReport::default();
    for family in [Family::S, Family::P] {
        let name = format!("stability[k={k}]/{family}");
        if let Err(reason) = hypotheses(system, model, family_hypotheses(family))? {
            report.outcomes.push(PropertyOutcome::skipped(name, reason));
            continue;
        }
        let resplit = match split_class(
            &merged,
            k,
            removed.clone(),
            names.clone(),
            model,
            requirement_for(family),
        ) {
            Ok(s) => Some(s),
            Err(Error::Rejected(_)) => None,
            Err(e) => return Err(e),
        };
        let after_split = resplit.as_ref().map(|s| classify_all(model, s, actions));

        let mut cexs = Vec::new();
        let mut checked = 0;
        for (i, a) in actions.iter().enumerate() {
            for (r, rule) in Rule::ALL.into_iter().enumerate() {
                if rule.family() != family {
                    continue;
                }
                checked += 1;
                let old = before[i][r];
                let expected = if old <= k { old } else { old - 1 };
                if after_merge[i][r] != expected {
                    cexs.push(Counterexample {
                        actions: vec![a.id.clone()],
                        boundaries: vec![k],
                        rule: Some(rule),
                        classes: vec![old, after_merge[i][r]],
                        detail: format!("after merging at B{k}: expected C'{expected}"),
                    });
                }
                if let Some(split) = &after_split {
                    let restored = split[i][r];
                    let ok = if old == k || old == k + 1 {
                        restored == k || restored == k + 1
                    } else {
                        restored == old
                    };
                    if !ok {
                        cexs.push(Counterexample {
                            actions: vec![a.id.clone()],
                            boundaries: vec![k],
                            rule: Some(rule),
                            classes: vec![old, restored],
                            detail: format!("after re-splitting C'{k}: class not restored"),
                        });
                    }
                }
            }
        }
        report.outcomes.push(PropertyOutcome::from_cases(name, checked, cexs));
    }
    Ok(report)
}

/// Stability at every merge index.
pub fn check_stability_all<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Result<PropertyReport>
where
    M::Score: Clone,
{
    let mut report = PropertyReport::default();
    for k in 1..=system.boundary_count() {
        report.merge(check_stability(model, system, actions, k)?);
    }
    Ok(report)
}

/// Over real boundaries, `x S B_k` is down-closed and `B_k S x` up-closed in `k`;
/// likewise for `P`.
pub fn check_boundary_scan_monotonicity<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Result<PropertyReport> {
    ensure_actions(model, system, actions)?;
    let n = system.boundary_count();
    let mut report = PropertyReport::default();
    for family in [Family::S, Family::P] {
        let name = format!("scan-monotonicity/{family}");
        if let Err(reason) = hypotheses(system, model, family_hypotheses(family))? {
            report.outcomes.push(PropertyOutcome::skipped(name, reason));
            continue;
        }
        let mut cexs = Vec::new();
        for a in actions {
            let flags: Vec<_> = (1..=n)
                .map(|k| relation_at(model, &a.scores, system, k, family))
                .collect();
            for h in 0..n {
                for k in h + 1..n {
                    // indices h < k, i.e. B_{h+1} below B_{k+1}
                    if flags[k].action_to_boundary && !flags[h].action_to_boundary {
                        cexs.push(Counterexample {
                            actions: vec![a.id.clone()],
                            boundaries: vec![k + 1, h + 1],
                            rule: None,
                            classes: Vec::new(),
                            detail: format!("x{family}B{} holds but x{family}B{} does not", k + 1, h + 1),
                        });
                    }
                    if flags[h].boundary_to_action && !flags[k].boundary_to_action {
                        cexs.push(Counterexample {
                            actions: vec![a.id.clone()],
                            boundaries: vec![h + 1, k + 1],
                            rule: None,
                            classes: Vec::new(),
                            detail: format!("B{}{family}x holds but B{}{family}x does not", h + 1, k + 1),
                        });
                    }
                }
            }
        }
        report
            .outcomes
            .push(PropertyOutcome::from_cases(name, actions.len(), cexs));
    }
    Ok(report)
}

/// Primal on the transposed problem equals dual on the original under
/// `k ↦ M + 1 − k`, in both families; transposing twice is the identity.
pub fn check_transposition(
    params: &ElectreParameters,
    system: &BoundarySystem<f64>,
    actions: &[PerformanceVector],
) -> Result<PropertyReport> {
    ensure_actions(params, system, actions)?;
    let m = system.class_count();
    let transposed = transpose_system(system);
    let mut report = PropertyReport::default();
    for family in [Family::S, Family::P] {
        let mut cexs = Vec::new();
        for a in actions {
            let ta = transpose_action(a);
            for rule in Rule::rules_of(family) {
                let original = assign_scores(params, &a.scores, system, rule).class_index;
                let mirrored = assign_scores(params, &ta.scores, &transposed, rule.transposed()).class_index;
                if transposed_class(mirrored, m) != original {
                    cexs.push(Counterexample {
                        actions: vec![a.id.clone()],
                        boundaries: Vec::new(),
                        rule: Some(rule),
                        classes: vec![original, mirrored],
                        detail: format!(
                            "{rule} gives C{original} but {} on the transposed problem gives C'{mirrored}",
                            rule.transposed()
                        ),
                    });
                }
            }
        }
        report.outcomes.push(PropertyOutcome::from_cases(
            format!("transposition/{family}"),
            actions.len() * 2,
            cexs,
        ));
    }
    let twice = transpose_system(&transposed);
    let involution = if twice == *system {
        Vec::new()
    } else {
        vec![Counterexample {
            actions: Vec::new(),
            boundaries: Vec::new(),
            rule: None,
            classes: Vec::new(),
            detail: "transposing twice does not restore the system".into(),
        }]
    };
    report
        .outcomes
        .push(PropertyOutcome::from_cases("transposition/involution", 1, involution));
    Ok(report)
}

/// Reference descending rule over single-layer boundaries: first `k` from the
/// top where some profile is outranked by `x` and no profile is preferred to `x`.
fn pseudo_conjunctive<M: RelationalModel>(model: &M, x: &[M::Score], system: &BoundarySystem<M::Score>) -> usize {
    for k in (1..=system.boundary_count()).rev() {
        let profiles = &system.boundaries()[k - 1].lower;
        let outranks_one = profiles.iter().any(|b| model.outranks(x, &b.scores));
        let beaten = profiles
            .iter()
            .any(|b| model.outranks(&b.scores, x) && !model.outranks(x, &b.scores));
        if outranks_one && !beaten {
            return k + 1;
        }
    }
    1
}

/// Reference ascending rule: first `k` from the bottom where some profile is
/// preferred to `x` and `x` is preferred to none.
fn pseudo_disjunctive<M: RelationalModel>(model: &M, x: &[M::Score], system: &BoundarySystem<M::Score>) -> usize {
    for k in 1..=system.boundary_count() {
        let profiles = &system.boundaries()[k - 1].lower;
        let strictly = |a: &[M::Score], b: &[M::Score]| model.outranks(a, b) && !model.outranks(b, a);
        let some_better = profiles.iter().any(|b| strictly(&b.scores, x));
        let x_better = profiles.iter().any(|b| strictly(x, &b.scores));
        if some_better && !x_better {
            return k;
        }
    }
    system.class_count()
}

/// With upper layers stripped, the primal rules agree with the single-layer
/// pseudo-conjunctive and pseudo-disjunctive references.
pub fn check_trinb_reduction<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
) -> Result<PropertyReport>
where
    M::Score: Clone,
{
    ensure_actions(model, system, actions)?;
    let stripped = system.without_upper_layers();
    let mut report = PropertyReport::default();
    for (rule, name) in [
        (Rule::SPrimal, "reduction/pseudo-conjunctive"),
        (Rule::PPrimal, "reduction/pseudo-disjunctive"),
    ] {
        let mut cexs = Vec::new();
        for a in actions {
            let got = assign_scores(model, &a.scores, &stripped, rule).class_index;
            let reference = match rule {
                Rule::SPrimal => pseudo_conjunctive(model, &a.scores, &stripped),
                _ => pseudo_disjunctive(model, &a.scores, &stripped),
            };
            if got != reference {
                cexs.push(Counterexample {
                    actions: vec![a.id.clone()],
                    boundaries: Vec::new(),
                    rule: Some(rule),
                    classes: vec![got, reference],
                    detail: format!("{rule} gives C{got}, reference gives C{reference}"),
                });
            }
        }
        report
            .outcomes
            .push(PropertyOutcome::from_cases(name, actions.len(), cexs));
    }
    Ok(report)
}

/// Runs the selected model-independent properties. Transposition needs an
/// ELECTRE instance and is reported skipped here; see [`run_electre_properties`].
pub fn run_properties<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
    selection: &[Property],
) -> Result<PropertyReport>
where
    M::Score: Clone,
{
    let mut report = PropertyReport::default();
    for property in selection {
        let part = match property {
            Property::Condition1 => check_condition1_on(model, system, actions)?,
            Property::Homogeneity => check_homogeneity(model, system, actions)?,
            Property::Independence => check_independence(model, system, actions)?,
            Property::Monotonicity => check_monotonicity(model, system, actions)?,
            Property::TransitiveMonotonicity => check_transitive_monotonicity(model, system, actions)?,
            Property::Conformity => {
                let mut r = check_conformity(model, system, Family::S)?;
                r.merge(check_conformity(model, system, Family::P)?);
                r
            }
            Property::Stability => check_stability_all(model, system, actions)?,
            Property::ScanMonotonicity => check_boundary_scan_monotonicity(model, system, actions)?,
            Property::Transposition => PropertyReport::single(PropertyOutcome::skipped(
                "transposition",
                "requires an ELECTRE instance",
            )),
            Property::Reduction => check_trinb_reduction(model, system, actions)?,
        };
        report.merge(part);
    }
    Ok(report)
}

pub fn run_electre_properties(
    params: &ElectreParameters,
    system: &BoundarySystem<f64>,
    actions: &[PerformanceVector],
    selection: &[Property],
) -> Result<PropertyReport> {
    let generic: Vec<Property> = selection
        .iter()
        .copied()
        .filter(|p| *p != Property::Transposition)
        .collect();
    let mut report = run_properties(params, system, actions, &generic)?;
    if selection.contains(&Property::Transposition) {
        report.merge(check_transposition(params, system, actions)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::LoadedInstance;
    use crate::io::parse_model;

    fn example(text: &str) -> (ElectreParameters, BoundarySystem<f64>) {
        match parse_model(text, "test").unwrap() {
            LoadedInstance::Electre(i) => (i.model, i.system),
            _ => unreachable!(),
        }
    }

    fn example1() -> (ElectreParameters, BoundarySystem<f64>) {
        example(include_str!("../data/example1.model"))
    }

    fn example2() -> (ElectreParameters, BoundarySystem<f64>) {
        example(include_str!("../data/example2.model"))
    }

    fn limiting(system: &BoundarySystem<f64>) -> Vec<PerformanceVector> {
        system.limiting_actions().map(|(_, _, a)| a.clone()).collect()
    }

    fn x1() -> PerformanceVector {
        Action::new("x", vec![2.0, 1.0, 2.0, 1.0, 2.0])
    }

    /// Outranks on the first criterion only, dominates by reverse Pareto: breaks `xDy ⇒ xSy`.
    struct Backwards;

    impl RelationalModel for Backwards {
        type Score = f64;
        fn criteria_count(&self) -> usize {
            2
        }
        fn outranks(&self, x: &[f64], y: &[f64]) -> bool {
            x[0] >= y[0]
        }
        fn dominates(&self, x: &[f64], y: &[f64]) -> bool {
            x.iter().zip(y).all(|(a, b)| a <= b)
        }
    }

    fn backwards_system() -> BoundarySystem<f64> {
        BoundarySystem::new(
            vec!["C1".into(), "C2".into()],
            vec![crate::boundary::Boundary::new(
                vec![Action::new("u", vec![1.0, 1.0])],
                vec![Action::new("l", vec![2.0, 2.0])],
            )],
        )
        .unwrap()
    }

    #[test]
    fn homogeneity_duplicate_action() {
        let (p, s) = example1();
        let mut audit = limiting(&s);
        audit.push(x1());
        audit.push(Action::new("x copy", x1().scores));
        let report = check_homogeneity(&p, &s, &audit).unwrap();
        assert!(report.outcomes[0].passed(), "{report}");
    }

    #[test]
    fn homogeneity_inside_indifference_band() {
        // q = 0.1 on g1 of example 2: nudging within it leaves every profile unchanged
        let (p, s) = example2();
        let a = Action::new("a", vec![4.0, 4.0, 4.0, 4.0]);
        let b = Action::new("b", vec![4.05, 4.0, 4.0, 4.0]);
        let la: Vec<_> = s
            .limiting_actions()
            .map(|(_, _, l)| relation_kind(&p, &a.scores, &l.scores))
            .collect();
        let lb: Vec<_> = s
            .limiting_actions()
            .map(|(_, _, l)| relation_kind(&p, &b.scores, &l.scores))
            .collect();
        assert_eq!(la, lb);
        let report = check_homogeneity(&p, &s, &[a, b]).unwrap();
        assert!(report.outcomes[0].passed());
        assert_eq!(report.outcomes[0].checked, 2);
    }

    #[test]
    fn monotonicity_fails_with_witness_on_broken_model() {
        let s = backwards_system();
        let audit = vec![Action::new("hi", vec![3.0, 5.0]), Action::new("lo", vec![0.0, 0.0])];
        // lo D hi under the reversed dominance, but hi outranks l and lo does not
        let report = check_monotonicity(&Backwards, &s, &audit).unwrap();
        let outcome = &report.outcomes[0];
        assert_eq!(outcome.status, PropertyStatus::Fail);
        let c = &outcome.counterexamples[0];
        assert_eq!(c.actions, vec!["lo".to_string(), "hi".to_string()]);
        assert!(c.rule.is_some());
        assert!(c.classes[0] < c.classes[1]);
    }

    #[test]
    fn monotonicity_with_bumped_actions() {
        let (p, s) = example1();
        let mut audit = limiting(&s);
        let x = x1();
        let mut y = x.scores.clone();
        y[3] += 0.25;
        audit.push(x);
        audit.push(Action::new("y", y));
        let report = check_monotonicity(&p, &s, &audit).unwrap();
        assert!(report.outcomes[0].passed());
        assert!(report.outcomes[0].checked > 0);
    }

    #[test]
    fn transitive_monotonicity_skipped_for_electre() {
        let (p, s) = example1();
        let report = check_transitive_monotonicity(&p, &s, &[x1()]).unwrap();
        assert!(matches!(report.outcomes[0].status, PropertyStatus::Skipped(_)));
    }

    #[test]
    fn conformity_by_family() {
        let (p1, s1) = example1();
        assert!(check_conformity(&p1, &s1, Family::S).unwrap().outcomes[0].passed());
        assert!(check_conformity(&p1, &s1, Family::P).unwrap().outcomes[0].passed());
        let (p2, s2) = example2();
        let s = check_conformity(&p2, &s2, Family::S).unwrap();
        assert!(s.outcomes[0].passed());
        assert_eq!(s.outcomes[0].checked, 28);
        let p = check_conformity(&p2, &s2, Family::P).unwrap();
        match &p.outcomes[0].status {
            PropertyStatus::Skipped(reason) => assert!(reason.contains("4.iii"), "{reason}"),
            other => panic!("expected skip, got {other:?}"),
        }
    }

    #[test]
    fn stability_example2_merge4() {
        let (p, s) = example2();
        let mut audit = limiting(&s);
        audit.push(Action::new("x", vec![4.0; 4]));
        let report = check_stability(&p, &s, &audit, 4).unwrap();
        let outcome = report.get("stability[k=4]/S").unwrap();
        assert!(outcome.passed(), "{report}");
        assert_eq!(outcome.checked, audit.len() * 2);
    }

    #[test]
    fn stability_example1_merge1_both_families() {
        let (p, s) = example1();
        let mut audit = limiting(&s);
        audit.push(x1());
        let report = check_stability(&p, &s, &audit, 1).unwrap();
        assert_eq!(report.outcomes.len(), 2);
        assert!(
            report.is_clean() && report.outcomes.iter().all(PropertyOutcome::passed),
            "{report}"
        );
    }

    #[test]
    fn stability_rejects_bad_index() {
        let (p, s) = example1();
        assert!(check_stability(&p, &s, &[], 0).is_err());
        assert!(check_stability(&p, &s, &[], 3).is_err());
    }

    #[test]
    fn scan_flags_of_example1_x() {
        let (p, s) = example1();
        let flags: Vec<bool> = (1..=2)
            .map(|k| relation_at(&p, &x1().scores, &s, k, Family::S).action_to_boundary)
            .collect();
        assert_eq!(flags, vec![true, false]);
        let report = check_boundary_scan_monotonicity(&p, &s, &[x1()]).unwrap();
        assert!(report.is_clean() && report.outcomes.iter().all(PropertyOutcome::passed));
    }

    #[test]
    fn scan_flags_of_example2_x() {
        let (p, s) = example2();
        let x = [4.0; 4];
        let flags: Vec<bool> = (1..=7)
            .map(|k| relation_at(&p, &x, &s, k, Family::S).boundary_to_action)
            .collect();
        assert_eq!(flags, vec![false, false, false, true, true, true, true]);
    }

    #[test]
    fn scan_single_boundary_is_vacuous() {
        let (p, s) = example1();
        let merged = merge_classes(&s, 1).unwrap();
        let report = check_boundary_scan_monotonicity(&p, &merged, &[x1()]).unwrap();
        assert!(report.is_clean());
    }

    #[test]
    fn swapped_boundaries_skip_separability_properties() {
        let (p, s) = example2();
        let mut b = s.boundaries().to_vec();
        b.swap(2, 5);
        let broken = BoundarySystem::new(s.class_names().to_vec(), b).unwrap();
        let report = check_boundary_scan_monotonicity(&p, &broken, &limiting(&broken)).unwrap();
        assert!(report
            .outcomes
            .iter()
            .all(|o| matches!(o.status, PropertyStatus::Skipped(_))));
    }

    #[test]
    fn transposition_examples() {
        let (p, s) = example1();
        let mut audit = limiting(&s);
        audit.push(x1());
        let report = check_transposition(&p, &s, &audit).unwrap();
        assert_eq!(report.outcomes.len(), 3);
        assert!(report.outcomes.iter().all(PropertyOutcome::passed), "{report}");
        let (p, s) = example2();
        let report = check_transposition(&p, &s, &[Action::new("x", vec![4.0; 4])]).unwrap();
        assert!(report.get("transposition/S").unwrap().passed());
    }

    #[test]
    fn reduction_examples() {
        let (p, s) = example2();
        let audit: Vec<_> = (0..=8)
            .map(|v| Action::new(format!("d{v}"), vec![v as f64; 4]))
            .collect();
        assert!(check_trinb_reduction(&p, &s, &audit)
            .unwrap()
            .outcomes
            .iter()
            .all(PropertyOutcome::passed));
        assert!(check_trinb_reduction(&p, &s, &[]).unwrap().is_clean());
    }

    /// With one profile per boundary the references collapse to the classic
    /// single-profile pessimistic and optimistic rules.
    #[test]
    fn reduction_single_profile_matches_classic_rules() {
        let (p, s) = example2();
        let stripped = s.without_upper_layers();
        for v in 0..=16 {
            let x = vec![v as f64 * 0.5; 4];
            let pessimistic = (1..=7)
                .rev()
                .find(|&k| p.crisp_s(&x, &stripped.boundaries()[k - 1].lower[0].scores).unwrap())
                .map_or(1, |k| k + 1);
            let strict = |a: &[f64], b: &[f64]| p.crisp_s(a, b).unwrap() && !p.crisp_s(b, a).unwrap();
            let optimistic = (1..=7)
                .find(|&k| strict(&stripped.boundaries()[k - 1].lower[0].scores, &x))
                .unwrap_or(8);
            assert_eq!(
                assign_scores(&p, &x, &stripped, Rule::SPrimal).class_index,
                pessimistic,
                "x = {x:?}"
            );
            assert_eq!(
                assign_scores(&p, &x, &stripped, Rule::PPrimal).class_index,
                optimistic,
                "x = {x:?}"
            );
        }
    }

    #[test]
    fn independence_and_order() {
        let (p, s) = example1();
        let mut audit = limiting(&s);
        audit.push(x1());
        assert!(check_independence(&p, &s, &audit).unwrap().outcomes[0].passed());
    }

    #[test]
    fn run_electre_properties_is_clean_on_example1() {
        let (p, s) = example1();
        let mut audit = limiting(&s);
        audit.push(x1());
        let report = run_electre_properties(&p, &s, &audit, &Property::ALL).unwrap().sorted();
        assert!(report.is_clean(), "{report}");
        let names: Vec<_> = report.outcomes.iter().map(|o| o.property.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("nonsense".parse::<Property>().is_err());
    }
}
