//! Relations between an action and a limiting boundary, the four assignment
//! rules, conjoint class intervals, and the transposition operation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boundary::{Boundary, BoundarySystem};
use crate::error::{Error, Result};
use crate::instance::ElectreInstance;
use crate::relation::{ensure_dimension, Action, PerformanceVector, RelationalModel};

/// Which base relation a rule exploits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    S,
    P,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::S => "S",
            Family::P => "P",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Descending scan for the first `x S B_k`; class `k+1`.
    SPrimal,
    /// Ascending scan for the first `B_k S x`; class `k`.
    SDual,
    /// Ascending scan for the first `B_k P x`; class `k`.
    PPrimal,
    /// Descending scan for the first `x P B_k`; class `k+1`.
    PDual,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::SPrimal, Rule::SDual, Rule::PPrimal, Rule::PDual];

    pub fn family(self) -> Family {
        match self {
            Rule::SPrimal | Rule::SDual => Family::S,
            Rule::PPrimal | Rule::PDual => Family::P,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::SPrimal => "s-primal",
            Rule::SDual => "s-dual",
            Rule::PPrimal => "p-primal",
            Rule::PDual => "p-dual",
        }
    }

    /// The rule of the same family it corresponds to under transposition.
    pub fn transposed(self) -> Self {
        match self {
            Rule::SPrimal => Rule::SDual,
            Rule::SDual => Rule::SPrimal,
            Rule::PPrimal => Rule::PDual,
            Rule::PDual => Rule::PPrimal,
        }
    }

    pub fn rules_of(family: Family) -> [Rule; 2] {
        match family {
            Family::S => [Rule::SPrimal, Rule::SDual],
            Family::P => [Rule::PPrimal, Rule::PDual],
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::invalid("rule", format!("unknown rule `{s}`")))
    }
}

/// Relation between an action `x` and boundary `B_k` within one family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryRelation {
    pub family: Family,
    /// `x S B_k` (or `x P B_k`).
    pub action_to_boundary: bool,
    /// `B_k S x` (or `B_k P x`).
    pub boundary_to_action: bool,
}

impl BoundaryRelation {
    /// Display symbol: `S`, `S⁻¹`, `S/S⁻¹`, `Inc_S` (likewise for `P`).
    pub fn symbol(&self) -> String {
        let f = self.family;
        match (self.action_to_boundary, self.boundary_to_action) {
            (true, true) => format!("{f}/{f}⁻¹"),
            (true, false) => f.to_string(),
            (false, true) => format!("{f}⁻¹"),
            (false, false) => format!("Inc_{f}"),
        }
    }
}

fn relation_to_boundary<M: RelationalModel>(
    model: &M,
    x: &[M::Score],
    boundary: &Boundary<M::Score>,
    family: Family,
) -> BoundaryRelation {
    let prefers = |a: &[M::Score], b: &[M::Score]| model.prefers(a, b);
    let preferred_to_x = boundary.actions().any(|z| prefers(&z.scores, x));
    let x_preferred = boundary.actions().any(|z| prefers(x, &z.scores));
    let (action_to_boundary, boundary_to_action) = match family {
        Family::S => (
            !preferred_to_x && boundary.lower.iter().any(|w| model.outranks(x, &w.scores)),
            !x_preferred && boundary.upper.iter().any(|w| model.outranks(&w.scores, x)),
        ),
        Family::P => (x_preferred && !preferred_to_x, preferred_to_x && !x_preferred),
    };
    BoundaryRelation {
        family,
        action_to_boundary,
        boundary_to_action,
    }
}

/// Relation against `B_k` for `0 ≤ k ≤ M`; `B_0` and `B_M` are the virtual
/// anti-ideal and ideal actions.
pub(crate) fn relation_at<M: RelationalModel>(
    model: &M,
    x: &[M::Score],
    system: &BoundarySystem<M::Score>,
    k: usize,
    family: Family,
) -> BoundaryRelation {
    let m = system.class_count();
    let sentinel = |action_to_boundary, boundary_to_action| BoundaryRelation {
        family,
        action_to_boundary,
        boundary_to_action,
    };
    if k == 0 {
        sentinel(true, false)
    } else if k >= m {
        sentinel(false, true)
    } else {
        relation_to_boundary(model, x, &system.boundaries()[k - 1], family)
    }
}

fn checked_relation<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    system: &BoundarySystem<M::Score>,
    k: usize,
    family: Family,
) -> Result<BoundaryRelation> {
    ensure_dimension(model, x)?;
    let m = system.class_count();
    if k > m {
        return Err(Error::IndexOutOfRange {
            what: "boundary",
            index: k,
            min: 0,
            max: m,
        });
    }
    Ok(relation_at(model, &x.scores, system, k, family))
}

/// `x S B_k` and `B_k S x`.
pub fn s_boundary_relation<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    system: &BoundarySystem<M::Score>,
    k: usize,
) -> Result<BoundaryRelation> {
    checked_relation(model, x, system, k, Family::S)
}

/// `x P B_k` and `B_k P x`, quantified over both layers of `B_k`.
pub fn p_boundary_relation<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    system: &BoundarySystem<M::Score>,
    k: usize,
) -> Result<BoundaryRelation> {
    checked_relation(model, x, system, k, Family::P)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub boundary: usize,
    pub relation: BoundaryRelation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentOutcome {
    pub rule: Rule,
    /// 1-based class index.
    pub class_index: usize,
    /// Boundaries consulted, in scan order, ending at the stopping boundary.
    pub trace: Vec<TraceStep>,
}

pub(crate) fn assign_scores<M: RelationalModel>(
    model: &M,
    x: &[M::Score],
    system: &BoundarySystem<M::Score>,
    rule: Rule,
) -> AssignmentOutcome {
    let m = system.class_count();
    let family = rule.family();
    let descending = matches!(rule, Rule::SPrimal | Rule::PDual);
    let order: Box<dyn Iterator<Item = usize>> = if descending {
        Box::new((0..m).rev())
    } else {
        Box::new(1..=m)
    };
    let mut trace = Vec::new();
    for k in order {
        let relation = relation_at(model, x, system, k, family);
        trace.push(TraceStep { boundary: k, relation });
        let stop = if descending {
            relation.action_to_boundary
        } else {
            relation.boundary_to_action
        };
        if stop {
            let class_index = if descending { k + 1 } else { k };
            return AssignmentOutcome {
                rule,
                class_index,
                trace,
            };
        }
    }
    unreachable!("sentinel boundaries always stop the scan")
}

pub fn assign<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    system: &BoundarySystem<M::Score>,
    rule: Rule,
) -> Result<AssignmentOutcome> {
    ensure_dimension(model, x)?;
    Ok(assign_scores(model, &x.scores, system, rule))
}

pub fn assign_s_primal<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    system: &BoundarySystem<M::Score>,
) -> Result<AssignmentOutcome> {
    assign(model, x, system, Rule::SPrimal)
}

pub fn assign_s_dual<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    system: &BoundarySystem<M::Score>,
) -> Result<AssignmentOutcome> {
    assign(model, x, system, Rule::SDual)
}

pub fn assign_p_primal<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    system: &BoundarySystem<M::Score>,
) -> Result<AssignmentOutcome> {
    assign(model, x, system, Rule::PPrimal)
}

pub fn assign_p_dual<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    system: &BoundarySystem<M::Score>,
) -> Result<AssignmentOutcome> {
    assign(model, x, system, Rule::PDual)
}

/// Assigns every action with one rule, preserving input order.
pub fn assign_all<M: RelationalModel>(
    model: &M,
    actions: &[Action<M::Score>],
    system: &BoundarySystem<M::Score>,
    rule: Rule,
) -> Result<Vec<AssignmentOutcome>> {
    actions.iter().map(|a| assign(model, a, system, rule)).collect()
}

/// Primal and dual results of one family. No ordering between them is assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjointOutcome {
    pub family: Family,
    pub primal_class: usize,
    pub dual_class: usize,
}

impl ConjointOutcome {
    /// Inclusive class range `(low, high)`.
    pub fn interval(&self) -> (usize, usize) {
        (
            self.primal_class.min(self.dual_class),
            self.primal_class.max(self.dual_class),
        )
    }

    pub fn is_precise(&self) -> bool {
        self.primal_class == self.dual_class
    }
}

pub fn assign_conjoint<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    system: &BoundarySystem<M::Score>,
    family: Family,
) -> Result<ConjointOutcome> {
    let [primal, dual] = Rule::rules_of(family);
    Ok(ConjointOutcome {
        family,
        primal_class: assign(model, x, system, primal)?.class_index,
        dual_class: assign(model, x, system, dual)?.class_index,
    })
}

pub fn transpose_action(action: &PerformanceVector) -> PerformanceVector {
    Action::new(action.id.clone(), action.scores.iter().map(|s| -s).collect())
}

/// Negates every score, reverses the boundary order, swaps layers, and reverses
/// the class labels.
pub fn transpose_system(system: &BoundarySystem<f64>) -> BoundarySystem<f64> {
    let negate = |acts: &[PerformanceVector]| acts.iter().map(transpose_action).collect::<Vec<_>>();
    let boundaries = system
        .boundaries()
        .iter()
        .rev()
        .map(|b| Boundary::new(negate(&b.lower), negate(&b.upper)))
        .collect();
    let names = system.class_names().iter().rev().cloned().collect();
    BoundarySystem::from_parts(names, boundaries)
}

/// Inverts the preference direction on every criterion and the class order.
///
/// Scores are negated in canonical form and each criterion's recorded direction
/// is flipped, so the raw values written back to a model file are unchanged.
/// ELECTRE indices depend only on score differences, hence the transposed
/// credibility satisfies `σ'(−x, −y) = σ(y, x)` and the parameters carry over.
pub fn transpose_problem(
    instance: &ElectreInstance,
    actions: &[PerformanceVector],
) -> (ElectreInstance, Vec<PerformanceVector>) {
    let mut criteria = instance.criteria.clone();
    for c in &mut criteria {
        c.direction = c.direction.flipped();
    }
    let transposed = ElectreInstance {
        criteria,
        model: instance.model.clone(),
        system: transpose_system(&instance.system),
    };
    (transposed, actions.iter().map(transpose_action).collect())
}

/// Class index under transposition: `k ↦ M + 1 − k`.
pub fn transposed_class(class_index: usize, class_count: usize) -> usize {
    class_count + 1 - class_index
}
