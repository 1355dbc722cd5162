//! The abstract relational system `(D, S)`: actions, the model trait, the derived
//! asymmetric preference, and exhaustive checks of the model requirements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::violation::ViolationReport;

/// An action evaluated on every criterion. Scores are preference-increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Action<T = f64> {
    pub id: String,
    pub scores: Vec<T>,
}

/// Real-valued action, the common case.
pub type PerformanceVector = Action<f64>;

impl<T> Action<T> {
    pub fn new(id: impl Into<String>, scores: Vec<T>) -> Self {
        Self { id: id.into(), scores }
    }

    pub fn criteria_count(&self) -> usize {
        self.scores.len()
    }
}

impl PerformanceVector {
    /// Builds a real action, rejecting non-finite scores.
    pub fn checked(id: impl Into<String>, scores: Vec<f64>) -> Result<Self> {
        let id = id.into();
        if let Some(j) = scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::invalid(format!("{id}.scores[{j}]"), "score must be finite"));
        }
        Ok(Self { id, scores })
    }
}

/// A pair of crisp relations over score vectors: outranking `S` and dominance `D`.
///
/// Implementations must be deterministic. Assignment procedures assume `S` is
/// reflexive, `D` transitive, and the pair satisfies the compatibility
/// requirements checked by [`check_condition1`].
pub trait RelationalModel {
    type Score;

    fn criteria_count(&self) -> usize;

    /// `x S y`: x is at least as good as y.
    fn outranks(&self, x: &[Self::Score], y: &[Self::Score]) -> bool;

    /// `x D y`.
    fn dominates(&self, x: &[Self::Score], y: &[Self::Score]) -> bool;

    /// `x P y ⇔ x S y ∧ ¬(y S x)`.
    fn prefers(&self, x: &[Self::Score], y: &[Self::Score]) -> bool {
        self.outranks(x, y) && !self.outranks(y, x)
    }

    /// Whether `S` is declared transitive. Enables the transitive-S monotonicity check.
    fn transitive_outranking(&self) -> bool {
        false
    }

    /// The graded degree behind `S`, when the model has one. Used in diagnostics only.
    fn credibility_degree(&self, _x: &[Self::Score], _y: &[Self::Score]) -> Option<f64> {
        None
    }
}

pub(crate) fn ensure_dimension<M: RelationalModel>(model: &M, action: &Action<M::Score>) -> Result<()> {
    let m = model.criteria_count();
    if action.scores.len() != m {
        return Err(Error::dimension(
            m,
            action.scores.len(),
            format!("action `{}`", action.id),
        ));
    }
    Ok(())
}

/// Asymmetric preference `x P y`.
pub fn derive_preference<M: RelationalModel>(model: &M, x: &Action<M::Score>, y: &Action<M::Score>) -> Result<bool> {
    ensure_dimension(model, x)?;
    ensure_dimension(model, y)?;
    Ok(model.prefers(&x.scores, &y.scores))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

/// The complete relation between an ordered pair `(x, y)`.
///
/// `S` holding one way only is exactly `P` one way, so it is reported as
/// [`RelationKind::Preference`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    /// One-way dominance. `strict` is set when `P` holds in the same orientation.
    Dominance {
        orientation: Orientation,
        strict: bool,
    },
    Preference(Orientation),
    /// `S` both ways.
    Indifference,
    /// `S` in neither direction.
    Incomparable,
}

impl RelationKind {
    pub fn mirrored(self) -> Self {
        match self {
            RelationKind::Dominance { orientation, strict } => RelationKind::Dominance {
                orientation: orientation.reversed(),
                strict,
            },
            RelationKind::Preference(o) => RelationKind::Preference(o.reversed()),
            other => other,
        }
    }

    /// Compact notation: `D, P`, `P⁻¹`, `S/S⁻¹`, `Inc` and so on.
    pub fn symbol(self) -> &'static str {
        use Orientation::*;
        match self {
            RelationKind::Dominance {
                orientation: Forward,
                strict: true,
            } => "D, P",
            RelationKind::Dominance {
                orientation: Backward,
                strict: true,
            } => "D⁻¹, P⁻¹",
            RelationKind::Dominance {
                orientation: Forward,
                strict: false,
            } => "D, S",
            RelationKind::Dominance {
                orientation: Backward,
                strict: false,
            } => "D⁻¹, S",
            RelationKind::Preference(Forward) => "P",
            RelationKind::Preference(Backward) => "P⁻¹",
            RelationKind::Indifference => "S/S⁻¹",
            RelationKind::Incomparable => "Inc",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Classifies the pair from raw score slices (dimensions assumed checked).
pub fn relation_kind<M: RelationalModel>(model: &M, x: &[M::Score], y: &[M::Score]) -> RelationKind {
    let s_xy = model.outranks(x, y);
    let s_yx = model.outranks(y, x);
    let d_xy = model.dominates(x, y);
    let d_yx = model.dominates(y, x);
    match (d_xy, d_yx) {
        (true, false) => {
            return RelationKind::Dominance {
                orientation: Orientation::Forward,
                strict: s_xy && !s_yx,
            }
        }
        (false, true) => {
            return RelationKind::Dominance {
                orientation: Orientation::Backward,
                strict: s_yx && !s_xy,
            }
        }
        _ => {}
    }
    match (s_xy, s_yx) {
        (true, true) => RelationKind::Indifference,
        (true, false) => RelationKind::Preference(Orientation::Forward),
        (false, true) => RelationKind::Preference(Orientation::Backward),
        (false, false) => RelationKind::Incomparable,
    }
}

pub fn classify_pair<M: RelationalModel>(
    model: &M,
    x: &Action<M::Score>,
    y: &Action<M::Score>,
) -> Result<RelationKind> {
    ensure_dimension(model, x)?;
    ensure_dimension(model, y)?;
    Ok(relation_kind(model, &x.scores, &y.scores))
}

/// Precomputed `S` and `D` adjacency over a finite action list.
pub(crate) struct RelationMatrix {
    n: usize,
    s: Vec<bool>,
    d: Vec<bool>,
}

impl RelationMatrix {
    pub(crate) fn build<M: RelationalModel>(model: &M, actions: &[Action<M::Score>]) -> Result<Self> {
        for a in actions {
            ensure_dimension(model, a)?;
        }
        let n = actions.len();
        let mut s = vec![false; n * n];
        let mut d = vec![false; n * n];
        for (i, x) in actions.iter().enumerate() {
            for (j, y) in actions.iter().enumerate() {
                s[i * n + j] = model.outranks(&x.scores, &y.scores);
                d[i * n + j] = model.dominates(&x.scores, &y.scores);
            }
        }
        Ok(Self { n, s, d })
    }

    pub(crate) fn s(&self, i: usize, j: usize) -> bool {
        self.s[i * self.n + j]
    }

    pub(crate) fn d(&self, i: usize, j: usize) -> bool {
        self.d[i * self.n + j]
    }

    pub(crate) fn p(&self, i: usize, j: usize) -> bool {
        self.s(i, j) && !self.s(j, i)
    }
}

fn ids<T>(actions: &[Action<T>], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| actions[i].id.clone()).collect()
}

/// Exhaustively checks the model requirements on `actions`: S reflexive,
/// D transitive, `xDy ⇒ xSy`, `xSy ∧ yDz ⇒ xSz`, `xDy ∧ ySz ⇒ xSz`.
pub fn check_condition1<M: RelationalModel>(model: &M, actions: &[Action<M::Score>]) -> Result<ViolationReport> {
    let rel = RelationMatrix::build(model, actions)?;
    let n = actions.len();
    let mut report = ViolationReport::new();

    for i in 0..n {
        if !rel.s(i, i) {
            report.push(
                "1.reflexive",
                ids(actions, &[i]),
                vec![],
                "S is not reflexive on this action",
            );
        }
    }
    for x in 0..n {
        for y in 0..n {
            if rel.d(x, y) && !rel.s(x, y) {
                report.push("1.i", ids(actions, &[x, y]), vec![], "xDy but not xSy");
            }
            for z in 0..n {
                if rel.d(x, y) && rel.d(y, z) && !rel.d(x, z) {
                    report.push(
                        "1.D-transitive",
                        ids(actions, &[x, y, z]),
                        vec![],
                        "xDy and yDz but not xDz",
                    );
                }
                if rel.s(x, y) && rel.d(y, z) && !rel.s(x, z) {
                    report.push("1.ii", ids(actions, &[x, y, z]), vec![], "xSy and yDz but not xSz");
                }
                if rel.d(x, y) && rel.s(y, z) && !rel.s(x, z) {
                    report.push("1.iii", ids(actions, &[x, y, z]), vec![], "xDy and ySz but not xSz");
                }
            }
        }
    }
    Ok(report)
}

/// Exhaustively checks `xPy ∧ yDz ⇒ xPz` and `xDy ∧ yPz ⇒ xPz`.
pub fn check_proposition1<M: RelationalModel>(model: &M, actions: &[Action<M::Score>]) -> Result<ViolationReport> {
    let rel = RelationMatrix::build(model, actions)?;
    let n = actions.len();
    let mut report = ViolationReport::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if rel.p(x, y) && rel.d(y, z) && !rel.p(x, z) {
                    report.push("P1.i", ids(actions, &[x, y, z]), vec![], "xPy and yDz but not xPz");
                }
                if rel.d(x, y) && rel.p(y, z) && !rel.p(x, z) {
                    report.push("P1.ii", ids(actions, &[x, y, z]), vec![], "xDy and yPz but not xPz");
                }
            }
        }
    }
    Ok(report)
}
