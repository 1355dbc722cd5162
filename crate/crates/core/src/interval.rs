//! Interval numbers, the possibility degree `Poss(B ≥ C)`, α-dominance, and the
//! imprecise weighted-sum value model.
//!
//! The possibility degree of `B = [b⁻, b⁺]` over `C = [c⁻, c⁺]` is the ratio
//! `(b⁺ − c⁻) / ((b⁺ − b⁻) + (c⁺ − c⁻))` clamped to `[0, 1]`. When both intervals
//! are degenerate the ratio is undefined and the bounds are compared directly.
//!
//! Note on reflexivity: with non-degenerate scores an interval *outranking*
//! credibility need not be reflexive, but the value-model relation below compares
//! aggregated utilities and `Poss(U ≥ U) = 0.5` for every non-degenerate `U`, so
//! its `S` is reflexive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::{Action, RelationalModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct IntervalNumber {
    lo: f64,
    hi: f64,
}

impl IntervalNumber {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::invalid("interval", "bounds must be finite"));
        }
        if lo > hi {
            return Err(Error::invalid(
                "interval",
                format!("lower bound {lo} exceeds upper bound {hi}"),
            ));
        }
        Ok(Self { lo, hi })
    }

    /// The single-point interval `[v, v]`.
    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// `[-hi, -lo]`.
    pub fn negated(&self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl TryFrom<[f64; 2]> for IntervalNumber {
    type Error = Error;
    fn try_from([lo, hi]: [f64; 2]) -> Result<Self> {
        Self::new(lo, hi)
    }
}

impl From<IntervalNumber> for [f64; 2] {
    fn from(i: IntervalNumber) -> Self {
        [i.lo, i.hi]
    }
}

impl fmt::Display for IntervalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Degree of credibility of `B ≥ C`.
pub fn possibility(b: IntervalNumber, c: IntervalNumber) -> f64 {
    let spread = b.width() + c.width();
    if spread == 0.0 {
        return if b.lo >= c.lo { 1.0 } else { 0.0 };
    }
    ((b.hi - c.lo) / spread).clamp(0.0, 1.0)
}

/// How a criterion is scored for α-dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScoreScale {
    /// Real scores (degenerate intervals), compared directly.
    Real,
    /// Interval scores, compared through the possibility degree.
    Interval,
}

/// `x` α-dominates `y`: real criteria satisfy `g_j(x) ≥ g_j(y)` and every
/// interval criterion has `Poss(g_j(x) ≥ g_j(y)) ≥ alpha`.
pub fn interval_dominates(
    x: &[IntervalNumber],
    y: &[IntervalNumber],
    alpha: f64,
    partition: &[ScoreScale],
) -> Result<bool> {
    if !(0.5..=1.0).contains(&alpha) {
        return Err(Error::invalid("alpha", format!("{alpha} is outside [0.5, 1]")));
    }
    if x.len() != partition.len() {
        return Err(Error::dimension(partition.len(), x.len(), "x"));
    }
    if y.len() != partition.len() {
        return Err(Error::dimension(partition.len(), y.len(), "y"));
    }
    let mut min_poss = 1.0_f64;
    for ((gx, gy), scale) in x.iter().zip(y).zip(partition) {
        match scale {
            ScoreScale::Real => {
                if !(gx.is_degenerate() && gy.is_degenerate()) {
                    return Err(Error::invalid(
                        "partition",
                        "real-scaled criterion has an interval score",
                    ));
                }
                if gx.lo < gy.lo {
                    return Ok(false);
                }
            }
            ScoreScale::Interval => min_poss = min_poss.min(possibility(*gx, *gy)),
        }
    }
    Ok(min_poss >= alpha)
}

/// Interval weighted sum `U(x) = Σ w_j · g_j(x)` with `S` at possibility 0.5 and
/// `D` at the stricter level `alpha_d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalValueModel {
    weights: Vec<IntervalNumber>,
    alpha_d: f64,
}

const MIDPOINT_SUM_TOLERANCE: f64 = 1e-9;

impl IntervalValueModel {
    pub fn new(weights: Vec<IntervalNumber>, alpha_d: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("weights", "at least one criterion is required"));
        }
        if let Some(j) = weights.iter().position(|w| w.lo < 0.0) {
            return Err(Error::invalid(
                format!("weights[{j}]"),
                "interval weights must be nonnegative",
            ));
        }
        let total: f64 = weights.iter().map(IntervalNumber::midpoint).sum();
        if (total - 1.0).abs() > MIDPOINT_SUM_TOLERANCE {
            return Err(Error::invalid(
                "weights",
                format!("weight midpoints sum to {total}, expected 1"),
            ));
        }
        if !(alpha_d > 0.5 && alpha_d <= 1.0) {
            return Err(Error::invalid("alpha_d", format!("{alpha_d} is outside ]0.5, 1]")));
        }
        Ok(Self { weights, alpha_d })
    }

    pub fn weights(&self) -> &[IntervalNumber] {
        &self.weights
    }

    pub fn alpha_d(&self) -> f64 {
        self.alpha_d
    }

    /// Rejects actions of the wrong length or with negative scores.
    pub fn validate_action(&self, action: &Action<IntervalNumber>) -> Result<()> {
        if action.scores.len() != self.weights.len() {
            return Err(Error::dimension(
                self.weights.len(),
                action.scores.len(),
                format!("action `{}`", action.id),
            ));
        }
        if let Some(j) = action.scores.iter().position(|s| s.lo < 0.0) {
            return Err(Error::invalid(
                format!("{}.scores[{j}]", action.id),
                "interval scores must be nonnegative",
            ));
        }
        Ok(())
    }

    /// `U(x)`. Scores and weights are nonnegative, so bounds multiply pointwise.
    pub fn utility(&self, scores: &[IntervalNumber]) -> IntervalNumber {
        let (lo, hi) = self
            .weights
            .iter()
            .zip(scores)
            .fold((0.0, 0.0), |(lo, hi), (w, s)| (lo + w.lo * s.lo, hi + w.hi * s.hi));
        IntervalNumber { lo, hi }
    }

    pub fn utility_possibility(&self, x: &[IntervalNumber], y: &[IntervalNumber]) -> f64 {
        possibility(self.utility(x), self.utility(y))
    }
}

/// `x S y ⇔ Poss(U(x) ≥ U(y)) ≥ 0.5`.
pub fn interval_value_s(
    model: &IntervalValueModel,
    x: &Action<IntervalNumber>,
    y: &Action<IntervalNumber>,
) -> Result<bool> {
    model.validate_action(x)?;
    model.validate_action(y)?;
    Ok(model.outranks(&x.scores, &y.scores))
}

impl RelationalModel for IntervalValueModel {
    type Score = IntervalNumber;

    fn criteria_count(&self) -> usize {
        self.weights.len()
    }

    fn outranks(&self, x: &[IntervalNumber], y: &[IntervalNumber]) -> bool {
        self.utility_possibility(x, y) >= 0.5
    }

    fn dominates(&self, x: &[IntervalNumber], y: &[IntervalNumber]) -> bool {
        self.utility_possibility(x, y) >= self.alpha_d
    }

    /// `Poss ≥ 0.5` orders utilities by midpoint, a total preorder.
    fn transitive_outranking(&self) -> bool {
        true
    }

    fn credibility_degree(&self, x: &[IntervalNumber], y: &[IntervalNumber]) -> Option<f64> {
        Some(self.utility_possibility(x, y))
    }
}
