//! Crisp ELECTRE outranking: concordance with indifference/preference thresholds,
//! discordance ramps between pre-veto and veto, and Pareto dominance as `D`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::RelationalModel;

/// Slack allowed when comparing a credibility value against the cutting level.
/// Sums of decimal weights (0.2 + 0.2 + 0.2) land a few ulps off the level.
pub const CUT_TOLERANCE: f64 = 1e-9;

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VetoThresholds {
    /// Deficit at which discordance starts to grow.
    pub pre_veto: f64,
    /// Deficit at which discordance is total.
    pub veto: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionThresholds {
    pub weight: f64,
    pub indifference: f64,
    pub preference: f64,
    pub veto: Option<VetoThresholds>,
}

impl CriterionThresholds {
    /// Partial concordance for a deficit `g(y) - g(x)`.
    pub fn partial_concordance(&self, deficit: f64) -> f64 {
        let (q, p) = (self.indifference, self.preference);
        if deficit <= q {
            1.0
        } else if deficit >= p {
            0.0
        } else {
            (p - deficit) / (p - q)
        }
    }

    /// Marginal discordance for a deficit `g(y) - g(x)`; zero without veto data.
    pub fn partial_discordance(&self, deficit: f64) -> f64 {
        let Some(VetoThresholds { pre_veto, veto }) = self.veto else {
            return 0.0;
        };
        if deficit <= pre_veto {
            0.0
        } else if deficit >= veto {
            1.0
        } else {
            (deficit - pre_veto) / (veto - pre_veto)
        }
    }
}

/// Per-criterion thresholds and weights plus the cutting level `lambda`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElectreParameters {
    criteria: Vec<CriterionThresholds>,
    lambda: f64,
}

impl ElectreParameters {
    pub fn new(criteria: Vec<CriterionThresholds>, lambda: f64) -> Result<Self> {
        if criteria.is_empty() {
            return Err(Error::invalid("criteria", "at least one criterion is required"));
        }
        if !(lambda > 0.5 && lambda <= 1.0) {
            return Err(Error::invalid("lambda", format!("{lambda} is outside ]0.5, 1]")));
        }
        for (j, c) in criteria.iter().enumerate() {
            let field = |name: &str| format!("criteria[{j}].{name}");
            let values = [
                ("weight", Some(c.weight)),
                ("q", Some(c.indifference)),
                ("p", Some(c.preference)),
                ("u", c.veto.map(|v| v.pre_veto)),
                ("v", c.veto.map(|v| v.veto)),
            ];
            for (name, value) in values {
                if let Some(value) = value {
                    if !value.is_finite() {
                        return Err(Error::invalid(field(name), "must be finite"));
                    }
                }
            }
            if c.weight < 0.0 {
                return Err(Error::invalid(field("weight"), "must be nonnegative"));
            }
            if c.indifference < 0.0 {
                return Err(Error::invalid(field("q"), "must be nonnegative"));
            }
            if c.indifference > c.preference {
                return Err(Error::invalid(
                    field("q"),
                    format!("q = {} exceeds p = {}", c.indifference, c.preference),
                ));
            }
            if let Some(v) = c.veto {
                if c.preference > v.pre_veto {
                    return Err(Error::invalid(
                        field("u"),
                        format!("p = {} exceeds u = {}", c.preference, v.pre_veto),
                    ));
                }
                if v.pre_veto > v.veto {
                    return Err(Error::invalid(
                        field("v"),
                        format!("u = {} exceeds v = {}", v.pre_veto, v.veto),
                    ));
                }
            }
        }
        let total: f64 = criteria.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::invalid("weights", format!("weights sum to {total}, expected 1")));
        }
        Ok(Self { criteria, lambda })
    }

    pub fn criteria(&self) -> &[CriterionThresholds] {
        &self.criteria
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn check(&self, x: &[f64], y: &[f64]) -> Result<()> {
        let m = self.criteria.len();
        for (v, which) in [(x, "x"), (y, "y")] {
            if v.len() != m {
                return Err(Error::dimension(m, v.len(), which));
            }
        }
        Ok(())
    }

    fn concordance_raw(&self, x: &[f64], y: &[f64]) -> f64 {
        self.criteria
            .iter()
            .zip(x.iter().zip(y))
            .map(|(c, (gx, gy))| c.weight * c.partial_concordance(gy - gx))
            .sum()
    }

    fn credibility_raw(&self, x: &[f64], y: &[f64]) -> f64 {
        let attenuation: f64 = self
            .criteria
            .iter()
            .zip(x.iter().zip(y))
            .map(|(c, (gx, gy))| 1.0 - c.partial_discordance(gy - gx))
            .product();
        self.concordance_raw(x, y) * attenuation
    }

    /// Weighted concordance `c(x, y)` in `[0, 1]`.
    pub fn concordance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check(x, y)?;
        Ok(self.concordance_raw(x, y))
    }

    /// Marginal discordance of criterion `j` against `x S y`.
    pub fn discordance_marginal(&self, j: usize, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check(x, y)?;
        let c = self.criteria.get(j).ok_or(Error::IndexOutOfRange {
            what: "criterion",
            index: j,
            min: 0,
            max: self.criteria.len() - 1,
        })?;
        Ok(c.partial_discordance(y[j] - x[j]))
    }

    /// Credibility `σ(x, y) = c(x, y) · Π_j (1 − d_j(x, y))`.
    pub fn credibility(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check(x, y)?;
        Ok(self.credibility_raw(x, y))
    }

    /// `x S y ⇔ σ(x, y) ≥ λ`.
    pub fn crisp_s(&self, x: &[f64], y: &[f64]) -> Result<bool> {
        self.check(x, y)?;
        Ok(self.cut(self.credibility_raw(x, y)))
    }

    fn cut(&self, sigma: f64) -> bool {
        sigma >= self.lambda - CUT_TOLERANCE
    }
}

/// Weak Pareto dominance: `g_j(x) ≥ g_j(y)` on every criterion.
pub fn pareto_dominates(x: &[f64], y: &[f64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::dimension(x.len(), y.len(), "y"));
    }
    Ok(weakly_dominates(x, y))
}

pub(crate) fn weakly_dominates(x: &[f64], y: &[f64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a >= b)
}

impl RelationalModel for ElectreParameters {
    type Score = f64;

    fn criteria_count(&self) -> usize {
        self.criteria.len()
    }

    fn outranks(&self, x: &[f64], y: &[f64]) -> bool {
        self.cut(self.credibility_raw(x, y))
    }

    fn dominates(&self, x: &[f64], y: &[f64]) -> bool {
        weakly_dominates(x, y)
    }

    fn credibility_degree(&self, x: &[f64], y: &[f64]) -> Option<f64> {
        Some(self.credibility_raw(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(m: usize, q: f64, p: f64, u: f64, v: f64, lambda: f64) -> ElectreParameters {
        let c = CriterionThresholds {
            weight: 1.0 / m as f64,
            indifference: q,
            preference: p,
            veto: Some(VetoThresholds { pre_veto: u, veto: v }),
        };
        ElectreParameters::new(vec![c; m], lambda).unwrap()
    }

    #[test]
    fn identity_has_full_credibility() {
        let params = uniform(3, 0.1, 0.5, 1.0, 2.0, 0.7);
        let x = [1.0, -2.0, 3.5];
        assert_eq!(params.concordance(&x, &x).unwrap(), 1.0);
        assert_eq!(params.credibility(&x, &x).unwrap(), 1.0);
        assert!(params.crisp_s(&x, &x).unwrap());
    }

    #[test]
    fn dominance_gives_full_concordance() {
        let params = uniform(3, 0.0, 0.5, 1.0, 2.0, 0.7);
        assert_eq!(params.concordance(&[3.0, 3.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 1.0);
    }

    #[test]
    fn discordance_ramp_endpoints() {
        let params = uniform(2, 0.0, 0.5, 1.0, 1.5, 0.6);
        // deficit exactly u
        assert_eq!(params.discordance_marginal(0, &[0.0, 0.0], &[1.0, 0.0]).unwrap(), 0.0);
        // midpoint of the ramp
        assert_eq!(params.discordance_marginal(0, &[0.0, 0.0], &[1.25, 0.0]).unwrap(), 0.5);
        // deficit exactly v
        assert_eq!(params.discordance_marginal(0, &[0.0, 0.0], &[1.5, 0.0]).unwrap(), 1.0);
        assert!(params.discordance_marginal(2, &[0.0, 0.0], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn no_veto_means_no_discordance() {
        let c = CriterionThresholds {
            weight: 1.0,
            indifference: 0.0,
            preference: 1.0,
            veto: None,
        };
        assert_eq!(c.partial_discordance(1e6), 0.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        let good = CriterionThresholds {
            weight: 0.5,
            indifference: 0.1,
            preference: 0.5,
            veto: Some(VetoThresholds {
                pre_veto: 1.0,
                veto: 1.5,
            }),
        };
        let mut bad_qp = good;
        bad_qp.indifference = 0.9;
        assert!(ElectreParameters::new(vec![good, bad_qp], 0.7).is_err());
        assert!(ElectreParameters::new(vec![good, good], 0.5).is_err());
        assert!(ElectreParameters::new(vec![good, good], 1.01).is_err());
        let mut light = good;
        light.weight = 0.4;
        let err = ElectreParameters::new(vec![good, light], 0.7).unwrap_err();
        assert!(err.to_string().contains("weights"));
        assert!(ElectreParameters::new(vec![good, good], 1.0).is_ok());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let params = uniform(3, 0.0, 0.5, 1.0, 1.5, 0.6);
        assert!(params.credibility(&[1.0, 2.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(pareto_dominates(&[1.0], &[1.0, 2.0]).is_err());
        assert!(pareto_dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
    }
}
