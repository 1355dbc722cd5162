//! A complete classification problem: criteria metadata, relational model, boundaries.

use serde::{Deserialize, Serialize};

use crate::boundary::{ensure_system_dimension, BoundarySystem};
use crate::electre::ElectreParameters;
use crate::error::Result;
use crate::interval::IntervalValueModel;
use crate::relation::RelationalModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Max,
    Min,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Max => Direction::Min,
            Direction::Min => Direction::Max,
        }
    }

    /// Factor mapping raw scores to preference-increasing ones (and back).
    pub fn sign(self) -> f64 {
        match self {
            Direction::Max => 1.0,
            Direction::Min => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionInfo {
    pub name: String,
    /// Direction of the raw scores. Stored scores are always preference-increasing.
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance<M: RelationalModel> {
    pub criteria: Vec<CriterionInfo>,
    pub model: M,
    pub system: BoundarySystem<M::Score>,
}

pub type ElectreInstance = Instance<ElectreParameters>;
pub type IntervalInstance = Instance<IntervalValueModel>;

impl<M: RelationalModel> Instance<M> {
    pub fn new(criteria: Vec<CriterionInfo>, model: M, system: BoundarySystem<M::Score>) -> Result<Self> {
        if criteria.len() != model.criteria_count() {
            return Err(crate::error::Error::dimension(
                model.criteria_count(),
                criteria.len(),
                "criteria metadata",
            ));
        }
        ensure_system_dimension(&model, &system)?;
        Ok(Self {
            criteria,
            model,
            system,
        })
    }
}

/// Either supported model kind, as loaded from a model file.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedInstance {
    Electre(ElectreInstance),
    IntervalValue(IntervalInstance),
}

impl LoadedInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            LoadedInstance::Electre(_) => "electre",
            LoadedInstance::IntervalValue(_) => "interval-value",
        }
    }

    pub fn criteria(&self) -> &[CriterionInfo] {
        match self {
            LoadedInstance::Electre(i) => &i.criteria,
            LoadedInstance::IntervalValue(i) => &i.criteria,
        }
    }

    pub fn class_names(&self) -> &[String] {
        match self {
            LoadedInstance::Electre(i) => i.system.class_names(),
            LoadedInstance::IntervalValue(i) => i.system.class_names(),
        }
    }
}
