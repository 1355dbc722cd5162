//! Ordinal classification of multi-criteria actions against two-layer limiting
//! boundaries.
//!
//! A [`RelationalModel`] supplies a reflexive outranking `S` and a transitive
//! dominance `D`; the asymmetric preference `P` is derived from `S`. A
//! [`BoundarySystem`] describes `M` ordered classes through `M − 1` boundaries,
//! each with an upper layer (actions of the lower class) and a lower layer
//! (actions of the upper class). Four rules assign actions: the outranking-based
//! primal/dual pair and the preference-based primal/dual pair, which correspond
//! through transposition and are meant to be read together.

pub mod assignment;
pub mod boundary;
pub mod cli;
pub mod electre;
pub mod error;
pub mod generate;
pub mod harness;
pub mod instance;
pub mod interval;
pub mod io;
pub mod relation;
pub mod violation;

pub use assignment::{
    assign, assign_all, assign_conjoint, assign_p_dual, assign_p_primal, assign_s_dual, assign_s_primal,
    p_boundary_relation, s_boundary_relation, transpose_problem, AssignmentOutcome, BoundaryRelation, ConjointOutcome,
    Family, Rule,
};
pub use boundary::{
    merge_classes, split_class, validate_condition2, validate_condition3, validate_condition4, Boundary,
    BoundarySystem, Layer, Separability,
};
pub use electre::{pareto_dominates, CriterionThresholds, ElectreParameters, VetoThresholds};
pub use error::{Error, Result};
pub use instance::{CriterionInfo, Direction, ElectreInstance, Instance, IntervalInstance, LoadedInstance};
pub use interval::{interval_dominates, interval_value_s, possibility, IntervalNumber, IntervalValueModel, ScoreScale};
pub use relation::{
    check_condition1, check_proposition1, classify_pair, derive_preference, Action, PerformanceVector, RelationKind,
    RelationalModel,
};
pub use violation::{Violation, ViolationReport};
