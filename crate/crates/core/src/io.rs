//! Model files (TOML) and action tables (CSV).
//!
//! A model file declares the model kind, criteria with their thresholds, class
//! labels in increasing order, and one `[[boundaries]]` entry per boundary whose
//! `actions` carry a `layer` of `"upper"` or `"lower"`. Minimizing criteria are
//! negated on load so everything downstream is preference-increasing; writing
//! the instance back restores the raw orientation.

use std::collections::HashSet;
use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::boundary::{Boundary, BoundarySystem, Layer};
use crate::electre::{CriterionThresholds, ElectreParameters, VetoThresholds};
use crate::error::{Error, Result};
use crate::instance::{CriterionInfo, Direction, ElectreInstance, Instance, IntervalInstance, LoadedInstance};
use crate::interval::{IntervalNumber, IntervalValueModel};
use crate::relation::{Action, PerformanceVector, RelationalModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberOrInterval {
    Real(f64),
    Interval([f64; 2]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionEntry {
    pub name: String,
    #[serde(default = "default_direction")]
    pub direction: Direction,
    pub weight: NumberOrInterval,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
}

fn default_direction() -> Direction {
    Direction::Max
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub layer: Layer,
    pub id: String,
    pub performance: Vec<NumberOrInterval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryEntry {
    #[serde(default)]
    pub actions: Vec<ActionEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_d: Option<f64>,
    pub classes: Vec<String>,
    pub criteria: Vec<CriterionEntry>,
    #[serde(default)]
    pub boundaries: Vec<BoundaryEntry>,
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_model(path: impl AsRef<Path>) -> Result<LoadedInstance> {
    let path = path.as_ref();
    parse_model(&read_to_string(path)?, &path.display().to_string())
}

pub fn parse_model(text: &str, source_name: &str) -> Result<LoadedInstance> {
    let file: ModelFile = toml::from_str(text).map_err(|e| Error::Parse {
        source_name: source_name.to_string(),
        reason: e.to_string(),
    })?;
    instance_from_file(&file)
}

pub fn instance_from_file(file: &ModelFile) -> Result<LoadedInstance> {
    if file.classes.len() < 2 {
        return Err(Error::invalid("classes", "at least two classes are required"));
    }
    let criteria: Vec<CriterionInfo> = file
        .criteria
        .iter()
        .map(|c| CriterionInfo {
            name: c.name.clone(),
            direction: c.direction,
        })
        .collect();
    match file.kind.as_str() {
        "electre" => electre_from_file(file, criteria).map(LoadedInstance::Electre),
        "interval-value" => interval_from_file(file, criteria).map(LoadedInstance::IntervalValue),
        other => Err(Error::UnknownModelKind(other.to_string())),
    }
}

fn real(value: NumberOrInterval, field: impl Fn() -> String) -> Result<f64> {
    match value {
        NumberOrInterval::Real(v) => Ok(v),
        NumberOrInterval::Interval(_) => Err(Error::invalid(field(), "expected a number, found an interval")),
    }
}

fn interval(value: NumberOrInterval, field: impl Fn() -> String) -> Result<IntervalNumber> {
    match value {
        NumberOrInterval::Real(v) => IntervalNumber::new(v, v),
        NumberOrInterval::Interval([lo, hi]) => IntervalNumber::new(lo, hi),
    }
    .map_err(|e| match e {
        Error::InvalidParameter { reason, .. } => Error::invalid(field(), reason),
        other => other,
    })
}

fn build_system<T>(
    file: &ModelFile,
    m: usize,
    mut convert: impl FnMut(usize, NumberOrInterval, &dyn Fn() -> String) -> Result<T>,
) -> Result<BoundarySystem<T>> {
    let mut boundaries = Vec::with_capacity(file.boundaries.len());
    for (bi, entry) in file.boundaries.iter().enumerate() {
        let mut boundary = Boundary::new(Vec::new(), Vec::new());
        for (ai, a) in entry.actions.iter().enumerate() {
            if a.performance.len() != m {
                return Err(Error::dimension(
                    m,
                    a.performance.len(),
                    format!("boundaries[{bi}].actions[{ai}] `{}`", a.id),
                ));
            }
            let mut scores = Vec::with_capacity(m);
            for (j, value) in a.performance.iter().enumerate() {
                let field = || format!("boundaries[{bi}].actions[{ai}].performance[{j}]");
                scores.push(convert(j, *value, &field)?);
            }
            let action = Action::new(a.id.clone(), scores);
            match a.layer {
                Layer::Upper => boundary.upper.push(action),
                Layer::Lower => boundary.lower.push(action),
            }
        }
        boundaries.push(boundary);
    }
    BoundarySystem::new(file.classes.clone(), boundaries)
}

fn electre_from_file(file: &ModelFile, criteria: Vec<CriterionInfo>) -> Result<ElectreInstance> {
    if file.alpha_d.is_some() {
        return Err(Error::invalid("alpha_d", "only meaningful for interval-value models"));
    }
    let lambda = file
        .lambda
        .ok_or_else(|| Error::invalid("lambda", "required for electre models"))?;
    let mut thresholds = Vec::with_capacity(file.criteria.len());
    for (j, c) in file.criteria.iter().enumerate() {
        let field = |name: &str| format!("criteria[{j}].{name}");
        let weight = real(c.weight, || field("weight"))?;
        let q = c.q.ok_or_else(|| Error::invalid(field("q"), "missing"))?;
        let p = c.p.ok_or_else(|| Error::invalid(field("p"), "missing"))?;
        let veto = match (c.u, c.v) {
            (None, None) => None,
            (Some(u), Some(v)) => Some(VetoThresholds { pre_veto: u, veto: v }),
            (None, Some(v)) => Some(VetoThresholds { pre_veto: v, veto: v }),
            (Some(_), None) => return Err(Error::invalid(field("v"), "pre-veto u given without veto v")),
        };
        thresholds.push(CriterionThresholds {
            weight,
            indifference: q,
            preference: p,
            veto,
        });
    }
    let params = ElectreParameters::new(thresholds, lambda)?;
    let m = criteria.len();
    let system = build_system(file, m, |j, value, field| {
        let v = real(value, field)?;
        if !v.is_finite() {
            return Err(Error::invalid(field(), "score must be finite"));
        }
        Ok(criteria[j].direction.sign() * v)
    })?;
    Instance::new(criteria, params, system)
}

fn interval_from_file(file: &ModelFile, criteria: Vec<CriterionInfo>) -> Result<IntervalInstance> {
    if file.lambda.is_some() {
        return Err(Error::invalid("lambda", "not used by interval-value models"));
    }
    let alpha_d = file
        .alpha_d
        .ok_or_else(|| Error::invalid("alpha_d", "required for interval-value models"))?;
    let mut weights = Vec::with_capacity(file.criteria.len());
    for (j, c) in file.criteria.iter().enumerate() {
        let field = |name: &str| format!("criteria[{j}].{name}");
        if c.direction == Direction::Min {
            return Err(Error::invalid(
                field("direction"),
                "interval-value models need nonnegative preference-increasing scores; rescale minimizing criteria",
            ));
        }
        for (name, value) in [("q", c.q), ("p", c.p), ("u", c.u), ("v", c.v)] {
            if value.is_some() {
                return Err(Error::invalid(
                    field(name),
                    "thresholds are not used by interval-value models",
                ));
            }
        }
        weights.push(interval(c.weight, || field("weight"))?);
    }
    let model = IntervalValueModel::new(weights, alpha_d)?;
    let system = build_system(file, criteria.len(), |_, value, field| interval(value, field))?;
    for (_, _, a) in system.limiting_actions() {
        model.validate_action(a)?;
    }
    Instance::new(criteria, model, system)
}

fn boundary_entries<T>(
    system: &BoundarySystem<T>,
    mut render: impl FnMut(usize, &T) -> NumberOrInterval,
) -> Vec<BoundaryEntry> {
    system
        .boundaries()
        .iter()
        .map(|b| BoundaryEntry {
            actions: [(Layer::Upper, &b.upper), (Layer::Lower, &b.lower)]
                .into_iter()
                .flat_map(|(layer, acts)| acts.iter().map(move |a| (layer, a)))
                .map(|(layer, a)| ActionEntry {
                    layer,
                    id: a.id.clone(),
                    performance: a.scores.iter().enumerate().map(|(j, s)| render(j, s)).collect(),
                })
                .collect(),
        })
        .collect()
}

/// Raw-orientation document for an instance.
pub fn model_file(instance: &LoadedInstance) -> ModelFile {
    match instance {
        LoadedInstance::Electre(inst) => ModelFile {
            kind: "electre".into(),
            lambda: Some(inst.model.lambda()),
            alpha_d: None,
            classes: inst.system.class_names().to_vec(),
            criteria: inst
                .criteria
                .iter()
                .zip(inst.model.criteria())
                .map(|(info, t)| CriterionEntry {
                    name: info.name.clone(),
                    direction: info.direction,
                    weight: NumberOrInterval::Real(t.weight),
                    q: Some(t.indifference),
                    p: Some(t.preference),
                    u: t.veto.map(|v| v.pre_veto),
                    v: t.veto.map(|v| v.veto),
                })
                .collect(),
            boundaries: boundary_entries(&inst.system, |j, s| {
                NumberOrInterval::Real(inst.criteria[j].direction.sign() * s)
            }),
        },
        LoadedInstance::IntervalValue(inst) => ModelFile {
            kind: "interval-value".into(),
            lambda: None,
            alpha_d: Some(inst.model.alpha_d()),
            classes: inst.system.class_names().to_vec(),
            criteria: inst
                .criteria
                .iter()
                .zip(inst.model.weights())
                .map(|(info, w)| CriterionEntry {
                    name: info.name.clone(),
                    direction: info.direction,
                    weight: NumberOrInterval::Interval([w.lo(), w.hi()]),
                    q: None,
                    p: None,
                    u: None,
                    v: None,
                })
                .collect(),
            boundaries: boundary_entries(&inst.system, |_, s| NumberOrInterval::Interval([s.lo(), s.hi()])),
        },
    }
}

pub fn render_model(instance: &LoadedInstance) -> Result<String> {
    toml::to_string(&model_file(instance)).map_err(|e| Error::Parse {
        source_name: "model".into(),
        reason: e.to_string(),
    })
}

pub fn save_model(instance: &LoadedInstance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_model(instance)?).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Cell formats accepted by action tables.
pub trait TableScore: Sized {
    fn parse_cell(cell: &str) -> Option<Self>;
    /// Maps a raw cell value to preference-increasing form.
    fn orient(self, direction: Direction) -> Result<Self>;
}

impl TableScore for f64 {
    fn parse_cell(cell: &str) -> Option<Self> {
        cell.parse::<f64>().ok().filter(|v| v.is_finite())
    }

    fn orient(self, direction: Direction) -> Result<Self> {
        Ok(direction.sign() * self)
    }
}

/// Interval cells are written `lo..hi`; a plain number is a degenerate interval.
impl TableScore for IntervalNumber {
    fn parse_cell(cell: &str) -> Option<Self> {
        match cell.split_once("..") {
            Some((lo, hi)) => IntervalNumber::new(lo.trim().parse().ok()?, hi.trim().parse().ok()?).ok(),
            None => {
                let v: f64 = cell.parse().ok()?;
                v.is_finite().then(|| IntervalNumber::point(v))
            }
        }
    }

    fn orient(self, direction: Direction) -> Result<Self> {
        match direction {
            Direction::Max => Ok(self),
            Direction::Min => Err(Error::Unsupported("minimizing interval criteria".into())),
        }
    }
}

/// Reads `id, score_1, …, score_m` rows. A first row whose score cells are not
/// all numeric is taken as a header.
pub fn parse_actions<T: TableScore>(
    reader: impl Read,
    criteria: &[CriterionInfo],
    source_name: &str,
) -> Result<Vec<Action<T>>> {
    let parse_err = |reason: String| Error::Parse {
        source_name: source_name.to_string(),
        reason,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let m = criteria.len();
    let mut actions = Vec::new();
    let mut seen = HashSet::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| parse_err(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let line = row + 1;
        if record.len() != m + 1 {
            return Err(parse_err(format!(
                "line {line}: expected {} columns (id + {m} criteria), found {}",
                m + 1,
                record.len()
            )));
        }
        let cells: Vec<Option<T>> = record.iter().skip(1).map(T::parse_cell).collect();
        if row == 0 && actions.is_empty() && cells.iter().any(Option::is_none) {
            continue;
        }
        let id = record[0].to_string();
        if id.is_empty() {
            return Err(parse_err(format!("line {line}: empty action id")));
        }
        if !seen.insert(id.clone()) {
            return Err(parse_err(format!("line {line}: duplicate action id `{id}`")));
        }
        let mut scores = Vec::with_capacity(m);
        for (j, cell) in cells.into_iter().enumerate() {
            let value = cell.ok_or_else(|| {
                parse_err(format!(
                    "line {line}: cell `{}` for criterion `{}` is not numeric",
                    &record[j + 1],
                    criteria[j].name
                ))
            })?;
            scores.push(value.orient(criteria[j].direction)?);
        }
        actions.push(Action::new(id, scores));
    }
    Ok(actions)
}

pub fn load_actions<T: TableScore>(path: impl AsRef<Path>, criteria: &[CriterionInfo]) -> Result<Vec<Action<T>>> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_actions(file, criteria, &path.display().to_string())
}

/// Writes actions back in raw orientation.
pub fn render_actions(actions: &[PerformanceVector], criteria: &[CriterionInfo]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once("id").chain(criteria.iter().map(|c| c.name.as_str()));
    let to_parse_err = |e: csv::Error| Error::Parse {
        source_name: "actions".into(),
        reason: e.to_string(),
    };
    wtr.write_record(header).map_err(to_parse_err)?;
    for a in actions {
        let row = std::iter::once(a.id.clone()).chain(
            a.scores
                .iter()
                .zip(criteria)
                .map(|(s, c)| (c.direction.sign() * s).to_string()),
        );
        wtr.write_record(row).map_err(to_parse_err)?;
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Parse {
        source_name: "actions".into(),
        reason: e.to_string(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Limiting actions from the top boundary down, lower layer before upper.
pub fn display_order<T>(system: &BoundarySystem<T>) -> Vec<&Action<T>> {
    system
        .boundaries()
        .iter()
        .rev()
        .flat_map(|b| b.lower.iter().chain(&b.upper))
        .collect()
}

/// Pairwise relation matrix: cell `(i, j)` is the relation of row `i` to column `j`.
pub fn relation_matrix<M: RelationalModel>(model: &M, actions: &[&Action<M::Score>]) -> Vec<Vec<String>> {
    actions
        .iter()
        .enumerate()
        .map(|(i, x)| {
            actions
                .iter()
                .enumerate()
                .map(|(j, y)| {
                    if i == j {
                        "S".to_string()
                    } else {
                        crate::relation::relation_kind(model, &x.scores, &y.scores)
                            .symbol()
                            .to_string()
                    }
                })
                .collect()
        })
        .collect()
}

/// Fixed-width text rendering of a labelled square matrix.
pub fn render_matrix(labels: &[&str], cells: &[Vec<String>]) -> String {
    let width = labels
        .iter()
        .map(|l| l.chars().count())
        .chain(cells.iter().flatten().map(|c| c.chars().count()))
        .max()
        .unwrap_or(1)
        + 2;
    let pad = |s: &str| format!("{s}{}", " ".repeat(width.saturating_sub(s.chars().count())));
    let mut out = pad("");
    for l in labels {
        out.push_str(&pad(l));
    }
    out = out.trim_end().to_string();
    out.push('\n');
    for (label, row) in labels.iter().zip(cells) {
        let mut line = pad(label);
        for c in row {
            line.push_str(&pad(c));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE1: &str = include_str!("../data/example1.model");

    #[test]
    fn loads_bundled_example() {
        let LoadedInstance::Electre(inst) = parse_model(EXAMPLE1, "example1").unwrap() else {
            panic!("expected electre instance");
        };
        assert_eq!(inst.model.criteria_count(), 5);
        assert_eq!(inst.system.class_count(), 3);
        assert_eq!(inst.system.boundary_count(), 2);
        assert_eq!(inst.model.lambda(), 0.6);
    }

    #[test]
    fn weight_sum_error_names_field() {
        let text = EXAMPLE1.replacen("weight = 0.2", "weight = 0.1", 1);
        let err = parse_model(&text, "bad").unwrap_err();
        assert!(err.to_string().contains("weights"), "{err}");
    }

    #[test]
    fn threshold_order_error_names_criterion() {
        let text = EXAMPLE1.replacen("q = 0.0", "q = 0.9", 1);
        let err = parse_model(&text, "bad").unwrap_err();
        assert!(err.to_string().contains("criteria[0].q"), "{err}");
    }

    #[test]
    fn unknown_kind_rejected() {
        let text = EXAMPLE1.replacen("kind = \"electre\"", "kind = \"promethee\"", 1);
        assert!(matches!(parse_model(&text, "bad"), Err(Error::UnknownModelKind(_))));
    }

    #[test]
    fn minimizing_criterion_is_negated() {
        let text = EXAMPLE1.replacen("direction = \"max\"", "direction = \"min\"", 1);
        let LoadedInstance::Electre(inst) = parse_model(&text, "min").unwrap() else {
            panic!()
        };
        assert_eq!(inst.system.boundaries()[0].upper[0].scores[0], -1.0);
        let table = "id,g1,g2,g3,g4,g5\nx,2,1,2,1,2\n";
        let acts: Vec<PerformanceVector> = parse_actions(table.as_bytes(), &inst.criteria, "t").unwrap();
        assert_eq!(acts[0].scores, vec![-2.0, 1.0, 2.0, 1.0, 2.0]);
    }

    #[test]
    fn action_table_checks() {
        let crit: Vec<CriterionInfo> = ["a", "b"]
            .iter()
            .map(|n| CriterionInfo {
                name: n.to_string(),
                direction: Direction::Max,
            })
            .collect();
        let ok: Vec<PerformanceVector> = parse_actions("x,1,2\ny,3,4\n".as_bytes(), &crit, "t").unwrap();
        assert_eq!(ok.len(), 2);
        assert!(parse_actions::<f64>("x,1\n".as_bytes(), &crit, "t").is_err());
        assert!(parse_actions::<f64>("x,1,2\nx,3,4\n".as_bytes(), &crit, "t").is_err());
        assert!(parse_actions::<f64>("id,a,b\nx,1,zz\n".as_bytes(), &crit, "t").is_err());
        let iv: Vec<Action<IntervalNumber>> = parse_actions("x,1..2,3\n".as_bytes(), &crit, "t").unwrap();
        assert_eq!(iv[0].scores[0], IntervalNumber::new(1.0, 2.0).unwrap());
        assert!(iv[0].scores[1].is_degenerate());
    }
}
