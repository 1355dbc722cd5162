//! Ordered classes separated by two-layer limiting boundaries, the structural
//! conditions on those boundaries, and class merging/splitting.
//!
//! Boundary `k` (1-based, `1 ≤ k ≤ M−1`) separates class `C_k` from `C_{k+1}`.
//! Its upper layer `B_Uk` holds actions declared in `C_k`; its lower layer `B_Lk`
//! holds actions declared in `C_{k+1}`. The anti-ideal `B_0` and ideal `B_M` are
//! virtual and never stored.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::{ensure_dimension, Action, RelationalModel};
use crate::violation::ViolationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Upper,
    Lower,
}

impl Layer {
    pub fn swapped(self) -> Self {
        match self {
            Layer::Upper => Layer::Lower,
            Layer::Lower => Layer::Upper,
        }
    }

    fn tag(self) -> char {
        match self {
            Layer::Upper => 'U',
            Layer::Lower => 'L',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Boundary<T = f64> {
    pub upper: Vec<Action<T>>,
    pub lower: Vec<Action<T>>,
}

impl<T> Boundary<T> {
    pub fn new(upper: Vec<Action<T>>, lower: Vec<Action<T>>) -> Self {
        Self { upper, lower }
    }

    pub fn layer(&self, layer: Layer) -> &[Action<T>] {
        match layer {
            Layer::Upper => &self.upper,
            Layer::Lower => &self.lower,
        }
    }

    /// Both layers, upper first.
    pub fn actions(&self) -> impl Iterator<Item = &Action<T>> {
        self.upper.iter().chain(&self.lower)
    }

    pub fn len(&self) -> usize {
        self.upper.len() + self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty() && self.lower.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySystem<T = f64> {
    class_names: Vec<String>,
    boundaries: Vec<Boundary<T>>,
}

impl<T> BoundarySystem<T> {
    /// Requires exactly one boundary fewer than classes and a common criterion
    /// count across all limiting actions.
    pub fn new(class_names: Vec<String>, boundaries: Vec<Boundary<T>>) -> Result<Self> {
        if class_names.is_empty() {
            return Err(Error::invalid("classes", "at least one class is required"));
        }
        if boundaries.len() + 1 != class_names.len() {
            return Err(Error::invalid(
                "boundaries",
                format!(
                    "{} classes need {} boundaries, got {}",
                    class_names.len(),
                    class_names.len() - 1,
                    boundaries.len()
                ),
            ));
        }
        let mut dim = None;
        for a in boundaries.iter().flat_map(Boundary::actions) {
            match dim {
                None => dim = Some(a.scores.len()),
                Some(m) if m != a.scores.len() => {
                    return Err(Error::dimension(
                        m,
                        a.scores.len(),
                        format!("limiting action `{}`", a.id),
                    ))
                }
                _ => {}
            }
        }
        Ok(Self {
            class_names,
            boundaries,
        })
    }

    /// Number of classes `M`.
    pub fn class_count(&self) -> usize {
        self.class_names.len()
    }

    pub fn boundary_count(&self) -> usize {
        self.boundaries.len()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    /// Label of class `c` (1-based).
    pub fn class_name(&self, c: usize) -> &str {
        &self.class_names[c - 1]
    }

    pub fn boundaries(&self) -> &[Boundary<T>] {
        &self.boundaries
    }

    /// Boundary `k` (1-based), `None` outside `1..=M−1`.
    pub fn boundary(&self, k: usize) -> Option<&Boundary<T>> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// Every limiting action with its boundary index and layer, boundaries ascending.
    pub fn limiting_actions(&self) -> impl Iterator<Item = (usize, Layer, &Action<T>)> {
        self.boundaries.iter().enumerate().flat_map(|(i, b)| {
            b.upper
                .iter()
                .map(move |a| (i + 1, Layer::Upper, a))
                .chain(b.lower.iter().map(move |a| (i + 1, Layer::Lower, a)))
        })
    }

    pub fn criteria_count(&self) -> Option<usize> {
        self.limiting_actions().next().map(|(_, _, a)| a.scores.len())
    }

    pub fn map_boundaries<U>(&self, f: impl Fn(&Boundary<T>) -> Boundary<U>) -> BoundarySystem<U> {
        BoundarySystem {
            class_names: self.class_names.clone(),
            boundaries: self.boundaries.iter().map(f).collect(),
        }
    }

    pub(crate) fn from_parts(class_names: Vec<String>, boundaries: Vec<Boundary<T>>) -> Self {
        debug_assert_eq!(class_names.len(), boundaries.len() + 1);
        Self {
            class_names,
            boundaries,
        }
    }
}

impl<T: Clone> BoundarySystem<T> {
    /// The same system with every upper layer emptied.
    pub fn without_upper_layers(&self) -> Self {
        self.map_boundaries(|b| Boundary::new(Vec::new(), b.lower.clone()))
    }
}

fn layer_name(k: usize, layer: Layer) -> String {
    format!("B_{}{k}", layer.tag())
}

pub(crate) fn ensure_system_dimension<M: RelationalModel>(model: &M, system: &BoundarySystem<M::Score>) -> Result<()> {
    for (_, _, a) in system.limiting_actions() {
        ensure_dimension(model, a)?;
    }
    Ok(())
}

fn degree_note<M: RelationalModel>(model: &M, x: &Action<M::Score>, y: &Action<M::Score>) -> String {
    model
        .credibility_degree(&x.scores, &y.scores)
        .map(|d| format!(" (credibility {d:.3})"))
        .unwrap_or_default()
}

/// Reports every `(w, z)` in `from × to` with `w S z`.
fn forbid_outranking<M: RelationalModel>(
    report: &mut ViolationReport,
    model: &M,
    clause: &str,
    (kw, from): (usize, &[Action<M::Score>]),
    (kz, to): (usize, &[Action<M::Score>]),
) {
    for w in from {
        for z in to {
            if model.outranks(&w.scores, &z.scores) {
                let boundaries = if kw == kz { vec![kw] } else { vec![kw, kz] };
                report.push(
                    clause,
                    vec![w.id.clone(), z.id.clone()],
                    boundaries,
                    format!("{} S {}{}", w.id, z.id, degree_note(model, w, z)),
                );
            }
        }
    }
}

/// For every `z` in `source` some `y` in `target` must satisfy `holds(z, y)`.
/// An empty source makes the clause vacuous and is reported as a warning.
fn require_existence<T>(
    report: &mut ViolationReport,
    clause: &str,
    (ks, source_name, source): (usize, &str, &[&Action<T>]),
    (kt, target_name, target): (usize, &str, &[&Action<T>]),
    relation: &str,
    holds: impl Fn(&Action<T>, &Action<T>) -> bool,
) {
    let boundaries = if ks == kt { vec![ks] } else { vec![ks, kt] };
    if source.is_empty() {
        let message = if target.is_empty() {
            format!("unsatisfiable: {source_name} and {target_name} are empty; clause vacuous")
        } else {
            format!("{source_name} is empty; clause vacuous")
        };
        report.warn(clause, boundaries, message);
        return;
    }
    for z in source {
        if !target.iter().any(|y| holds(z, y)) {
            let message = if target.is_empty() {
                format!("{target_name} is empty, so no action relates to {} by {relation}", z.id)
            } else {
                format!("no action of {target_name} relates to {} by {relation}", z.id)
            };
            report.push(clause, vec![z.id.clone()], boundaries.clone(), message);
        }
    }
}

fn refs<T>(actions: &[Action<T>]) -> Vec<&Action<T>> {
    actions.iter().collect()
}

/// Layer disjointness and absence of `P` inside each layer.
pub fn validate_condition2<M: RelationalModel>(
    system: &BoundarySystem<M::Score>,
    model: &M,
) -> Result<ViolationReport> {
    ensure_system_dimension(model, system)?;
    let mut report = ViolationReport::new();
    for (i, b) in system.boundaries().iter().enumerate() {
        let k = i + 1;
        let upper_ids: HashSet<&str> = b.upper.iter().map(|a| a.id.as_str()).collect();
        for a in &b.lower {
            if upper_ids.contains(a.id.as_str()) {
                report.push(
                    "2.disjoint",
                    vec![a.id.clone()],
                    vec![k],
                    format!("{} appears in both layers of B_{k}", a.id),
                );
            }
        }
        if b.is_empty() {
            report.warn("2.empty", vec![k], format!("both layers of B_{k} are empty"));
        }
        for (clause, layer) in [("2.iii", Layer::Lower), ("2.iv", Layer::Upper)] {
            let acts = b.layer(layer);
            for (iw, w) in acts.iter().enumerate() {
                for (iz, z) in acts.iter().enumerate() {
                    if iw != iz && model.prefers(&w.scores, &z.scores) {
                        report.push(
                            clause,
                            vec![w.id.clone(), z.id.clone()],
                            vec![k],
                            format!("{} P {} inside {}", w.id, z.id, layer_name(k, layer)),
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

fn outranking_separability<M: RelationalModel>(
    report: &mut ViolationReport,
    system: &BoundarySystem<M::Score>,
    model: &M,
    prefix: &str,
) {
    let bs = system.boundaries();
    for (i, b) in bs.iter().enumerate() {
        let k = i + 1;
        forbid_outranking(report, model, &format!("{prefix}.i"), (k, &b.upper), (k, &b.lower));
        for (j, higher) in bs.iter().enumerate().skip(i + 1) {
            let h = j + 1;
            for from in [&b.upper, &b.lower] {
                for to in [&higher.upper, &higher.lower] {
                    forbid_outranking(report, model, &format!("{prefix}.ii"), (k, from), (h, to));
                }
            }
        }
    }
}

/// Separability for the outranking-based rules (clauses i–viii).
pub fn validate_condition3<M: RelationalModel>(
    system: &BoundarySystem<M::Score>,
    model: &M,
) -> Result<ViolationReport> {
    ensure_system_dimension(model, system)?;
    let mut report = ViolationReport::new();
    outranking_separability(&mut report, system, model, "3");

    let n = system.boundary_count();
    let bs = system.boundaries();
    let s = |a: &Action<M::Score>, b: &Action<M::Score>| model.outranks(&a.scores, &b.scores);
    let d = |a: &Action<M::Score>, b: &Action<M::Score>| model.dominates(&a.scores, &b.scores);
    for k in 1..=n {
        let b = &bs[k - 1];
        let (uk, lk) = (refs(&b.upper), refs(&b.lower));
        let un = layer_name(k, Layer::Upper);
        let ln = layer_name(k, Layer::Lower);
        if k > 1 {
            let prev = &bs[k - 2];
            let (up, lp) = (refs(&prev.upper), refs(&prev.lower));
            let upn = layer_name(k - 1, Layer::Upper);
            let lpn = layer_name(k - 1, Layer::Lower);
            // z ∈ B_Uk outranks some y ∈ B_L,k−1
            require_existence(
                &mut report,
                "3.iii",
                (k, &un, &uk),
                (k - 1, &lpn, &lp),
                "zSy",
                |z, y| s(z, y),
            );
            // z ∈ B_Uk dominates some w ∈ B_U,k−1
            require_existence(&mut report, "3.vi", (k, &un, &uk), (k - 1, &upn, &up), "zDw", |z, w| {
                d(z, w)
            });
            // z ∈ B_Lk dominates some y ∈ B_L,k−1
            require_existence(
                &mut report,
                "3.vii",
                (k, &ln, &lk),
                (k - 1, &lpn, &lp),
                "zDy",
                |z, y| d(z, y),
            );
        }
        if k < n {
            let next = &bs[k];
            let (un1, ln1) = (refs(&next.upper), refs(&next.lower));
            let unn = layer_name(k + 1, Layer::Upper);
            let lnn = layer_name(k + 1, Layer::Lower);
            // some y ∈ B_U,k+1 outranks z ∈ B_Lk
            require_existence(
                &mut report,
                "3.iv",
                (k, &ln, &lk),
                (k + 1, &unn, &un1),
                "ySz",
                |z, y| s(y, z),
            );
            // some w ∈ B_U,k+1 dominates z ∈ B_Uk
            require_existence(&mut report, "3.v", (k, &un, &uk), (k + 1, &unn, &un1), "wDz", |z, w| {
                d(w, z)
            });
            // some y ∈ B_L,k+1 dominates z ∈ B_Lk
            require_existence(
                &mut report,
                "3.viii",
                (k, &ln, &lk),
                (k + 1, &lnn, &ln1),
                "yDz",
                |z, y| d(y, z),
            );
        }
    }
    Ok(report)
}

/// Separability for the preference-based rules (clauses i–v).
pub fn validate_condition4<M: RelationalModel>(
    system: &BoundarySystem<M::Score>,
    model: &M,
) -> Result<ViolationReport> {
    ensure_system_dimension(model, system)?;
    let mut report = ViolationReport::new();
    outranking_separability(&mut report, system, model, "4");

    let n = system.boundary_count();
    let bs = system.boundaries();
    let s = |a: &Action<M::Score>, b: &Action<M::Score>| model.outranks(&a.scores, &b.scores);
    let d = |a: &Action<M::Score>, b: &Action<M::Score>| model.dominates(&a.scores, &b.scores);
    for k in 1..=n {
        let b = &bs[k - 1];
        let all: Vec<_> = b.actions().collect();
        let bn = format!("B_{k}");
        require_existence(
            &mut report,
            "4.iii",
            (k, &layer_name(k, Layer::Upper), &refs(&b.upper)),
            (k, &layer_name(k, Layer::Lower), &refs(&b.lower)),
            "ySz",
            |z, y| s(y, z),
        );
        if k < n {
            let next: Vec<_> = bs[k].actions().collect();
            require_existence(
                &mut report,
                "4.iv",
                (k, &bn, &all),
                (k + 1, &format!("B_{}", k + 1), &next),
                "wDz",
                |z, w| d(w, z),
            );
        }
        if k > 1 {
            let prev: Vec<_> = bs[k - 2].actions().collect();
            require_existence(
                &mut report,
                "4.v",
                (k, &bn, &all),
                (k - 1, &format!("B_{}", k - 1), &prev),
                "zDw",
                |z, w| d(z, w),
            );
        }
    }
    Ok(report)
}

/// Which separability condition a boundary set is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Separability {
    /// Condition 3, for the outranking-based rules.
    Outranking,
    /// Condition 4, for the preference-based rules.
    Preference,
}

/// Removes boundary `k`, fusing `C_k` and `C_{k+1}`.
pub fn merge_classes<T: Clone>(system: &BoundarySystem<T>, k: usize) -> Result<BoundarySystem<T>> {
    let n = system.boundary_count();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange {
            what: "boundary",
            index: k,
            min: 1,
            max: n,
        });
    }
    let mut names = system.class_names.clone();
    let upper_name = names.remove(k);
    names[k - 1] = format!("{}+{}", names[k - 1], upper_name);
    let mut boundaries = system.boundaries.clone();
    boundaries.remove(k - 1);
    Ok(BoundarySystem::from_parts(names, boundaries))
}

/// Splits class `k` in two by inserting `boundary` at position `k`.
///
/// The augmented system must satisfy Condition 2 and the chosen separability
/// condition wherever the new boundary is involved; otherwise the report of the
/// offending clauses is returned as [`Error::Rejected`].
pub fn split_class<M: RelationalModel>(
    system: &BoundarySystem<M::Score>,
    k: usize,
    boundary: Boundary<M::Score>,
    names: (String, String),
    model: &M,
    requirement: Separability,
) -> Result<BoundarySystem<M::Score>>
where
    M::Score: Clone,
{
    let m = system.class_count();
    if k == 0 || k > m {
        return Err(Error::IndexOutOfRange {
            what: "class",
            index: k,
            min: 1,
            max: m,
        });
    }
    let mut class_names = system.class_names.clone();
    class_names[k - 1] = names.0;
    class_names.insert(k, names.1);
    let mut boundaries = system.boundaries.clone();
    boundaries.insert(k - 1, boundary);
    let candidate = BoundarySystem::new(class_names, boundaries)?;

    let mut report = validate_condition2(&candidate, model)?;
    report.merge(match requirement {
        Separability::Outranking => validate_condition3(&candidate, model)?,
        Separability::Preference => validate_condition4(&candidate, model)?,
    });
    report.retain(|v| v.boundaries.contains(&k));
    report.warnings.clear();
    if report.is_empty() {
        Ok(candidate)
    } else {
        Err(Error::Rejected(report))
    }
}
