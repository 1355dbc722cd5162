//! Command-line surface: `validate`, `assign`, `relations`, `check`, `transpose`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::assignment::{assign, transpose_problem, AssignmentOutcome, Family, Rule};
use crate::boundary::{validate_condition2, validate_condition3, validate_condition4, BoundarySystem};
use crate::error::{Error, Result};
use crate::generate::{random_actions, random_interval_actions};
use crate::harness::{run_electre_properties, run_properties, Property, PropertyReport};
use crate::instance::LoadedInstance;
use crate::io::{
    display_order, load_actions, load_model, relation_matrix, render_actions, render_matrix, save_model, TableScore,
};
use crate::relation::{check_condition1, check_proposition1, Action, RelationalModel};
use crate::violation::ViolationReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_PROPERTY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "limitsort",
    version,
    about = "Sort actions into ordered classes using two-layer limiting boundaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the boundary conditions of a model; exit 0 iff no violations.
    Validate {
        model: PathBuf,
        /// Conditions to check (1 = relational model axioms on the limiting actions).
        #[arg(long, value_delimiter = ',', default_value = "2,3,4", value_parser = clap::value_parser!(u8).range(1..=4))]
        conditions: Vec<u8>,
        /// Also write a JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Assign every action of a table to a class.
    Assign {
        model: PathBuf,
        actions: PathBuf,
        #[arg(long, value_enum)]
        rule: RuleArg,
        /// Show the boundary relations consulted.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print pairwise relations between limiting actions (and optional extra actions).
    Relations {
        model: PathBuf,
        actions: Option<PathBuf>,
        /// Also print the credibility matrix, when the model has one.
        #[arg(long)]
        credibility: bool,
    },
    /// Run the structural property harness on the model.
    Check {
        model: PathBuf,
        /// Comma-separated subset of properties; all by default.
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
        /// Random audit actions added to the limiting actions.
        #[arg(long, default_value_t = 200)]
        grid_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra audit actions from a table.
        #[arg(long)]
        actions: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write the transposed instance (criteria directions and class order inverted).
    Transpose {
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Action table to transpose alongside the model.
        #[arg(long, requires = "actions_output")]
        actions: Option<PathBuf>,
        #[arg(long)]
        actions_output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    SPrimal,
    SDual,
    PPrimal,
    PDual,
    SConjoint,
    PConjoint,
}

impl RuleArg {
    fn rules(self) -> Vec<Rule> {
        match self {
            RuleArg::SPrimal => vec![Rule::SPrimal],
            RuleArg::SDual => vec![Rule::SDual],
            RuleArg::PPrimal => vec![Rule::PPrimal],
            RuleArg::PDual => vec![Rule::PDual],
            RuleArg::SConjoint => Rule::rules_of(Family::S).to_vec(),
            RuleArg::PConjoint => Rule::rules_of(Family::P).to_vec(),
        }
    }
}

/// Text for stdout plus the exit status it implies.
struct Output {
    text: String,
    status: i32,
}

/// Parses `argv` (program name first), runs the command, prints its output and
/// returns the process exit status.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            out.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Rejected(_)) {
                EXIT_VALIDATION
            } else {
                EXIT_ERROR
            }
        }
    }
}

fn execute(command: Command) -> Result<Output> {
    match command {
        Command::Validate {
            model,
            conditions,
            report,
        } => validate(&model, &conditions, report.as_deref()),
        Command::Assign {
            model,
            actions,
            rule,
            trace,
            report,
        } => assign_cmd(&model, &actions, rule, trace, report.as_deref()),
        Command::Relations {
            model,
            actions,
            credibility,
        } => relations(&model, actions.as_deref(), credibility),
        Command::Check {
            model,
            properties,
            grid_samples,
            seed,
            actions,
            report,
        } => check(
            &model,
            &properties,
            grid_samples,
            seed,
            actions.as_deref(),
            report.as_deref(),
        ),
        Command::Transpose {
            model,
            output,
            actions,
            actions_output,
        } => transpose(&model, &output, actions.as_deref(), actions_output.as_deref()),
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn limiting<T: Clone>(system: &BoundarySystem<T>) -> Vec<Action<T>> {
    system.limiting_actions().map(|(_, _, a)| a.clone()).collect()
}

fn condition_reports<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    conditions: &[u8],
) -> Result<BTreeMap<String, ViolationReport>>
where
    M::Score: Clone,
{
    let mut reports = BTreeMap::new();
    for &c in conditions {
        let report = match c {
            1 => {
                let actions = limiting(system);
                let mut r = check_condition1(model, &actions)?;
                r.merge(check_proposition1(model, &actions)?);
                r
            }
            2 => validate_condition2(system, model)?,
            3 => validate_condition3(system, model)?,
            4 => validate_condition4(system, model)?,
            _ => unreachable!("clap restricts conditions to 1..=4"),
        };
        reports.insert(format!("condition {c}"), report);
    }
    Ok(reports)
}

fn validate(model: &Path, conditions: &[u8], report: Option<&Path>) -> Result<Output> {
    let mut conditions = conditions.to_vec();
    conditions.sort_unstable();
    conditions.dedup();
    let reports = match load_model(model)? {
        LoadedInstance::Electre(i) => condition_reports(&i.model, &i.system, &conditions)?,
        LoadedInstance::IntervalValue(i) => condition_reports(&i.model, &i.system, &conditions)?,
    };
    let mut text = String::new();
    for (name, r) in &reports {
        if r.is_empty() && r.warnings.is_empty() {
            writeln!(text, "{name}: ok").unwrap();
        } else {
            let verdict = if r.is_empty() {
                "ok".to_string()
            } else {
                format!("{} violation(s)", r.len())
            };
            writeln!(text, "{name}: {verdict}").unwrap();
            for line in r.to_string().lines().filter(|l| *l != "no violations") {
                writeln!(text, "  {line}").unwrap();
            }
        }
    }
    if let Some(path) = report {
        write_json(path, &reports)?;
    }
    let clean = reports.values().all(ViolationReport::is_empty);
    Ok(Output {
        text,
        status: if clean { EXIT_OK } else { EXIT_VALIDATION },
    })
}

#[derive(Serialize)]
struct AssignmentRecord {
    id: String,
    /// Distinct classes proposed by the selected rules, lowest first.
    classes: Vec<String>,
    outcomes: Vec<AssignmentOutcome>,
}

fn boundary_label(k: usize, class_count: usize) -> String {
    match k {
        0 => "B0 (bottom)".to_string(),
        k if k == class_count => format!("B{k} (top)"),
        k => format!("B{k}"),
    }
}

fn assign_generic<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    actions: &[Action<M::Score>],
    rules: &[Rule],
    trace: bool,
) -> Result<(String, Vec<AssignmentRecord>)> {
    let mut text = String::new();
    let mut records = Vec::new();
    for a in actions {
        let outcomes = rules
            .iter()
            .map(|&r| assign(model, a, system, r))
            .collect::<Result<Vec<_>>>()?;
        let mut indices: Vec<usize> = outcomes.iter().map(|o| o.class_index).collect();
        indices.sort_unstable();
        indices.dedup();
        let classes: Vec<String> = indices.iter().map(|&c| system.class_name(c).to_string()).collect();
        if rules.len() == 1 {
            writeln!(text, "{}: {}", a.id, classes[0]).unwrap();
        } else {
            writeln!(text, "{}: [{}]", a.id, classes.join(", ")).unwrap();
        }
        if trace {
            for o in &outcomes {
                writeln!(text, "  {} -> {}", o.rule, system.class_name(o.class_index)).unwrap();
                for step in &o.trace {
                    let label = boundary_label(step.boundary, system.class_count());
                    writeln!(text, "    {label}: {}", step.relation.symbol()).unwrap();
                }
            }
        }
        records.push(AssignmentRecord {
            id: a.id.clone(),
            classes,
            outcomes,
        });
    }
    Ok((text, records))
}

fn assign_cmd(model: &Path, actions: &Path, rule: RuleArg, trace: bool, report: Option<&Path>) -> Result<Output> {
    let rules = rule.rules();
    let (text, records) = match load_model(model)? {
        LoadedInstance::Electre(i) => {
            let acts = load_actions::<f64>(actions, &i.criteria)?;
            assign_generic(&i.model, &i.system, &acts, &rules, trace)?
        }
        LoadedInstance::IntervalValue(i) => {
            let acts = load_actions(actions, &i.criteria)?;
            assign_generic(&i.model, &i.system, &acts, &rules, trace)?
        }
    };
    if let Some(path) = report {
        write_json(path, &records)?;
    }
    Ok(Output { text, status: EXIT_OK })
}

fn relations_generic<M: RelationalModel>(
    model: &M,
    system: &BoundarySystem<M::Score>,
    extra: &[Action<M::Score>],
    credibility: bool,
) -> String {
    let mut rows = display_order(system);
    rows.extend(extra.iter());
    let labels: Vec<&str> = rows.iter().map(|a| a.id.as_str()).collect();
    let mut text = render_matrix(&labels, &relation_matrix(model, &rows));
    if credibility {
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|x| {
                rows.iter()
                    .map(|y| match model.credibility_degree(&x.scores, &y.scores) {
                        Some(v) => format!("{v:.3}"),
                        None => "-".to_string(),
                    })
                    .collect()
            })
            .collect();
        text.push('\n');
        text.push_str(&render_matrix(&labels, &cells));
    }
    text
}

fn load_optional<T: TableScore>(
    path: Option<&Path>,
    criteria: &[crate::instance::CriterionInfo],
) -> Result<Vec<Action<T>>> {
    path.map_or(Ok(Vec::new()), |p| load_actions(p, criteria))
}

fn relations(model: &Path, actions: Option<&Path>, credibility: bool) -> Result<Output> {
    let text = match load_model(model)? {
        LoadedInstance::Electre(i) => {
            let extra = load_optional::<f64>(actions, &i.criteria)?;
            relations_generic(&i.model, &i.system, &extra, credibility)
        }
        LoadedInstance::IntervalValue(i) => {
            let extra = load_optional(actions, &i.criteria)?;
            relations_generic(&i.model, &i.system, &extra, credibility)
        }
    };
    Ok(Output { text, status: EXIT_OK })
}

fn check(
    model: &Path,
    properties: &[String],
    grid_samples: usize,
    seed: u64,
    actions: Option<&Path>,
    report: Option<&Path>,
) -> Result<Output> {
    let selection: Vec<Property> = if properties.is_empty() {
        Property::ALL.to_vec()
    } else {
        properties.iter().map(|p| p.parse()).collect::<Result<_>>()?
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut result: PropertyReport = match load_model(model)? {
        LoadedInstance::Electre(i) => {
            let mut audit = limiting(&i.system);
            audit.extend(load_optional::<f64>(actions, &i.criteria)?);
            audit.extend(random_actions(&mut rng, &i.system, grid_samples));
            run_electre_properties(&i.model, &i.system, &audit, &selection)?
        }
        LoadedInstance::IntervalValue(i) => {
            let mut audit = limiting(&i.system);
            audit.extend(load_optional(actions, &i.criteria)?);
            audit.extend(random_interval_actions(
                &mut rng,
                &i.system,
                i.criteria.len(),
                grid_samples,
            ));
            run_properties(&i.model, &i.system, &audit, &selection)?
        }
    };
    result.seed = Some(seed);
    let result = result.sorted();
    if let Some(path) = report {
        write_json(path, &result)?;
    }
    Ok(Output {
        status: if result.is_clean() { EXIT_OK } else { EXIT_PROPERTY },
        text: result.to_string(),
    })
}

fn transpose(model: &Path, output: &Path, actions: Option<&Path>, actions_output: Option<&Path>) -> Result<Output> {
    let LoadedInstance::Electre(instance) = load_model(model)? else {
        return Err(Error::Unsupported("transposition of interval-value models".into()));
    };
    let originals = load_optional::<f64>(actions, &instance.criteria)?;
    let (transposed, moved) = transpose_problem(&instance, &originals);
    let mut text = String::new();
    if let Some(path) = actions_output {
        let table = render_actions(&moved, &transposed.criteria)?;
        fs::write(path, table).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        writeln!(text, "wrote {} transposed actions to {}", moved.len(), path.display()).unwrap();
    }
    save_model(&LoadedInstance::Electre(transposed), output)?;
    writeln!(text, "wrote transposed model to {}", output.display()).unwrap();
    Ok(Output { text, status: EXIT_OK })
}
