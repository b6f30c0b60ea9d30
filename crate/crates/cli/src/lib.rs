//! `qprop` command-line front end.
//!
//! Exit codes: 0 on success (a truth-value gap is a result, not a failure),
//! 1 when a scenario fails validation, 2 on I/O errors.

pub mod demo;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qprop::composition::induced_bivalence;
use qprop::diagram::{annotate, emit_dot_many, DotOptions, HasseGraph, LabelStyle};
use qprop::scenario::parse_unvalidated;
use qprop::{paste_sublattice, truth_table, Model, Scenario, DEFAULT_EPS};
use thiserror::Error;

use report::{to_json, CheckReport, EvalReport, Row};

#[derive(Debug, Parser)]
#[command(name = "qprop", version, about = "Evaluate propositions about quantum systems with truth-value gaps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Numerical tolerance; a scenario's own `eps` takes precedence.
    #[arg(long, global = true, env = "QPROP_EPS")]
    pub eps: Option<f64>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the scenario's propositions in its evaluation state.
    Eval { scenario: PathBuf },
    /// Run a built-in demonstration.
    Demo {
        #[arg(value_enum)]
        which: DemoName,
    },
    /// Emit annotated Hasse diagrams in DOT format.
    Diagram {
        scenario: PathBuf,
        /// Draw the pasted sublattice of all contexts instead of one graph per lattice.
        #[arg(long)]
        pasted: bool,
        /// Group each Boolean block of a pasted diagram into a cluster.
        #[arg(long)]
        cluster_blocks: bool,
        /// Mark {0} false and H true even when no proposition names them.
        #[arg(long)]
        include_trivials: bool,
        #[arg(long, value_enum, default_value_t = LabelArg::Names)]
        label_style: LabelArg,
    },
    /// Validate every object in a scenario and report each result.
    Check { scenario: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Intro,
    Environment,
    ClassicalLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelArg {
    Names,
    Canonical,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

/// Text to emit and the exit code to finish with.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, exit_code: 0 }
    }
}

fn validation(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path, eps: f64) -> Result<(Scenario, Model), CliError> {
    let text = read(path)?;
    let scenario = parse_unvalidated(&text).map_err(|e| validation(format!("{}: {e}", path.display())))?;
    let model = scenario
        .resolve(eps)
        .map_err(|e| validation(format!("{}: {e}", path.display())))?;
    Ok((scenario, model))
}

pub fn eval_report(model: &Model) -> Result<EvalReport, CliError> {
    let ev = model
        .evaluation
        .as_ref()
        .ok_or_else(|| validation("scenario declares no evaluation"))?;
    let input = model.evaluation_input().map_err(validation)?;
    let table = truth_table(&input, &model.evaluation_propositions()).map_err(validation)?;
    let bivalence = match &model.environment {
        Some(env) => env
            .queries
            .iter()
            .map(|q| induced_bivalence(model, &q.system_proposition, &q.env_proposition))
            .collect::<Result<Vec<_>, _>>()
            .map_err(validation)?,
        None => Vec::new(),
    };
    Ok(EvalReport {
        kind: "eval",
        scenario: model.name.clone(),
        state: ev.state.clone(),
        eps: model.eps,
        home_lattices: model.collection.lattices_containing(input.home(), model.eps),
        rows: table.into_iter().map(|(n, v)| Row::new(n, v)).collect(),
        bivalence,
    })
}

pub struct DiagramFlags {
    pub pasted: bool,
    pub options: DotOptions,
}

/// Annotated graphs for the scenario's reported lattices, or for the pasted
/// sublattice when `pasted` is set. Vertices carry the names of matching
/// propositions and the evaluation state's values.
pub fn diagram_graphs(model: &Model, pasted: bool) -> Result<Vec<HasseGraph>, CliError> {
    let eps = model.eps;
    let mut graphs = if pasted {
        let sub = paste_sublattice(&model.collection, eps);
        vec![HasseGraph::from_sublattice("pasted sublattice", &sub, eps).map_err(validation)?]
    } else {
        model
            .reported_contexts()
            .iter()
            .map(|c| {
                let l = model.collection.get(c.label()).expect("every context has a lattice");
                HasseGraph::from_lattice(l, eps)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(validation)?
    };
    let values = match &model.evaluation {
        Some(_) => {
            let input = model.evaluation_input().map_err(validation)?;
            truth_table(&input, &model.propositions).map_err(validation)?
        }
        None => Vec::new(),
    };
    for g in &mut graphs {
        g.name_vertices(&model.propositions, eps);
        let on_graph: Vec<_> = values.iter().filter(|(n, _)| g.vertex(n).is_some()).cloned().collect();
        *g = annotate(g, &on_graph).map_err(validation)?;
    }
    Ok(graphs)
}

pub fn diagram(model: &Model, flags: &DiagramFlags) -> Result<String, CliError> {
    Ok(emit_dot_many(&diagram_graphs(model, flags.pasted)?, &flags.options))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let fallback = cli.eps.unwrap_or(DEFAULT_EPS);
    if !(fallback.is_finite() && fallback > 0.0) {
        return Err(validation(format!("eps must be a positive number, got {fallback}")));
    }
    match &cli.command {
        Command::Eval { scenario } => {
            let (_, model) = load(scenario, fallback)?;
            let r = eval_report(&model)?;
            Ok(Outcome::ok(if cli.json { to_json(&r) } else { r.render() }))
        }
        Command::Demo { which } => {
            let r = match which {
                DemoName::Intro => demo::intro(fallback),
                DemoName::Environment => demo::environment(fallback),
                DemoName::ClassicalLimit => demo::classical_limit(fallback),
            }
            .map_err(validation)?;
            Ok(Outcome::ok(if cli.json { to_json(&r) } else { r.render() }))
        }
        Command::Diagram {
            scenario,
            pasted,
            cluster_blocks,
            include_trivials,
            label_style,
        } => {
            let (_, model) = load(scenario, fallback)?;
            let flags = DiagramFlags {
                pasted: *pasted,
                options: DotOptions {
                    cluster_blocks: *cluster_blocks,
                    include_trivials: *include_trivials,
                    label_style: match label_style {
                        LabelArg::Names => LabelStyle::Names,
                        LabelArg::Canonical => LabelStyle::Canonical,
                    },
                },
            };
            Ok(Outcome::ok(diagram(&model, &flags)?))
        }
        Command::Check { scenario } => {
            let text = read(scenario)?;
            let (name, items) = match parse_unvalidated(&text) {
                Ok(s) => (s.name.clone(), s.check(fallback)),
                Err(e) => (
                    None,
                    vec![qprop::scenario::CheckItem {
                        object: "file".into(),
                        ok: false,
                        detail: e.to_string(),
                    }],
                ),
            };
            let ok = items.iter().all(|i| i.ok);
            let r = CheckReport {
                kind: "check",
                scenario: name,
                ok,
                items,
            };
            Ok(Outcome {
                output: if cli.json { to_json(&r) } else { r.render() },
                exit_code: if ok { 0 } else { 1 },
            })
        }
    }
}

/// Runs the CLI and writes its output; returns the process exit code.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.output)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
                None => {
                    print!("{}", outcome.output);
                    Ok(())
                }
            };
            match written {
                Ok(()) => outcome.exit_code,
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
