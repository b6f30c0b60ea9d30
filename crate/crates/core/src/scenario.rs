//! JSON scenario files: dimension, named states, contexts, propositions, an
//! evaluation request and an optional environment section.
//!
//! Complex numbers are written `[re, im]`; a bare number is shorthand for a
//! real value. Subspaces and projectors share one spec syntax:
//!
//! ```json
//! {"span": [[1, 0]]}             span of vectors
//! {"matrix": [[1, 0], [0, 0]]}   range of a projector matrix
//! {"full": 2}   {"zero": 2}      the trivial subspaces
//! {"tensor": [spec, spec, ...]}  Kronecker product, system factor first
//! ```

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::composition::{tensor_subspace, CompositeSpace};
use crate::context::{lattice_law_violations, lattice_of, Context, LatticeCollection};
use crate::error::Error;
use crate::linalg::{ComplexMatrix, C64};
use crate::spin::Axis;
use crate::subspace::{Projector, StateVector, Subspace, DEFAULT_EPS};
use crate::valuation::{Proposition, ValuationInput};

pub const SCHEMA_VERSION: u32 = 1;

/// Number of random triples used when a lattice is too large to check
/// distributivity exhaustively.
pub const SAMPLED_TRIPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexLit(pub C64);

impl From<C64> for ComplexLit {
    fn from(z: C64) -> Self {
        ComplexLit(z)
    }
}

impl From<f64> for ComplexLit {
    fn from(x: f64) -> Self {
        ComplexLit(C64::new(x, 0.0))
    }
}

impl Serialize for ComplexLit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.0.re)?;
        t.serialize_element(&self.0.im)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for ComplexLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Real(f64),
            Pair(Vec<f64>),
        }
        match Raw::deserialize(d).map_err(|_| de::Error::custom("expected a number or an [re, im] pair"))? {
            Raw::Real(x) => Ok(ComplexLit(C64::new(x, 0.0))),
            Raw::Pair(v) if v.len() == 2 => Ok(ComplexLit(C64::new(v[0], v[1]))),
            Raw::Pair(v) => Err(de::Error::custom(format!(
                "complex literal needs exactly 2 components, got {}",
                v.len()
            ))),
        }
    }
}

fn lits_to_vec(v: &[ComplexLit]) -> Vec<C64> {
    v.iter().map(|z| z.0).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceSpec {
    Span(Vec<Vec<ComplexLit>>),
    Matrix(Vec<Vec<ComplexLit>>),
    Full(usize),
    Zero(usize),
    Tensor(Vec<SubspaceSpec>),
}

impl SubspaceSpec {
    /// Ambient dimension implied by the spec itself, if any.
    pub fn infer_dim(&self) -> Option<usize> {
        match self {
            SubspaceSpec::Span(vs) => vs.first().map(Vec::len),
            SubspaceSpec::Matrix(rows) => Some(rows.len()),
            SubspaceSpec::Full(d) | SubspaceSpec::Zero(d) => Some(*d),
            SubspaceSpec::Tensor(fs) => fs.iter().map(SubspaceSpec::infer_dim).product(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub name: String,
    pub amplitudes: Vec<ComplexLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub home: Option<SubspaceSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    pub label: String,
    pub projectors: Vec<SubspaceSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropositionSpec {
    pub name: String,
    pub subspace: SubspaceSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluationSpec {
    pub state: String,
    /// Proposition names to evaluate; empty means all, in declaration order.
    #[serde(default)]
    pub propositions: Vec<String>,
    /// Lattice to draw and report on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivalenceQuery {
    pub system_proposition: String,
    pub env_proposition: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentSpec {
    /// System first, then environment factors `E_1 … E_N`.
    pub factor_dims: Vec<usize>,
    pub preferred_axis: Axis,
    pub splice_index: usize,
    /// Label of the composite context that splices system and environment.
    pub composite_context: String,
    /// The system on its own, before any interaction.
    pub system: Box<Scenario>,
    /// Propositions about the environment alone, over the environment factors.
    pub env_propositions: Vec<PropositionSpec>,
    #[serde(default)]
    pub bivalence: Vec<BivalenceQuery>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default)]
    pub states: Vec<StateSpec>,
    #[serde(default)]
    pub contexts: Vec<ContextSpec>,
    #[serde(default)]
    pub propositions: Vec<PropositionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<EvaluationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<EnvironmentSpec>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema_version {found} (expected {SCHEMA_VERSION})")]
    UnsupportedVersion { found: u32 },
    #[error("{path}: unknown reference {name:?}")]
    UnknownReference { path: String, name: String },
    #[error("{path}: duplicate name {name:?}")]
    DuplicateName { path: String, name: String },
    #[error("{path}: {source}")]
    ValidationFailed {
        path: String,
        #[source]
        source: Error,
    },
}

type SResult<T> = Result<T, ScenarioError>;

fn invalid(path: impl Into<String>) -> impl FnOnce(Error) -> ScenarioError {
    let path = path.into();
    move |source| ScenarioError::ValidationFailed { path, source }
}

/// Parses and fully validates a scenario.
pub fn parse_scenario(text: &str) -> SResult<Scenario> {
    let scenario = parse_unvalidated(text)?;
    scenario.resolve(DEFAULT_EPS)?;
    Ok(scenario)
}

/// Parses JSON without building any of the described objects.
pub fn parse_unvalidated(text: &str) -> SResult<Scenario> {
    let scenario: Scenario = serde_json::from_str(text).map_err(|e| ScenarioError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if scenario.schema_version != SCHEMA_VERSION {
        return Err(ScenarioError::UnsupportedVersion {
            found: scenario.schema_version,
        });
    }
    Ok(scenario)
}

/// Resolves `spec` to a subspace of `C^expected` (or of its own inferred
/// dimension when `expected` is `None`).
pub fn resolve_subspace(spec: &SubspaceSpec, expected: Option<usize>, eps: f64, path: &str) -> SResult<Subspace> {
    let inferred = spec.infer_dim().or(expected).ok_or_else(|| ScenarioError::ValidationFailed {
        path: path.to_string(),
        source: Error::InvalidInput("cannot infer the dimension of an empty span".into()),
    })?;
    if let Some(d) = expected {
        if d != inferred {
            return Err(invalid(path)(Error::DimensionMismatch {
                expected: d,
                found: inferred,
            }));
        }
    }
    let d = inferred;
    match spec {
        SubspaceSpec::Span(vs) => {
            let vs: Vec<Vec<C64>> = vs.iter().map(|v| lits_to_vec(v)).collect();
            Subspace::from_spanning(d, &vs, eps).map_err(invalid(path))
        }
        SubspaceSpec::Matrix(_) => resolve_projector(spec, d, eps, path)?
            .range(eps)
            .map_err(invalid(path)),
        SubspaceSpec::Full(_) => Ok(Subspace::full(d)),
        SubspaceSpec::Zero(_) => Ok(Subspace::zero(d)),
        SubspaceSpec::Tensor(fs) => {
            if fs.is_empty() {
                return Err(invalid(path)(Error::InvalidInput("empty tensor product".into())));
            }
            let mut acc: Option<Subspace> = None;
            for (i, f) in fs.iter().enumerate() {
                let s = resolve_subspace(f, None, eps, &format!("{path}.tensor[{i}]"))?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => tensor_subspace(&a, &s),
                });
            }
            Ok(acc.expect("nonempty"))
        }
    }
}

/// A matrix literal is validated as a projector as written; every other spec
/// goes through its subspace.
pub fn resolve_projector(spec: &SubspaceSpec, d: usize, eps: f64, path: &str) -> SResult<Projector> {
    match spec {
        SubspaceSpec::Matrix(rows) => {
            let rows: Vec<Vec<C64>> = rows.iter().map(|r| lits_to_vec(r)).collect();
            let m = ComplexMatrix::from_rows(&rows).map_err(invalid(path))?;
            if m.rows() != d || m.cols() != d {
                return Err(invalid(path)(Error::DimensionMismatch {
                    expected: d,
                    found: if m.rows() != d { m.rows() } else { m.cols() },
                }));
            }
            Projector::new(m, eps).map_err(invalid(path))
        }
        other => Ok(resolve_subspace(other, Some(d), eps, path)?.projector()),
    }
}

#[derive(Clone, Debug)]
pub struct NamedState {
    pub name: String,
    pub state: StateVector,
    pub home: Subspace,
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub state: String,
    pub propositions: Vec<String>,
    pub context: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Environment {
    pub space: CompositeSpace,
    pub axis: Axis,
    pub splice_index: usize,
    pub composite_context: String,
    pub system: Box<Model>,
    pub env_propositions: Vec<Proposition>,
    pub queries: Vec<BivalenceQuery>,
}

/// A scenario with every spec resolved and validated.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: Option<String>,
    pub eps: f64,
    pub dimension: usize,
    pub states: Vec<NamedState>,
    pub contexts: Vec<Context>,
    pub collection: LatticeCollection,
    pub propositions: Vec<Proposition>,
    pub evaluation: Option<Evaluation>,
    pub environment: Option<Environment>,
}

impl Model {
    pub fn state(&self, name: &str) -> Option<&NamedState> {
        self.states.iter().find(|s| s.name == name)
    }

    pub fn proposition(&self, name: &str) -> Option<&Proposition> {
        self.propositions.iter().find(|p| p.name == name)
    }

    pub fn context(&self, label: &str) -> Option<&Context> {
        self.contexts.iter().find(|c| c.label() == label)
    }

    pub fn valuation_input(&self, state: &str) -> Result<ValuationInput, Error> {
        let s = self
            .state(state)
            .ok_or_else(|| Error::InvalidInput(format!("unknown state {state:?}")))?;
        ValuationInput::new(s.state.clone(), s.home.clone(), self.collection.clone(), self.eps)
    }

    /// Input for the declared evaluation state.
    pub fn evaluation_input(&self) -> Result<ValuationInput, Error> {
        let ev = self
            .evaluation
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("scenario declares no evaluation".into()))?;
        self.valuation_input(&ev.state)
    }

    /// Propositions named in the evaluation block, or all of them.
    pub fn evaluation_propositions(&self) -> Vec<Proposition> {
        match &self.evaluation {
            Some(ev) if !ev.propositions.is_empty() => ev
                .propositions
                .iter()
                .filter_map(|n| self.proposition(n).cloned())
                .collect(),
            _ => self.propositions.clone(),
        }
    }

    /// Contexts selected for reporting: the evaluation context if one is named,
    /// otherwise all of them.
    pub fn reported_contexts(&self) -> Vec<&Context> {
        match self.evaluation.as_ref().and_then(|e| e.context.as_deref()) {
            Some(label) => self.context(label).into_iter().collect(),
            None => self.contexts.iter().collect(),
        }
    }
}

fn check_unique<'a>(names: impl Iterator<Item = &'a str>, path: &str) -> SResult<()> {
    let mut seen: Vec<&str> = Vec::new();
    for n in names {
        if seen.contains(&n) {
            return Err(ScenarioError::DuplicateName {
                path: path.to_string(),
                name: n.to_string(),
            });
        }
        seen.push(n);
    }
    Ok(())
}

fn resolve_state(spec: &StateSpec, d: usize, eps: f64, path: &str) -> SResult<NamedState> {
    let amps = lits_to_vec(&spec.amplitudes);
    if amps.len() != d {
        return Err(invalid(format!("{path}.amplitudes"))(Error::DimensionMismatch {
            expected: d,
            found: amps.len(),
        }));
    }
    let state = StateVector::new(amps).map_err(invalid(format!("{path}.amplitudes")))?;
    let home = match &spec.home {
        Some(h) => resolve_subspace(h, Some(d), eps, &format!("{path}.home"))?,
        None => state.span(),
    };
    if !home.contains_vector(&state, eps).map_err(invalid(format!("{path}.home")))? {
        return Err(invalid(format!("{path}.home"))(Error::InvalidInput(
            "home subspace does not contain the state".into(),
        )));
    }
    Ok(NamedState {
        name: spec.name.clone(),
        state,
        home,
    })
}

fn resolve_context(spec: &ContextSpec, d: usize, eps: f64, path: &str) -> SResult<Context> {
    let projectors = spec
        .projectors
        .iter()
        .enumerate()
        .map(|(i, p)| resolve_projector(p, d, eps, &format!("{path}.projectors[{i}]")))
        .collect::<SResult<Vec<_>>>()?;
    Context::new(spec.label.clone(), projectors, eps).map_err(invalid(path))
}

fn resolve_proposition(spec: &PropositionSpec, d: usize, eps: f64, path: &str) -> SResult<Proposition> {
    Ok(Proposition::new(
        spec.name.clone(),
        resolve_subspace(&spec.subspace, Some(d), eps, &format!("{path}.subspace"))?,
    ))
}

fn resolve_evaluation(ev: &EvaluationSpec, model: &Model, path: &str) -> SResult<Evaluation> {
    if model.state(&ev.state).is_none() {
        return Err(ScenarioError::UnknownReference {
            path: format!("{path}.state"),
            name: ev.state.clone(),
        });
    }
    for (i, n) in ev.propositions.iter().enumerate() {
        if model.proposition(n).is_none() {
            return Err(ScenarioError::UnknownReference {
                path: format!("{path}.propositions[{i}]"),
                name: n.clone(),
            });
        }
    }
    if let Some(c) = &ev.context {
        if model.context(c).is_none() {
            return Err(ScenarioError::UnknownReference {
                path: format!("{path}.context"),
                name: c.clone(),
            });
        }
    }
    model
        .valuation_input(&ev.state)
        .map_err(invalid(format!("{path}.state")))?;
    Ok(Evaluation {
        state: ev.state.clone(),
        propositions: ev.propositions.clone(),
        context: ev.context.clone(),
    })
}

fn resolve_environment(env: &EnvironmentSpec, model: &Model, eps: f64, path: &str) -> SResult<Environment> {
    let space = CompositeSpace::new(env.factor_dims.clone()).map_err(invalid(format!("{path}.factor_dims")))?;
    if space.total_dim() != model.dimension {
        return Err(invalid(format!("{path}.factor_dims"))(Error::DimensionMismatch {
            expected: model.dimension,
            found: space.total_dim(),
        }));
    }
    if env.splice_index == 0 || env.splice_index >= env.factor_dims.len() {
        return Err(invalid(format!("{path}.splice_index"))(Error::InvalidSplice(format!(
            "{} is outside 1..={}",
            env.splice_index,
            env.factor_dims.len() - 1
        ))));
    }
    if model.context(&env.composite_context).is_none() {
        return Err(ScenarioError::UnknownReference {
            path: format!("{path}.composite_context"),
            name: env.composite_context.clone(),
        });
    }
    let sys_eps = env.system.eps.unwrap_or(eps);
    let system = env.system.resolve_at(sys_eps, &format!("{path}.system"))?;
    if system.dimension != space.system_dim() {
        return Err(invalid(format!("{path}.system.dimension"))(Error::DimensionMismatch {
            expected: space.system_dim(),
            found: system.dimension,
        }));
    }
    check_unique(
        env.env_propositions.iter().map(|p| p.name.as_str()),
        &format!("{path}.env_propositions"),
    )?;
    let env_propositions = env
        .env_propositions
        .iter()
        .enumerate()
        .map(|(i, p)| {
            resolve_proposition(p, space.environment_dim(), eps, &format!("{path}.env_propositions[{i}]"))
        })
        .collect::<SResult<Vec<_>>>()?;
    for (i, q) in env.bivalence.iter().enumerate() {
        if system.proposition(&q.system_proposition).is_none() {
            return Err(ScenarioError::UnknownReference {
                path: format!("{path}.bivalence[{i}].system_proposition"),
                name: q.system_proposition.clone(),
            });
        }
        if !env_propositions.iter().any(|p| p.name == q.env_proposition) {
            return Err(ScenarioError::UnknownReference {
                path: format!("{path}.bivalence[{i}].env_proposition"),
                name: q.env_proposition.clone(),
            });
        }
    }
    Ok(Environment {
        space,
        axis: env.preferred_axis,
        splice_index: env.splice_index,
        composite_context: env.composite_context.clone(),
        system: Box::new(system),
        env_propositions,
        queries: env.bivalence.clone(),
    })
}

impl Scenario {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Tolerance in effect: the scenario's own `eps` wins over `fallback`.
    pub fn effective_eps(&self, fallback: f64) -> f64 {
        self.eps.unwrap_or(fallback)
    }

    /// Builds and validates every object, stopping at the first error.
    pub fn resolve(&self, fallback_eps: f64) -> SResult<Model> {
        self.resolve_at(self.effective_eps(fallback_eps), "")
    }

    fn resolve_at(&self, eps: f64, prefix: &str) -> SResult<Model> {
        let p = |s: &str| if prefix.is_empty() { s.to_string() } else { format!("{prefix}.{s}") };
        if self.schema_version != SCHEMA_VERSION {
            return Err(ScenarioError::UnsupportedVersion {
                found: self.schema_version,
            });
        }
        let d = self.dimension;
        if d == 0 {
            return Err(invalid(p("dimension"))(Error::InvalidInput("dimension must be positive".into())));
        }
        check_unique(self.states.iter().map(|s| s.name.as_str()), &p("states"))?;
        check_unique(self.contexts.iter().map(|c| c.label.as_str()), &p("contexts"))?;
        check_unique(self.propositions.iter().map(|c| c.name.as_str()), &p("propositions"))?;

        let states = self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| resolve_state(s, d, eps, &p(&format!("states[{i}]"))))
            .collect::<SResult<Vec<_>>>()?;
        let contexts = self
            .contexts
            .iter()
            .enumerate()
            .map(|(i, c)| resolve_context(c, d, eps, &p(&format!("contexts[{i}]"))))
            .collect::<SResult<Vec<_>>>()?;
        let collection = LatticeCollection::from_contexts(d, &contexts, eps).map_err(invalid(p("contexts")))?;
        let propositions = self
            .propositions
            .iter()
            .enumerate()
            .map(|(i, s)| resolve_proposition(s, d, eps, &p(&format!("propositions[{i}]"))))
            .collect::<SResult<Vec<_>>>()?;
        let mut model = Model {
            name: self.name.clone(),
            eps,
            dimension: d,
            states,
            contexts,
            collection,
            propositions,
            evaluation: None,
            environment: None,
        };
        if let Some(ev) = &self.evaluation {
            model.evaluation = Some(resolve_evaluation(ev, &model, &p("evaluation"))?);
        }
        if let Some(env) = &self.environment {
            model.environment = Some(resolve_environment(env, &model, eps, &p("environment"))?);
        }
        Ok(model)
    }

    /// Validates each object independently and reports every outcome.
    pub fn check(&self, fallback_eps: f64) -> Vec<CheckItem> {
        let mut items = Vec::new();
        self.check_into(self.effective_eps(fallback_eps), "", &mut items);
        items
    }

    fn check_into(&self, eps: f64, prefix: &str, items: &mut Vec<CheckItem>) {
        let p = |s: &str| if prefix.is_empty() { s.to_string() } else { format!("{prefix}.{s}") };
        let d = self.dimension;
        if self.schema_version != SCHEMA_VERSION {
            items.push(CheckItem::fail(
                p("schema_version"),
                ScenarioError::UnsupportedVersion {
                    found: self.schema_version,
                }
                .to_string(),
            ));
        }
        for (i, s) in self.states.iter().enumerate() {
            let path = p(&format!("states[{i}]"));
            items.push(CheckItem::from_result(
                format!("state {}", s.name),
                resolve_state(s, d, eps, &path).map(|ns| format!("home dimension {}", ns.home.dim())),
            ));
        }
        let mut contexts = Vec::new();
        for (i, c) in self.contexts.iter().enumerate() {
            let path = p(&format!("contexts[{i}]"));
            let outcome = resolve_context(c, d, eps, &path).and_then(|ctx| {
                let lattice = lattice_of(&ctx, eps).map_err(invalid(path.clone()))?;
                let problems = lattice_law_violations(&lattice, eps, SAMPLED_TRIPLES, 0);
                if problems.is_empty() {
                    let n = lattice.len();
                    contexts.push(ctx);
                    Ok(format!(
                        "{} projectors, lattice of {n} elements passes closure, complementation and distributivity",
                        c.projectors.len()
                    ))
                } else {
                    Err(invalid(path)(Error::InvalidInput(problems.join("; "))))
                }
            });
            items.push(CheckItem::from_result(format!("context {}", c.label), outcome));
        }
        for (i, pr) in self.propositions.iter().enumerate() {
            let path = p(&format!("propositions[{i}]"));
            items.push(CheckItem::from_result(
                format!("proposition {}", pr.name),
                resolve_proposition(pr, d, eps, &path).map(|x| format!("subspace dimension {}", x.subspace.dim())),
            ));
        }
        if items.iter().all(|i| i.ok) && (self.evaluation.is_some() || self.environment.is_some()) {
            match self.resolve_at(eps, prefix) {
                Ok(model) => {
                    if let Some(ev) = &model.evaluation {
                        items.push(CheckItem::pass(
                            p("evaluation"),
                            format!("state {} with {} proposition(s)", ev.state, model.evaluation_propositions().len()),
                        ));
                    }
                    if let Some(env) = &self.environment {
                        let sys_eps = env.system.eps.unwrap_or(eps);
                        env.system.check_into(sys_eps, &p("environment.system"), items);
                        items.push(CheckItem::pass(
                            p("environment"),
                            format!("factor dimensions {:?}, splice at {}", env.factor_dims, env.splice_index),
                        ));
                    }
                }
                Err(e) => items.push(CheckItem::fail(p("references"), e.to_string())),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckItem {
    pub object: String,
    pub ok: bool,
    pub detail: String,
}

impl CheckItem {
    fn pass(object: String, detail: String) -> Self {
        CheckItem { object, ok: true, detail }
    }

    fn fail(object: String, detail: String) -> Self {
        CheckItem { object, ok: false, detail }
    }

    fn from_result(object: String, r: SResult<String>) -> Self {
        match r {
            Ok(detail) => Self::pass(object, detail),
            Err(e) => Self::fail(object, e.to_string()),
        }
    }
}

impl fmt::Display for CheckItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.ok { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {}: {}", self.object, self.detail)
    }
}
