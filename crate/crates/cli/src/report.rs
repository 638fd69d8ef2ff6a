//! JSON envelope, exit codes and name rendering.

use hedgegraph::matroid::{MatroidError, Trimming};
use hedgegraph::measures::MeasureError;
use hedgegraph::oracle::OracleError;
use hedgegraph::orientation::{OrientError, Orientation};
use hedgegraph::stochastic::StochasticError;
use hedgegraph::strength::StrengthError;
use hedgegraph::{GraphError, HedgeSet, Hedgegraph, ParseError, Partition, VertexId};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    Infeasible = 1,
    InputError = 2,
    OracleLimit = 3,
}

/// A successful run; `infeasible` marks answers that are certificates.
pub struct Outcome {
    pub method: &'static str,
    pub result: Value,
    pub infeasible: bool,
}

impl Outcome {
    pub fn ok(method: &'static str, result: Value) -> Self {
        Self { method, result, infeasible: false }
    }

    pub fn certificate(method: &'static str, result: Value) -> Self {
        Self { method, result, infeasible: true }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: ExitStatus,
    pub kind: &'static str,
    pub message: String,
    pub line: Option<usize>,
}

impl CliError {
    pub fn input(kind: &'static str, message: impl Into<String>) -> Self {
        Self { status: ExitStatus::InputError, kind, message: message.into(), line: None }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self { status: ExitStatus::InputError, kind: "parse", line: e.line(), message: e.to_string() }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        Self::input("graph", e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooManyVertices { .. } | OracleError::TooManyHedges { .. } => Self {
                status: ExitStatus::OracleLimit,
                kind: "oracle_limit",
                message: e.to_string(),
                line: None,
            },
            other => Self::input("invalid_input", other.to_string()),
        }
    }
}

impl From<StrengthError> for CliError {
    fn from(e: StrengthError) -> Self {
        Self::input("strength", e.to_string())
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        Self::input("invalid_input", e.to_string())
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::Oracle(o) => o.into(),
            other => Self::input("invalid_input", other.to_string()),
        }
    }
}

impl From<OrientError> for CliError {
    fn from(e: OrientError) -> Self {
        match e {
            OrientError::Oracle(o) => o.into(),
            other => Self::input("invalid_input", other.to_string()),
        }
    }
}

impl From<StochasticError> for CliError {
    fn from(e: StochasticError) -> Self {
        match e {
            StochasticError::Oracle(o) => o.into(),
            other => Self::input("invalid_input", other.to_string()),
        }
    }
}

pub fn vertex_names(g: &Hedgegraph, vs: &[VertexId]) -> Value {
    json!(vs.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>())
}

pub fn hedge_names(g: &Hedgegraph, set: &HedgeSet) -> Value {
    json!(set.iter().map(|e| g.hedge(e).name.as_str()).collect::<Vec<_>>())
}

pub fn partition_names(g: &Hedgegraph, p: &Partition) -> Value {
    json!(p.blocks().iter().map(|b| vertex_names(g, b)).collect::<Vec<_>>())
}

pub fn trimming_json(g: &Hedgegraph, t: &Trimming) -> Value {
    json!(t
        .elements()
        .iter()
        .map(|x| json!({
            "hedge": g.hedge(x.hedge).name,
            "hyperedge": x.hyperedge,
            "pair": [g.vertex_name(x.pair.0), g.vertex_name(x.pair.1)],
        }))
        .collect::<Vec<_>>())
}

pub fn orientation_json(g: &Hedgegraph, o: &Orientation) -> Value {
    json!({
        "root": g.vertex_name(o.root),
        "choices": o.choices.iter().map(|c| json!({
            "hedge": g.hedge(c.hedge).name,
            "hyperedge": c.hyperedge,
            "head": g.vertex_name(c.head),
        })).collect::<Vec<_>>(),
    })
}
