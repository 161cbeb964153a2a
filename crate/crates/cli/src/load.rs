//! Reading graphs, plans and documents from files.

use std::fmt;
use std::path::Path;

use kplanar::gadgets::GadgetInstance;
use kplanar::graph::io::read_any;
use kplanar::graph::Graph;
use kplanar::plan::PlanDoc;
use serde::de::DeserializeOwned;
use serde_json::Value;

/// Exit-code classes: 64 for bad usage, 65 for unreadable or invalid
/// input, 74 for output failures.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Output(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Data(_) => 65,
            CliError::Output(_) => 74,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Output(m) => f.write_str(m),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn json<T: DeserializeOwned>(path: &Path, value: Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn parse_json(path: &Path, text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// An edge list, a graph document, or any document with a `graph` field
/// (gadget instances, subdivision maps, kernel reports).
pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('{') {
        let mut value = parse_json(path, &text)?;
        if let Some(inner) = value.get_mut("graph").map(Value::take) {
            return json(path, inner);
        }
        if let Some(inner) = value.pointer_mut("/verdict/graph").map(Value::take) {
            return json(path, inner);
        }
    }
    read_any(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn load_instance(path: &Path) -> Result<GadgetInstance, CliError> {
    let text = read_text(path)?;
    json(path, parse_json(path, &text)?)
}

/// A plan document, or a verdict document carrying one. An empty file is
/// the empty plan.
pub fn load_plan(path: &Path) -> Result<PlanDoc, CliError> {
    let text = read_text(path)?;
    if text.trim().is_empty() {
        return Ok(PlanDoc {
            crossings: Vec::new(),
            orders: Vec::new(),
        });
    }
    let mut value = parse_json(path, &text)?;
    if value.get("answer").is_some() {
        return match value.get_mut("plan").map(Value::take) {
            Some(plan) => json(path, plan),
            None => Err(CliError::Data(format!("{}: verdict carries no plan", path.display()))),
        };
    }
    json(path, value)
}

/// `1,2,3`.
pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| usage(format!("{what}: `{s}` is not a number"))))
        .collect()
}

/// `0,3;1,2;4`: one comma list per bin.
pub fn parse_bins(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    text.split(';').map(|bin| parse_list(bin, "--bins")).collect()
}
