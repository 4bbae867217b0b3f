//! Edge-list and JSON graph readers.
//!
//! Edge list: one `<from> <to> <weight>` per line, whitespace separated. A
//! line holding a single label declares a node, which is how isolated players
//! are written and how the id order can be fixed up front. `#` starts a
//! comment; blank lines are ignored.
//!
//! JSON: `{"nodes": [labels...], "edges": [[from, to, weight], ...]}` with
//! `nodes` optional. Labels may be strings or integers.

use std::str::FromStr;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, WeightedDigraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Json,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "edge_list" | "edge-list" | "edges" | "txt" => Ok(Self::EdgeList),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

pub fn parse_graph<T: Scalar>(text: &str, format: GraphFormat) -> Result<WeightedDigraph<T>> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Json => parse_json(text),
    }
}

fn parse_err(locus: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        locus: locus.into(),
        message: message.into(),
    }
}

fn to_scalar<T: Scalar>(w: f64, locus: &str) -> Result<T> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::WeightOutOfRange {
            locus: locus.to_string(),
            weight: w,
        });
    }
    T::from_f64(w).ok_or_else(|| parse_err(locus, format!("weight {w} not representable")))
}

pub fn parse_edge_list<T: Scalar>(text: &str) -> Result<WeightedDigraph<T>> {
    let mut builder = GraphBuilder::new();
    for (k, raw) in text.lines().enumerate() {
        let locus = format!("line {}", k + 1);
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [label] => {
                builder.node(label);
            }
            [from, to, weight] => {
                let w: f64 = weight
                    .parse()
                    .map_err(|_| parse_err(&locus, format!("invalid weight `{weight}`")))?;
                let w = to_scalar(w, &locus)?;
                builder.edge(from, to, w, &locus)?;
            }
            _ => {
                return Err(parse_err(
                    &locus,
                    format!(
                        "expected `<from> <to> <weight>`, got {} fields",
                        tokens.len()
                    ),
                ))
            }
        }
    }
    Ok(builder.build())
}

fn label_of(v: &Value, locus: &str) -> Result<String> {
    match v {
        Value::String(s) if !s.is_empty() => Ok(s.clone()),
        Value::Number(n) if n.is_u64() || n.is_i64() => Ok(n.to_string()),
        _ => Err(parse_err(locus, format!("invalid node label {v}"))),
    }
}

pub fn parse_json<T: Scalar>(text: &str) -> Result<WeightedDigraph<T>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| parse_err("document", "expected a JSON object"))?;
    let mut builder = GraphBuilder::new();
    if let Some(nodes) = obj.get("nodes") {
        let nodes = nodes
            .as_array()
            .ok_or_else(|| parse_err("nodes", "expected an array"))?;
        for (k, v) in nodes.iter().enumerate() {
            let locus = format!("nodes[{k}]");
            let label = label_of(v, &locus)?;
            if builder.node(&label) != k {
                return Err(parse_err(locus, format!("duplicate node `{label}`")));
            }
        }
    }
    let edges = match obj.get("edges") {
        Some(e) => e
            .as_array()
            .ok_or_else(|| parse_err("edges", "expected an array"))?
            .as_slice(),
        None => &[],
    };
    for (k, e) in edges.iter().enumerate() {
        let locus = format!("edges[{k}]");
        let triple = e
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| parse_err(&locus, "expected [from, to, weight]"))?;
        let from = label_of(&triple[0], &locus)?;
        let to = label_of(&triple[1], &locus)?;
        let w = triple[2]
            .as_f64()
            .ok_or_else(|| parse_err(&locus, format!("invalid weight {}", triple[2])))?;
        let w = to_scalar(w, &locus)?;
        builder.edge(&from, &to, w, &locus)?;
    }
    Ok(builder.build())
}
