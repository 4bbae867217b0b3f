//! Weighted directed graphs, the sole input of a trust game.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense player index in `0..n`.
pub type PlayerId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge<T> {
    pub from: PlayerId,
    pub to: PlayerId,
    pub weight: T,
}

/// A validated digraph with weights in `[0, 1]`, no self-loops and no
/// parallel edges. Immutable once built.
#[derive(Debug, Clone)]
pub struct WeightedDigraph<T> {
    labels: Vec<String>,
    /// Sorted by `(from, to)`.
    edges: Vec<Edge<T>>,
    index: HashMap<(PlayerId, PlayerId), usize>,
    in_edges: Vec<Vec<usize>>,
    out_edges: Vec<Vec<usize>>,
}

impl<T: Scalar> WeightedDigraph<T> {
    /// Builds a graph on players `0..n`, labelled by their ids.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (PlayerId, PlayerId, T)>,
    ) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph whose player `i` carries `labels[i]`.
    pub fn with_labels(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (PlayerId, PlayerId, T)>,
    ) -> Result<Self> {
        let mut builder = GraphBuilder::new();
        for label in &labels {
            builder.node(label);
        }
        if builder.labels.len() != labels.len() {
            return Err(Error::Parse {
                locus: "labels".into(),
                message: "duplicate node label".into(),
            });
        }
        for (k, (from, to, weight)) in edges.into_iter().enumerate() {
            let locus = format!("edge {k}");
            for p in [from, to] {
                if p >= labels.len() {
                    return Err(Error::UnknownPlayer(p));
                }
            }
            builder.edge_ids(from, to, weight, &locus)?;
        }
        Ok(builder.build())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: PlayerId) -> &str {
        &self.labels[p]
    }

    /// Looks up a player by its external label.
    pub fn player(&self, label: &str) -> Option<PlayerId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn weight(&self, from: PlayerId, to: PlayerId) -> Option<T> {
        self.index.get(&(from, to)).map(|&e| self.edges[e].weight)
    }

    pub fn has_edge(&self, from: PlayerId, to: PlayerId) -> bool {
        self.index.contains_key(&(from, to))
    }

    /// Edges `(j, p)` entering `p`, in ascending order of `j`.
    pub fn in_edges(&self, p: PlayerId) -> impl Iterator<Item = &Edge<T>> + '_ {
        self.in_edges[p].iter().map(move |&e| &self.edges[e])
    }

    /// Edges `(p, j)` leaving `p`, in ascending order of `j`.
    pub fn out_edges(&self, p: PlayerId) -> impl Iterator<Item = &Edge<T>> + '_ {
        self.out_edges[p].iter().map(move |&e| &self.edges[e])
    }

    pub fn in_degree(&self, p: PlayerId) -> usize {
        self.in_edges[p].len()
    }

    pub fn out_degree(&self, p: PlayerId) -> usize {
        self.out_edges[p].len()
    }

    pub fn in_weight(&self, p: PlayerId) -> T {
        crate::scalar::sum(self.in_edges(p).map(|e| e.weight))
    }

    pub fn out_weight(&self, p: PlayerId) -> T {
        crate::scalar::sum(self.out_edges(p).map(|e| e.weight))
    }

    pub fn total_weight(&self) -> T {
        crate::scalar::sum(self.edges.iter().map(|e| e.weight))
    }

    pub(crate) fn check_player(&self, p: PlayerId) -> Result<()> {
        if p < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownPlayer(p))
        }
    }

    /// Copy of the graph with edge `(from, to)` set to `weight`.
    pub fn reweighted(&self, from: PlayerId, to: PlayerId, weight: T) -> Result<Self> {
        let &e = self
            .index
            .get(&(from, to))
            .ok_or(Error::EdgeNotFound { from, to })?;
        check_weight(weight, &format!("edge {from} -> {to}"))?;
        let mut g = self.clone();
        g.edges[e].weight = weight;
        Ok(g)
    }

    /// Copy of the graph with every weight multiplied by `factor` in `[0, 1]`.
    pub fn scaled(&self, factor: T) -> Result<Self> {
        check_weight(factor, "scale factor")?;
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = e.weight * factor;
        }
        Ok(g)
    }
}

fn check_weight<T: Scalar>(weight: T, locus: &str) -> Result<()> {
    if weight >= T::zero() && weight <= T::one() {
        Ok(())
    } else {
        Err(Error::WeightOutOfRange {
            locus: locus.to_string(),
            weight: weight.to_f64_lossy(),
        })
    }
}

/// Incremental construction with label interning, used by the parsers.
#[derive(Debug, Clone)]
pub struct GraphBuilder<T> {
    labels: Vec<String>,
    ids: HashMap<String, PlayerId>,
    edges: Vec<Edge<T>>,
    seen: HashMap<(PlayerId, PlayerId), usize>,
}

impl<T: Scalar> Default for GraphBuilder<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> GraphBuilder<T> {
    pub fn new() -> Self {
        Self {
            labels: Vec::new(),
            ids: HashMap::new(),
            edges: Vec::new(),
            seen: HashMap::new(),
        }
    }

    /// Interns `label`, assigning the next dense id on first appearance.
    pub fn node(&mut self, label: &str) -> PlayerId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.ids.insert(label.to_string(), id);
        id
    }

    /// Adds `from -> to`, interning both labels. `locus` prefixes error messages.
    pub fn edge(&mut self, from: &str, to: &str, weight: T, locus: &str) -> Result<()> {
        if from == to {
            return Err(Error::SelfLoop {
                locus: locus.to_string(),
                label: from.to_string(),
            });
        }
        let f = self.node(from);
        let t = self.node(to);
        self.edge_ids(f, t, weight, locus)
    }

    fn edge_ids(&mut self, from: PlayerId, to: PlayerId, weight: T, locus: &str) -> Result<()> {
        if from == to {
            return Err(Error::SelfLoop {
                locus: locus.to_string(),
                label: self.labels[from].clone(),
            });
        }
        check_weight(weight, locus)?;
        if self.seen.contains_key(&(from, to)) {
            return Err(Error::DuplicateEdge {
                locus: locus.to_string(),
                from: self.labels[from].clone(),
                to: self.labels[to].clone(),
            });
        }
        self.seen.insert((from, to), self.edges.len());
        self.edges.push(Edge { from, to, weight });
        Ok(())
    }

    pub fn build(self) -> WeightedDigraph<T> {
        let n = self.labels.len();
        let mut edges = self.edges;
        edges.sort_by_key(|e| (e.from, e.to));
        let mut index = HashMap::with_capacity(edges.len());
        let mut in_edges = vec![Vec::new(); n];
        let mut out_edges = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            index.insert((e.from, e.to), k);
            out_edges[e.from].push(k);
            in_edges[e.to].push(k);
        }
        // out lists are already sorted by head; in lists by tail
        WeightedDigraph {
            labels: self.labels,
            edges,
            index,
            in_edges,
            out_edges,
        }
    }
}
