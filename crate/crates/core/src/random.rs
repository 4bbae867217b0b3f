//! Seeded random graphs for property tests and benchmarks.

use rand::Rng;

use crate::graph::WeightedDigraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomGraphSpec {
    pub n: usize,
    /// Probability that each ordered pair `(i, j)`, `i != j`, is an edge.
    pub density: f64,
    /// Probability that a present edge gets weight exactly zero; other
    /// weights are uniform on `[0, 1]`.
    pub zero_fraction: f64,
}

pub fn random_graph<R: Rng>(spec: RandomGraphSpec, rng: &mut R) -> WeightedDigraph<f64> {
    let mut edges = Vec::new();
    for from in 0..spec.n {
        for to in 0..spec.n {
            if from != to && rng.gen_bool(spec.density) {
                edges.push((from, to, draw_weight(spec.zero_fraction, rng)));
            }
        }
    }
    WeightedDigraph::from_edges(spec.n, edges).expect("generated edges are valid")
}

/// `edges` distinct random edges on `n` players, for sparse large graphs.
pub fn random_sparse_graph<R: Rng>(
    n: usize,
    edges: usize,
    zero_fraction: f64,
    rng: &mut R,
) -> WeightedDigraph<f64> {
    assert!(
        n >= 2 && edges <= n * (n - 1),
        "too many edges for {n} players"
    );
    let mut seen = std::collections::HashSet::with_capacity(edges);
    let mut list = Vec::with_capacity(edges);
    while list.len() < edges {
        let from = rng.gen_range(0..n);
        let to = rng.gen_range(0..n);
        if from != to && seen.insert((from, to)) {
            list.push((from, to, draw_weight(zero_fraction, rng)));
        }
    }
    WeightedDigraph::from_edges(n, list).expect("generated edges are valid")
}

fn draw_weight<R: Rng>(zero_fraction: f64, rng: &mut R) -> f64 {
    if rng.gen_bool(zero_fraction) {
        0.0
    } else {
        rng.gen_range(0.0..=1.0)
    }
}
