//! Small reference graphs used throughout the tests and the CLI goldens.

use crate::graph::WeightedDigraph;
use crate::scalar::Scalar;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn w<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("fixture weight")
}

/// Players `1, 2` (ids 0, 1) with the single edge `1 -> 2` of weight 0.6.
pub fn g2_in<T: Scalar>() -> WeightedDigraph<T> {
    WeightedDigraph::with_labels(labels(&["1", "2"]), [(0, 1, w(0.6))]).expect("valid fixture")
}

/// Players `1, 2, 3` (ids 0, 1, 2) with edges `2 -> 1` (0.2) and `3 -> 1` (0.5).
pub fn g3_in<T: Scalar>() -> WeightedDigraph<T> {
    WeightedDigraph::with_labels(labels(&["1", "2", "3"]), [(1, 0, w(0.2)), (2, 0, w(0.5))])
        .expect("valid fixture")
}

/// Ids of the players in [`gf`].
pub mod gf_ids {
    pub const I: usize = 0;
    pub const J: usize = 1;
    pub const K1: usize = 2;
    pub const K2: usize = 3;
    pub const K3: usize = 4;
    pub const K4: usize = 5;
    pub const K5: usize = 6;
}

/// The seven-player marginal-effect example: `i <-> j`, `k1, k2, k3 -> j`
/// with weights 0.2, 0.5, 0.8, and `k4, k5 -> i` with 0.3, 0.6. The edge
/// `i -> j` carries the free weight `a`; `j -> i` is 0.4.
pub fn gf_in<T: Scalar>(a: T) -> WeightedDigraph<T> {
    use gf_ids::*;
    WeightedDigraph::with_labels(
        labels(&["i", "j", "k1", "k2", "k3", "k4", "k5"]),
        [
            (I, J, a),
            (J, I, w(0.4)),
            (K1, J, w(0.2)),
            (K2, J, w(0.5)),
            (K3, J, w(0.8)),
            (K4, I, w(0.3)),
            (K5, I, w(0.6)),
        ],
    )
    .expect("valid fixture")
}

pub fn g2() -> WeightedDigraph<f64> {
    g2_in()
}

pub fn g3() -> WeightedDigraph<f64> {
    g3_in()
}

pub fn gf(a: f64) -> WeightedDigraph<f64> {
    gf_in(a)
}

/// `n` players and no edges.
pub fn edgeless(n: usize) -> WeightedDigraph<f64> {
    WeightedDigraph::from_edges(n, std::iter::empty()).expect("valid fixture")
}
