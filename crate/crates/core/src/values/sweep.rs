//! Value curves as one edge weight moves across `[0, 1]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{PlayerId, WeightedDigraph};
use crate::profile::ValueKind;
use crate::scalar::Scalar;

use super::closed_form;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow<T> {
    pub weight: T,
    /// One value per target, in target order.
    pub values: Vec<T>,
    /// The weight equals another in-edge weight of the head, so the
    /// tie-break rule decided the rank.
    pub tie: bool,
}

/// A maximal grid interval free of breakpoints, with a least-squares line
/// per target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment<T> {
    pub lo: T,
    pub hi: T,
    pub points: usize,
    /// `None` when fewer than two grid points fall in the segment.
    pub slopes: Vec<Option<T>>,
    /// Largest absolute deviation from the fitted line, per target.
    pub residuals: Vec<Option<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable<T> {
    pub edge: (PlayerId, PlayerId),
    pub targets: Vec<PlayerId>,
    pub method: ValueKind,
    pub rows: Vec<SweepRow<T>>,
    /// Weights of the head's other in-edges, sorted and deduplicated.
    pub breakpoints: Vec<T>,
    pub segments: Vec<Segment<T>>,
}

/// `steps` evenly spaced weights from 0 to 1 inclusive.
pub fn uniform_grid<T: Scalar>(steps: usize) -> Vec<T> {
    match steps {
        0 => Vec::new(),
        1 => vec![T::zero()],
        _ => (0..steps)
            .map(|k| T::from_count(k) / T::from_count(steps - 1))
            .collect(),
    }
}

/// Least-squares line through `points`; returns slope and max residual.
fn fit_line<T: Scalar>(points: &[(T, T)]) -> Option<(T, T)> {
    if points.len() < 2 {
        return None;
    }
    let count = T::from_count(points.len());
    let mean_x = points.iter().fold(T::zero(), |a, p| a + p.0) / count;
    let mean_y = points.iter().fold(T::zero(), |a, p| a + p.1) / count;
    let (sxy, sxx) = points
        .iter()
        .fold((T::zero(), T::zero()), |(sxy, sxx), &(x, y)| {
            let dx = x - mean_x;
            (sxy + dx * (y - mean_y), sxx + dx * dx)
        });
    if sxx == T::zero() {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = points
        .iter()
        .map(|&(x, y)| (y - (intercept + slope * x)).abs())
        .fold(T::zero(), T::max_of);
    Some((slope, residual))
}

/// Re-evaluates the targets' values with edge `k -> j` set to each grid
/// weight. Values are piecewise linear in the weight with kinks only where
/// it crosses another in-edge weight of `j`.
pub fn sweep_edge<T: Scalar>(
    g: &WeightedDigraph<T>,
    edge: (PlayerId, PlayerId),
    targets: &[PlayerId],
    grid: &[T],
    method: ValueKind,
) -> Result<SweepTable<T>> {
    let (k, j) = edge;
    if !g.has_edge(k, j) {
        return Err(Error::EdgeNotFound { from: k, to: j });
    }
    for &t in targets {
        g.check_player(t)?;
    }
    if let Some(&w) = grid.iter().find(|&&w| w < T::zero() || w > T::one()) {
        return Err(Error::GridOutOfRange(w.to_f64_lossy()));
    }

    let mut breakpoints: Vec<T> = g
        .in_edges(j)
        .filter(|e| e.from != k)
        .map(|e| e.weight)
        .collect();
    breakpoints.sort_by(|a, b| a.partial_cmp(b).expect("weights are ordered"));
    breakpoints.dedup();

    let rows: Vec<SweepRow<T>> = grid
        .iter()
        .map(|&w| {
            let moved = g.reweighted(k, j, w)?;
            let all = closed_form(&moved, method);
            Ok(SweepRow {
                weight: w,
                values: targets.iter().map(|&t| all[t]).collect(),
                tie: breakpoints.contains(&w),
            })
        })
        .collect::<Result<_>>()?;

    let segments = segments(&rows, &breakpoints, targets.len());
    Ok(SweepTable {
        edge,
        targets: targets.to_vec(),
        method,
        rows,
        breakpoints,
        segments,
    })
}

fn segments<T: Scalar>(
    rows: &[SweepRow<T>],
    breakpoints: &[T],
    n_targets: usize,
) -> Vec<Segment<T>> {
    let Some(lo) = rows.iter().map(|r| r.weight).reduce(T::min_of) else {
        return Vec::new();
    };
    let hi = rows.iter().map(|r| r.weight).fold(lo, T::max_of);
    let mut bounds = vec![lo];
    bounds.extend(breakpoints.iter().copied().filter(|&b| b > lo && b < hi));
    bounds.push(hi);
    bounds.dedup();

    bounds
        .windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            // values are continuous, so both closed ends lie on the segment
            let inside: Vec<&SweepRow<T>> = rows
                .iter()
                .filter(|r| r.weight >= lo && r.weight <= hi)
                .collect();
            let fits: Vec<Option<(T, T)>> = (0..n_targets)
                .map(|t| {
                    let pts: Vec<(T, T)> = inside.iter().map(|r| (r.weight, r.values[t])).collect();
                    fit_line(&pts)
                })
                .collect();
            Segment {
                lo,
                hi,
                points: inside.len(),
                slopes: fits.iter().map(|f| f.map(|f| f.0)).collect(),
                residuals: fits.iter().map(|f| f.map(|f| f.1)).collect(),
            }
        })
        .collect()
}
