//! Distances, mutual reachability, spanning trees, hulls and 2D boundaries.

mod boundary;
mod hull;
mod mst;

pub use boundary::{boundary_2d, boundary_2d_with_threshold, Polygon};
pub use hull::{convex_hull_2d, convex_hull_3d, convex_hull_measure, hull_diameter, polygon_area};
pub use mst::{mst, mst_kruskal, Edge, Tree};

use std::cell::Cell;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

thread_local! {
    static DISTANCE_EVALS: Cell<u64> = const { Cell::new(0) };
}

/// Distance evaluations performed on the current thread so far. Used as a
/// deterministic cost measure for complexity fits.
pub fn distance_evaluations() -> u64 {
    DISTANCE_EVALS.with(Cell::get)
}

#[inline]
fn count_eval() {
    DISTANCE_EVALS.with(|c| c.set(c.get() + 1));
}

#[inline]
pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    count_eval();
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist2(a, b).sqrt()
}

pub fn euclidean(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(dist(x, y))
}

/// Distance from point `i` to its `k`-th nearest neighbour, itself excluded.
pub fn core_distance(x: &Dataset, i: usize, k: usize) -> Result<f64> {
    let all: Vec<usize> = (0..x.len()).collect();
    if i >= x.len() {
        return Err(Error::OutOfRange(format!("point {i} out of range")));
    }
    Ok(core_distances(x, &all, k)?[i])
}

/// Core distances of every member of `members`, measured within `members`.
pub fn core_distances(x: &Dataset, members: &[usize], k: usize) -> Result<Vec<f64>> {
    if k == 0 || k + 1 > members.len() {
        return Err(Error::OutOfRange(format!(
            "k = {k} out of range for {} points",
            members.len()
        )));
    }
    let mut scratch = Vec::with_capacity(members.len());
    Ok(members
        .iter()
        .map(|&i| {
            scratch.clear();
            scratch.extend(
                members
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| dist(x.point(i), x.point(j))),
            );
            let (_, kth, _) = scratch.select_nth_unstable_by(k - 1, f64::total_cmp);
            *kth
        })
        .collect())
}

pub fn mutual_reachability(x: &Dataset, i: usize, j: usize, k: usize) -> Result<f64> {
    if i == j {
        return Err(Error::OutOfRange(
            "mutual reachability needs two distinct points".into(),
        ));
    }
    let ci = core_distance(x, i, k)?;
    let cj = core_distance(x, j, k)?;
    Ok(ci.max(cj).max(dist(x.point(i), x.point(j))))
}

/// Mutual-reachability spanning tree of a point subset, with core distances
/// taken inside the subset (`k` is clamped to `|members| - 1`).
pub fn mutual_reachability_mst(x: &Dataset, members: &[usize], k: usize) -> Result<Tree> {
    if members.len() < 2 {
        return Ok(mst(members, |_, _| 0.0));
    }
    let k = k.clamp(1, members.len() - 1);
    let core = core_distances(x, members, k)?;
    Ok(mst(members, |a, b| {
        core[a].max(core[b]).max(dist(x.point(members[a]), x.point(members[b])))
    }))
}
