//! Optimal one-to-one matching of cluster labels between two partitions.
//!
//! The matching maximises total overlap on the contingency table. Among
//! equally good matchings the one with the smallest sum of `a * (n_b - b)`
//! over matched pairs wins: low labels pair with low labels, and by the
//! rearrangement inequality the order-preserving pairing is the unique winner
//! on a fixed set of matched labels.

use crate::dataset::Clustering;
use crate::error::{Error, Result};

/// Mapping from labels of a second clustering onto labels of a reference.
///
/// Labels of the second clustering that find no partner are sent to fresh
/// labels `n_a, n_a + 1, ...` in ascending order of the unmatched label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterMatching {
    to_reference: Vec<usize>,
    n_reference: usize,
    total_overlap: usize,
}

impl ClusterMatching {
    /// Reference label for cluster `b` (a fresh label when unmatched).
    pub fn get(&self, b: usize) -> usize {
        self.to_reference[b]
    }

    pub fn is_matched(&self, b: usize) -> bool {
        self.to_reference[b] < self.n_reference
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.to_reference
    }

    /// Number of points whose two labels are matched to each other.
    pub fn total_overlap(&self) -> usize {
        self.total_overlap
    }

    /// Size of the aligned label space: reference labels plus fresh ones.
    pub fn support_len(&self) -> usize {
        self.to_reference
            .iter()
            .copied()
            .max()
            .map_or(self.n_reference, |m| (m + 1).max(self.n_reference))
    }
}

/// Overlap counts `table[b][a]` over points carrying non-noise labels in both.
/// Only the first `a.len()` entries of `b` participate.
pub(crate) fn contingency(a: &[i32], na: usize, b: &[i32], nb: usize) -> Vec<Vec<usize>> {
    let mut table = vec![vec![0usize; na]; nb];
    for (&la, &lb) in a.iter().zip(b) {
        if la >= 0 && lb >= 0 {
            table[lb as usize][la as usize] += 1;
        }
    }
    table
}

/// Composite weight: overlap dominates, the pair rank breaks ties.
pub(crate) fn pair_weights(table: &[Vec<usize>], na: usize) -> Vec<Vec<i128>> {
    let nb = table.len();
    let scale = (na.min(nb) as i128) * (na as i128) * (nb as i128) + 1;
    table
        .iter()
        .enumerate()
        .map(|(b, row)| {
            row.iter()
                .enumerate()
                .map(|(a, &o)| o as i128 * scale - (a * (nb - b)) as i128)
                .collect()
        })
        .collect()
}

pub(crate) fn match_labels(a: &[i32], na: usize, b: &[i32], nb: usize) -> ClusterMatching {
    let table = contingency(a, na, b, nb);
    let mut to_reference = vec![usize::MAX; nb];
    if na > 0 && nb > 0 {
        let weights = pair_weights(&table, na);
        if nb <= na {
            let cost: Vec<Vec<i128>> = weights.iter().map(|row| row.iter().map(|w| -w).collect()).collect();
            for (bi, ai) in hungarian(&cost).into_iter().enumerate() {
                to_reference[bi] = ai;
            }
        } else {
            let cost: Vec<Vec<i128>> = (0..na).map(|ai| (0..nb).map(|bi| -weights[bi][ai]).collect()).collect();
            for (ai, bi) in hungarian(&cost).into_iter().enumerate() {
                to_reference[bi] = ai;
            }
        }
    }
    let mut fresh = na;
    let mut total_overlap = 0;
    for (bi, slot) in to_reference.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = fresh;
            fresh += 1;
        } else {
            total_overlap += table[bi][*slot];
        }
    }
    ClusterMatching {
        to_reference,
        n_reference: na,
        total_overlap,
    }
}

/// Match the clusters of `b` onto those of `a`.
pub fn match_clusters(a: &Clustering, b: &Clustering) -> Result<ClusterMatching> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(match_labels(a.labels(), a.n_clusters(), b.labels(), b.n_clusters()))
}

/// Fraction of `a`'s non-noise points whose `b` label, after matching, names
/// a different cluster. Points that `b` calls noise count as moved.
pub fn moved_fraction(a: &Clustering, b: &Clustering) -> Result<f64> {
    let matching = match_clusters(a, b)?;
    let assigned = a.n_assigned();
    if assigned == 0 {
        return Ok(0.0);
    }
    Ok((assigned - matching.total_overlap()) as f64 / assigned as f64)
}

/// Minimum-cost assignment of every row to a distinct column (rows <= cols).
/// Potential-based Hungarian method, O(rows^2 * cols).
fn hungarian(cost: &[Vec<i128>]) -> Vec<usize> {
    let n = cost.len();
    let m = cost[0].len();
    debug_assert!(n <= m);
    let inf = i128::MAX / 4;
    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; m + 1];
    let mut owner = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=m {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=m {
        if owner[j] != 0 {
            assignment[owner[j] - 1] = j - 1;
        }
    }
    assignment
}
