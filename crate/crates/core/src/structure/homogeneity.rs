use serde::Serialize;

use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};
use crate::geometry::mutual_reachability_mst;
use crate::ledger::{Feature, FeatureScore, Ledger};

/// Neighbour rank used for core distances.
pub const DEFAULT_K_MREACH: usize = 5;

/// `acosh(1 + z)` without the cancellation `acosh` suffers near 1.
pub fn acosh1p(z: f64) -> f64 {
    (z + (z * (z + 2.0)).sqrt()).ln_1p()
}

/// Distance in the upper half-plane model. Points are `(x, y)` with `y > 0`.
pub fn hyperbolic_distance(p1: (f64, f64), p2: (f64, f64)) -> Result<f64> {
    if !(p1.1 > 0.0 && p2.1 > 0.0) {
        return Err(Error::OutOfRange("half-plane points need y > 0".into()));
    }
    let (dx, dy) = (p2.0 - p1.0, p2.1 - p1.1);
    Ok(acosh1p((dx * dx + dy * dy) / (2.0 * p1.1 * p2.1)))
}

/// Fisher-Rao distance between univariate Gaussians given as `(mean, std)`.
pub fn fisher_distance(m1: (f64, f64), m2: (f64, f64)) -> Result<f64> {
    if !(m1.1 > 0.0 && m2.1 > 0.0) {
        return Err(Error::OutOfRange("standard deviations must be positive".into()));
    }
    let s = std::f64::consts::SQRT_2;
    Ok(s * hyperbolic_distance((m1.0 / s, m1.1), (m2.0 / s, m2.1))?)
}

/// Mean and population variance of a cluster's spanning-tree edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusterMoments {
    pub mu: f64,
    pub sigma2: f64,
}

/// Fisher distance of `N(mu, sigma2 + 1)` from the standard normal, in
/// closed form. The unit shift keeps perfectly regular clusters (zero
/// variance) away from the boundary of the half-plane.
pub fn homogeneity_from_moments(m: ClusterMoments) -> f64 {
    let lifted = (m.sigma2 + 1.0).sqrt();
    // lifted - 1 without cancellation
    let excess = m.sigma2 / (lifted + 1.0);
    std::f64::consts::SQRT_2 * acosh1p((m.mu * m.mu / 2.0 + excess * excess) / (2.0 * lifted))
}

/// Edge-weight moments of the mutual-reachability spanning tree over
/// `members`; `None` for fewer than two points.
pub fn cluster_moments(x: &Dataset, members: &[usize], k: usize) -> Result<Option<ClusterMoments>> {
    if members.len() < 2 {
        return Ok(None);
    }
    let w = mutual_reachability_mst(x, members, k)?.weights();
    let n = w.len() as f64;
    let mu = w.iter().sum::<f64>() / n;
    let sigma2 = w.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / n;
    Ok(Some(ClusterMoments { mu, sigma2 }))
}

/// Per-cluster homogeneity `h`; singletons score 0.
pub fn cluster_homogeneity(x: &Dataset, members: &[usize], k: usize) -> Result<f64> {
    Ok(cluster_moments(x, members, k)?.map_or(0.0, homogeneity_from_moments))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogeneitySummary {
    pub h: Vec<f64>,
    pub moments: Vec<Option<ClusterMoments>>,
    pub g: f64,
    pub g_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneityRun {
    pub score: FeatureScore,
    pub summary: HomogeneitySummary,
}

/// `G = 1 + sum h_i`, scored against `G_max = 1 + m max h_i`.
pub fn homogeneity(x: &Dataset, c: &Clustering, k: usize, ledger: &Ledger) -> Result<HomogeneityRun> {
    if c.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: c.len(),
        });
    }
    let members = c.members();
    if members.iter().all(|m| m.len() < 2) {
        return Err(Error::Degenerate(
            "homogeneity undefined: every cluster is a singleton".into(),
        ));
    }
    let moments = crate::par::map_indexed(members.len(), |i| cluster_moments(x, &members[i], k))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let h: Vec<f64> = moments
        .iter()
        .map(|m| m.map_or(0.0, homogeneity_from_moments))
        .collect();
    let g = 1.0 + h.iter().sum::<f64>();
    let g_max = 1.0 + h.len() as f64 * h.iter().copied().fold(0.0, f64::max);
    let entry = ledger.resolve(Feature::Homogeneity, 100.0 / g_max, g_max);
    let mut score = FeatureScore::new(g, None, entry);
    if g_max == 1.0 {
        score = score.flagged("every cluster perfectly uniform (G = G_max = 1)");
    }
    Ok(HomogeneityRun {
        score,
        summary: HomogeneitySummary { h, moments, g, g_max },
    })
}
