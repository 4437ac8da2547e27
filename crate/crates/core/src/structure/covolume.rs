use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};
use crate::geometry::convex_hull_measure;
use crate::ledger::{Feature, FeatureScore, Ledger};

#[derive(Debug, Clone, PartialEq)]
pub struct CovolumeRun {
    pub score: FeatureScore,
    pub total: f64,
    pub per_cluster: Vec<f64>,
}

/// Share of the dataset's hull not covered by cluster hulls, in `[0, 1]`.
pub fn covolume(x: &Dataset, c: &Clustering, ledger: &Ledger) -> Result<CovolumeRun> {
    let dim = x.dim();
    if !(dim == 2 || dim == 3) {
        return Err(Error::UnsupportedDimension(dim));
    }
    if c.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: c.len(),
        });
    }
    let total = convex_hull_measure(x.values(), dim)?;
    if total <= 0.0 {
        return Err(Error::Degenerate("dataset hull has zero volume".into()));
    }
    let per_cluster = c
        .members()
        .iter()
        .map(|m| {
            if m.len() < dim + 1 {
                return Ok(0.0);
            }
            let pts: Vec<f64> = m.iter().flat_map(|&i| x.point(i).iter().copied()).collect();
            convex_hull_measure(&pts, dim)
        })
        .collect::<Result<Vec<f64>>>()?;
    let ratio = ((total - per_cluster.iter().sum::<f64>()) / total).clamp(0.0, 1.0);
    let mut score = FeatureScore::new(ratio, None, ledger.fixed(Feature::Covolume));
    if per_cluster.iter().sum::<f64>() > total * (1.0 + 1e-12) {
        score = score.flagged("cluster hulls overlap; ratio clamped at 0");
    }
    Ok(CovolumeRun {
        score,
        total,
        per_cluster,
    })
}
