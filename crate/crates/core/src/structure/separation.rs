use serde::Serialize;

use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};
use crate::geometry::{dist, hull_diameter};
use crate::ledger::{Feature, FeatureScore, Ledger};

/// Smallest Euclidean distance between a point of cluster `i` and one of `j`.
pub fn intercluster_distance(x: &Dataset, c: &Clustering, i: usize, j: usize) -> Result<f64> {
    let members = c.members();
    let (a, b) = match (members.get(i), members.get(j)) {
        (Some(a), Some(b)) if !a.is_empty() && !b.is_empty() => (a, b),
        _ => return Err(Error::OutOfRange(format!("clusters {i} and {j} must both exist"))),
    };
    if i == j {
        return Err(Error::OutOfRange("intercluster distance needs two clusters".into()));
    }
    let mut best = f64::INFINITY;
    for &p in a {
        for &q in b {
            best = best.min(dist(x.point(p), x.point(q)));
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationSummary {
    /// Symmetric matrix of minimum distances, zero on the diagonal.
    pub pairwise: Vec<Vec<f64>>,
    pub d: f64,
    pub d_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationRun {
    pub score: FeatureScore,
    pub summary: SeparationSummary,
}

/// Sum of pairwise minimum distances between clusters, bounded by
/// `D_max = C(m, 2) * diameter(X)`.
pub fn separation(x: &Dataset, c: &Clustering, ledger: &Ledger) -> Result<SeparationRun> {
    if c.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: c.len(),
        });
    }
    let m = c.n_clusters();
    let mut pairwise = vec![vec![f64::INFINITY; m]; m];
    for (i, row) in pairwise.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    let labels = c.labels();
    for p in 0..x.len() {
        let lp = labels[p];
        if lp < 0 {
            continue;
        }
        for q in p + 1..x.len() {
            let lq = labels[q];
            if lq < 0 || lq == lp {
                continue;
            }
            let d = dist(x.point(p), x.point(q));
            let (a, b) = (lp as usize, lq as usize);
            if d < pairwise[a][b] {
                pairwise[a][b] = d;
                pairwise[b][a] = d;
            }
        }
    }
    let mut d = 0.0;
    for i in 0..m {
        for j in i + 1..m {
            d += pairwise[i][j];
        }
    }
    let pairs = (m * m.saturating_sub(1) / 2) as f64;
    let diameter = if x.len() >= 2 {
        hull_diameter(x.values(), x.dim())?
    } else {
        0.0
    };
    let d_max = pairs * diameter;
    let entry = ledger.resolve(Feature::Distance, 100.0 / (1.0 + d_max), 0.0);
    let score = if m < 2 {
        FeatureScore::new(0.0, None, entry).flagged("fewer than two clusters")
    } else {
        FeatureScore::new(d, None, entry)
    };
    Ok(SeparationRun {
        score,
        summary: SeparationSummary { pairwise, d, d_max },
    })
}
