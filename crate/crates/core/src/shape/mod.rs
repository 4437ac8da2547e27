//! Boundary curves, bending energy and the surface curvature integral.

mod curve;
pub mod quadrature;
mod surface;

pub use curve::{curve_bending_energy, fit_closed_curve, fit_closed_curve_through, ClosedCurve};
pub use surface::{surface_curvature_integrand, surface_shape_integral, SurfaceJet, SurfacePatch};

use serde::Serialize;

use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};
use crate::geometry::boundary_2d;
use crate::ledger::{Feature, FeatureScore, Ledger};

/// Bending energy of the smooth curve through a point set's boundary.
pub fn cluster_shape(points: &[[f64; 2]]) -> Result<f64> {
    let boundary = boundary_2d(points)?;
    let curve = fit_closed_curve(&boundary, points)?;
    curve_bending_energy(&curve)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeSummary {
    /// `None` for clusters whose boundary could not be traced.
    pub per_cluster: Vec<Option<f64>>,
    pub total: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `(cluster, reason)` for every skipped cluster.
    pub skipped: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeRun {
    pub score: FeatureScore,
    pub summary: ShapeSummary,
}

fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::DegenerateBoundary(_) | Error::DegeneratePolygon(_) | Error::SingularParametrization(_)
    )
}

/// Sum of cluster bending energies, scored against `8π` per scored cluster.
/// Clusters without a usable boundary are skipped and reported.
pub fn shape_score(x: &Dataset, c: &Clustering, ledger: &Ledger) -> Result<ShapeRun> {
    if x.dim() != 2 {
        return Err(Error::UnsupportedDimension(x.dim()));
    }
    if c.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: c.len(),
        });
    }
    let members = c.members();
    let results = crate::par::map_indexed(members.len(), |i| {
        let pts: Vec<[f64; 2]> = members[i].iter().map(|&p| [x.point(p)[0], x.point(p)[1]]).collect();
        cluster_shape(&pts)
    });
    let mut per_cluster = Vec::with_capacity(results.len());
    let mut skipped = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => per_cluster.push(Some(v)),
            Err(e) if is_degenerate(&e) => {
                skipped.push((i, e.to_string()));
                per_cluster.push(None);
            }
            Err(e) => return Err(e.context(format!("shape of cluster {i}"))),
        }
    }
    let scored: Vec<f64> = per_cluster.iter().flatten().copied().collect();
    if scored.is_empty() {
        return Err(Error::Degenerate("no cluster has a traceable boundary".into()));
    }
    let total: f64 = scored.iter().sum();
    let max = scored.iter().copied().fold(0.0, f64::max);
    let beta = 8.0 * std::f64::consts::PI * scored.len() as f64;
    let entry = ledger.resolve(Feature::Shape, 1.0 / max, beta);
    let mut score = FeatureScore::new(total, None, entry);
    if !skipped.is_empty() {
        score = score.flagged(format!("{} degenerate cluster(s) skipped", skipped.len()));
    }
    Ok(ShapeRun {
        score,
        summary: ShapeSummary {
            per_cluster,
            total,
            alpha: entry.alpha,
            beta: entry.beta,
            skipped,
        },
    })
}
