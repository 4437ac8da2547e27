use serde::{Deserialize, Serialize};

use super::out;
use crate::error::{Error, Result};
use crate::ledger::{Feature, FeatureScore};
use crate::stats::Statistic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// Scored under a degenerate-case rule; see the note.
    Flagged,
    /// Not scored; the note carries the reason.
    Absent,
}

/// A scorer's result: a score, or the reason there is none.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureOutcome {
    Scored(FeatureScore),
    Failed { feature: Feature, message: String },
}

impl FeatureOutcome {
    pub fn feature(&self) -> Feature {
        match self {
            FeatureOutcome::Scored(s) => s.feature,
            FeatureOutcome::Failed { feature, .. } => *feature,
        }
    }

    pub fn from_result(feature: Feature, r: Result<FeatureScore>) -> Self {
        match r {
            Ok(s) => FeatureOutcome::Scored(s),
            Err(e) => FeatureOutcome::Failed {
                feature,
                message: e.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiRow {
    pub mean: Option<f64>,
    pub half_width: Option<f64>,
    pub n: usize,
    pub statistic: Statistic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub name: Feature,
    pub status: Status,
    pub raw: Option<f64>,
    pub ci: Option<CiRow>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub weight: Option<f64>,
    pub points: Option<f64>,
    pub note: Option<String>,
}

impl FeatureRow {
    fn from_outcome(o: &FeatureOutcome) -> Self {
        match o {
            FeatureOutcome::Scored(s) => FeatureRow {
                name: s.feature,
                status: if s.flag.is_some() { Status::Flagged } else { Status::Ok },
                raw: out(s.raw),
                ci: s.ci.map(|ci| CiRow {
                    mean: out(ci.mean),
                    half_width: out(ci.half_width),
                    n: ci.n_samples,
                    statistic: ci.statistic,
                }),
                alpha: out(s.entry.alpha),
                beta: out(s.entry.beta),
                weight: out(s.entry.weight),
                points: out(s.points),
                note: s.flag.clone(),
            },
            FeatureOutcome::Failed { feature, message } => FeatureRow {
                name: *feature,
                status: Status::Absent,
                raw: None,
                ci: None,
                alpha: None,
                beta: None,
                weight: None,
                points: None,
                note: Some(message.clone()),
            },
        }
    }

    pub fn is_present(&self) -> bool {
        self.status != Status::Absent && self.points.is_some()
    }
}

/// Scores of one algorithm and their sum `M(A)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmReport {
    pub algorithm: String,
    /// Every one of the seven features was scored.
    pub complete: bool,
    pub features: Vec<FeatureRow>,
    pub total: Option<f64>,
}

impl AlgorithmReport {
    pub fn feature(&self, f: Feature) -> Option<&FeatureRow> {
        self.features.iter().find(|r| r.name == f)
    }

    pub fn present_features(&self) -> Vec<Feature> {
        self.features
            .iter()
            .filter(|r| r.is_present())
            .map(|r| r.name)
            .collect()
    }

    pub fn has_failures(&self) -> bool {
        self.features.iter().any(|r| r.status == Status::Absent)
    }
}

/// Sum the points of the scored features. Input order does not matter:
/// rows come out in canonical feature order.
pub fn aggregate(algorithm: &str, outcomes: &[FeatureOutcome]) -> Result<AlgorithmReport> {
    let mut sorted: Vec<&FeatureOutcome> = outcomes.iter().collect();
    sorted.sort_by_key(|o| o.feature());
    if let Some(w) = sorted.windows(2).find(|w| w[0].feature() == w[1].feature()) {
        return Err(Error::Config(format!("feature {} scored twice", w[0].feature())));
    }
    let total: f64 = sorted
        .iter()
        .filter_map(|o| match o {
            FeatureOutcome::Scored(s) => Some(s.points),
            FeatureOutcome::Failed { .. } => None,
        })
        .sum();
    let features: Vec<FeatureRow> = sorted.iter().map(|o| FeatureRow::from_outcome(o)).collect();
    let complete = features.len() == Feature::ALL.len() && features.iter().all(FeatureRow::is_present);
    Ok(AlgorithmReport {
        algorithm: algorithm.to_string(),
        complete,
        features,
        total: out(total),
    })
}

/// Everything one scoring run writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub dataset: DatasetInfo,
    pub seed: u64,
    /// Totals only compare across algorithms scored on the same features.
    pub comparable: bool,
    pub reports: Vec<AlgorithmReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub source: String,
    pub n: usize,
    pub dim: usize,
    pub truth_clusters: Option<usize>,
}

impl ReportFile {
    pub fn new(dataset: DatasetInfo, seed: u64, reports: Vec<AlgorithmReport>) -> Self {
        let comparable = reports
            .windows(2)
            .all(|w| w[0].present_features() == w[1].present_features());
        ReportFile {
            dataset,
            seed,
            comparable,
            reports,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
