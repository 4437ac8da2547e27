//! Algorithms under test: k-means, DBSCAN, single linkage, an external
//! process adapter and a ground-truth oracle.

mod dbscan;
mod external;
mod kmeans;
mod linkage;
mod truth;

pub use dbscan::dbscan;
pub use external::run_external;
pub use kmeans::kmeans;
pub use linkage::{single_linkage, single_linkage_merges, Merge};
pub use truth::truth_oracle;

use std::fmt;
use std::str::FromStr;

use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};

/// Anything that turns a dataset into a hard clustering.
///
/// Implementations must be deterministic: the scorers rely on a clusterer
/// giving the same answer for the same input.
pub trait Clusterer: Sync {
    fn name(&self) -> &str;
    fn cluster(&self, x: &Dataset) -> Result<Clustering>;
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClustererKind {
    KMeans { k: usize, max_iter: usize, seed: u64 },
    Dbscan { eps: f64, min_pts: usize },
    SingleLinkage { k: usize },
    External { command: String },
    TruthOracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClustererSpec {
    pub kind: ClustererKind,
    pub name: String,
}

pub const DEFAULT_MAX_ITER: usize = 300;

impl ClustererSpec {
    pub fn new(kind: ClustererKind) -> Result<Self> {
        match &kind {
            ClustererKind::KMeans { k, max_iter, .. } if *k == 0 || *max_iter == 0 => {
                return Err(Error::Config("kmeans needs k >= 1 and max_iter >= 1".into()))
            }
            ClustererKind::Dbscan { eps, min_pts } if !(*eps > 0.0 && eps.is_finite()) || *min_pts == 0 => {
                return Err(Error::Config("dbscan needs eps > 0 and min_pts >= 1".into()))
            }
            ClustererKind::SingleLinkage { k } if *k == 0 => {
                return Err(Error::Config("single linkage needs k >= 1".into()))
            }
            ClustererKind::External { command } if command.trim().is_empty() => {
                return Err(Error::Config("external clusterer needs a command".into()))
            }
            _ => {}
        }
        let name = match &kind {
            ClustererKind::KMeans { k, .. } => format!("kmeans(k={k})"),
            ClustererKind::Dbscan { eps, min_pts } => format!("dbscan(eps={eps},min_pts={min_pts})"),
            ClustererKind::SingleLinkage { k } => format!("single(k={k})"),
            ClustererKind::External { command } => format!("external({command})"),
            ClustererKind::TruthOracle => "truth".to_string(),
        };
        Ok(ClustererSpec { kind, name })
    }

    pub fn kmeans(k: usize, seed: u64) -> Self {
        Self::new(ClustererKind::KMeans {
            k,
            max_iter: DEFAULT_MAX_ITER,
            seed,
        })
        .expect("valid kmeans parameters")
    }

    pub fn dbscan(eps: f64, min_pts: usize) -> Self {
        Self::new(ClustererKind::Dbscan { eps, min_pts }).expect("valid dbscan parameters")
    }

    pub fn single_linkage(k: usize) -> Self {
        Self::new(ClustererKind::SingleLinkage { k }).expect("valid linkage parameters")
    }

    pub fn truth() -> Self {
        Self::new(ClustererKind::TruthOracle).unwrap()
    }

    /// Replace the display name.
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn run(&self, x: &Dataset) -> Result<Clustering> {
        match &self.kind {
            ClustererKind::KMeans { k, max_iter, seed } => kmeans(x, *k, *max_iter, *seed),
            ClustererKind::Dbscan { eps, min_pts } => dbscan(x, *eps, *min_pts),
            ClustererKind::SingleLinkage { k } => single_linkage(x, *k),
            ClustererKind::External { command } => run_external(command, x),
            ClustererKind::TruthOracle => truth_oracle(x),
        }
        .map_err(|e| e.context(format!("running {}", self.name)))
    }
}

impl Clusterer for ClustererSpec {
    fn name(&self) -> &str {
        &self.name
    }

    fn cluster(&self, x: &Dataset) -> Result<Clustering> {
        self.run(x)
    }
}

impl fmt::Display for ClustererSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Parses `kmeans:k=3[,max_iter=..][,seed=..]`, `dbscan:eps=0.5,min_pts=5`,
/// `single:k=3`, `external:<command>` and `truth`.
impl FromStr for ClustererSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        let head = head.trim().to_ascii_lowercase();
        if head == "external" {
            let command = rest.trim().trim_matches('"').to_string();
            return Self::new(ClustererKind::External { command });
        }
        let mut params = Vec::new();
        for kv in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value in '{kv}'")))?;
            params.push((k.trim().to_ascii_lowercase(), v.trim().to_string()));
        }
        let mut take = |key: &str| -> Option<String> {
            let pos = params.iter().position(|(k, _)| k == key)?;
            Some(params.remove(pos).1)
        };
        fn num<T: FromStr>(key: &str, v: Option<String>) -> Result<Option<T>> {
            v.map(|v| {
                v.parse()
                    .map_err(|_| Error::Config(format!("invalid value '{v}' for {key}")))
            })
            .transpose()
        }
        let required = |key: &str| Error::Config(format!("{head} requires {key}=..."));
        let kind = match head.as_str() {
            "kmeans" | "k-means" => ClustererKind::KMeans {
                k: num("k", take("k"))?.ok_or_else(|| required("k"))?,
                max_iter: num("max_iter", take("max_iter"))?.unwrap_or(DEFAULT_MAX_ITER),
                seed: num("seed", take("seed"))?.unwrap_or(0),
            },
            "dbscan" => ClustererKind::Dbscan {
                eps: num("eps", take("eps"))?.ok_or_else(|| required("eps"))?,
                min_pts: num("min_pts", take("min_pts"))?.unwrap_or(5),
            },
            "single" | "single_linkage" | "single-linkage" => ClustererKind::SingleLinkage {
                k: num("k", take("k"))?.ok_or_else(|| required("k"))?,
            },
            "truth" | "truth_oracle" => ClustererKind::TruthOracle,
            other => return Err(Error::Config(format!("unknown algorithm '{other}'"))),
        };
        if let Some((k, _)) = params.first() {
            return Err(Error::Config(format!("unknown parameter '{k}' for {head}")));
        }
        Self::new(kind)
    }
}

/// Nearest centroid by squared distance, ties to the lowest index.
pub(crate) fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centre) in centroids.iter().enumerate() {
        let d = crate::geometry::dist2(point, centre);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}
