//! Empirical growth exponent of a clusterer's cost and the complexity score.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::clusterers::Clusterer;
use crate::datagen::{make_blobs, BlobSpec};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::distance_evaluations;
use crate::ledger::{Feature, FeatureScore, Ledger};
use crate::seed::{derive_seed, STREAM_TIMING_DATA};

/// What a timing run measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CostClock {
    /// Distance evaluations made on the calling thread. Deterministic, but
    /// blind to work done elsewhere (an external process, for instance).
    #[default]
    Distances,
    /// Elapsed wall-clock seconds.
    Wall,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingRun {
    pub sizes: Vec<usize>,
    /// Median cost per size, in seconds or distance evaluations.
    pub medians: Vec<f64>,
    pub reps: usize,
    pub clock: CostClock,
}

impl TimingRun {
    pub fn new(sizes: Vec<usize>, medians: Vec<f64>, reps: usize, clock: CostClock) -> Result<Self> {
        if sizes.len() != medians.len() {
            return Err(Error::DimensionMismatch {
                expected: sizes.len(),
                got: medians.len(),
            });
        }
        if sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("timing sizes must be strictly increasing".into()));
        }
        if medians.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
            return Err(Error::OutOfRange("timing medians must be positive".into()));
        }
        Ok(TimingRun {
            sizes,
            medians,
            reps,
            clock,
        })
    }

    pub fn to_csv(&self) -> String {
        let unit = match self.clock {
            CostClock::Wall => "median_seconds",
            CostClock::Distances => "median_distance_evaluations",
        };
        let mut s = format!("size,{unit},reps\n");
        for (n, m) in self.sizes.iter().zip(&self.medians) {
            let _ = writeln!(s, "{n},{m:e},{}", self.reps);
        }
        s
    }
}

/// `N = 1000 * 2^j` for `j = 0..=4`.
pub fn default_grid() -> Vec<usize> {
    (0..5).map(|j| 1000 << j).collect()
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn measure(a: &dyn Clusterer, x: &Dataset, clock: CostClock) -> Result<f64> {
    match clock {
        CostClock::Wall => {
            let start = Instant::now();
            a.cluster(x)?;
            Ok(start.elapsed().as_secs_f64())
        }
        CostClock::Distances => {
            let before = distance_evaluations();
            a.cluster(x)?;
            Ok((distance_evaluations() - before) as f64)
        }
    }
}

/// Run `a` on datasets of each size drawn from `template`, `reps` times
/// each, and record the median cost. Wall-clock runs discard one warm-up.
/// Must not overlap with other work when timing by wall clock.
pub fn time_clusterer(
    a: &dyn Clusterer,
    template: &BlobSpec,
    sizes: &[usize],
    reps: usize,
    clock: CostClock,
    seed: u64,
) -> Result<TimingRun> {
    if sizes.len() < 4 {
        return Err(Error::InsufficientSamples {
            needed: 4,
            got: sizes.len(),
        });
    }
    if reps < 3 {
        return Err(Error::Config("timing needs at least 3 repetitions".into()));
    }
    template.validate()?;
    let mut medians = Vec::with_capacity(sizes.len());
    for (j, &n) in sizes.iter().enumerate() {
        let x = make_blobs(&template.resized(n, derive_seed(seed, STREAM_TIMING_DATA, j as u64)))?;
        if clock == CostClock::Wall {
            measure(a, &x, clock).map_err(|e| e.context(format!("timing at N = {n}")))?;
        }
        // distance counts repeat exactly, so one run stands for all reps
        let runs = if clock == CostClock::Distances { 1 } else { reps };
        let mut costs = Vec::with_capacity(runs);
        for _ in 0..runs {
            costs.push(measure(a, &x, clock).map_err(|e| e.context(format!("timing at N = {n}")))?);
        }
        let m = median(&mut costs);
        if !(m > 0.0) {
            return Err(Error::Degenerate(format!(
                "{} registered no cost at N = {n}; time it by wall clock instead",
                a.name()
            )));
        }
        medians.push(m);
    }
    TimingRun::new(sizes.to_vec(), medians, reps, clock)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares line through `(ln N, ln cost)`.
pub fn fit_exponent(run: &TimingRun) -> Result<ExponentFit> {
    let n = run.sizes.len();
    if n < 4 {
        return Err(Error::InsufficientSamples { needed: 4, got: n });
    }
    let xs: Vec<f64> = run.sizes.iter().map(|&s| (s as f64).ln()).collect();
    let ys: Vec<f64> = run.medians.iter().map(|m| m.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if syy > 0.0 {
        (1.0 - sse / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(ExponentFit {
        exponent: slope,
        intercept,
        r_squared,
    })
}

/// Score the fitted exponent, clamped to `[0, 4]`.
pub fn complexity_score(fit: &ExponentFit, ledger: &Ledger) -> FeatureScore {
    let raw = fit.exponent.clamp(0.0, 4.0);
    let score = FeatureScore::new(raw, None, ledger.fixed(Feature::Complexity));
    if raw != fit.exponent {
        score.flagged(format!("fitted exponent {:.4} clamped to [0, 4]", fit.exponent))
    } else {
        score
    }
}

/// Generator template mimicking a dataset: one blob per truth cluster at its
/// centroid, with the cluster's RMS per-coordinate spread and proportional
/// size. Without truth labels the whole dataset is one blob.
pub fn template_from(x: &Dataset) -> Result<BlobSpec> {
    let labels: Vec<i32> = match x.truth() {
        Some(t) if t.iter().any(|&l| l >= 0) => t.to_vec(),
        _ => vec![0; x.len()],
    };
    let m = labels.iter().map(|&l| l + 1).max().unwrap_or(0) as usize;
    let d = x.dim();
    let mut sums = vec![vec![0.0; d]; m];
    let mut counts = vec![0usize; m];
    for (i, &l) in labels.iter().enumerate() {
        if l >= 0 {
            counts[l as usize] += 1;
            for (s, v) in sums[l as usize].iter_mut().zip(x.point(i)) {
                *s += v;
            }
        }
    }
    let centers: Vec<Vec<f64>> = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| s.iter().map(|v| v / c as f64).collect())
        .collect();
    let mut sq = vec![0.0; m];
    for (i, &l) in labels.iter().enumerate() {
        if l >= 0 {
            let c = &centers[l as usize];
            sq[l as usize] += x.point(i).iter().zip(c).map(|(p, q)| (p - q).powi(2)).sum::<f64>();
        }
    }
    let (lo, hi) = x.bounding_box();
    let extent = lo.iter().zip(&hi).map(|(l, h)| h - l).fold(0.0, f64::max);
    let fallback = if extent > 0.0 { extent / 100.0 } else { 1.0 };
    let spreads = sq
        .iter()
        .zip(&counts)
        .map(|(s, &c)| {
            let v = (s / (c as f64 * d as f64)).sqrt();
            if v > 0.0 {
                v
            } else {
                fallback
            }
        })
        .collect();
    Ok(BlobSpec {
        centers,
        counts,
        spreads,
        seed: 0,
    })
}
