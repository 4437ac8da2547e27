use rand::seq::index::sample;

use super::info::{aligned_pmfs, kl_divergence};
use crate::clusterers::Clusterer;
use crate::datagen::{sample_noise, NoiseBatch};
use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};
use crate::ledger::{Feature, FeatureScore, Ledger, Param};
use crate::seed::{derive_seed, stream_rng, STREAM_NOISE_BATCH, STREAM_NOISE_TRIAL};
use crate::stats::{confidence_interval, Statistic};

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseConfig {
    /// Size of the noise pool; `None` means truth clusters times dimensions.
    pub q: Option<usize>,
    /// Noise points injected per trial; `None` means `ceil(q / 2)`.
    pub k: Option<usize>,
    pub trials: usize,
    /// Pseudo-count added to every cluster of both distributions.
    pub smoothing: f64,
    /// Redraws allowed when a reclustering comes back all noise.
    pub max_attempts: usize,
    pub seed: u64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            q: None,
            k: None,
            trials: 100,
            smoothing: 1.0,
            max_attempts: 10,
            seed: 0,
        }
    }
}

impl NoiseConfig {
    /// `(q, k)` for a dataset with `m_truth` true clusters.
    pub fn resolve(&self, m_truth: usize, dim: usize) -> Result<(usize, usize)> {
        let q = self.q.unwrap_or(m_truth * dim);
        let k = self.k.unwrap_or(q.div_ceil(2));
        if q == 0 {
            return Err(Error::Config("noise pool size q must be at least 1".into()));
        }
        if k > q {
            return Err(Error::Config(format!("noise subset size k = {k} exceeds q = {q}")));
        }
        Ok((q, k))
    }
}

/// Result of one noise trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseOutcome {
    pub divergence: f64,
    /// Draws thrown away because the clusterer returned only noise.
    pub discarded: usize,
}

/// Inject `k` points from `pool`, recluster, and measure how far the cluster
/// distribution moved away from the truth distribution.
pub fn noise_trial(
    x: &Dataset,
    truth: &Clustering,
    a: &dyn Clusterer,
    pool: &NoiseBatch,
    k: usize,
    cfg: &NoiseConfig,
    trial: u64,
) -> Result<NoiseOutcome> {
    if truth.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: truth.len(),
        });
    }
    if k > pool.len() {
        return Err(Error::Config(format!(
            "k = {k} exceeds the noise pool of {}",
            pool.len()
        )));
    }
    let mut rng = stream_rng(cfg.seed, STREAM_NOISE_TRIAL, trial);
    for attempt in 0..cfg.max_attempts.max(1) {
        let mut chosen = sample(&mut rng, pool.len(), k).into_vec();
        chosen.sort_unstable();
        let extra: Vec<f64> = chosen.iter().flat_map(|&i| pool.point(i).iter().copied()).collect();
        let noisy = x.append_rows(&extra)?;
        let c = a.cluster(&noisy)?;
        if c.len() != noisy.len() {
            return Err(Error::DimensionMismatch {
                expected: noisy.len(),
                got: c.len(),
            });
        }
        if c.is_all_noise() {
            continue;
        }
        let (p, q) = aligned_pmfs(
            truth.labels(),
            truth.n_clusters(),
            c.labels(),
            c.n_clusters(),
            cfg.smoothing,
        )?;
        return Ok(NoiseOutcome {
            divergence: kl_divergence(&p, &q)?,
            discarded: attempt,
        });
    }
    Err(Error::Degenerate(format!(
        "clusterer returned only noise in {} attempts",
        cfg.max_attempts.max(1)
    )))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseRun {
    pub score: FeatureScore,
    pub divergences: Vec<f64>,
    pub discarded: usize,
    pub q: usize,
    pub k: usize,
}

/// Mean divergence over sampled noise subsets, scored against the
/// fragmentation reference `ln(d * m_truth)`.
pub fn noise_divergence(
    x: &Dataset,
    truth: &Clustering,
    a: &dyn Clusterer,
    cfg: &NoiseConfig,
    ledger: &Ledger,
) -> Result<NoiseRun> {
    if truth.is_all_noise() {
        return Err(Error::EmptyPartition);
    }
    if cfg.trials < 2 {
        return Err(Error::Config("noise scoring needs at least 2 trials".into()));
    }
    let m = truth.n_clusters();
    let (q, k) = cfg.resolve(m, x.dim())?;
    let reference = (x.dim() * m) as f64;
    let rule = ledger.rule(Feature::Noise);
    let needs_reference = rule.alpha == Param::Derived || rule.beta == Param::Derived;
    if needs_reference && reference <= 1.0 {
        return Err(Error::Degenerate(format!(
            "degenerate noise ledger: ln(d * clusters) = ln({reference}) is not positive; \
             override noise alpha and beta in the ledger"
        )));
    }
    let pool = sample_noise(x, q, derive_seed(cfg.seed, STREAM_NOISE_BATCH, 0))?;
    let outcomes = crate::par::map_indexed(cfg.trials, |t| noise_trial(x, truth, a, &pool, k, cfg, t as u64));
    let mut divergences = Vec::with_capacity(cfg.trials);
    let mut discarded = 0;
    for (t, o) in outcomes.into_iter().enumerate() {
        let o = o.map_err(|e| e.context(format!("noise trial {t}")))?;
        divergences.push(o.divergence);
        discarded += o.discarded;
    }
    let ci = confidence_interval(&divergences, Statistic::T)?;
    let ln_ref = reference.ln();
    let entry = ledger.resolve(Feature::Noise, 100.0 / ln_ref, ln_ref);
    let mut score = FeatureScore::new(ci.mean, Some(ci), entry);
    if discarded > 0 {
        score = score.flagged(format!("{discarded} all-noise reclusterings redrawn"));
    }
    Ok(NoiseRun {
        score,
        divergences,
        discarded,
        q,
        k,
    })
}
