use rand::seq::index::sample;
use rand::Rng;

use crate::clusterers::Clusterer;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::ledger::{Feature, FeatureScore, Ledger};
use crate::matching::moved_fraction;
use crate::seed::{stream_rng, STREAM_STABILITY};
use crate::stats::{confidence_interval, Statistic};

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityConfig {
    /// Features clustered per trial; `None` picks [`default_subset_size`].
    pub subset_size: Option<usize>,
    /// Trials per batch; batches repeat until the interval is narrow enough.
    pub trials: usize,
    pub target_half_width: f64,
    /// Hard cap on the total number of trials.
    pub max_trials: usize,
    pub seed: u64,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        StabilityConfig {
            subset_size: None,
            trials: 30,
            target_half_width: 0.02,
            max_trials: 300,
            seed: 0,
        }
    }
}

/// About a fifth of the features, at least two, but always leaving one
/// feature outside the subset to exchange (so two-dimensional data uses one).
pub fn default_subset_size(dim: usize) -> usize {
    dim.div_ceil(5).max(2).min(dim.saturating_sub(1))
}

impl StabilityConfig {
    pub fn subset_size_for(&self, dim: usize) -> Result<usize> {
        let m = self.subset_size.unwrap_or_else(|| default_subset_size(dim));
        if dim <= m || dim < 2 {
            return Err(Error::Config(format!(
                "no feature to exchange: subset size {m} with {dim} features"
            )));
        }
        if m == 0 {
            return Err(Error::Config("subset size must be at least 1".into()));
        }
        Ok(m)
    }
}

/// One exchange experiment: cluster on a random feature subset, swap one
/// feature for an outside one, cluster again and report the moved fraction.
pub fn stability_trial(x: &Dataset, a: &dyn Clusterer, cfg: &StabilityConfig, trial: u64) -> Result<f64> {
    let d = x.dim();
    let m = cfg.subset_size_for(d)?;
    let mut rng = stream_rng(cfg.seed, STREAM_STABILITY, trial);
    let mut subset: Vec<usize> = sample(&mut rng, d, m).into_vec();
    subset.sort_unstable();
    let outside: Vec<usize> = (0..d).filter(|j| !subset.contains(j)).collect();
    let mut swapped = subset.clone();
    swapped[rng.random_range(0..m)] = outside[rng.random_range(0..outside.len())];
    swapped.sort_unstable();

    let before = a.cluster(&x.select_features(&subset)?)?;
    let after = a.cluster(&x.select_features(&swapped)?)?;
    moved_fraction(&before, &after)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityRun {
    pub score: FeatureScore,
    /// Moved fraction of every trial, in trial order.
    pub moved: Vec<f64>,
    pub subset_size: usize,
}

pub fn stability(x: &Dataset, a: &dyn Clusterer, cfg: &StabilityConfig, ledger: &Ledger) -> Result<StabilityRun> {
    if cfg.trials < 2 {
        return Err(Error::Config("stability needs at least 2 trials".into()));
    }
    let subset_size = cfg.subset_size_for(x.dim())?;
    let cap = cfg.max_trials.max(cfg.trials);
    let mut moved: Vec<f64> = Vec::new();
    loop {
        let end = (moved.len() + cfg.trials).min(cap);
        let batch = crate::par::map_range(moved.len()..end, |t| stability_trial(x, a, cfg, t as u64));
        for r in batch {
            let t = moved.len();
            moved.push(r.map_err(|e| e.context(format!("stability trial {t}")))?);
        }
        let ci = confidence_interval(&moved, Statistic::Z)?;
        if ci.half_width <= cfg.target_half_width || moved.len() >= cap {
            break;
        }
    }
    let mut ci = confidence_interval(&moved, Statistic::Z)?;
    ci.mean = 1.0 - ci.mean;
    let raw = ci.mean.clamp(0.0, 1.0);
    let score = FeatureScore::new(raw, Some(ci), ledger.fixed(Feature::Stability));
    Ok(StabilityRun {
        score,
        moved,
        subset_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Clustering;

    struct Constant;
    impl Clusterer for Constant {
        fn name(&self) -> &str {
            "constant"
        }
        fn cluster(&self, x: &Dataset) -> Result<Clustering> {
            Ok(Clustering::from_raw_labels(&vec![0; x.len()]))
        }
    }

    fn data(dim: usize) -> Dataset {
        let vals: Vec<f64> = (0..40 * dim).map(|i| ((i * 37) % 11) as f64).collect();
        Dataset::from_flat(vals, dim).unwrap()
    }

    #[test]
    fn subset_sizes() {
        assert_eq!(default_subset_size(2), 1);
        assert_eq!(default_subset_size(3), 2);
        assert_eq!(default_subset_size(10), 2);
        assert_eq!(default_subset_size(100), 20);
        let cfg = StabilityConfig::default();
        assert!(cfg.subset_size_for(1).is_err());
        let cfg = StabilityConfig {
            subset_size: Some(4),
            ..Default::default()
        };
        assert!(cfg.subset_size_for(4).is_err());
    }

    #[test]
    fn constant_clusterer_is_perfectly_stable() {
        let run = stability(&data(6), &Constant, &StabilityConfig::default(), &Ledger::table1()).unwrap();
        assert_eq!(run.score.raw, 1.0);
        assert!((run.score.points - 50.0).abs() < 1e-9);
        assert_eq!(run.moved.len(), 30);
    }

    #[test]
    fn trials_are_reproducible() {
        let x = data(5);
        let a = crate::clusterers::ClustererSpec::kmeans(3, 1);
        let cfg = StabilityConfig {
            seed: 5,
            ..Default::default()
        };
        for t in 0..5 {
            assert_eq!(
                stability_trial(&x, &a, &cfg, t).unwrap(),
                stability_trial(&x, &a, &cfg, t).unwrap()
            );
        }
    }
}
