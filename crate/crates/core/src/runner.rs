//! Scores a set of algorithms on one dataset.
//!
//! Complexity timing runs first, alone and on the calling thread, so that
//! wall-clock measurements are not disturbed by other scorers. Everything
//! else then runs on a worker pool; results are collected in input order so
//! the output does not depend on the thread count.

use crate::clusterers::Clusterer;
use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};
use crate::ledger::{Feature, Ledger};
use crate::par::map_indexed;
use crate::performance::{complexity_score, default_grid, fit_exponent, template_from, time_clusterer, CostClock};
use crate::robustness::{noise_divergence, stability, NoiseConfig, StabilityConfig};
use crate::scoring::{aggregate, AlgorithmReport, FeatureOutcome};
use crate::shape::shape_score;
use crate::structure::{covolume, homogeneity, separation, DEFAULT_K_MREACH};

#[derive(Debug, Clone, PartialEq)]
pub struct TimingOptions {
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub clock: CostClock,
}

impl Default for TimingOptions {
    fn default() -> Self {
        TimingOptions {
            sizes: default_grid(),
            reps: 3,
            clock: CostClock::Distances,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScoreOptions {
    pub features: Vec<Feature>,
    pub ledger: Ledger,
    pub seed: u64,
    /// Worker threads for everything except timing.
    pub threads: usize,
    pub stability: StabilityConfig,
    pub noise: NoiseConfig,
    pub timing: TimingOptions,
    pub k_mreach: usize,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            features: Feature::ALL.to_vec(),
            ledger: Ledger::table1(),
            seed: 0,
            threads: 1,
            stability: StabilityConfig::default(),
            noise: NoiseConfig::default(),
            timing: TimingOptions::default(),
            k_mreach: DEFAULT_K_MREACH,
        }
    }
}

impl ScoreOptions {
    fn wants(&self, f: Feature) -> bool {
        self.features.contains(&f)
    }

    fn validate(&self) -> Result<()> {
        if self.features.is_empty() {
            return Err(Error::Config("no features selected".into()));
        }
        let mut sorted = self.features.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("feature {} selected twice", w[0])));
        }
        if self.threads == 0 {
            return Err(Error::Config("thread count must be at least 1".into()));
        }
        Ok(())
    }
}

fn failed(feature: Feature, message: impl Into<String>) -> FeatureOutcome {
    FeatureOutcome::Failed {
        feature,
        message: message.into(),
    }
}

fn complexity_outcome(x: &Dataset, a: &dyn Clusterer, opts: &ScoreOptions) -> FeatureOutcome {
    let r = template_from(x).and_then(|template| {
        let t = &opts.timing;
        let run = time_clusterer(a, &template, &t.sizes, t.reps, t.clock, opts.seed)?;
        Ok(complexity_score(&fit_exponent(&run)?, &opts.ledger))
    });
    FeatureOutcome::from_result(Feature::Complexity, r)
}

fn structural(x: &Dataset, c: &Clustering, f: Feature, opts: &ScoreOptions) -> FeatureOutcome {
    let l = &opts.ledger;
    let r = match f {
        Feature::Homogeneity => homogeneity(x, c, opts.k_mreach, l).map(|r| r.score),
        Feature::Distance => separation(x, c, l).map(|r| r.score),
        Feature::Covolume => covolume(x, c, l).map(|r| r.score),
        Feature::Shape => shape_score(x, c, l).map(|r| r.score),
        _ => unreachable!("not a structural feature"),
    };
    FeatureOutcome::from_result(f, r)
}

/// The non-timing features of one algorithm, in canonical order.
fn other_outcomes(x: &Dataset, a: &dyn Clusterer, opts: &ScoreOptions) -> Vec<FeatureOutcome> {
    const STRUCTURAL: [Feature; 4] = [
        Feature::Homogeneity,
        Feature::Distance,
        Feature::Covolume,
        Feature::Shape,
    ];
    let wanted: Vec<Feature> = Feature::ALL
        .into_iter()
        .filter(|&f| f != Feature::Complexity && opts.wants(f))
        .collect();
    let clustering = if wanted.iter().any(|f| STRUCTURAL.contains(f)) {
        Some(a.cluster(x).and_then(|c| {
            if c.is_all_noise() {
                Err(Error::EmptyPartition.context(format!("{} labelled every point noise", a.name())))
            } else {
                Ok(c)
            }
        }))
    } else {
        None
    };
    let truth = x.truth_clustering();
    map_indexed(wanted.len(), |i| {
        let f = wanted[i];
        match f {
            Feature::Stability => {
                let cfg = StabilityConfig {
                    seed: opts.seed,
                    ..opts.stability.clone()
                };
                FeatureOutcome::from_result(f, stability(x, a, &cfg, &opts.ledger).map(|r| r.score))
            }
            Feature::Noise => match &truth {
                Some(t) => {
                    let cfg = NoiseConfig {
                        seed: opts.seed,
                        ..opts.noise.clone()
                    };
                    FeatureOutcome::from_result(f, noise_divergence(x, t, a, &cfg, &opts.ledger).map(|r| r.score))
                }
                None => failed(f, "noise sensitivity needs ground-truth labels"),
            },
            _ => match clustering.as_ref().expect("clustered for structural features") {
                Ok(c) => structural(x, c, f, opts),
                Err(e) => failed(f, e.to_string()),
            },
        }
    })
}

#[cfg(feature = "parallel")]
fn on_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

#[cfg(not(feature = "parallel"))]
fn on_pool<T: Send>(_threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    Ok(job())
}

/// Score every algorithm on every selected feature. Scorer failures become
/// absent features in the report; only invalid options are errors.
pub fn score_algorithms(
    x: &Dataset,
    algorithms: &[&dyn Clusterer],
    opts: &ScoreOptions,
) -> Result<Vec<AlgorithmReport>> {
    opts.validate()?;
    let mut seen: Vec<&str> = algorithms.iter().map(|a| a.name()).collect();
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Config(format!("algorithm name '{}' used twice", w[0])));
    }

    let timing: Vec<Option<FeatureOutcome>> = algorithms
        .iter()
        .map(|a| opts.wants(Feature::Complexity).then(|| complexity_outcome(x, *a, opts)))
        .collect();

    let rest = on_pool(opts.threads, || {
        map_indexed(algorithms.len(), |i| other_outcomes(x, algorithms[i], opts))
    })?;

    algorithms
        .iter()
        .zip(timing)
        .zip(rest)
        .map(|((a, t), mut outcomes)| {
            outcomes.extend(t);
            aggregate(a.name(), &outcomes)
        })
        .collect()
}
