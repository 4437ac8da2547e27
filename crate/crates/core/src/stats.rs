//! Probability mass functions over clusters and mean confidence intervals.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::dataset::Clustering;
use crate::error::{Error, Result};

const PMF_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if probs.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::OutOfRange(
                "probabilities must be finite and non-negative".into(),
            ));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PMF_TOLERANCE {
            return Err(Error::OutOfRange(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Pmf { probs })
    }

    /// Normalise non-negative weights into a PMF.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || weights.iter().any(|w| *w < 0.0) {
            return Err(Error::EmptyPartition);
        }
        Ok(Pmf {
            probs: weights.iter().map(|w| w / total).collect(),
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Cluster proportions `|C_i| / n`, with `n` counting non-noise points only.
pub fn cluster_pmf(c: &Clustering) -> Result<Pmf> {
    if c.is_all_noise() {
        return Err(Error::EmptyPartition);
    }
    let sizes: Vec<f64> = c.sizes().into_iter().map(|s| s as f64).collect();
    Pmf::from_weights(&sizes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    /// Normal approximation with multiplier exactly 2.
    Z,
    /// Two-sided 95% Student-t with `n - 1` degrees of freedom.
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub mean: f64,
    pub half_width: f64,
    pub n_samples: usize,
    pub statistic: Statistic,
    pub level: f64,
}

impl ConfidenceInterval {
    pub fn lower(&self) -> f64 {
        self.mean - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.mean + self.half_width
    }
}

pub fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Sample standard deviation (`n - 1` denominator).
pub fn sample_std(samples: &[f64]) -> f64 {
    let mu = mean(samples);
    let ss: f64 = samples.iter().map(|x| (x - mu) * (x - mu)).sum();
    (ss / (samples.len() as f64 - 1.0)).sqrt()
}

pub fn multiplier(statistic: Statistic, n: usize) -> f64 {
    match statistic {
        Statistic::Z => 2.0,
        Statistic::T => {
            let dist = StudentsT::new(0.0, 1.0, (n - 1) as f64).expect("n >= 2 gives positive dof");
            dist.inverse_cdf(0.975)
        }
    }
}

pub fn confidence_interval(samples: &[f64], statistic: Statistic) -> Result<ConfidenceInterval> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: n });
    }
    let half_width = multiplier(statistic, n) * sample_std(samples) / (n as f64).sqrt();
    Ok(ConfidenceInterval {
        mean: mean(samples),
        half_width,
        n_samples: n,
        statistic,
        level: 0.95,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn pmf_examples() {
        let p = |l: &[i32]| cluster_pmf(&Clustering::new(l.to_vec()).unwrap()).unwrap();
        assert_eq!(p(&[0, 0, 1, 1]).probs(), &[0.5, 0.5]);
        assert_eq!(p(&[0, 0, 0, 1]).probs(), &[0.75, 0.25]);
        let q = p(&[0, -1, 0, 1]);
        assert_abs_diff_eq!(q.probs()[0], 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.probs()[1], 1.0 / 3.0, epsilon = 1e-15);
        let err = cluster_pmf(&Clustering::new(vec![-1, -1]).unwrap()).unwrap_err();
        assert_eq!(err.to_string(), "empty partition");
    }

    #[test]
    fn interval_examples() {
        let ci = confidence_interval(&[0.7; 5], Statistic::Z).unwrap();
        assert_abs_diff_eq!(ci.mean, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(ci.half_width, 0.0, epsilon = 1e-15);

        let ci = confidence_interval(&[0.0, 1.0], Statistic::Z).unwrap();
        assert_eq!(ci.mean, 0.5);
        assert_abs_diff_eq!(ci.half_width, 1.0, epsilon = 1e-12);

        // t_{0.975, 2} = 4.302653 from standard tables
        let ci = confidence_interval(&[1.0, 2.0, 3.0], Statistic::T).unwrap();
        assert_eq!(ci.mean, 2.0);
        assert_abs_diff_eq!(ci.half_width, 4.302_652_73 / 3f64.sqrt(), epsilon = 1e-6);

        assert!(matches!(
            confidence_interval(&[1.0], Statistic::T),
            Err(Error::InsufficientSamples { needed: 2, got: 1 })
        ));
    }

    proptest! {
        #[test]
        fn pmf_is_normalised(labels in proptest::collection::vec(-1i64..8, 1..200)) {
            let c = Clustering::from_raw_labels(&labels);
            if let Ok(p) = cluster_pmf(&c) {
                prop_assert!(p.probs().iter().all(|&x| x >= 0.0));
                prop_assert!((p.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            } else {
                prop_assert!(c.is_all_noise());
            }
        }

        #[test]
        fn z_half_width_scales_inverse_sqrt(
            base in proptest::collection::vec(-10.0f64..10.0, 2..20),
            reps in 2usize..6,
        ) {
            let one = confidence_interval(&base, Statistic::Z).unwrap();
            let replicated: Vec<f64> = base.iter().cycle().take(base.len() * reps).copied().collect();
            let many = confidence_interval(&replicated, Statistic::Z).unwrap();
            // replication keeps the mean and (asymptotically) the spread; the
            // n-1 correction is removed explicitly
            let n = base.len() as f64;
            let r = reps as f64;
            let correction = ((n - 1.0) / n * (r * n) / (r * n - 1.0)).sqrt();
            let expected = one.half_width / r.sqrt() * correction;
            prop_assert!((many.half_width - expected).abs() <= 1e-9 * (1.0 + expected));
        }
    }
}
