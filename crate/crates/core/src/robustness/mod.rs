//! Stability under feature exchange and sensitivity to injected noise.

mod info;
mod noise;
mod stability;

pub use info::{aligned_pmfs, entropy, kl_divergence};
pub use noise::{noise_divergence, noise_trial, NoiseConfig, NoiseOutcome, NoiseRun};
pub use stability::{default_subset_size, stability, stability_trial, StabilityConfig, StabilityRun};
