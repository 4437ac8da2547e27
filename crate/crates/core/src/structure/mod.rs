//! Homogeneity, intercluster distance and covolume.

mod covolume;
mod homogeneity;
mod separation;

pub use covolume::{covolume, CovolumeRun};
pub use homogeneity::{
    acosh1p, cluster_homogeneity, cluster_moments, fisher_distance, homogeneity, homogeneity_from_moments,
    hyperbolic_distance, ClusterMoments, HomogeneityRun, HomogeneitySummary, DEFAULT_K_MREACH,
};
pub use separation::{intercluster_distance, separation, SeparationRun, SeparationSummary};
