pub mod clusterers;
pub mod datagen;
pub mod dataset;
pub mod error;
pub mod geometry;
pub mod ledger;
pub mod matching;
mod par;
pub mod performance;
pub mod robustness;
pub mod runner;
pub mod scoring;
pub mod seed;
pub mod shape;
pub mod stats;
pub mod structure;
