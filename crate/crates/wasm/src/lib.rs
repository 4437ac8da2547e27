//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes plain numbers or flat coordinate arrays and returns a
//! JSON string; errors surface as JS exceptions.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use clusterscore::clusterers::{Clusterer, ClustererSpec};
use clusterscore::datagen::{make_blobs, make_rings, BlobSpec, Jitter, RingSpec};
use clusterscore::geometry::boundary_2d;
use clusterscore::ledger::Feature;
use clusterscore::robustness::{NoiseConfig, StabilityConfig};
use clusterscore::runner::{score_algorithms, ScoreOptions};
use clusterscore::shape::{curve_bending_energy, fit_closed_curve};
use clusterscore::structure::{cluster_moments, homogeneity_from_moments, DEFAULT_K_MREACH};

type Outcome = Result<String, String>;

fn json<T: Serialize>(v: &T) -> Outcome {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct CurveFit {
    boundary: Vec<[f64; 2]>,
    segments: Vec<[[f64; 2]; 4]>,
    energy: Option<f64>,
    note: Option<String>,
}

/// Boundary polygon, fitted closed curve and bending energy of a 2D cloud
/// given as `[x0, y0, x1, y1, ...]`.
pub fn fit_curve_json(flat: &[f64]) -> Outcome {
    if flat.len() % 2 != 0 {
        return Err("coordinates must come in x, y pairs".into());
    }
    let points: Vec<[f64; 2]> = flat.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
    let poly = boundary_2d(&points).map_err(err)?;
    let curve = fit_closed_curve(&poly, &points).map_err(err)?;
    let (energy, note) = match curve_bending_energy(&curve) {
        Ok(e) => (Some(e), None),
        Err(e) => (None, Some(e.to_string())),
    };
    json(&CurveFit {
        boundary: poly.coords(&points),
        segments: curve.segments,
        energy,
        note,
    })
}

#[derive(Serialize)]
struct RingResult {
    points: Vec<[f64; 2]>,
    mu: f64,
    sigma2: f64,
    h: f64,
}

/// One ring of `count` points and its homogeneity. `jitter` is the angular
/// standard deviation in point spacings; 0 gives even spacing.
pub fn ring_homogeneity_json(radius: f64, count: usize, jitter: f64, seed: u64) -> Outcome {
    let spacing = std::f64::consts::TAU / count.max(1) as f64;
    let x = make_rings(&[RingSpec {
        radius,
        count,
        jitter: if jitter > 0.0 {
            Jitter::Gaussian(jitter * spacing)
        } else {
            Jitter::Even
        },
        center: [0.0, 0.0],
        seed,
    }])
    .map_err(err)?;
    let members: Vec<usize> = (0..x.len()).collect();
    let m = cluster_moments(&x, &members, DEFAULT_K_MREACH)
        .map_err(err)?
        .ok_or("a ring needs at least two points")?;
    json(&RingResult {
        points: x.points().map(|p| [p[0], p[1]]).collect(),
        mu: m.mu,
        sigma2: m.sigma2,
        h: homogeneity_from_moments(m),
    })
}

#[derive(Serialize)]
struct BlobScore {
    points: Vec<[f64; 2]>,
    labels: Vec<i32>,
    report: clusterscore::scoring::AlgorithmReport,
}

/// Generate 2D blobs, cluster them with `algorithm` (e.g. `kmeans:k=3`) and
/// score every feature except complexity, with light trial counts.
pub fn score_blobs_json(k: usize, per_blob: usize, spread: f64, seed: u64, algorithm: &str) -> Outcome {
    let x = make_blobs(&BlobSpec::random(k, per_blob, 2, spread, seed).map_err(err)?).map_err(err)?;
    let spec: ClustererSpec = algorithm.parse().map_err(err)?;
    let labels = spec.cluster(&x).map_err(err)?.labels().to_vec();
    let opts = ScoreOptions {
        features: Feature::ALL.into_iter().filter(|&f| f != Feature::Complexity).collect(),
        seed,
        stability: StabilityConfig {
            trials: 10,
            max_trials: 10,
            ..Default::default()
        },
        noise: NoiseConfig {
            trials: 10,
            ..Default::default()
        },
        ..Default::default()
    };
    let reports = score_algorithms(&x, &[&spec], &opts).map_err(err)?;
    json(&BlobScore {
        points: x.points().map(|p| [p[0], p[1]]).collect(),
        labels,
        report: reports.into_iter().next().expect("one algorithm in, one report out"),
    })
}

#[wasm_bindgen]
pub fn fit_curve(flat: &[f64]) -> Result<String, JsError> {
    fit_curve_json(flat).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ring_homogeneity(radius: f64, count: usize, jitter: f64, seed: u32) -> Result<String, JsError> {
    ring_homogeneity_json(radius, count, jitter, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn score_blobs(k: usize, per_blob: usize, spread: f64, seed: u32, algorithm: &str) -> Result<String, JsError> {
    score_blobs_json(k, per_blob, spread, seed as u64, algorithm).map_err(|e| JsError::new(&e))
}
