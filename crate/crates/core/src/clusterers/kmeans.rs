use rand::Rng;

use super::nearest;
use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};
use crate::geometry::dist2;

/// Lloyd's algorithm from k-means++ seeds. Stops when assignments stop
/// changing or after `max_iter` rounds.
pub fn kmeans(x: &Dataset, k: usize, max_iter: usize, seed: u64) -> Result<Clustering> {
    let n = x.len();
    if k == 0 || k > n {
        return Err(Error::InvalidClustering(format!("k = {k} out of range for {n} points")));
    }
    let mut rng = crate::seed::stream_rng(seed, crate::seed::STREAM_CLUSTERER, 0);
    let mut centroids = plus_plus(x, k, &mut rng);
    let mut assign = vec![usize::MAX; n];
    for _ in 0..max_iter {
        let mut changed = false;
        let mut far = vec![0.0; n];
        for i in 0..n {
            let (c, d) = nearest(x.point(i), &centroids);
            far[i] = d;
            if assign[i] != c {
                assign[i] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let mut sums = vec![vec![0.0; x.dim()]; k];
        let mut counts = vec![0usize; k];
        for i in 0..n {
            counts[assign[i]] += 1;
            for (s, v) in sums[assign[i]].iter_mut().zip(x.point(i)) {
                *s += v;
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                // reseed an empty cluster at the point worst served by its centroid
                let mut worst: Option<usize> = None;
                for i in 0..n {
                    if counts[assign[i]] > 1 && worst.is_none_or(|w| far[i] > far[w]) {
                        worst = Some(i);
                    }
                }
                let Some(worst) = worst else { continue };
                counts[assign[worst]] -= 1;
                for (s, v) in sums[assign[worst]].iter_mut().zip(x.point(worst)) {
                    *s -= v;
                }
                assign[worst] = c;
                far[worst] = 0.0;
                counts[c] = 1;
                sums[c] = x.point(worst).to_vec();
            }
        }
        for c in 0..k {
            centroids[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
        }
    }
    let raw: Vec<i64> = assign.iter().map(|&a| a as i64).collect();
    Ok(Clustering::from_raw_labels(&raw))
}

fn plus_plus(x: &Dataset, k: usize, rng: &mut crate::seed::Rng) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut centroids = vec![x.point(rng.random_range(0..n)).to_vec()];
    let mut d2: Vec<f64> = (0..n).map(|i| dist2(x.point(i), &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut r = rng.random_range(0.0..total);
            let mut chosen = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if r < w {
                    chosen = i;
                    break;
                }
                r -= w;
            }
            chosen
        } else {
            // every point coincides with a centroid already
            rng.random_range(0..n)
        };
        let c = x.point(pick).to_vec();
        for (i, d) in d2.iter_mut().enumerate() {
            *d = d.min(dist2(x.point(i), &c));
        }
        centroids.push(c);
    }
    centroids
}
