use super::nearest;
use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};

/// Ground-truth labels; points without a truth label (for example injected
/// noise) go to the nearest truth centroid.
pub fn truth_oracle(x: &Dataset) -> Result<Clustering> {
    let truth = x
        .truth()
        .ok_or_else(|| Error::InvalidDataset("truth oracle needs ground-truth labels".into()))?;
    let m = truth.iter().map(|&l| l + 1).max().unwrap_or(0).max(0) as usize;
    if m == 0 {
        return Err(Error::EmptyPartition);
    }
    let mut sums = vec![vec![0.0; x.dim()]; m];
    let mut counts = vec![0usize; m];
    for (i, &l) in truth.iter().enumerate() {
        if l >= 0 {
            counts[l as usize] += 1;
            for (s, v) in sums[l as usize].iter_mut().zip(x.point(i)) {
                *s += v;
            }
        }
    }
    let centroids: Vec<Vec<f64>> = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| s.iter().map(|v| v / c as f64).collect())
        .collect();
    let labels = truth
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            if l >= 0 {
                l
            } else {
                nearest(x.point(i), &centroids).0 as i32
            }
        })
        .collect();
    Clustering::new(labels)
}
