//! Point matrices and hard partitions over them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Label used for points an algorithm declines to place in any cluster.
pub const NOISE: i32 = -1;

/// An `N x d` matrix of finite coordinates, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    n: usize,
    dim: usize,
    feature_names: Vec<String>,
    truth: Option<Vec<i32>>,
}

impl Dataset {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map(Vec::len).unwrap_or(0);
        let mut values = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidDataset(format!(
                    "row {i} has {} coordinates, expected {dim}",
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Self::from_flat(values, dim)
    }

    pub fn from_flat(values: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDataset("dimension must be at least 1".into()));
        }
        if values.is_empty() || values.len() % dim != 0 {
            return Err(Error::InvalidDataset(format!(
                "{} values do not form rows of length {dim}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite coordinate at row {}, column {}",
                pos / dim,
                pos % dim
            )));
        }
        let n = values.len() / dim;
        Ok(Dataset {
            values,
            n,
            dim,
            feature_names: (0..dim).map(|j| format!("x{j}")).collect(),
            truth: None,
        })
    }

    pub fn with_feature_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: names.len(),
            });
        }
        self.feature_names = names;
        Ok(self)
    }

    /// Attach ground-truth labels. Labels are canonicalised: negative values
    /// become [`NOISE`], the rest are renumbered `0..m` in ascending order.
    pub fn with_truth(mut self, labels: &[i64]) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.truth = Some(Clustering::from_raw_labels(labels).labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.dim)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn truth(&self) -> Option<&[i32]> {
        self.truth.as_deref()
    }

    pub fn truth_clustering(&self) -> Option<Clustering> {
        self.truth.as_ref().map(|t| Clustering::new_unchecked(t.clone()))
    }

    /// Project onto a subset of feature columns, keeping rows and truth.
    pub fn select_features(&self, columns: &[usize]) -> Result<Dataset> {
        if columns.is_empty() {
            return Err(Error::InvalidDataset("empty feature selection".into()));
        }
        if let Some(&bad) = columns.iter().find(|&&c| c >= self.dim) {
            return Err(Error::OutOfRange(format!(
                "feature {bad} out of range for dimension {}",
                self.dim
            )));
        }
        let mut values = Vec::with_capacity(self.n * columns.len());
        for row in self.points() {
            values.extend(columns.iter().map(|&c| row[c]));
        }
        Ok(Dataset {
            values,
            n: self.n,
            dim: columns.len(),
            feature_names: columns.iter().map(|&c| self.feature_names[c].clone()).collect(),
            truth: self.truth.clone(),
        })
    }

    /// Append rows (flat, row-major) whose truth is unknown.
    pub fn append_rows(&self, extra: &[f64]) -> Result<Dataset> {
        if extra.len() % self.dim != 0 {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: extra.len() % self.dim,
            });
        }
        let added = extra.len() / self.dim;
        let mut values = self.values.clone();
        values.extend_from_slice(extra);
        let truth = self.truth.as_ref().map(|t| {
            let mut t = t.clone();
            t.extend(std::iter::repeat_n(NOISE, added));
            t
        });
        let out = Dataset {
            values,
            n: self.n + added,
            dim: self.dim,
            feature_names: self.feature_names.clone(),
            truth,
        };
        if let Some(pos) = extra.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite appended coordinate at offset {pos}"
            )));
        }
        Ok(out)
    }

    /// Per-coordinate (min, max).
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for row in self.points() {
            for (j, &v) in row.iter().enumerate() {
                lo[j] = lo[j].min(v);
                hi[j] = hi[j].max(v);
            }
        }
        (lo, hi)
    }
}

/// A hard assignment of points to clusters `0..m`, with [`NOISE`] for
/// unassigned points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    labels: Vec<i32>,
    m: usize,
}

impl Clustering {
    /// Validates that non-noise labels are exactly `0..m`.
    pub fn new(labels: Vec<i32>) -> Result<Self> {
        let mut seen = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            if l < NOISE {
                return Err(Error::InvalidClustering(format!(
                    "label {l} at point {i} is below the noise sentinel"
                )));
            }
            if l >= 0 {
                let l = l as usize;
                if l >= seen.len() {
                    seen.resize(l + 1, false);
                }
                seen[l] = true;
            }
        }
        if let Some(gap) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidClustering(format!(
                "labels are not contiguous: {gap} is unused"
            )));
        }
        Ok(Clustering { m: seen.len(), labels })
    }

    pub(crate) fn new_unchecked(labels: Vec<i32>) -> Self {
        let m = labels.iter().map(|&l| l + 1).max().unwrap_or(0).max(0) as usize;
        Clustering { labels, m }
    }

    /// Canonicalise arbitrary integer labels: negatives become noise, the
    /// remaining distinct values are renumbered in ascending order.
    pub fn from_raw_labels(raw: &[i64]) -> Self {
        let mut ids: BTreeMap<i64, i32> = raw.iter().filter(|&&l| l >= 0).map(|&l| (l, 0)).collect();
        for (next, v) in ids.values_mut().enumerate() {
            *v = next as i32;
        }
        let labels = raw.iter().map(|l| if *l < 0 { NOISE } else { ids[l] }).collect();
        Clustering { labels, m: ids.len() }
    }

    /// Renumber clusters in order of first appearance.
    pub fn from_first_appearance(raw: &[i64]) -> Self {
        let mut ids: BTreeMap<i64, i32> = BTreeMap::new();
        let labels = raw
            .iter()
            .map(|&l| {
                if l < 0 {
                    NOISE
                } else {
                    let next = ids.len() as i32;
                    *ids.entry(l).or_insert(next)
                }
            })
            .collect();
        Clustering { labels, m: ids.len() }
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n_clusters(&self) -> usize {
        self.m
    }

    pub fn is_all_noise(&self) -> bool {
        self.m == 0
    }

    pub fn n_assigned(&self) -> usize {
        self.labels.iter().filter(|&&l| l >= 0).count()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.m];
        for &l in &self.labels {
            if l >= 0 {
                sizes[l as usize] += 1;
            }
        }
        sizes
    }

    /// Member indices of every cluster, in label order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.m];
        for (i, &l) in self.labels.iter().enumerate() {
            if l >= 0 {
                out[l as usize].push(i);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_gaps_and_bad_sentinels() {
        assert!(Clustering::new(vec![0, 2]).is_err());
        assert!(Clustering::new(vec![0, -2]).is_err());
        let c = Clustering::new(vec![1, 0, -1, 1]).unwrap();
        assert_eq!(c.n_clusters(), 2);
        assert_eq!(c.sizes(), vec![1, 2]);
    }

    #[test]
    fn raw_labels_canonicalise() {
        let c = Clustering::from_raw_labels(&[7, 3, -5, 7]);
        assert_eq!(c.labels(), &[1, 0, NOISE, 1]);
        let c = Clustering::from_first_appearance(&[7, 3, -5, 7]);
        assert_eq!(c.labels(), &[0, 1, NOISE, 0]);
    }

    #[test]
    fn dataset_validation() {
        assert!(Dataset::from_flat(vec![1.0, f64::NAN], 2).is_err());
        assert!(Dataset::from_flat(vec![1.0, 2.0, 3.0], 2).is_err());
        assert!(Dataset::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        let x = Dataset::from_rows(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let y = x.select_features(&[2, 0]).unwrap();
        assert_eq!(y.point(1), &[6.0, 4.0]);
        assert_eq!(y.feature_names(), &["x2".to_string(), "x0".to_string()]);
    }

    #[test]
    fn append_marks_unknown_truth() {
        let x = Dataset::from_rows(&[vec![0.0], vec![1.0]])
            .unwrap()
            .with_truth(&[0, 1])
            .unwrap();
        let y = x.append_rows(&[0.5]).unwrap();
        assert_eq!(y.truth().unwrap(), &[0, 1, NOISE]);
        assert_eq!(y.len(), 3);
    }
}
