//! Synthetic ground-truth datasets, noise batches and CSV I/O.

use std::io::{Read, Write};
use std::path::Path;

use rand::Rng as _;
use rand_distr::{Distribution, Normal};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::seed;

/// Isotropic Gaussian blobs.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobSpec {
    pub centers: Vec<Vec<f64>>,
    pub counts: Vec<usize>,
    pub spreads: Vec<f64>,
    pub seed: u64,
}

impl BlobSpec {
    /// `k` blobs of `per_blob` points with centres drawn uniformly from
    /// `[-10, 10]^dim`, rejecting centres closer than `6 * spread` to an
    /// earlier one.
    pub fn random(k: usize, per_blob: usize, dim: usize, spread: f64, seed: u64) -> Result<Self> {
        if k == 0 || dim == 0 {
            return Err(Error::Config("blob count and dimension must be positive".into()));
        }
        let mut rng = seed::rng(seed);
        let min_gap = 6.0 * spread;
        let mut centers: Vec<Vec<f64>> = Vec::with_capacity(k);
        let mut attempts = 0;
        while centers.len() < k {
            let c: Vec<f64> = (0..dim).map(|_| rng.random_range(-10.0..10.0)).collect();
            attempts += 1;
            let far = centers
                .iter()
                .all(|o| o.iter().zip(&c).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt() >= min_gap);
            if far || attempts > 10_000 {
                centers.push(c);
            }
        }
        Ok(BlobSpec {
            centers,
            counts: vec![per_blob; k],
            spreads: vec![spread; k],
            seed,
        })
    }

    pub fn validate(&self) -> Result<usize> {
        let dim = self
            .centers
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Config("blob spec has no centres".into()))?;
        if let Some(c) = self.centers.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.len(),
            });
        }
        if self.counts.len() != self.centers.len() || self.spreads.len() != self.centers.len() {
            return Err(Error::Config(
                "blob spec needs one count and one spread per centre".into(),
            ));
        }
        if self.counts.contains(&0) {
            return Err(Error::Config("blob counts must be at least 1".into()));
        }
        if self.spreads.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
            return Err(Error::Config("blob spreads must be positive".into()));
        }
        Ok(dim)
    }

    /// Same centres and spreads, `n` points split in proportion to the counts.
    pub fn resized(&self, n: usize, seed: u64) -> BlobSpec {
        let total: usize = self.counts.iter().sum();
        let mut counts: Vec<usize> = self.counts.iter().map(|c| c * n / total).collect();
        let mut short = n - counts.iter().sum::<usize>();
        for c in counts.iter_mut() {
            if short == 0 {
                break;
            }
            *c += 1;
            short -= 1;
        }
        for c in counts.iter_mut() {
            *c = (*c).max(1);
        }
        BlobSpec {
            centers: self.centers.clone(),
            counts,
            spreads: self.spreads.clone(),
            seed,
        }
    }
}

pub fn make_blobs(spec: &BlobSpec) -> Result<Dataset> {
    let dim = spec.validate()?;
    let mut rng = seed::rng(spec.seed);
    let total: usize = spec.counts.iter().sum();
    let mut values = Vec::with_capacity(total * dim);
    let mut truth = Vec::with_capacity(total);
    for (b, ((center, &count), &spread)) in spec.centers.iter().zip(&spec.counts).zip(&spec.spreads).enumerate() {
        let normal = Normal::new(0.0, spread).map_err(|e| Error::Config(e.to_string()))?;
        for _ in 0..count {
            values.extend(center.iter().map(|c| c + normal.sample(&mut rng)));
            truth.push(b as i64);
        }
    }
    Dataset::from_flat(values, dim)?.with_truth(&truth)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Jitter {
    Even,
    /// Gaussian angular jitter with the given standard deviation (radians).
    Gaussian(f64),
}

/// Points on a circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingSpec {
    pub radius: f64,
    pub count: usize,
    pub jitter: Jitter,
    pub center: [f64; 2],
    pub seed: u64,
}

impl RingSpec {
    pub fn even(radius: f64, count: usize) -> Self {
        RingSpec {
            radius,
            count,
            jitter: Jitter::Even,
            center: [0.0, 0.0],
            seed: 0,
        }
    }
}

pub fn make_rings(specs: &[RingSpec]) -> Result<Dataset> {
    let mut values = Vec::new();
    let mut truth = Vec::new();
    for (r, spec) in specs.iter().enumerate() {
        if !(spec.radius > 0.0) || spec.count < 3 {
            return Err(Error::Config(format!(
                "ring {r}: radius must be positive and count at least 3"
            )));
        }
        let mut rng = seed::rng(spec.seed);
        let noise = match spec.jitter {
            Jitter::Even => None,
            Jitter::Gaussian(sigma) => Some(Normal::new(0.0, sigma).map_err(|e| Error::Config(e.to_string()))?),
        };
        for j in 0..spec.count {
            let mut theta = std::f64::consts::TAU * j as f64 / spec.count as f64;
            if let Some(n) = &noise {
                theta += n.sample(&mut rng);
            }
            values.push(spec.center[0] + spec.radius * theta.cos());
            values.push(spec.center[1] + spec.radius * theta.sin());
            truth.push(r as i64);
        }
    }
    Dataset::from_flat(values, 2)?.with_truth(&truth)
}

/// Noise points to be appended to a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseBatch {
    pub points: Vec<f64>,
    pub dim: usize,
}

impl NoiseBatch {
    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }
}

/// `q` points uniform over the axis-aligned bounding box of `x`.
pub fn sample_noise(x: &Dataset, q: usize, seed: u64) -> Result<NoiseBatch> {
    if q == 0 {
        return Err(Error::Config("noise count q must be at least 1".into()));
    }
    let (lo, hi) = x.bounding_box();
    if lo.iter().zip(&hi).all(|(l, h)| l == h) {
        return Err(Error::Degenerate(
            "bounding box has zero extent in every coordinate".into(),
        ));
    }
    let mut rng = seed::rng(seed);
    let mut points = Vec::with_capacity(q * x.dim());
    for _ in 0..q {
        for (l, h) in lo.iter().zip(&hi) {
            points.push(if l < h { rng.random_range(*l..=*h) } else { *l });
        }
    }
    Ok(NoiseBatch { points, dim: x.dim() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsvOptions {
    pub has_header: bool,
    /// Treat the last column as an integer ground-truth label.
    pub truth_column: bool,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            has_header: true,
            truth_column: true,
        }
    }
}

pub fn read_csv<R: Read>(reader: R, opts: CsvOptions) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(opts.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Option<Vec<String>> = if opts.has_header {
        Some(rdr.headers()?.iter().map(str::to_string).collect())
    } else {
        None
    };
    let mut width: Option<usize> = header.as_ref().map(Vec::len);
    let mut values = Vec::new();
    let mut truth = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let row = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        match width {
            None => width = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(Error::Csv {
                    row,
                    column: record.len().min(w) + 1,
                    message: format!("expected {w} fields, found {}", record.len()),
                });
            }
            _ => {}
        }
        let features = if opts.truth_column {
            record.len() - 1
        } else {
            record.len()
        };
        for (j, cell) in record.iter().enumerate() {
            if j < features {
                let v: f64 = cell.parse().map_err(|_| Error::Csv {
                    row,
                    column: j + 1,
                    message: format!("'{cell}' is not a number"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Csv {
                        row,
                        column: j + 1,
                        message: format!("'{cell}' is not finite"),
                    });
                }
                values.push(v);
            } else {
                let l: i64 = cell.parse().map_err(|_| Error::Csv {
                    row,
                    column: j + 1,
                    message: format!("'{cell}' is not an integer label"),
                })?;
                truth.push(l);
            }
        }
    }
    let width = width.ok_or_else(|| Error::InvalidDataset("no data rows".into()))?;
    let dim = if opts.truth_column {
        width.saturating_sub(1)
    } else {
        width
    };
    if dim == 0 {
        return Err(Error::InvalidDataset("no feature columns".into()));
    }
    if values.is_empty() {
        return Err(Error::InvalidDataset("no data rows".into()));
    }
    let mut x = Dataset::from_flat(values, dim)?;
    if let Some(h) = header {
        x = x.with_feature_names(h.into_iter().take(dim).collect())?;
    }
    if opts.truth_column {
        x = x.with_truth(&truth)?;
    }
    Ok(x)
}

pub fn load_csv(path: &Path, opts: CsvOptions) -> Result<Dataset> {
    let file = std::fs::File::open(path).map_err(|e| Error::from(e).context(format!("opening {}", path.display())))?;
    read_csv(std::io::BufReader::new(file), opts).map_err(|e| e.context(format!("reading {}", path.display())))
}

/// Header row, then one row per point; a `truth` column is appended when the
/// dataset carries ground truth.
pub fn write_csv<W: Write>(x: &Dataset, writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = x.feature_names().to_vec();
    if x.truth().is_some() {
        header.push("truth".into());
    }
    wtr.write_record(&header)?;
    for (i, row) in x.points().enumerate() {
        let mut fields: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        if let Some(t) = x.truth() {
            fields.push(t[i].to_string());
        }
        wtr.write_record(&fields)?;
    }
    wtr.flush()?;
    Ok(())
}
