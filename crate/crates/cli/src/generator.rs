use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clusterscore::datagen::{make_blobs, make_rings, BlobSpec, Jitter, RingSpec};
use clusterscore::dataset::Dataset;
use clusterscore::seed::derive_seed;

const STREAM_RINGS: u64 = 0x5249_4e47;

/// A synthetic dataset description, e.g. `blobs:3x200,dim=2,seed=7` or
/// `rings:1.0:100,2.0:100,jitter=0.02`.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Blobs {
        k: usize,
        per_blob: usize,
        dim: usize,
        spread: f64,
        seed: u64,
    },
    Rings {
        rings: Vec<(f64, usize)>,
        jitter: Option<f64>,
        seed: u64,
    },
}

pub fn parse_blob_shape(s: &str) -> Result<(usize, usize)> {
    let (k, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow!("blob shape '{s}' is not KxN"))?;
    let k = k.trim().parse().with_context(|| format!("blob count in '{s}'"))?;
    let n = n.trim().parse().with_context(|| format!("points per blob in '{s}'"))?;
    Ok((k, n))
}

pub fn parse_rings(s: &str) -> Result<Vec<(f64, usize)>> {
    s.split(',')
        .map(|item| {
            let (r, n) = item
                .split_once(':')
                .ok_or_else(|| anyhow!("ring '{item}' is not RADIUS:COUNT"))?;
            Ok((
                r.trim().parse().with_context(|| format!("ring radius in '{item}'"))?,
                n.trim().parse().with_context(|| format!("ring count in '{item}'"))?,
            ))
        })
        .collect()
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Dataset> {
        Ok(match self {
            GeneratorSpec::Blobs {
                k,
                per_blob,
                dim,
                spread,
                seed,
            } => make_blobs(&BlobSpec::random(*k, *per_blob, *dim, *spread, *seed)?)?,
            GeneratorSpec::Rings { rings, jitter, seed } => {
                let specs: Vec<RingSpec> = rings
                    .iter()
                    .enumerate()
                    .map(|(i, &(radius, count))| RingSpec {
                        jitter: jitter.map_or(Jitter::Even, Jitter::Gaussian),
                        seed: derive_seed(*seed, STREAM_RINGS, i as u64),
                        ..RingSpec::even(radius, count)
                    })
                    .collect();
                make_rings(&specs)?
            }
        })
    }
}

impl FromStr for GeneratorSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| anyhow!("generator '{s}' should start with blobs: or rings:"))?;
        let mut shape = Vec::new();
        let mut opts = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            match item.split_once('=') {
                Some((k, v)) => opts.push((k.trim().to_ascii_lowercase(), v.trim())),
                None => shape.push(item),
            }
        }
        let mut take = |key: &str| opts.iter().position(|(k, _)| k == key).map(|p| opts.remove(p).1);
        let seed = take("seed")
            .map(str::parse)
            .transpose()
            .context("generator seed")?
            .unwrap_or(0);
        let spec = match kind.trim().to_ascii_lowercase().as_str() {
            "blobs" => {
                let [one] = shape[..] else {
                    bail!("blobs generator needs exactly one KxN shape");
                };
                let (k, per_blob) = parse_blob_shape(one)?;
                GeneratorSpec::Blobs {
                    k,
                    per_blob,
                    dim: take("dim")
                        .map(str::parse)
                        .transpose()
                        .context("generator dim")?
                        .unwrap_or(2),
                    spread: take("spread")
                        .map(str::parse)
                        .transpose()
                        .context("generator spread")?
                        .unwrap_or(1.0),
                    seed,
                }
            }
            "rings" => {
                if shape.is_empty() {
                    bail!("rings generator needs at least one RADIUS:COUNT");
                }
                GeneratorSpec::Rings {
                    rings: parse_rings(&shape.join(","))?,
                    jitter: take("jitter").map(str::parse).transpose().context("generator jitter")?,
                    seed,
                }
            }
            other => bail!("unknown generator '{other}'"),
        };
        if let Some((k, _)) = opts.first() {
            bail!("unknown generator option '{k}'");
        }
        Ok(spec)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Blobs {
                k,
                per_blob,
                dim,
                spread,
                seed,
            } => write!(f, "blobs:{k}x{per_blob},dim={dim},spread={spread},seed={seed}"),
            GeneratorSpec::Rings { rings, jitter, seed } => {
                let items: Vec<String> = rings.iter().map(|(r, n)| format!("{r}:{n}")).collect();
                write!(f, "rings:{}", items.join(","))?;
                if let Some(j) = jitter {
                    write!(f, ",jitter={j}")?;
                }
                write!(f, ",seed={seed}")
            }
        }
    }
}
