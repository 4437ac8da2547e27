use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use clusterscore::clusterers::ClustererSpec;
use clusterscore::datagen::{load_csv, CsvOptions};
use clusterscore::dataset::Dataset;
use clusterscore::ledger::{Feature, Ledger};
use clusterscore::performance::CostClock;
use clusterscore::runner::ScoreOptions;
use clusterscore::scoring::Format;

use crate::args::ScoreArgs;
use crate::generator::GeneratorSpec;

/// The JSON form of the `score` flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub data: Option<PathBuf>,
    pub generate: Option<String>,
    #[serde(default)]
    pub algorithms: Vec<String>,
    pub features: Option<Vec<String>>,
    pub ledger: Option<PathBuf>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub parallel: Option<usize>,
    #[serde(default)]
    pub no_header: bool,
    #[serde(default)]
    pub no_truth: bool,
    pub complexity_clock: Option<String>,
    pub timing_sizes: Option<Vec<usize>>,
    pub timing_reps: Option<usize>,
    pub k_mreach: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Overlay command-line flags.
    pub fn merge(mut self, a: &ScoreArgs) -> Result<Self> {
        if a.data.is_some() || a.generate.is_some() {
            self.data = a.data.clone();
            self.generate = a.generate.clone();
        }
        if !a.algorithms.is_empty() {
            self.algorithms = a.algorithms.clone();
        }
        if let Some(f) = &a.features {
            self.features = Some(f.split(',').map(|s| s.trim().to_string()).collect());
        }
        if let Some(s) = &a.timing_sizes {
            let sizes = s
                .split(',')
                .map(|v| v.trim().parse().with_context(|| format!("timing size '{v}'")))
                .collect::<Result<Vec<usize>>>()?;
            self.timing_sizes = Some(sizes);
        }
        macro_rules! overlay {
            ($($field:ident),*) => {$(
                if a.$field.is_some() {
                    self.$field = a.$field.clone();
                }
            )*};
        }
        overlay!(
            ledger,
            seed,
            trials,
            format,
            out,
            parallel,
            complexity_clock,
            timing_reps,
            k_mreach
        );
        self.no_header |= a.no_header;
        self.no_truth |= a.no_truth;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Csv { path: PathBuf, options: CsvOptions },
    Generated(GeneratorSpec),
}

impl DataSource {
    pub fn load(&self) -> Result<Dataset> {
        match self {
            DataSource::Csv { path, options } => Ok(load_csv(path, *options)?),
            DataSource::Generated(g) => g.build(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            DataSource::Csv { path, .. } => path.display().to_string(),
            DataSource::Generated(g) => g.to_string(),
        }
    }
}

/// A validated run.
#[derive(Debug, Clone)]
pub struct Run {
    pub source: DataSource,
    pub algorithms: Vec<ClustererSpec>,
    pub options: ScoreOptions,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub header: bool,
}

fn parse_features(names: &[String]) -> Result<Vec<Feature>> {
    if names.len() == 1 && names[0].eq_ignore_ascii_case("all") {
        return Ok(Feature::ALL.to_vec());
    }
    let features = names
        .iter()
        .filter(|n| !n.is_empty())
        .map(|n| n.parse::<Feature>().map_err(anyhow::Error::from))
        .collect::<Result<Vec<_>>>()?;
    Ok(features)
}

impl TryFrom<RunConfig> for Run {
    type Error = anyhow::Error;

    fn try_from(c: RunConfig) -> Result<Self> {
        let source = match (c.data, c.generate) {
            (Some(_), Some(_)) => bail!("give either a data file or a generator, not both"),
            (None, None) => bail!("no dataset: pass --data FILE or --generate SPEC"),
            (Some(path), None) => DataSource::Csv {
                path,
                options: CsvOptions {
                    has_header: !c.no_header,
                    truth_column: !c.no_truth,
                },
            },
            (None, Some(g)) => DataSource::Generated(g.parse()?),
        };
        if c.algorithms.is_empty() {
            bail!("no algorithm: pass at least one --algo");
        }
        let algorithms = c
            .algorithms
            .iter()
            .map(|a| a.parse::<ClustererSpec>().with_context(|| format!("algorithm '{a}'")))
            .collect::<Result<Vec<_>>>()?;

        let mut options = ScoreOptions::default();
        if let Some(names) = &c.features {
            options.features = parse_features(names)?;
        }
        if options.features.is_empty() {
            bail!("no feature selected");
        }
        if let Some(path) = &c.ledger {
            options.ledger = Ledger::table1().with_overrides_file(path)?;
        }
        options.seed = c.seed.unwrap_or(0);
        if let Some(t) = c.trials {
            if t < 2 {
                bail!("--trials must be at least 2");
            }
            options.stability.trials = t;
            options.stability.max_trials = options.stability.max_trials.max(t);
            options.noise.trials = t;
        }
        options.threads = c.parallel.unwrap_or(1);
        if options.threads == 0 {
            bail!("--parallel must be at least 1");
        }
        if let Some(clock) = &c.complexity_clock {
            options.timing.clock = match clock.to_ascii_lowercase().as_str() {
                "distances" => CostClock::Distances,
                "wall" => CostClock::Wall,
                other => bail!("unknown complexity clock '{other}' (distances, wall)"),
            };
        }
        if let Some(sizes) = c.timing_sizes {
            options.timing.sizes = sizes;
        }
        if let Some(reps) = c.timing_reps {
            options.timing.reps = reps;
        }
        if let Some(k) = c.k_mreach {
            options.k_mreach = k;
        }
        let format = c.format.as_deref().unwrap_or("text").parse()?;
        Ok(Run {
            source,
            algorithms,
            options,
            format,
            out: c.out,
            header: !c.no_header,
        })
    }
}
