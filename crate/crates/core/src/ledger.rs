//! Per-feature scoring parameters and the decathlon-style point formula
//! `alpha * |raw - beta| ^ weight`.
//!
//! Several default parameters depend on the data being scored (the cluster
//! count, `G_max`, `D_max`, the largest per-cluster shape value). Those are
//! held as [`Param::Derived`] and resolved by the scorer; any parameter can be
//! pinned to a number through an override document.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::ConfidenceInterval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Feature {
    Stability,
    Noise,
    Complexity,
    Homogeneity,
    Distance,
    Covolume,
    Shape,
}

impl Feature {
    pub const ALL: [Feature; 7] = [
        Feature::Stability,
        Feature::Noise,
        Feature::Complexity,
        Feature::Homogeneity,
        Feature::Distance,
        Feature::Covolume,
        Feature::Shape,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Stability => "stability",
            Feature::Noise => "noise",
            Feature::Complexity => "complexity",
            Feature::Homogeneity => "homogeneity",
            Feature::Distance => "distance",
            Feature::Covolume => "covolume",
            Feature::Shape => "shape",
        }
    }

    /// Row label used in the rendered score table.
    pub fn title(self) -> &'static str {
        match self {
            Feature::Stability => "Stability",
            Feature::Noise => "Noise sensitivity",
            Feature::Complexity => "Complexity",
            Feature::Homogeneity => "Homogeneity",
            Feature::Distance => "Distance",
            Feature::Covolume => "Covolume",
            Feature::Shape => "Shape",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Config(format!("unknown feature '{s}'")))
    }
}

/// Concrete parameters used to score one feature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub feature: Feature,
    pub alpha: f64,
    pub beta: f64,
    pub weight: f64,
}

pub fn scale_score(raw: f64, entry: &LedgerEntry) -> f64 {
    entry.alpha * (raw - entry.beta).abs().powf(entry.weight)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Value(f64),
    /// Computed from the dataset and clustering at scoring time.
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerRule {
    pub alpha: Param,
    pub beta: Param,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ledger {
    rules: [LedgerRule; 7],
}

impl Default for Ledger {
    fn default() -> Self {
        Self::table1()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Override {
    alpha: Option<f64>,
    beta: Option<f64>,
    weight: Option<f64>,
}

impl Ledger {
    /// The reference parameters: one row per feature.
    pub fn table1() -> Self {
        use Param::{Derived, Value};
        let rule = |alpha, beta, weight| LedgerRule { alpha, beta, weight };
        Ledger {
            rules: [
                rule(Value(100.0 / std::f64::consts::SQRT_2), Value(0.5), 0.5),
                rule(Derived, Derived, 1.25),
                rule(Value(50.0), Value(4.0), 2.0),
                rule(Derived, Derived, 1.1),
                rule(Derived, Value(0.0), 1.0),
                rule(Value(100.0), Value(0.0), 2.0),
                rule(Derived, Derived, 2.0),
            ],
        }
    }

    pub fn rule(&self, feature: Feature) -> &LedgerRule {
        &self.rules[feature.index()]
    }

    /// Resolve the rule for `feature`, filling derived slots with the supplied values.
    pub fn resolve(&self, feature: Feature, derived_alpha: f64, derived_beta: f64) -> LedgerEntry {
        let rule = self.rule(feature);
        let pick = |p: Param, derived: f64| match p {
            Param::Value(v) => v,
            Param::Derived => derived,
        };
        LedgerEntry {
            feature,
            alpha: pick(rule.alpha, derived_alpha),
            beta: pick(rule.beta, derived_beta),
            weight: rule.weight,
        }
    }

    /// Resolve a rule whose defaults are all fixed numbers.
    pub fn fixed(&self, feature: Feature) -> LedgerEntry {
        self.resolve(feature, f64::NAN, f64::NAN)
    }

    pub fn is_overridden(&self, feature: Feature) -> bool {
        self.rule(feature) != Ledger::table1().rule(feature)
    }

    /// Apply a JSON override document `{"feature": {"alpha": .., "beta": .., "weight": ..}}`.
    /// Every key inside a feature object is optional.
    pub fn with_overrides_json(&self, json: &str) -> Result<Ledger> {
        let doc: BTreeMap<String, Override> = serde_json::from_str(json)?;
        let mut out = self.clone();
        for (name, o) in doc {
            let feature: Feature = name.parse()?;
            let rule = &mut out.rules[feature.index()];
            if let Some(a) = o.alpha {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(Error::Config(format!("{feature}: alpha must be positive")));
                }
                rule.alpha = Param::Value(a);
            }
            if let Some(b) = o.beta {
                if !b.is_finite() {
                    return Err(Error::Config(format!("{feature}: beta must be finite")));
                }
                rule.beta = Param::Value(b);
            }
            if let Some(w) = o.weight {
                if !(w > 0.0 && w.is_finite()) {
                    return Err(Error::Config(format!("{feature}: weight must be positive")));
                }
                rule.weight = w;
            }
        }
        Ok(out)
    }

    pub fn with_overrides_file(&self, path: &Path) -> Result<Ledger> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::from(e).context(format!("reading ledger {}", path.display())))?;
        self.with_overrides_json(&text)
    }

    /// Human-readable alpha, symbolic for derived defaults.
    pub fn alpha_label(&self, feature: Feature) -> String {
        match self.rule(feature).alpha {
            Param::Value(_) if feature == Feature::Stability && !self.is_overridden(feature) => {
                "100/sqrt(2)".to_string()
            }
            Param::Value(v) => format_number(v),
            Param::Derived => match feature {
                Feature::Noise => "100/ln(dC_X)",
                Feature::Homogeneity => "100/G_max",
                Feature::Distance => "100/(1+D_max)",
                Feature::Shape => "1/max_i Shape(C_i)",
                _ => "derived",
            }
            .to_string(),
        }
    }

    pub fn beta_label(&self, feature: Feature) -> String {
        match self.rule(feature).beta {
            Param::Value(v) => format_number(v),
            Param::Derived => match feature {
                Feature::Noise => "ln(dC_X)",
                Feature::Homogeneity => "G_max",
                Feature::Shape => "8*pi*|C_X|",
                _ => "derived",
            }
            .to_string(),
        }
    }
}

fn format_number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{}", crate::scoring::round_sig(v, 6))
    }
}

/// One scored feature: the measured value, its interval, and its points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureScore {
    pub feature: Feature,
    pub raw: f64,
    pub ci: Option<ConfidenceInterval>,
    pub entry: LedgerEntry,
    pub points: f64,
    /// Set when the score was computed under a documented degenerate rule.
    pub flag: Option<String>,
}

impl FeatureScore {
    pub fn new(raw: f64, ci: Option<ConfidenceInterval>, entry: LedgerEntry) -> Self {
        FeatureScore {
            feature: entry.feature,
            raw,
            ci,
            entry,
            points: scale_score(raw, &entry),
            flag: None,
        }
    }

    pub fn flagged(mut self, note: impl Into<String>) -> Self {
        self.flag = Some(note.into());
        self
    }
}
