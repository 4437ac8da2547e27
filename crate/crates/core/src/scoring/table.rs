use serde::{Deserialize, Serialize};

use super::{out, AlgorithmReport};
use crate::ledger::{Feature, Ledger};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub algorithm: String,
    pub points: f64,
}

/// One feature row: ledger parameters, then best/worst/average points.
/// The final row of a table (feature `None`) holds the totals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub feature: Option<Feature>,
    pub label: String,
    pub alpha: String,
    pub beta: String,
    pub weight: String,
    pub best: Option<TableCell>,
    pub worst: Option<TableCell>,
    pub average: Option<f64>,
    /// Algorithms that contributed to this row.
    pub scored: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    pub algorithms: Vec<String>,
    pub rows: Vec<TableRow>,
    pub warnings: Vec<String>,
}

/// Highest and lowest points with ties resolved to the lexicographically
/// smallest algorithm name, plus the mean.
fn summarise(cells: &[(&str, f64)]) -> (Option<TableCell>, Option<TableCell>, Option<f64>) {
    if cells.is_empty() {
        return (None, None, None);
    }
    let mut best = cells[0];
    let mut worst = cells[0];
    for &c in &cells[1..] {
        if c.1 > best.1 || (c.1 == best.1 && c.0 < best.0) {
            best = c;
        }
        if c.1 < worst.1 || (c.1 == worst.1 && c.0 < worst.0) {
            worst = c;
        }
    }
    let cell = |(a, p): (&str, f64)| TableCell {
        algorithm: a.to_string(),
        points: p,
    };
    // sum in name order so the mean does not depend on report order
    let mut sorted = cells.to_vec();
    sorted.sort_by(|a, b| a.0.cmp(b.0).then(a.1.total_cmp(&b.1)));
    let mean = sorted.iter().map(|c| c.1).sum::<f64>() / cells.len() as f64;
    (Some(cell(best)), Some(cell(worst)), out(mean))
}

pub fn build_table(reports: &[AlgorithmReport], ledger: &Ledger) -> ScoreTable {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for f in Feature::ALL {
        let cells: Vec<(&str, f64)> = reports
            .iter()
            .filter_map(|r| {
                let row = r.feature(f)?;
                row.is_present()
                    .then(|| (r.algorithm.as_str(), row.points.unwrap_or(0.0)))
            })
            .collect();
        for r in reports {
            if let Some(row) = r.feature(f) {
                if let Some(note) = &row.note {
                    warnings.push(format!("{} / {}: {}", r.algorithm, f, note));
                }
            }
        }
        let (best, worst, average) = summarise(&cells);
        rows.push(TableRow {
            feature: Some(f),
            label: f.title().to_string(),
            alpha: ledger.alpha_label(f),
            beta: ledger.beta_label(f),
            weight: format!("{}", ledger.rule(f).weight),
            best,
            worst,
            average,
            scored: cells.len(),
        });
    }
    let totals: Vec<(&str, f64)> = reports
        .iter()
        .filter_map(|r| r.total.map(|t| (r.algorithm.as_str(), t)))
        .collect();
    let (best, worst, average) = summarise(&totals);
    rows.push(TableRow {
        feature: None,
        label: "Total".to_string(),
        alpha: String::new(),
        beta: String::new(),
        weight: String::new(),
        best,
        worst,
        average,
        scored: totals.len(),
    });
    let comparable = reports
        .windows(2)
        .all(|w| w[0].present_features() == w[1].present_features());
    if !comparable {
        warnings.push("totals cover different feature sets and are not comparable".to_string());
    }
    ScoreTable {
        algorithms: reports.iter().map(|r| r.algorithm.clone()).collect(),
        rows,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::FeatureScore;
    use crate::scoring::{aggregate, FeatureOutcome};

    fn report(name: &str, covolume_raw: f64) -> AlgorithmReport {
        let ledger = Ledger::table1();
        let s = FeatureScore::new(covolume_raw, None, ledger.fixed(Feature::Covolume));
        aggregate(name, &[FeatureOutcome::Scored(s)]).unwrap()
    }

    #[test]
    fn best_worst_average() {
        let reports = [report("b", 0.5), report("a", 0.1), report("c", 0.5)];
        let t = build_table(&reports, &Ledger::table1());
        let row = &t.rows[Feature::Covolume as usize];
        // tie between b and c at 25 points resolves to b
        assert_eq!(row.best.as_ref().unwrap().algorithm, "b");
        assert_eq!(row.worst.as_ref().unwrap().algorithm, "a");
        assert!((row.average.unwrap() - 17.0).abs() < 1e-9);
        assert_eq!(row.scored, 3);
        let empty = &t.rows[Feature::Shape as usize];
        assert!(empty.best.is_none() && empty.average.is_none());
        assert_eq!(t.rows.last().unwrap().label, "Total");
        assert!(t.warnings.is_empty());
    }

    #[test]
    fn order_of_reports_is_irrelevant() {
        let mut reports = vec![report("x", 0.2), report("y", 0.9), report("z", 0.9)];
        let t = build_table(&reports, &Ledger::table1());
        reports.reverse();
        let u = build_table(&reports, &Ledger::table1());
        assert_eq!(t.rows, u.rows);
    }
}
