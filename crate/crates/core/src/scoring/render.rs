use std::fmt::Write as _;
use std::str::FromStr;

use super::{ReportFile, ScoreTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format '{s}' (text, csv, json)"))),
        }
    }
}

fn num(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.3}")).unwrap_or_else(|| "n/a".to_string())
}

fn csv_num(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 input")
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, v)| format!("{v:<w$}", w = widths[c]))
            .collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

pub fn render_table(table: &ScoreTable, format: Format) -> String {
    let header = [
        "feature",
        "alpha",
        "beta",
        "w",
        "best",
        "worst",
        "best_points",
        "worst_points",
        "average",
    ];
    let row_cells = |r: &super::TableRow| -> Vec<String> {
        let name = |c: &Option<super::TableCell>| c.as_ref().map(|c| c.algorithm.clone());
        let pts = |c: &Option<super::TableCell>| c.as_ref().map(|c| c.points);
        vec![
            r.label.clone(),
            r.alpha.clone(),
            r.beta.clone(),
            r.weight.clone(),
            name(&r.best).unwrap_or_else(|| "n/a".into()),
            name(&r.worst).unwrap_or_else(|| "n/a".into()),
            num(pts(&r.best)),
            num(pts(&r.worst)),
            num(r.average),
        ]
    };
    match format {
        Format::Text => {
            let mut rows = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
            rows.extend(table.rows.iter().map(row_cells));
            let mut s = aligned(&rows);
            for w in &table.warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).expect("in-memory write");
            for r in &table.rows {
                let mut cells = row_cells(r);
                for (i, v) in [
                    r.best.as_ref().map(|c| c.points),
                    r.worst.as_ref().map(|c| c.points),
                    r.average,
                ]
                .into_iter()
                .enumerate()
                {
                    cells[6 + i] = csv_num(v);
                }
                for c in cells.iter_mut().take(6).skip(4) {
                    if c == "n/a" {
                        c.clear();
                    }
                }
                w.write_record(&cells).expect("in-memory write");
            }
            finish_csv(w)
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(table).expect("table serialises");
            s.push('\n');
            s
        }
    }
}

/// Per-algorithm detail followed by the summary table.
pub fn render_report_text(file: &ReportFile, table: &ScoreTable) -> String {
    let mut s = String::new();
    let d = &file.dataset;
    let _ = writeln!(
        s,
        "dataset {} (n={}, d={}, truth clusters={}) seed {}",
        d.source,
        d.n,
        d.dim,
        d.truth_clusters.map(|m| m.to_string()).unwrap_or_else(|| "none".into()),
        file.seed
    );
    if !file.comparable {
        s.push_str("NOTE: algorithms were scored on different feature sets; totals are not comparable\n");
    }
    for r in &file.reports {
        let _ = writeln!(
            s,
            "\n{}  total {}{}",
            r.algorithm,
            num(r.total),
            if r.complete { "" } else { " (incomplete)" }
        );
        let mut rows = vec![["feature", "status", "raw", "ci", "alpha", "beta", "w", "points"]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()];
        for f in &r.features {
            let ci =
                f.ci.as_ref()
                    .map(|c| format!("+-{} (n={}, {:?})", num(c.half_width), c.n, c.statistic).to_lowercase())
                    .unwrap_or_default();
            rows.push(vec![
                f.name.to_string(),
                format!("{:?}", f.status).to_lowercase(),
                num(f.raw),
                ci,
                num(f.alpha),
                num(f.beta),
                num(f.weight),
                num(f.points),
            ]);
        }
        for line in aligned(&rows).lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    s.push('\n');
    s.push_str(&render_table(table, Format::Text));
    s
}

/// One row per (algorithm, feature).
pub fn render_report_csv(file: &ReportFile, header: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if header {
        w.write_record([
            "algorithm",
            "feature",
            "status",
            "raw",
            "ci_mean",
            "ci_half_width",
            "ci_n",
            "alpha",
            "beta",
            "weight",
            "points",
            "note",
        ])
        .expect("in-memory write");
    }
    for r in &file.reports {
        for f in &r.features {
            let ci = f.ci.as_ref();
            w.write_record([
                r.algorithm.clone(),
                f.name.to_string(),
                format!("{:?}", f.status).to_lowercase(),
                csv_num(f.raw),
                csv_num(ci.and_then(|c| c.mean)),
                csv_num(ci.and_then(|c| c.half_width)),
                ci.map(|c| c.n.to_string()).unwrap_or_default(),
                csv_num(f.alpha),
                csv_num(f.beta),
                csv_num(f.weight),
                csv_num(f.points),
                f.note.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        w.write_record([
            r.algorithm.as_str(),
            "total",
            if r.complete { "ok" } else { "incomplete" },
            "",
            "",
            "",
            "",
            "",
            "",
            "",
            &csv_num(r.total),
            "",
        ])
        .expect("in-memory write");
    }
    finish_csv(w)
}
