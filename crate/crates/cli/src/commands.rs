use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};

use clusterscore::clusterers::Clusterer;
use clusterscore::datagen::write_csv;
use clusterscore::ledger::Ledger;
use clusterscore::runner::score_algorithms;
use clusterscore::scoring::{
    build_table, render_report_csv, render_report_text, render_table, AlgorithmReport, DatasetInfo, Format, ReportFile,
    Status,
};

use crate::args::{GenerateArgs, ScoreArgs, TableArgs};
use crate::config::{Run, RunConfig};
use crate::generator::{parse_blob_shape, parse_rings, GeneratorSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FATAL: u8 = 1;
pub const EXIT_PARTIAL: u8 = 2;

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn generate(a: &GenerateArgs) -> Result<u8> {
    let spec = match (&a.blobs, &a.rings) {
        (Some(b), None) => {
            let (k, per_blob) = parse_blob_shape(b)?;
            GeneratorSpec::Blobs {
                k,
                per_blob,
                dim: a.dim,
                spread: a.spread,
                seed: a.seed,
            }
        }
        (None, Some(r)) => GeneratorSpec::Rings {
            rings: parse_rings(r)?,
            jitter: a.jitter,
            seed: a.seed,
        },
        _ => bail!("give exactly one of --blobs or --rings"),
    };
    let x = spec.build()?;
    let mut buf = Vec::new();
    write_csv(&x, &mut buf)?;
    write_output(a.out.as_deref(), &buf)?;
    let m = x.truth_clustering().map_or(0, |t| t.n_clusters());
    eprintln!("N={} d={} m={}", x.len(), x.dim(), m);
    Ok(EXIT_OK)
}

pub fn score(a: &ScoreArgs) -> Result<u8> {
    let config = match &a.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let run = Run::try_from(config.merge(a)?)?;
    let x = run.source.load()?;
    let algos: Vec<&dyn Clusterer> = run.algorithms.iter().map(|s| s as &dyn Clusterer).collect();
    let reports = score_algorithms(&x, &algos, &run.options)?;

    let file = ReportFile::new(
        DatasetInfo {
            source: run.source.describe(),
            n: x.len(),
            dim: x.dim(),
            truth_clusters: x.truth_clustering().map(|t| t.n_clusters()),
        },
        run.options.seed,
        reports,
    );
    let table = build_table(&file.reports, &run.options.ledger);
    let body = match run.format {
        Format::Json => file.to_json(),
        Format::Csv => render_report_csv(&file, run.header),
        Format::Text => render_report_text(&file, &table),
    };
    write_output(run.out.as_deref(), body.as_bytes())?;
    if run.out.is_some() || run.format != Format::Text {
        let table_text = render_table(&table, Format::Text);
        if run.out.is_some() {
            print!("{table_text}");
        } else {
            eprint!("{table_text}");
        }
    }

    let mut partial = false;
    for r in &file.reports {
        for f in r.features.iter().filter(|f| f.status == Status::Absent) {
            partial = true;
            eprintln!(
                "feature failed: {} / {}: {}",
                r.algorithm,
                f.name,
                f.note.as_deref().unwrap_or("no reason given")
            );
        }
    }
    Ok(if partial { EXIT_PARTIAL } else { EXIT_OK })
}

pub fn table(a: &TableArgs) -> Result<u8> {
    let format: Format = a.format.parse()?;
    let ledger = match &a.ledger {
        Some(p) => Ledger::table1().with_overrides_file(p)?,
        None => Ledger::table1(),
    };
    let mut reports: Vec<AlgorithmReport> = Vec::new();
    let mut first: Option<(DatasetInfo, u64)> = None;
    let mut mismatched = Vec::new();
    for path in &a.reports {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file = ReportFile::from_json(&text).with_context(|| format!("{} is not a score report", path.display()))?;
        match &first {
            None => first = Some((file.dataset.clone(), file.seed)),
            Some((d, s)) if *d != file.dataset || *s != file.seed => mismatched.push(path.display().to_string()),
            Some(_) => {}
        }
        for r in file.reports {
            if reports.iter().any(|o| o.algorithm == r.algorithm) {
                bail!("algorithm '{}' appears in more than one report", r.algorithm);
            }
            reports.push(r);
        }
    }
    let mut t = build_table(&reports, &ledger);
    if !mismatched.is_empty() {
        t.warnings.push(format!(
            "{} used a different dataset or seed than {}",
            mismatched.join(", "),
            a.reports[0].display()
        ));
    }
    write_output(a.out.as_deref(), render_table(&t, format).as_bytes())?;
    if !t.warnings.is_empty() {
        eprintln!("{} warning(s)", t.warnings.len());
    }
    Ok(EXIT_OK)
}
