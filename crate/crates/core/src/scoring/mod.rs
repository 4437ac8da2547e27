//! Per-algorithm reports, the best/worst/average table, and rendering.

mod render;
mod report;
mod table;

pub use render::{render_report_csv, render_report_text, render_table, Format};
pub use report::{aggregate, AlgorithmReport, CiRow, DatasetInfo, FeatureOutcome, FeatureRow, ReportFile, Status};
pub use table::{build_table, ScoreTable, TableCell, TableRow};

/// Round to `digits` significant decimal digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", digits.saturating_sub(1), v).parse().unwrap_or(v)
}

/// Round for output; non-finite values become `None` (JSON `null`).
pub(crate) fn out(v: f64) -> Option<f64> {
    v.is_finite().then(|| round_sig(v, 6))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(round_sig(1234.56789, 6), 1234.57);
        assert_eq!(round_sig(123456789.0, 6), 123457000.0);
        assert_eq!(round_sig(-0.000123456789, 3), -0.000123);
        assert_eq!(round_sig(0.0, 6), 0.0);
        assert_eq!(out(f64::NAN), None);
    }
}
