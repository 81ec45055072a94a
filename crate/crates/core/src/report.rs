//! Shared formatting for CSV and JSON reports.

/// 17 significant digits, which round-trips every `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}
