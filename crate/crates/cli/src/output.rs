//! CSV rows for scans and decimal formatting.

use std::path::{Path, PathBuf};

use anyhow::Result;
use phasebench_core::exact::rational_to_f64;
use phasebench_core::{ScanReport, SliceStats};
use serde::Serialize;

pub const SCAN_HEADER: [&str; 10] = [
    "tau",
    "n",
    "sign",
    "slice_size",
    "accept_count",
    "accepting_fraction",
    "accepting_fraction_exact",
    "lower_bound_exact",
    "upper_bound_exact",
    "bottom_fraction_exact",
];

#[derive(Debug, Serialize)]
pub struct ScanRow {
    pub tau: String,
    pub n: u32,
    pub sign: String,
    pub slice_size: u128,
    pub accept_count: u128,
    pub accepting_fraction: String,
    pub accepting_fraction_exact: String,
    pub lower_bound_exact: String,
    pub upper_bound_exact: String,
    pub bottom_fraction_exact: String,
}

/// `x` with 12 significant digits in fixed notation.
pub fn decimal12(x: f64) -> String {
    let decimals = if x == 0.0 { 11 } else { (11 - x.abs().log10().floor() as i64).max(0) as usize };
    format!("{x:.decimals$}")
}

impl ScanRow {
    pub fn from_slice(s: &SliceStats) -> Result<Self> {
        let a = s.accepting_fraction()?;
        Ok(ScanRow {
            tau: decimal12(s.param.tau()),
            n: s.param.n,
            sign: s.param.sign.to_string(),
            slice_size: s.slice_size,
            accept_count: s.accepted,
            accepting_fraction: decimal12(rational_to_f64(&a)),
            accepting_fraction_exact: s.accepting_fraction_raw(),
            lower_bound_exact: s.lower().to_string(),
            upper_bound_exact: s.upper().to_string(),
            bottom_fraction_exact: format!("{}/{}", s.ball_bottom, s.ball_size),
        })
    }
}

/// The scan as CSV, rows in `(n, sign)` order.
pub fn scan_csv(report: &ScanReport) -> Result<String> {
    let mut slices: Vec<&SliceStats> = report.slices.iter().collect();
    slices.sort_by_key(|s| (s.param.n, s.param.sign));
    let mut w = csv::Writer::from_writer(Vec::new());
    for s in slices {
        w.serialize(ScanRow::from_slice(s)?)?;
    }
    if report.slices.is_empty() {
        w.write_record(SCAN_HEADER)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Where a scan's JSON sidecar goes: `<stem>.sidecar.json` next to the CSV.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("sidecar.json")
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}
