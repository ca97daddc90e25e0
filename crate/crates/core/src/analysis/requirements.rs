use serde::Serialize;

use super::{BoundKind, ScanReport, SliceStats};
use crate::parameter::{Orientation, ParamValue};
use crate::roughp::Sign;

/// Checks on one side of `τ = 0`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SideCheck {
    pub sign: Sign,
    pub expected_bound: BoundKind,
    pub points: usize,
    pub bound_kind_ok: bool,
    /// `Poly(n)·cⁿ` strictly decreases as `|τ|` grows.
    pub envelope_decreasing: bool,
    pub first_non_decreasing: Option<ParamValue>,
    /// `Poly(n)·cⁿ` at the largest realized `|τ|`.
    pub final_envelope: Option<String>,
    pub violations: Vec<ParamValue>,
    pub passed: bool,
}

fn side_check(slices: &[&SliceStats], sign: Sign, expected: BoundKind) -> SideCheck {
    let mut side: Vec<&SliceStats> = slices.iter().copied().filter(|s| s.param.sign == sign).collect();
    side.sort_by_key(|s| s.param.n);
    let bound_kind_ok = side.iter().all(|s| s.bound == expected);
    let first_non_decreasing = side.windows(2).find(|w| w[1].envelope >= w[0].envelope).map(|w| w[1].param);
    let violations: Vec<ParamValue> = side.iter().filter(|s| !s.within_bounds()).map(|s| s.param).collect();
    let passed = side.len() >= 2 && bound_kind_ok && first_non_decreasing.is_none() && violations.is_empty();
    SideCheck {
        sign,
        expected_bound: expected,
        points: side.len(),
        bound_kind_ok,
        envelope_decreasing: first_non_decreasing.is_none(),
        first_non_decreasing,
        final_envelope: side.last().map(|s| s.envelope.to_string()),
        violations,
        passed,
    }
}

/// Acceptance tends to 1 on one side and to 0 on the other, within the
/// envelope, for the scan's orientation.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Req12Report {
    pub orientation: Orientation,
    pub accepting_side: SideCheck,
    pub rejecting_side: SideCheck,
    pub passed: bool,
}

pub fn requirement12_check(scan: &ScanReport) -> Req12Report {
    let slices: Vec<&SliceStats> = scan.slices.iter().collect();
    let up = scan.orientation.accepting_side();
    let accepting_side = side_check(&slices, up, BoundKind::AtLeast);
    let rejecting_side = side_check(&slices, up.flip(), BoundKind::AtMost);
    Req12Report {
        orientation: scan.orientation,
        passed: accepting_side.passed && rejecting_side.passed,
        accepting_side,
        rejecting_side,
    }
}

/// Inputs with `r + kδ ≤ |τ| < r + (k+1)δ`, counted over both signs.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Window {
    pub k: u32,
    pub start: f64,
    pub end: f64,
    pub n_lo: u32,
    pub n_hi: u32,
    pub count: u128,
    /// Every `n` in the window lies within the scanned range.
    pub full: bool,
    pub empty: bool,
    /// `count / previous full non-empty count`.
    pub ratio: Option<f64>,
}

/// Slice sizes grow across `|τ|` windows of width `δ` beyond radius `r`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Req3Report {
    pub delta: f64,
    pub exempt_radius: f64,
    pub growth_base: f64,
    pub windows: Vec<Window>,
    pub passed: bool,
    pub reason: Option<String>,
}

/// Smallest `n ≥ 1` with `√n ≥ a`.
fn first_n_at_least(a: f64) -> u32 {
    let mut n = (a * a).floor().max(1.0) as u32;
    while n > 1 && f64::from(n - 1).sqrt() >= a {
        n -= 1;
    }
    while f64::from(n).sqrt() < a {
        n += 1;
    }
    n
}

pub fn requirement3_check(scan: &ScanReport, delta: f64, exempt_radius: f64, growth_base: f64) -> Req3Report {
    let mut report = Req3Report {
        delta,
        exempt_radius,
        growth_base,
        windows: Vec::new(),
        passed: false,
        reason: None,
    };
    if !(delta > 0.0 && delta.is_finite() && exempt_radius >= 0.0 && exempt_radius.is_finite()) {
        report.reason = Some(format!("window width {delta} and radius {exempt_radius} must be finite, δ > 0, r ≥ 0"));
        return report;
    }
    let mut last_count: Option<u128> = None;
    let mut k = 0u32;
    loop {
        let start = exempt_radius + f64::from(k) * delta;
        let end = start + delta;
        let n_lo = first_n_at_least(start);
        if n_lo > scan.max_n {
            break;
        }
        let n_hi = first_n_at_least(end) - 1;
        let full = n_hi <= scan.max_n;
        let count: u128 = scan
            .slices
            .iter()
            .filter(|s| s.param.n >= n_lo && s.param.n <= n_hi)
            .map(|s| s.slice_size)
            .sum();
        let empty = n_lo > n_hi || count == 0;
        let ratio = match (full && !empty, last_count) {
            (true, Some(prev)) => Some(count as f64 / prev as f64),
            _ => None,
        };
        if full && !empty {
            last_count = Some(count);
        }
        report.windows.push(Window { k, start, end, n_lo, n_hi, count, full, empty, ratio });
        k += 1;
    }
    let counted: Vec<&Window> = report.windows.iter().filter(|w| w.full && !w.empty).collect();
    if counted.len() < 2 {
        report.reason = Some(format!(
            "{} full non-empty window(s) within n <= {}; at least 2 are needed",
            counted.len(),
            scan.max_n
        ));
        return report;
    }
    if let Some(w) = counted.windows(2).find(|w| w[1].count < w[0].count) {
        report.reason = Some(format!("window {} has fewer inputs ({}) than window {} ({})", w[1].k, w[1].count, w[0].k, w[0].count));
        return report;
    }
    let last = counted[counted.len() - 1];
    let final_ratio = last.ratio.unwrap_or(0.0);
    if final_ratio < growth_base {
        report.reason = Some(format!("final window ratio {final_ratio} is below growth base {growth_base}"));
        return report;
    }
    report.passed = true;
    report
}
