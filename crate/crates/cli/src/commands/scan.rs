use anyhow::Result;
use phasebench_core::analysis::{
    balance_from_tallies, requirement12_check, requirement3_check, threshold, verify_acc_bounds_on, AccBoundsReport,
    BalanceReport, Req12Report, Req3Report,
};
use phasebench_core::language::check_paddability;
use phasebench_core::{scan, Language, Orientation, ParamValue, ScanReport};
use serde::Serialize;

use crate::config::Setup;
use crate::output::{decimal12, scan_csv, to_json};

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Sidecar {
    pub alphabet_size: usize,
    pub language: String,
    pub iso: &'static str,
    pub budget: u32,
    pub c: String,
    pub poly: String,
    pub orientation: Orientation,
    pub rows: usize,
    pub gaps: Vec<String>,
    pub skipped_undefined: u64,
    pub threshold: Option<f64>,
    pub threshold_exact: Option<String>,
    pub threshold_decimal: Option<String>,
    pub threshold_diagnostic: Option<String>,
    pub acc_bounds: AccBoundsReport,
    pub requirement12: Req12Report,
    pub requirement3: Req3Report,
    pub balance: BalanceReport,
    /// Balance holds for every `n ≥ 4`.
    pub balance_from_4: bool,
    pub paddability: Option<bool>,
    pub passed: bool,
}

pub struct ScanOutputs {
    pub report: ScanReport,
    pub csv: String,
    pub sidecar: String,
    pub passed: bool,
}

const PADDABILITY_LEN: usize = 4;

pub fn sidecar(setup: &Setup, iso_kind: &'static str, report: &ScanReport) -> Sidecar {
    let acc_bounds = verify_acc_bounds_on(report);
    let requirement12 = requirement12_check(report);
    let requirement3 = requirement3_check(report, setup.config.delta, setup.config.exempt_radius, setup.config.growth_base());
    let balance = balance_from_tallies(&report.balls, &setup.bounds.poly);
    let t = threshold(&report.slices);
    let paddability = setup.language.padding().map(|p| {
        let len = PADDABILITY_LEN.min(setup.budget());
        check_paddability(&setup.language, p, &setup.alphabet, len).passed
    });
    let passed = acc_bounds.passed && requirement12.passed && requirement3.passed && t.value.is_some();
    Sidecar {
        alphabet_size: setup.config.alphabet_size,
        language: setup.language.name().to_string(),
        iso: iso_kind,
        budget: setup.config.budget,
        c: setup.bounds.c.to_string(),
        poly: setup.bounds.poly.to_string(),
        orientation: report.orientation,
        rows: report.slices.len(),
        gaps: report.gaps.iter().map(ParamValue::to_string).collect(),
        skipped_undefined: report.skipped_undefined,
        threshold: t.value.map(ParamValue::tau),
        threshold_exact: t.value.map(|v| v.to_string()),
        threshold_decimal: t.value.map(|v| decimal12(v.tau())),
        threshold_diagnostic: t.diagnostic,
        balance_from_4: balance.passed_from(4),
        acc_bounds,
        requirement12,
        requirement3,
        balance,
        paddability,
        passed,
    }
}

pub fn outputs(setup: &Setup) -> Result<ScanOutputs> {
    let decider = setup.decider()?;
    let report = scan(&setup.language, &decider, &setup.bounds, setup.config.budget)?;
    let side = sidecar(setup, decider.iso().kind(), &report);
    Ok(ScanOutputs { csv: scan_csv(&report)?, sidecar: to_json(&side)?, passed: side.passed, report })
}
