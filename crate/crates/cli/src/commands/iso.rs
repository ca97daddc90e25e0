use anyhow::{bail, Result};
use phasebench_core::iso::{slot_budget, verify_bijection, BijectionReport, SlotBudget};
use phasebench_core::roughp::{verify_errorless, ErrorlessReport};
use phasebench_core::{Language, PIso};
use serde::Serialize;

use crate::config::Setup;
use crate::table_file;

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BuildReport {
    pub language: String,
    pub budget: usize,
    pub entries: u128,
    pub slots: Vec<SlotBudget>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub source: &'static str,
    pub budget: usize,
    pub bijection: BijectionReport,
    pub errorless: ErrorlessReport,
    pub passed: bool,
}

pub fn build(setup: &Setup) -> Result<BuildReport> {
    setup.build_table()?;
    let budget = setup.budget();
    Ok(BuildReport {
        language: setup.language.name().to_string(),
        budget,
        entries: setup.alphabet.count_up_to(budget)?,
        slots: (0..=budget).map(|n| slot_budget(&setup.alphabet, n)).collect::<phasebench_core::Result<_>>()?,
    })
}

fn verify_iso(setup: &Setup, iso: PIso, source: &'static str) -> Result<VerifyReport> {
    let budget = iso.budget().unwrap_or(setup.budget());
    let bijection = verify_bijection(&iso, budget)?;
    let errorless = if bijection.passed {
        verify_errorless(&setup.language, &setup.decider_for(iso), budget)?
    } else {
        ErrorlessReport { checked: 0, bottoms: 0, wrong: Vec::new(), passed: false }
    };
    let passed = bijection.passed && errorless.passed;
    Ok(VerifyReport { source, budget, bijection, errorless, passed })
}

/// Verifies the configured table, or a freshly built one.
pub fn verify(setup: &Setup) -> Result<VerifyReport> {
    match &setup.config.iso.path {
        Some(path) => verify_iso(setup, PIso::Table(table_file::read(path, &setup.alphabet)?), "imported"),
        None => verify_iso(setup, setup.build_table()?, "built"),
    }
}

pub fn export(setup: &Setup) -> Result<String> {
    match setup.build_table()? {
        PIso::Table(t) => table_file::to_json(&t),
        PIso::Identity(_) => unreachable!("build_table_iso returns a table"),
    }
}

pub fn import(setup: &Setup) -> Result<VerifyReport> {
    let Some(path) = &setup.config.iso.path else {
        bail!("iso import needs a table file (--table or iso.path)");
    };
    verify_iso(setup, PIso::Table(table_file::read(path, &setup.alphabet)?), "imported")
}
