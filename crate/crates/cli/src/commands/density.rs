use anyhow::Result;
use phasebench_core::analysis::{density_counts, DensityReport};

use crate::config::Setup;

pub fn run(setup: &Setup) -> Result<DensityReport> {
    let e1 = setup.config.e1.unwrap_or(1.0);
    let e2 = setup.config.e2.unwrap_or(2.0);
    Ok(density_counts(&setup.iso()?, e1, e2)?)
}
