//! Fixtures shared by the benchmarks.

use phasebench_core::{build_table_iso, Alphabet, PIso, Result, RoughDecider, FirstIsTwo};

pub fn identity_decider(size: usize) -> Result<RoughDecider> {
    Ok(RoughDecider::new(PIso::identity(Alphabet::numbered(size)?)))
}

pub fn table_decider(size: usize, budget: usize) -> Result<RoughDecider> {
    let alphabet = Alphabet::numbered(size)?;
    Ok(RoughDecider::new(build_table_iso(&FirstIsTwo, &alphabet, budget)?))
}
