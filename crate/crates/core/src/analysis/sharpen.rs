use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::exact::{int, ratio, DecayConstant, Surd};
use crate::language::Language;
use crate::parameter::{ball, ParamValue};
use crate::roughp::{RoughDecider, Verdict};

/// Distance by which large parameter values are pulled in.
pub const SHARPEN_SHIFT: u32 = 6;

/// The `n` at which `(7/2)·cⁿ = 1/2`, i.e. `log_c(1/7)`.
pub fn sharpening_constant(c: &DecayConstant) -> f64 {
    (1.0f64 / 7.0).ln() / c.to_f64().ln()
}

/// Values assigned to inputs with `|τ| < 6`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReassignmentTable {
    entries: BTreeMap<Word, BigRational>,
}

impl ReassignmentTable {
    pub fn insert(&mut self, x: Word, value: BigRational) {
        self.entries.insert(x, value);
    }

    pub fn get(&self, x: &Word) -> Option<&BigRational> {
        self.entries.get(x)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.entries.iter()
    }
}

fn small_range(tau: ParamValue) -> bool {
    tau.n < SHARPEN_SHIFT * SHARPEN_SHIFT
}

/// Builds a table for every input with `1 ≤ N_φ ≤ min(max_n, 35)`.
///
/// Every ⊥ input goes to `0`. The `0` group is then balanced with inputs of
/// the minority class, taken from the smallest output sizes first. All
/// remaining inputs keep their side: members go to `+1/2`, non-members to
/// `−1/2`.
pub fn generate_reassignment(lang: &dyn Language, decider: &RoughDecider, max_n: u32) -> Result<ReassignmentTable> {
    let top = max_n.min(SHARPEN_SHIFT * SHARPEN_SHIFT - 1);
    let mut table = ReassignmentTable::default();
    let mut decided = Vec::new();
    let mut excess: i64 = 0;
    for n in 1..=top as usize {
        for x in ball(decider.iso(), n)?.members {
            let member = lang.decide(&x).is_in();
            if decider.decide_rough(&x)? == Verdict::Bottom {
                excess += if member { 1 } else { -1 };
                table.insert(x, BigRational::zero());
            } else {
                decided.push((x, member));
            }
        }
    }
    for (x, member) in decided {
        let fills_gap = (excess < 0 && member) || (excess > 0 && !member);
        if fills_gap {
            excess += if member { 1 } else { -1 };
            table.insert(x, BigRational::zero());
        } else {
            table.insert(x, if member { ratio(1, 2) } else { ratio(-1, 2) });
        }
    }
    Ok(table)
}

/// `τ† = sign(τ)·(|τ| − 6)` for `|τ| ≥ 6`; otherwise the table entry for `x`.
pub fn sharpen_parameter(x: &Word, tau: ParamValue, table: &ReassignmentTable) -> Result<Surd> {
    if small_range(tau) {
        return table
            .get(x)
            .map(|v| Surd::from_rational(v.clone()))
            .ok_or_else(|| Error::Config(format!("no reassignment for input {x} at τ = {tau}")));
    }
    let s = int(tau.sign.value());
    Ok(Surd::new(-(s.clone() * int(SHARPEN_SHIFT)), s, tau.n))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ZeroBalanceReport {
    pub members: usize,
    pub non_members: usize,
    pub satisfied: bool,
}

/// Checks that exactly half of the inputs sent to `τ† = 0` are members.
pub fn verify_zero_balance(lang: &dyn Language, table: &ReassignmentTable) -> ZeroBalanceReport {
    let (mut members, mut non_members) = (0, 0);
    for (x, v) in table.iter() {
        if v.is_zero() {
            if lang.decide(x).is_in() { members += 1 } else { non_members += 1 }
        }
    }
    ZeroBalanceReport { members, non_members, satisfied: members == non_members }
}
