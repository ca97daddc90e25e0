use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::PIso;

/// Inputs whose output size lies in `[⌈E1²⌉, ⌊E2²⌋]`, i.e. `E1 ≤ |τ| ≤ E2`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityReport {
    pub e1: f64,
    pub e2: f64,
    pub delta: f64,
    pub n_lo: u32,
    pub n_hi: u32,
    /// Every input in range, including the one with empty image when `n_lo = 0`.
    #[serde(serialize_with = "as_string")]
    pub enumerated_count: BigInt,
    /// Inputs in range on which the parameter is defined (`N_φ ≥ 1`).
    #[serde(serialize_with = "as_string")]
    pub enumerated_defined: BigInt,
    /// `(|Σ|^{n_hi+1} − |Σ|^{n_lo})/(|Σ|−1)`.
    #[serde(serialize_with = "as_string")]
    pub closed_form_count: BigInt,
    /// `|Σ|^{E1²}·(|Σ|^{2δE1+δ²+1} − 1)/(|Σ|−1)`, when `E1` and `δ` are integers.
    #[serde(serialize_with = "opt_as_string")]
    pub fixed_width_count: Option<BigInt>,
    pub aligned: bool,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_as_string<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// `Σ_{j=lo}^{hi} |Σ|^j`.
pub fn geometric_count(size: u32, lo: u32, hi: u32) -> BigInt {
    if lo > hi {
        return BigInt::zero();
    }
    let s = BigInt::from(size);
    (num_traits::pow(s.clone(), hi as usize + 1) - num_traits::pow(s.clone(), lo as usize)) / (s - 1)
}

/// Count over the window `E1 ≤ |τ| ≤ E1 + δ` for integer `E1`, `δ`.
pub fn fixed_width_count(size: u32, e1: u32, delta: u32) -> BigInt {
    let s = BigInt::from(size);
    let exp = 2 * delta * e1 + delta * delta + 1;
    num_traits::pow(s.clone(), (e1 * e1) as usize) * (num_traits::pow(s.clone(), exp as usize) - BigInt::one())
        / (s - 1)
}

const MAX_ENUMERATION: u128 = 1 << 26;

fn as_integer(v: f64) -> Option<u32> {
    (v.fract() == 0.0 && v >= 0.0 && v <= f64::from(u16::MAX)).then_some(v as u32)
}

/// Counts inputs by enumerating preimages of every image length in range.
pub fn density_counts(iso: &PIso, e1: f64, e2: f64) -> Result<DensityReport> {
    if !(e1.is_finite() && e2.is_finite() && 0.0 <= e1 && e1 < e2) {
        return Err(Error::Config(format!("density needs 0 <= E1 < E2 (got {e1}, {e2})")));
    }
    let alphabet = iso.alphabet();
    let n_lo = (e1 * e1).ceil() as u32;
    let n_hi = (e2 * e2).floor() as u32;
    if alphabet.count_up_to(n_hi as usize)? > MAX_ENUMERATION {
        return Err(Error::Config(format!("density range up to n = {n_hi} is too large to enumerate")));
    }
    if let Some(b) = iso.budget() {
        if n_hi as usize > b {
            return Err(Error::BudgetExceeded { len: n_hi as usize, budget: b });
        }
    }
    let mut all = BigInt::zero();
    let mut defined = BigInt::zero();
    for n in n_lo..=n_hi {
        let mut count = 0u128;
        for y in alphabet.words(n as usize) {
            iso.invert(&y)?;
            count += 1;
        }
        all += count;
        if n > 0 {
            defined += count;
        }
    }
    let size = alphabet.size();
    let closed_form_count = geometric_count(size, n_lo, n_hi);
    let delta = e2 - e1;
    let fixed_width_count = match (as_integer(e1), as_integer(delta)) {
        (Some(a), Some(d)) => Some(fixed_width_count(size, a, d)),
        _ => None,
    };
    let aligned = all == closed_form_count && fixed_width_count.as_ref().is_none_or(|f| *f == all);
    Ok(DensityReport {
        e1,
        e2,
        delta,
        n_lo,
        n_hi,
        enumerated_count: all,
        enumerated_defined: defined,
        closed_form_count,
        fixed_width_count,
        aligned,
    })
}
