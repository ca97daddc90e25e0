//! The canonical parameter `Γ(x) = Q(x)·√N_φ(x)`, balls and slices.
//!
//! `τ` is never stored as a float. A parameter value is the exact pair
//! `(sign, n)` with `τ = sign·√n`, so `τ² = n` holds by construction.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::alphabet::Word;
use crate::analysis::SliceStats;
use crate::error::{Error, Result};
use crate::iso::PIso;
use crate::roughp::{RoughDecider, Sign};

/// Partial results that can be merged in any order.
pub trait Tally: Default + Send {
    fn merge(&mut self, other: Self);
}

const CHUNK: u128 = 1024;

/// Folds over the ball `B_n^φ = φ⁻¹(Σⁿ)`. The callback receives each
/// input `x` and its image. Rank ranges of `Σⁿ` are processed in parallel
/// and merged; since merging is additive, the result does not depend on
/// the number of workers.
pub fn fold_ball<T, F>(iso: &PIso, n: usize, f: F) -> Result<T>
where
    T: Tally,
    F: Fn(&mut T, &Word, &Word) -> Result<()> + Sync,
{
    let alphabet = iso.alphabet();
    let count = alphabet.count(n)?;
    let chunks = count.div_ceil(CHUNK);
    (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let mut acc = T::default();
            let start = u128::from(c) * CHUNK;
            let end = (start + CHUNK).min(count);
            for r in start..end {
                let y = alphabet.unrank(n, r)?;
                let x = iso.invert(&y)?;
                f(&mut acc, &x, &y)?;
            }
            Ok(acc)
        })
        .try_reduce(T::default, |mut a, b| {
            a.merge(b);
            Ok(a)
        })
}

/// An exact value of the canonical parameter: `τ = sign·√n`, `n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ParamValue {
    pub sign: Sign,
    pub n: u32,
}

impl ParamValue {
    pub fn new(sign: Sign, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::UndefinedParameter);
        }
        Ok(ParamValue { sign, n })
    }

    pub fn tau(self) -> f64 {
        f64::from(self.sign.value()) * f64::from(self.n).sqrt()
    }

    pub fn tau_squared(self) -> u32 {
        self.n
    }

    pub fn negated(self) -> Self {
        ParamValue { sign: self.sign.flip(), n: self.n }
    }
}

impl Ord for ParamValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign, other.sign) {
            (Sign::Plus, Sign::Plus) => self.n.cmp(&other.n),
            (Sign::Minus, Sign::Minus) => other.n.cmp(&self.n),
            (a, b) => a.cmp(&b),
        }
    }
}

impl PartialOrd for ParamValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { "+" } else { "-" };
        write!(f, "{s}sqrt({})", self.n)
    }
}

pub fn gamma(decider: &RoughDecider, x: &Word) -> Result<ParamValue> {
    let n = decider.iso().output_size(x)?;
    if n == 0 {
        return Err(Error::UndefinedParameter);
    }
    ParamValue::new(decider.discriminate(x)?, n as u32)
}

#[derive(Clone, Debug)]
pub struct Ball {
    pub n: usize,
    pub members: Vec<Word>,
}

#[derive(Clone, Debug)]
pub struct Slice {
    pub param: ParamValue,
    pub members: Vec<Word>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::UndefinedParameter);
    }
    Ok(())
}

pub fn ball(iso: &PIso, n: usize) -> Result<Ball> {
    let members = iso
        .alphabet()
        .words(n)
        .map(|y| iso.invert(&y))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ball { n, members })
}

pub fn slice(decider: &RoughDecider, sign: Sign, n: usize) -> Result<Slice> {
    check_n(n)?;
    let b = ball(decider.iso(), n)?;
    let mut members = Vec::new();
    for x in b.members {
        if decider.discriminate(&x)? == sign {
            members.push(x);
        }
    }
    Ok(Slice { param: ParamValue::new(sign, n as u32)?, members })
}

/// Which way a scan's transition is expected to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Acceptance tends to 1 as `τ → +∞`.
    #[default]
    Canonical,
    /// Acceptance tends to 1 as `τ → −∞`.
    Inverted,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Canonical => Orientation::Inverted,
            Orientation::Inverted => Orientation::Canonical,
        }
    }

    /// The sign of `τ` on which acceptance tends to 1.
    pub fn accepting_side(self) -> Sign {
        match self {
            Orientation::Canonical => Sign::Plus,
            Orientation::Inverted => Sign::Minus,
        }
    }
}

/// Re-indexes slice statistics by `τ' = −τ`. Each slice keeps its counts
/// and bound envelope; only the sign of its parameter changes.
pub fn invert_parameter(slices: &[SliceStats]) -> Vec<SliceStats> {
    let mut out: Vec<SliceStats> = slices
        .iter()
        .cloned()
        .map(|mut s| {
            s.param = s.param.negated();
            s
        })
        .collect();
    out.sort_by_key(|s| (s.param.n, s.param.sign));
    out
}
