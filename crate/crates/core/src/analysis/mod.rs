//! Accepting fractions, bound envelopes, and the checks built on them.

mod density;
mod requirements;
mod sharpen;
mod threshold;

pub use density::{density_counts, fixed_width_count, geometric_count, DensityReport};
pub use requirements::{requirement12_check, requirement3_check, Req12Report, Req3Report, SideCheck, Window};
pub use sharpen::{
    generate_reassignment, sharpen_parameter, sharpening_constant, verify_zero_balance, ReassignmentTable,
    ZeroBalanceReport, SHARPEN_SHIFT,
};
pub use threshold::{inverted_threshold, threshold, threshold_holds, Threshold};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::exact::{format_rational, ratio, DecayConstant, Polynomial, Surd};
use crate::language::Language;
use crate::parameter::{fold_ball, invert_parameter, Orientation, ParamValue, Slice, Tally};
use crate::roughp::{RoughDecider, Sign, Verdict};

/// Decay constant and polynomial of the acceptance envelope `Poly(n)·cⁿ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundParams {
    pub c: DecayConstant,
    pub poly: Polynomial,
}

impl BoundParams {
    pub fn new(c: DecayConstant, poly: Polynomial) -> Self {
        BoundParams { c, poly }
    }

    /// `Poly(n)·cⁿ`.
    pub fn envelope(&self, n: u32) -> Surd {
        self.c.pow(n).scale(&self.poly.eval(n))
    }
}

/// Which side of the envelope constrains a slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `A ≥ 1 − Poly(n)·cⁿ`.
    AtLeast,
    /// `A ≤ Poly(n)·cⁿ`.
    AtMost,
}

fn clamped(kind: BoundKind, envelope: &Surd) -> (Surd, Surd) {
    match kind {
        BoundKind::AtLeast => ((Surd::one() - envelope.clone()).clamp_unit(), Surd::one()),
        BoundKind::AtMost => (Surd::zero(), envelope.clone().clamp_unit()),
    }
}

/// The acceptance bounding function at `τ`, as `(lower, upper)` clamped to
/// `[0, 1]`: `τ > 0` gives `[1 − Poly(n)cⁿ, 1]`, `τ < 0` gives `[0, Poly(n)cⁿ]`.
pub fn bound_curve(tau: ParamValue, bounds: &BoundParams) -> (Surd, Surd) {
    let kind = match tau.sign {
        Sign::Plus => BoundKind::AtLeast,
        Sign::Minus => BoundKind::AtMost,
    };
    clamped(kind, &bounds.envelope(tau.n))
}

/// Statistics of one parameter slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceStats {
    pub param: ParamValue,
    pub slice_size: u128,
    /// Ground-truth members in the slice.
    pub accepted: u128,
    pub bottom_in_slice: u128,
    pub ball_size: u128,
    pub ball_bottom: u128,
    pub envelope: Surd,
    pub bound: BoundKind,
}

impl SliceStats {
    pub fn accepting_fraction(&self) -> Result<BigRational> {
        if self.slice_size == 0 {
            return Err(Error::EmptySlice);
        }
        Ok(ratio(self.accepted, self.slice_size))
    }

    /// `accepted/slice_size`, unreduced.
    pub fn accepting_fraction_raw(&self) -> String {
        format!("{}/{}", self.accepted, self.slice_size)
    }

    pub fn lower(&self) -> Surd {
        clamped(self.bound, &self.envelope).0
    }

    pub fn upper(&self) -> Surd {
        clamped(self.bound, &self.envelope).1
    }

    pub fn within_bounds(&self) -> bool {
        match self.accepting_fraction() {
            Ok(a) => {
                let a = Surd::from_rational(a);
                self.lower() <= a && a <= self.upper()
            }
            Err(_) => true,
        }
    }

    pub fn accepts_majority(&self) -> bool {
        2 * self.accepted > self.slice_size
    }
}

/// Per-ball tallies shared by the scan, balance and F computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BallTally {
    pub n: u32,
    pub total: u128,
    pub plus_size: u128,
    pub plus_members: u128,
    pub plus_bottom: u128,
    pub minus_size: u128,
    pub minus_members: u128,
    pub minus_bottom: u128,
    /// Members on which `P` accepts.
    pub accept_member: u128,
    /// Non-members on which `P` rejects.
    pub reject_nonmember: u128,
    /// Inputs on which `P` contradicts the ground truth.
    pub wrong: u128,
}

impl Tally for BallTally {
    fn merge(&mut self, o: Self) {
        self.total += o.total;
        self.plus_size += o.plus_size;
        self.plus_members += o.plus_members;
        self.plus_bottom += o.plus_bottom;
        self.minus_size += o.minus_size;
        self.minus_members += o.minus_members;
        self.minus_bottom += o.minus_bottom;
        self.accept_member += o.accept_member;
        self.reject_nonmember += o.reject_nonmember;
        self.wrong += o.wrong;
    }
}

impl BallTally {
    pub fn collect(lang: &dyn Language, decider: &RoughDecider, n: usize) -> Result<Self> {
        let mut t: BallTally = fold_ball(decider.iso(), n, |acc: &mut BallTally, x, _| {
            let verdict = decider.decide_rough(x)?;
            let sign = decider.discriminate(x)?;
            let member = lang.decide(x).is_in();
            acc.total += 1;
            let bottom = u128::from(verdict == Verdict::Bottom);
            match sign {
                Sign::Plus => {
                    acc.plus_size += 1;
                    acc.plus_members += u128::from(member);
                    acc.plus_bottom += bottom;
                }
                Sign::Minus => {
                    acc.minus_size += 1;
                    acc.minus_members += u128::from(member);
                    acc.minus_bottom += bottom;
                }
            }
            match (verdict, member) {
                (Verdict::Accept, true) => acc.accept_member += 1,
                (Verdict::Reject, false) => acc.reject_nonmember += 1,
                (Verdict::Bottom, _) => {}
                _ => acc.wrong += 1,
            }
            Ok(())
        })?;
        t.n = n as u32;
        Ok(t)
    }

    pub fn bottom(&self) -> u128 {
        self.plus_bottom + self.minus_bottom
    }

    fn side(&self, sign: Sign) -> (u128, u128, u128) {
        match sign {
            Sign::Plus => (self.plus_size, self.plus_members, self.plus_bottom),
            Sign::Minus => (self.minus_size, self.minus_members, self.minus_bottom),
        }
    }
}

/// Per-slice results of an exhaustive scan over `1 ≤ N_φ ≤ max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub alphabet_size: u32,
    pub max_n: u32,
    pub orientation: Orientation,
    /// Non-empty slices sorted by `(n, sign)`.
    pub slices: Vec<SliceStats>,
    /// Empty slices, where the accepting fraction is undefined.
    pub gaps: Vec<ParamValue>,
    pub balls: Vec<BallTally>,
    /// Inputs whose image is empty, where the parameter is undefined.
    pub skipped_undefined: u64,
}

impl ScanReport {
    pub fn inverted(&self) -> ScanReport {
        let mut gaps: Vec<ParamValue> = self.gaps.iter().map(|g| g.negated()).collect();
        gaps.sort_by_key(|g| (g.n, g.sign));
        ScanReport {
            orientation: self.orientation.flip(),
            slices: invert_parameter(&self.slices),
            gaps,
            ..self.clone()
        }
    }

    pub fn slice(&self, param: ParamValue) -> Option<&SliceStats> {
        self.slices.iter().find(|s| s.param == param)
    }
}

/// Enumerates every ball `B_n^φ` for `1 ≤ n ≤ max_n` and builds slice
/// statistics. Balls are processed in parallel; results are assembled in
/// `n` order so the report is independent of the worker count.
pub fn scan(lang: &dyn Language, decider: &RoughDecider, bounds: &BoundParams, max_n: u32) -> Result<ScanReport> {
    if max_n == 0 {
        return Err(Error::Config("scan range must include n >= 1".into()));
    }
    let balls: Vec<BallTally> = (1..=max_n as usize)
        .into_par_iter()
        .map(|n| BallTally::collect(lang, decider, n))
        .collect::<Result<_>>()?;
    let mut slices = Vec::new();
    let mut gaps = Vec::new();
    for b in &balls {
        let envelope = bounds.envelope(b.n);
        for sign in [Sign::Minus, Sign::Plus] {
            let param = ParamValue::new(sign, b.n)?;
            let (size, members, bottom) = b.side(sign);
            if size == 0 {
                gaps.push(param);
                continue;
            }
            slices.push(SliceStats {
                param,
                slice_size: size,
                accepted: members,
                bottom_in_slice: bottom,
                ball_size: b.total,
                ball_bottom: b.bottom(),
                envelope: envelope.clone(),
                bound: match sign {
                    Sign::Plus => BoundKind::AtLeast,
                    Sign::Minus => BoundKind::AtMost,
                },
            });
        }
    }
    let skipped_undefined = u64::from(decider.iso().invert(&Word::empty()).is_ok());
    Ok(ScanReport {
        alphabet_size: decider.iso().alphabet().size(),
        max_n,
        orientation: Orientation::Canonical,
        slices,
        gaps,
        balls,
        skipped_undefined,
    })
}

/// `|{x ∈ slice : x ∈ L}| / |slice|`.
pub fn accepting_fraction(lang: &dyn Language, slice: &Slice) -> Result<BigRational> {
    if slice.members.is_empty() {
        return Err(Error::EmptySlice);
    }
    let accepted = slice.members.iter().filter(|x| lang.decide(x).is_in()).count();
    Ok(ratio(accepted, slice.members.len()))
}

/// `F_p^{(φ,n)}`: the fraction of the `p` slice on which `P` returned ⊥.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FStat {
    pub n: u32,
    pub p: Sign,
    pub value: BigRational,
    /// `(7/2)·cⁿ`.
    pub bound: Surd,
    /// `cⁿ/(1 − cⁿ)`, the bound before loosening to `7/2·cⁿ`.
    pub intermediate_bound: Surd,
    pub exceeds: bool,
}

pub fn compute_f(decider: &RoughDecider, n: usize, p: Sign, c: &DecayConstant) -> Result<FStat> {
    let counts = decider.class_counts(n)?;
    let (plus, minus) = decider.bottom_split(n)?;
    let split = match p {
        Sign::Plus => plus,
        Sign::Minus => minus,
    };
    let size = counts.decided(p) + split;
    let value = if size == 0 { BigRational::zero() } else { ratio(split, size) };
    let cn = c.pow(n as u32);
    let bound = cn.scale(&ratio(7, 2));
    let intermediate_bound = cn.clone() * (Surd::one() - cn.clone()).recip().ok_or(Error::Config("decay constant must be below 1".into()))?;
    let exceeds = Surd::from_rational(value.clone()) > bound;
    Ok(FStat { n: n as u32, p, value, bound, intermediate_bound, exceeds })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AccBoundCheck {
    pub param: ParamValue,
    pub accepting_fraction: String,
    pub lower: String,
    pub upper: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AccBoundsReport {
    pub slices: Vec<AccBoundCheck>,
    pub violations: Vec<ParamValue>,
    pub gaps: Vec<ParamValue>,
    pub passed: bool,
}

/// Checks every realized slice of a scan against its envelope.
pub fn verify_acc_bounds_on(scan: &ScanReport) -> AccBoundsReport {
    let slices: Vec<AccBoundCheck> = scan
        .slices
        .iter()
        .map(|s| AccBoundCheck {
            param: s.param,
            accepting_fraction: s.accepting_fraction_raw(),
            lower: s.lower().to_string(),
            upper: s.upper().to_string(),
            passed: s.within_bounds(),
        })
        .collect();
    let violations: Vec<ParamValue> = slices.iter().filter(|c| !c.passed).map(|c| c.param).collect();
    AccBoundsReport { passed: violations.is_empty(), slices, violations, gaps: scan.gaps.clone() }
}

pub fn verify_acc_bounds(
    lang: &dyn Language,
    decider: &RoughDecider,
    bounds: &BoundParams,
    max_n: u32,
) -> Result<AccBoundsReport> {
    Ok(verify_acc_bounds_on(&scan(lang, decider, bounds, max_n)?))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BalanceMargin {
    pub n: u32,
    /// Fraction of `B_n` that is in the language and accepted by `P`.
    pub in_margin: String,
    /// Fraction of `B_n` that is outside the language and rejected by `P`.
    pub out_margin: String,
    /// `1/Poly(n)`.
    pub required: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BalanceReport {
    pub margins: Vec<BalanceMargin>,
    /// `Poly(n)·(1/√2)ⁿ` strictly decreasing over the scanned range.
    pub poly_decreasing: bool,
    pub failing: Vec<u32>,
}

impl BalanceReport {
    pub fn passed_from(&self, n_min: u32) -> bool {
        self.poly_decreasing && self.failing.iter().all(|&n| n < n_min)
    }
}

/// Whether `Poly(n)·(1/√2)ⁿ` strictly decreases for `1 ≤ n ≤ max_n`.
pub fn poly_side_condition(poly: &Polynomial, max_n: u32) -> bool {
    let b = BoundParams::new(DecayConstant::InvSqrt(2), poly.clone());
    (1..max_n).all(|n| b.envelope(n + 1) < b.envelope(n))
}

pub fn balance_from_tallies(balls: &[BallTally], poly: &Polynomial) -> BalanceReport {
    let mut failing = Vec::new();
    let margins = balls
        .iter()
        .map(|b| {
            let in_m = ratio(b.accept_member, b.total);
            let out_m = ratio(b.reject_nonmember, b.total);
            let required = BigRational::one() / poly.eval(b.n);
            let passed = in_m >= required && out_m >= required;
            if !passed {
                failing.push(b.n);
            }
            BalanceMargin {
                n: b.n,
                in_margin: format_rational(&in_m),
                out_margin: format_rational(&out_m),
                required: format_rational(&required),
                passed,
            }
        })
        .collect();
    let max_n = balls.iter().map(|b| b.n).max().unwrap_or(1);
    BalanceReport { margins, poly_decreasing: poly_side_condition(poly, max_n), failing }
}

pub fn balance_check(
    lang: &dyn Language,
    decider: &RoughDecider,
    poly: &Polynomial,
    max_n: u32,
) -> Result<BalanceReport> {
    let balls: Vec<BallTally> = (1..=max_n as usize)
        .into_par_iter()
        .map(|n| BallTally::collect(lang, decider, n))
        .collect::<Result<_>>()?;
    Ok(balance_from_tallies(&balls, poly))
}
