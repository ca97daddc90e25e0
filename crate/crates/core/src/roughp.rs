//! The three-case errorless decider `P`, the symmetric-word splitter and
//! the ±1 discriminator built on top of them.

use std::fmt;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::iso::{slot_budget, PIso};
use crate::language::{Language, Membership};
use crate::parameter::{fold_ball, Tally};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Accept,
    Reject,
    Bottom,
}

/// Accept on odd weight, Bottom on symmetric words, Reject otherwise.
pub fn classify_image(w: &Word) -> Verdict {
    if w.has_odd_weight() {
        Verdict::Accept
    } else if w.is_symmetric() {
        Verdict::Bottom
    } else {
        Verdict::Reject
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value())
    }
}

/// Maps a discriminator value to the decision it stands for.
pub fn psi(p: Sign) -> Verdict {
    match p {
        Sign::Plus => Verdict::Accept,
        Sign::Minus => Verdict::Reject,
    }
}

/// Inverse of [`psi`] on `{Accept, Reject}`.
pub fn psi_inverse(v: Verdict) -> Option<Sign> {
    match v {
        Verdict::Accept => Some(Sign::Plus),
        Verdict::Reject => Some(Sign::Minus),
        Verdict::Bottom => None,
    }
}

/// On `z∘z`: `+1` iff `ω(z)` is odd.
pub fn qprime(w: &Word) -> Result<Sign> {
    match w.half() {
        Some(z) if !w.is_empty() => Ok(if z.has_odd_weight() { Sign::Plus } else { Sign::Minus }),
        _ => Err(Error::NotSymmetric(w.to_string())),
    }
}

/// How Bottom inputs are split between `+1` and `−1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Splitter {
    #[default]
    WeightParity,
    /// Always `+1`. Breaks the equal split; used to exercise the checkers.
    #[doc(hidden)]
    Sabotaged,
}

impl Splitter {
    pub fn split(self, w: &Word) -> Result<Sign> {
        match self {
            Splitter::WeightParity => qprime(w),
            Splitter::Sabotaged => {
                qprime(w)?;
                Ok(Sign::Plus)
            }
        }
    }
}

/// The decider `P` and discriminator `Q` for one isomorphism.
#[derive(Clone, Debug)]
pub struct RoughDecider {
    iso: PIso,
    splitter: Splitter,
}

impl RoughDecider {
    pub fn new(iso: PIso) -> Self {
        RoughDecider { iso, splitter: Splitter::default() }
    }

    pub fn with_splitter(mut self, splitter: Splitter) -> Self {
        self.splitter = splitter;
        self
    }

    pub fn iso(&self) -> &PIso {
        &self.iso
    }

    pub fn splitter(&self) -> Splitter {
        self.splitter
    }

    pub fn decide_rough(&self, x: &Word) -> Result<Verdict> {
        Ok(classify_image(&self.iso.apply(x)?))
    }

    pub fn discriminate(&self, x: &Word) -> Result<Sign> {
        let image = self.iso.apply(x)?;
        match psi_inverse(classify_image(&image)) {
            Some(s) => Ok(s),
            None => self.splitter.split(&image),
        }
    }

    pub fn class_counts(&self, n: usize) -> Result<ClassCounts> {
        let tally: ClassTally = fold_ball(&self.iso, n, |acc: &mut ClassTally, x, _| {
            match self.decide_rough(x)? {
                Verdict::Accept => acc.accept += 1,
                Verdict::Reject => acc.reject += 1,
                Verdict::Bottom => acc.bottom += 1,
            }
            Ok(())
        })?;
        Ok(ClassCounts {
            n,
            accept: tally.accept,
            reject: tally.reject,
            bottom: tally.bottom,
            total: self.iso.alphabet().count(n)?,
        })
    }

    /// `|[B_n]_⊥| / |B_n|`.
    pub fn bottom_fraction(&self, n: usize) -> Result<BigRational> {
        let c = self.class_counts(n)?;
        Ok(BigRational::new(c.bottom.into(), c.total.into()))
    }

    /// Bottom inputs of `B_n` per splitter value, `(plus, minus)`.
    pub fn bottom_split(&self, n: usize) -> Result<(u128, u128)> {
        let t: SplitTally = fold_ball(&self.iso, n, |acc: &mut SplitTally, x, _| {
            if self.decide_rough(x)? == Verdict::Bottom {
                match self.discriminate(x)? {
                    Sign::Plus => acc.plus += 1,
                    Sign::Minus => acc.minus += 1,
                }
            }
            Ok(())
        })?;
        Ok((t.plus, t.minus))
    }
}

#[derive(Default)]
struct ClassTally {
    accept: u128,
    reject: u128,
    bottom: u128,
}

impl Tally for ClassTally {
    fn merge(&mut self, o: Self) {
        self.accept += o.accept;
        self.reject += o.reject;
        self.bottom += o.bottom;
    }
}

#[derive(Default)]
struct SplitTally {
    plus: u128,
    minus: u128,
}

impl Tally for SplitTally {
    fn merge(&mut self, o: Self) {
        self.plus += o.plus;
        self.minus += o.minus;
    }
}

/// Verdict counts over the ball `B_n^φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassCounts {
    pub n: usize,
    pub accept: u128,
    pub reject: u128,
    pub bottom: u128,
    pub total: u128,
}

impl ClassCounts {
    /// Counts implied by the image classes alone: half the ball accepts and
    /// the rejects are the other half minus the symmetric words.
    pub fn closed_form(alphabet: &crate::alphabet::Alphabet, n: usize) -> Result<Self> {
        let s = slot_budget(alphabet, n)?;
        Ok(ClassCounts { n, accept: s.accept_capacity, reject: s.reject_capacity, bottom: s.bottom_capacity, total: s.total() })
    }

    /// `|[B_n]^P_ψ(p)| = |B_n|/2 − (1−p)/2·|[B_n]_⊥|`.
    pub fn decided(&self, p: Sign) -> u128 {
        match p {
            Sign::Plus => self.accept,
            Sign::Minus => self.reject,
        }
    }

    pub fn lemma_holds(&self) -> bool {
        let half = self.total / 2;
        self.accept + self.reject + self.bottom == self.total
            && self.accept == half
            && self.reject + self.bottom == half
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorlessReport {
    pub checked: u64,
    pub bottoms: u64,
    /// Inputs where `P` accepted a non-member or rejected a member.
    pub wrong: Vec<Word>,
    pub passed: bool,
}

/// Checks that `P` never contradicts the ground truth on `Σ^{≤max_len}`.
pub fn verify_errorless(lang: &dyn Language, decider: &RoughDecider, max_len: usize) -> Result<ErrorlessReport> {
    let alphabet = decider.iso().alphabet().clone();
    let mut checked = 0;
    let mut bottoms = 0;
    let mut wrong = Vec::new();
    for x in alphabet.words_up_to(max_len) {
        checked += 1;
        let truth = lang.decide(&x);
        match (decider.decide_rough(&x)?, truth) {
            (Verdict::Bottom, _) => bottoms += 1,
            (Verdict::Accept, Membership::In) | (Verdict::Reject, Membership::Out) => {}
            _ => wrong.push(x),
        }
    }
    let passed = wrong.is_empty();
    Ok(ErrorlessReport { checked, bottoms, wrong, passed })
}
