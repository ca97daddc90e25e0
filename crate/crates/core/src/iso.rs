//! Isomorphic encodings `φ` and their output size `N_φ(x) = |φ(x)|`.
//!
//! Two kinds are provided: the identity, and a finite table over
//! `Σ^{≤budget}` built so that the three-case decider is errorless for a
//! given language. The table construction is a greedy slot assignment:
//! members take odd-weight images, non-members take even-weight asymmetric
//! images, and whichever class runs out spills into symmetric images.

use serde::Serialize;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::language::Language;
use crate::roughp::{classify_image, Verdict};

#[derive(Clone, Debug)]
pub enum PIso {
    Identity(Alphabet),
    Table(TableIso),
}

impl PIso {
    pub fn identity(alphabet: Alphabet) -> Self {
        PIso::Identity(alphabet)
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            PIso::Identity(a) => a,
            PIso::Table(t) => &t.alphabet,
        }
    }

    /// Maximum input length covered; `None` for the identity.
    pub fn budget(&self) -> Option<usize> {
        match self {
            PIso::Identity(_) => None,
            PIso::Table(t) => Some(t.budget),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PIso::Identity(_) => "identity",
            PIso::Table(_) => "table",
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        match self.budget() {
            Some(budget) if len > budget => Err(Error::BudgetExceeded { len, budget }),
            _ => Ok(()),
        }
    }

    pub fn apply(&self, x: &Word) -> Result<Word> {
        self.check_len(x.len())?;
        match self {
            PIso::Identity(_) => Ok(x.clone()),
            PIso::Table(t) => t.apply(x),
        }
    }

    pub fn invert(&self, w: &Word) -> Result<Word> {
        self.check_len(w.len())?;
        match self {
            PIso::Identity(_) => Ok(w.clone()),
            PIso::Table(t) => t.invert(w),
        }
    }

    pub fn output_size(&self, x: &Word) -> Result<usize> {
        match self {
            PIso::Identity(_) => Ok(x.len()),
            PIso::Table(_) => self.apply(x).map(|w| w.len()),
        }
    }
}

/// A finite bijection `Σ^{≤budget} → Σ^{≤budget}`, indexed by the
/// shortest-first lexicographic position of each word.
#[derive(Clone, Debug)]
pub struct TableIso {
    alphabet: Alphabet,
    budget: usize,
    forward: Vec<u32>,
    inverse: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl TableIso {
    fn from_forward(alphabet: Alphabet, budget: usize, forward: Vec<u32>) -> Self {
        let mut inverse = vec![UNSET; forward.len()];
        for (x, &y) in forward.iter().enumerate() {
            inverse[y as usize] = x as u32;
        }
        TableIso { alphabet, budget, forward, inverse }
    }

    /// Builds a table from explicit `(input, image)` pairs. The inputs must
    /// cover `Σ^{≤budget}` exactly once; images are not checked for
    /// injectivity here (see [`verify_bijection`]).
    pub fn from_pairs(alphabet: Alphabet, pairs: &[(Word, Word)]) -> Result<Self> {
        let budget = pairs.iter().map(|(x, _)| x.len()).max().unwrap_or(0);
        let size = domain_size(&alphabet, budget)?;
        let mut forward = vec![UNSET; size];
        for (x, y) in pairs {
            alphabet.check(x)?;
            alphabet.check(y)?;
            if y.len() > budget {
                return Err(Error::BudgetExceeded { len: y.len(), budget });
            }
            let xi = alphabet.global_index(x)? as usize;
            if forward[xi] != UNSET {
                return Err(Error::Config(format!("input {x} listed twice")));
            }
            forward[xi] = alphabet.global_index(y)? as u32;
        }
        if let Some(missing) = forward.iter().position(|&v| v == UNSET) {
            let w = alphabet.word_at(missing as u128)?;
            return Err(Error::Config(format!("input {w} has no image")));
        }
        Ok(Self::from_forward(alphabet, budget, forward))
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn apply(&self, x: &Word) -> Result<Word> {
        let i = self.alphabet.global_index(x)? as usize;
        self.alphabet.word_at(u128::from(self.forward[i]))
    }

    fn invert(&self, w: &Word) -> Result<Word> {
        let i = self.alphabet.global_index(w)? as usize;
        match self.inverse[i] {
            UNSET => Err(Error::NoPreimage(w.to_string())),
            x => self.alphabet.word_at(u128::from(x)),
        }
    }

    /// `(input, image)` pairs in input order.
    pub fn pairs(&self) -> Result<Vec<(Word, Word)>> {
        self.forward
            .iter()
            .enumerate()
            .map(|(x, &y)| Ok((self.alphabet.word_at(x as u128)?, self.alphabet.word_at(u128::from(y))?)))
            .collect()
    }
}

fn domain_size(alphabet: &Alphabet, budget: usize) -> Result<usize> {
    let n = alphabet.count_up_to(budget)?;
    if n >= u128::from(UNSET) {
        return Err(Error::CountOverflow { size: alphabet.size(), len: budget });
    }
    Ok(n as usize)
}

/// Image-slot capacities of one length class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SlotBudget {
    pub n: usize,
    pub accept_capacity: u128,
    pub reject_capacity: u128,
    pub bottom_capacity: u128,
}

impl SlotBudget {
    pub fn total(&self) -> u128 {
        self.accept_capacity + self.reject_capacity + self.bottom_capacity
    }
}

pub fn slot_budget(alphabet: &Alphabet, n: usize) -> Result<SlotBudget> {
    let total = alphabet.count(n)?;
    let bottom = if n % 2 == 0 { alphabet.count(n / 2)? } else { 0 };
    // The empty word is the one even-weight word of length 0.
    let (accept, reject) = if n == 0 { (0, 0) } else { (total / 2, total / 2 - bottom) };
    Ok(SlotBudget { n, accept_capacity: accept, reject_capacity: reject, bottom_capacity: bottom })
}

/// Greedy table construction on `Σ^{≤budget}`.
///
/// Inputs are taken in shortest-first lexicographic order; each takes the
/// smallest free image of its class, falling back to the smallest free
/// symmetric image.
pub fn build_table_iso(lang: &dyn Language, alphabet: &Alphabet, budget: usize) -> Result<PIso> {
    if budget == 0 {
        return Err(Error::Config("isomorphism budget must be at least 1".into()));
    }
    let size = domain_size(alphabet, budget)?;
    let mut odd = Vec::new();
    let mut even = Vec::new();
    let mut sym = Vec::new();
    for (i, w) in alphabet.words_up_to(budget).enumerate() {
        match classify_image(&w) {
            Verdict::Accept => odd.push(i as u32),
            Verdict::Reject => even.push(i as u32),
            Verdict::Bottom => sym.push(i as u32),
        }
    }
    let (mut oi, mut ei, mut si) = (0usize, 0usize, 0usize);
    let mut forward = Vec::with_capacity(size);
    for x in alphabet.words_up_to(budget) {
        let member = lang.decide(&x).is_in();
        let (own, cursor) = if member { (&odd, &mut oi) } else { (&even, &mut ei) };
        let slot = if *cursor < own.len() {
            *cursor += 1;
            own[*cursor - 1]
        } else if si < sym.len() {
            si += 1;
            sym[si - 1]
        } else {
            let class = if member { "members" } else { "non-members" };
            return Err(Error::Infeasible {
                length: x.len(),
                detail: format!(
                    "{class} exceed the available {} and symmetric images (first unplaced input {x})",
                    if member { "odd-weight" } else { "even-weight asymmetric" }
                ),
            });
        };
        forward.push(slot);
    }
    // Every odd image needs a member and every even asymmetric image a
    // non-member; leftovers mean the opposite class is too small.
    for (slots, cursor, what) in [(&odd, oi, "odd-weight"), (&even, ei, "even-weight asymmetric")] {
        if let Some(&first) = slots.get(cursor) {
            let w = alphabet.word_at(u128::from(first))?;
            return Err(Error::Infeasible {
                length: w.len(),
                detail: format!("{} {what} images have no admissible preimage (first {w})", slots.len() - cursor),
            });
        }
    }
    Ok(PIso::Table(TableIso::from_forward(alphabet.clone(), budget, forward)))
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BijectionReport {
    pub checked: u64,
    /// `(first input, second input, shared image)`.
    pub duplicate_images: Vec<(Word, Word, Word)>,
    pub missing_images: Vec<Word>,
    pub round_trip_failures: Vec<Word>,
    pub passed: bool,
}

/// Checks injectivity, surjectivity onto `Σ^{≤budget}`, and both round trips.
pub fn verify_bijection(iso: &PIso, budget: usize) -> Result<BijectionReport> {
    let alphabet = iso.alphabet();
    let size = domain_size(alphabet, budget)?;
    let mut seen: Vec<Option<Word>> = vec![None; size];
    let mut report = BijectionReport::default();
    for x in alphabet.words_up_to(budget) {
        report.checked += 1;
        let y = iso.apply(&x)?;
        if y.len() > budget {
            report.round_trip_failures.push(x);
            continue;
        }
        let yi = alphabet.global_index(&y)? as usize;
        match &seen[yi] {
            Some(prev) => report.duplicate_images.push((prev.clone(), x.clone(), y.clone())),
            None => seen[yi] = Some(x.clone()),
        }
        if iso.invert(&y).ok().as_ref() != Some(&x) {
            report.round_trip_failures.push(x.clone());
        }
    }
    for (i, s) in seen.iter().enumerate() {
        if s.is_none() {
            let w = alphabet.word_at(i as u128)?;
            report.missing_images.push(w);
        }
    }
    report.passed = report.duplicate_images.is_empty()
        && report.missing_images.is_empty()
        && report.round_trip_failures.is_empty();
    Ok(report)
}
