//! Ground-truth languages, padding functions and the paddability checker.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Membership {
    In,
    Out,
}

impl Membership {
    pub fn from_bool(member: bool) -> Self {
        if member {
            Membership::In
        } else {
            Membership::Out
        }
    }

    pub fn is_in(self) -> bool {
        self == Membership::In
    }
}

/// A total membership decider on `Σ*`.
pub trait Language: Send + Sync {
    fn name(&self) -> &str;
    fn decide(&self, x: &Word) -> Membership;
}

/// Result of decoding a padded word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub word: Word,
    /// False when the input is not in the image of `pad`; `word` is then
    /// a best-effort prefix decode.
    pub in_image: bool,
}

pub trait Padding: Send + Sync {
    fn pad(&self, x: &Word, y: &Word) -> Word;
    fn dec(&self, w: &Word) -> Decoded;
}

const MARKER: [u8; 4] = [1, 2, 1, 2];

/// `pad(x, y) = x ∘ 1212 ∘ stuttered(y)`.
///
/// The marker has even weight and ends in an unequal pair, so `dec` reads
/// equal pairs from the right until it hits the marker. Membership of
/// prefix- or weight-parity-defined languages is unchanged.
#[derive(Clone, Copy, Debug, Default)]
pub struct MarkerPadding;

impl Padding for MarkerPadding {
    fn pad(&self, x: &Word, y: &Word) -> Word {
        x.concat(&Word::from(MARKER)).concat(&y.stuttered())
    }

    fn dec(&self, w: &Word) -> Decoded {
        let v = w.indices();
        let mut i = v.len();
        let mut rev = Vec::new();
        while i >= 2 && v[i - 2] == v[i - 1] {
            rev.push(v[i - 1]);
            i -= 2;
        }
        let in_image = i >= 4 && v[i - 4..i] == MARKER;
        rev.reverse();
        Decoded { word: Word::new(rev), in_image }
    }
}

/// `{x : ω(x) odd}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct OddWeight;

impl Language for OddWeight {
    fn name(&self) -> &str {
        "odd_weight"
    }

    fn decide(&self, x: &Word) -> Membership {
        Membership::from_bool(x.has_odd_weight())
    }
}

/// `{x : x non-empty and its first symbol is 2}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FirstIsTwo;

impl Language for FirstIsTwo {
    fn name(&self) -> &str {
        "first_is_two"
    }

    fn decide(&self, x: &Word) -> Membership {
        Membership::from_bool(x.first() == Some(2))
    }
}

/// Explicit membership table over `Σ^{≤max_len}`; longer words are out.
#[derive(Clone, Debug)]
pub struct TableLanguage {
    max_len: usize,
    members: BTreeSet<Word>,
}

impl TableLanguage {
    pub fn new(alphabet: &Alphabet, max_len: usize, members: impl IntoIterator<Item = Word>) -> Result<Self> {
        let members: BTreeSet<Word> = members.into_iter().collect();
        for w in &members {
            alphabet.check(w)?;
            if w.len() > max_len {
                return Err(Error::Config(format!(
                    "table member {w} is longer than maxLen {max_len}"
                )));
            }
        }
        Ok(TableLanguage { max_len, members })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn members(&self) -> impl Iterator<Item = &Word> {
        self.members.iter()
    }
}

impl Language for TableLanguage {
    fn name(&self) -> &str {
        "table"
    }

    fn decide(&self, x: &Word) -> Membership {
        Membership::from_bool(self.members.contains(x))
    }
}

/// A language as named in a run configuration.
#[derive(Clone, Debug)]
pub enum LanguageSpec {
    OddWeight,
    FirstIsTwo,
    Table(TableLanguage),
}

impl LanguageSpec {
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "odd_weight" => Ok(LanguageSpec::OddWeight),
            "first_is_two" => Ok(LanguageSpec::FirstIsTwo),
            other => Err(Error::Config(format!("unknown builtin language {other:?}"))),
        }
    }

    /// Padding functions, when the language ships with them.
    pub fn padding(&self) -> Option<&dyn Padding> {
        match self {
            LanguageSpec::OddWeight | LanguageSpec::FirstIsTwo => Some(&MarkerPadding),
            LanguageSpec::Table(_) => None,
        }
    }
}

impl Language for LanguageSpec {
    fn name(&self) -> &str {
        match self {
            LanguageSpec::OddWeight => OddWeight.name(),
            LanguageSpec::FirstIsTwo => FirstIsTwo.name(),
            LanguageSpec::Table(t) => t.name(),
        }
    }

    fn decide(&self, x: &Word) -> Membership {
        match self {
            LanguageSpec::OddWeight => OddWeight.decide(x),
            LanguageSpec::FirstIsTwo => FirstIsTwo.decide(x),
            LanguageSpec::Table(t) => t.decide(x),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PaddabilityReport {
    pub checked_pairs: u64,
    /// Pairs where `pad(x, y) ∈ L ⟺ x ∈ L` fails.
    pub axiom1_violations: Vec<(Word, Word)>,
    /// Pairs where `dec(pad(x, y)) = y` fails.
    pub axiom2_violations: Vec<(Word, Word)>,
    pub passed: bool,
}

/// Checks both padding axioms for every `x, y` with `|x|, |y| ≤ max_len`.
pub fn check_paddability(
    lang: &dyn Language,
    padding: &dyn Padding,
    alphabet: &Alphabet,
    max_len: usize,
) -> PaddabilityReport {
    let mut checked = 0u64;
    let mut ax1 = Vec::new();
    let mut ax2 = Vec::new();
    let words: Vec<Word> = alphabet.words_up_to(max_len).collect();
    for x in &words {
        let mx = lang.decide(x);
        for y in &words {
            checked += 1;
            let p = padding.pad(x, y);
            if lang.decide(&p) != mx {
                ax1.push((x.clone(), y.clone()));
            }
            let d = padding.dec(&p);
            if !d.in_image || &d.word != y {
                ax2.push((x.clone(), y.clone()));
            }
        }
    }
    let passed = ax1.is_empty() && ax2.is_empty();
    PaddabilityReport { checked_pairs: checked, axiom1_violations: ax1, axiom2_violations: ax2, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Alphabet {
        Alphabet::numbered(2).unwrap()
    }

    #[test]
    fn decide_examples() {
        assert_eq!(OddWeight.decide(&Word::from([1])), Membership::In);
        assert_eq!(OddWeight.decide(&Word::from([1, 1])), Membership::Out);
        assert_eq!(FirstIsTwo.decide(&Word::empty()), Membership::Out);
        assert_eq!(FirstIsTwo.decide(&Word::from([2, 1])), Membership::In);
    }

    #[test]
    fn pad_preserves_membership_and_decodes() {
        let p = MarkerPadding;
        let w = p.pad(&Word::from([1]), &Word::from([2]));
        assert_eq!(w, Word::from([1, 1, 2, 1, 2, 2, 2]));
        assert_eq!(OddWeight.decide(&w), Membership::In);
        assert_eq!(p.dec(&p.pad(&Word::from([1]), &Word::from([2, 1]))).word, Word::from([2, 1]));
        let f = p.pad(&Word::from([2, 1]), &Word::from([1]));
        assert_eq!(f.first(), Some(2));
        assert_eq!(FirstIsTwo.decide(&f), Membership::In);
    }

    #[test]
    fn dec_flags_non_images() {
        let p = MarkerPadding;
        for s in ["", "1", "11", "2222", "1221", "112"] {
            let w = binary().parse_word(s).unwrap();
            assert!(!p.dec(&w).in_image, "{s}");
        }
        assert!(p.dec(&binary().parse_word("1212").unwrap()).in_image);
    }

    #[test]
    fn builtins_are_paddable() {
        for lang in [LanguageSpec::OddWeight, LanguageSpec::FirstIsTwo] {
            let r = check_paddability(&lang, lang.padding().unwrap(), &binary(), 4);
            assert!(r.passed, "{}", lang.name());
            assert_eq!(r.checked_pairs, 31 * 31);
        }
        let quad = Alphabet::numbered(4).unwrap();
        assert!(check_paddability(&OddWeight, &MarkerPadding, &quad, 2).passed);
    }

    struct DropsY;
    impl Padding for DropsY {
        fn pad(&self, x: &Word, _y: &Word) -> Word {
            x.clone()
        }
        fn dec(&self, w: &Word) -> Decoded {
            Decoded { word: w.clone(), in_image: true }
        }
    }

    #[test]
    fn broken_padding_is_caught() {
        let r = check_paddability(&OddWeight, &DropsY, &binary(), 4);
        assert!(!r.passed);
        assert!(r.axiom1_violations.is_empty());
        assert!(!r.axiom2_violations.is_empty());
    }

    #[test]
    fn table_language() {
        let a = binary();
        let t = TableLanguage::new(&a, 2, [Word::from([1, 2]), Word::from([2])]).unwrap();
        assert!(t.decide(&Word::from([1, 2])).is_in());
        assert!(!t.decide(&Word::from([1, 1])).is_in());
        assert!(TableLanguage::new(&a, 1, [Word::from([1, 2])]).is_err());
        assert!(LanguageSpec::Table(t).padding().is_none());
        assert!(LanguageSpec::builtin("nope").is_err());
    }
}
