//! Even-sized alphabets and words over them.
//!
//! Symbols are stored as their 1-based index in the alphabet's numbering,
//! so the weight of a word is simply the sum of its indices. Words of a
//! fixed length are enumerated in lexicographic order of index sequences;
//! `rank`/`unrank` are the matching bijections onto `0..|Σ|ⁿ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    /// The alphabet `{1, ..., size}` labelled by its own indices.
    pub fn numbered(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Alphabet { symbols: (1..=size).map(|i| i.to_string()).collect() })
    }

    /// An alphabet over arbitrary labels. Labels are numbered in
    /// lexicographic order.
    pub fn from_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_size(symbols.len())?;
        symbols.sort();
        if let Some(w) = symbols.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
        Ok(Alphabet { symbols })
    }

    pub fn size(&self) -> u32 {
        self.symbols.len() as u32
    }

    pub fn label(&self, index: u8) -> Option<&str> {
        self.symbols.get(usize::from(index).checked_sub(1)?).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<u8> {
        self.symbols.iter().position(|s| s == label).map(|i| (i + 1) as u8)
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.0.iter().all(|&s| s >= 1 && u32::from(s) <= self.size())
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&s| s == 0 || u32::from(s) > self.size()) {
            Some(&s) => Err(Error::SymbolOutOfRange { index: u32::from(s), size: self.size() }),
            None => Ok(()),
        }
    }

    /// `|Σ|ⁿ`, checked.
    pub fn count(&self, n: usize) -> Result<u128> {
        pow_checked(self.size(), n)
    }

    /// `|Σ^{≤n}| = Σ_{j=0}^{n} |Σ|ʲ`, checked.
    pub fn count_up_to(&self, n: usize) -> Result<u128> {
        (0..=n).try_fold(0u128, |acc, j| {
            acc.checked_add(self.count(j)?)
                .ok_or(Error::CountOverflow { size: self.size(), len: n })
        })
    }

    /// Lexicographic iterator over `Σⁿ`.
    pub fn words(&self, n: usize) -> Words {
        Words { size: self.size() as u8, current: Some(vec![1; n]) }
    }

    /// All words of length `0..=max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max_len).flat_map(move |n| self.words(n))
    }

    pub fn rank(&self, w: &Word) -> u128 {
        let size = u128::from(self.size());
        w.0.iter().fold(0u128, |acc, &s| acc * size + u128::from(s - 1))
    }

    pub fn unrank(&self, n: usize, rank: u128) -> Result<Word> {
        let count = self.count(n)?;
        if rank >= count {
            return Err(Error::RankOutOfRange { rank, len: n, count });
        }
        let size = u128::from(self.size());
        let mut out = vec![0u8; n];
        let mut r = rank;
        for slot in out.iter_mut().rev() {
            *slot = (r % size) as u8 + 1;
            r /= size;
        }
        Ok(Word(out))
    }

    /// Position of `w` in the shortest-first, then lexicographic, order of `Σ*`.
    pub fn global_index(&self, w: &Word) -> Result<u128> {
        let before = if w.is_empty() { 0 } else { self.count_up_to(w.len() - 1)? };
        Ok(before + self.rank(w))
    }

    pub fn word_at(&self, mut index: u128) -> Result<Word> {
        let mut n = 0;
        loop {
            let c = self.count(n)?;
            if index < c {
                return self.unrank(n, index);
            }
            index -= c;
            n += 1;
        }
    }

    /// Parses a digit string (`"1212"`) or, for alphabets larger than 9,
    /// a comma-separated index list (`"10,3,12"`).
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        let bad = || Error::ParseWord(s.to_string());
        let indices: Vec<u8> = if s.is_empty() {
            Vec::new()
        } else if s.contains(',') || self.size() > 9 {
            s.split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        let w = Word(indices);
        self.check(&w).map_err(|_| bad())?;
        Ok(w)
    }

    pub fn format_word(&self, w: &Word) -> String {
        if self.size() > 9 {
            w.0.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
        } else {
            w.to_string()
        }
    }
}

fn check_size(size: usize) -> Result<()> {
    if size < 2 || size % 2 != 0 || size > 254 {
        return Err(Error::InvalidAlphabet(size));
    }
    Ok(())
}

fn pow_checked(size: u32, n: usize) -> Result<u128> {
    let exp = u32::try_from(n).map_err(|_| Error::CountOverflow { size, len: n })?;
    u128::from(size)
        .checked_pow(exp)
        .ok_or(Error::CountOverflow { size, len: n })
}

/// A word as a sequence of 1-based symbol indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(indices: Vec<u8>) -> Self {
        Word(indices)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Sum of symbol indices.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&s| u64::from(s)).sum()
    }

    pub fn has_odd_weight(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// True iff the word is `z∘z` for some `z` (the empty word included).
    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        n % 2 == 0 && self.0[..n / 2] == self.0[n / 2..]
    }

    /// The half `z` of a symmetric word `z∘z`.
    pub fn half(&self) -> Option<Word> {
        self.is_symmetric().then(|| Word(self.0[..self.len() / 2].to_vec()))
    }

    /// Each symbol repeated twice.
    pub fn stuttered(&self) -> Word {
        Word(self.0.iter().flat_map(|&s| [s, s]).collect())
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[u8; N]> for Word {
    fn from(v: [u8; N]) -> Self {
        Word(v.to_vec())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s <= 9) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Odometer over `Σⁿ` in lexicographic order.
pub struct Words {
    size: u8,
    current: Option<Vec<u8>>,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.take()?;
        let out = Word(cur.clone());
        let mut next = cur;
        let mut i = next.len();
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if next[i] < self.size {
                next[i] += 1;
                advanced = true;
                break;
            }
            next[i] = 1;
        }
        if advanced {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Numbers of even- and odd-weight words of one length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ParityCounts {
    pub n: usize,
    pub even: u128,
    pub odd: u128,
}

/// Parity counts via `#_E(n+1) = #_O(n+1) = (|Σ|/2)(#_E(n) + #_O(n))`,
/// seeded with `#_E(1) = #_O(1) = |Σ|/2`.
pub fn parity_counts(alphabet_size: usize, n: usize) -> Result<ParityCounts> {
    check_size(alphabet_size)?;
    if n == 0 {
        return Err(Error::Config("parity counts are defined for n >= 1".into()));
    }
    let size = alphabet_size as u32;
    let half = u128::from(size / 2);
    let overflow = Error::CountOverflow { size, len: n };
    let (mut even, mut odd) = (half, half);
    for _ in 1..n {
        let total = even.checked_add(odd).ok_or(overflow.clone())?;
        let next = half.checked_mul(total).ok_or(overflow.clone())?;
        even = next;
        odd = next;
    }
    Ok(ParityCounts { n, even, odd })
}

/// Parity counts by walking every word of `Σⁿ`.
pub fn parity_counts_enumerated(alphabet: &Alphabet, n: usize) -> ParityCounts {
    let (mut even, mut odd) = (0u128, 0u128);
    for w in alphabet.words(n) {
        if w.has_odd_weight() {
            odd += 1;
        } else {
            even += 1;
        }
    }
    ParityCounts { n, even, odd }
}
