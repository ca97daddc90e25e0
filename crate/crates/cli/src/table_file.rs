//! JSON files holding a table isomorphism as an ordered pair list.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use phasebench_core::iso::TableIso;
use phasebench_core::Alphabet;
use serde::{Deserialize, Serialize};

#[derive(Debug, Deserialize, Serialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TableFile {
    pub alphabet_size: usize,
    pub budget: usize,
    /// `[input, image]` pairs in input order; words as digit strings.
    pub pairs: Vec<[String; 2]>,
}

pub fn to_json(iso: &TableIso) -> Result<String> {
    let alphabet = iso.alphabet();
    let pairs = iso
        .pairs()?
        .into_iter()
        .map(|(x, y)| [alphabet.format_word(&x), alphabet.format_word(&y)])
        .collect();
    let file = TableFile { alphabet_size: alphabet.size() as usize, budget: iso.budget(), pairs };
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    Ok(text)
}

pub fn from_json(text: &str, alphabet: &Alphabet) -> Result<TableIso> {
    let file: TableFile = serde_json::from_str(text).context("parsing table file")?;
    if file.alphabet_size != alphabet.size() as usize {
        bail!("table is over an alphabet of size {}, config uses {}", file.alphabet_size, alphabet.size());
    }
    let pairs = file
        .pairs
        .iter()
        .map(|[x, y]| Ok((alphabet.parse_word(x)?, alphabet.parse_word(y)?)))
        .collect::<phasebench_core::Result<Vec<_>>>()?;
    let iso = TableIso::from_pairs(alphabet.clone(), &pairs)?;
    if iso.budget() != file.budget {
        bail!("table declares budget {} but its inputs reach length {}", file.budget, iso.budget());
    }
    Ok(iso)
}

pub fn read(path: &Path, alphabet: &Alphabet) -> Result<TableIso> {
    let text = fs::read_to_string(path).with_context(|| format!("reading table {}", path.display()))?;
    from_json(&text, alphabet)
}
