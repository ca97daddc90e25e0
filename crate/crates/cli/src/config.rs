//! The JSON run configuration and its resolution into core objects.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use phasebench_core::exact::{parse_rational, DecayConstant, Polynomial};
use phasebench_core::iso::build_table_iso;
use phasebench_core::{Alphabet, BoundParams, LanguageSpec, PIso, RoughDecider, Splitter, TableLanguage};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_alphabet_size")]
    pub alphabet_size: usize,
    pub language: LanguageBlock,
    #[serde(default)]
    pub iso: IsoBlock,
    /// Largest output size `N_φ` to enumerate.
    pub budget: u32,
    #[serde(default)]
    pub bounds: BoundsBlock,
    #[serde(default = "default_one")]
    pub delta: f64,
    #[serde(default = "default_one")]
    pub exempt_radius: f64,
    /// Required window-to-window growth; defaults to `|Σ|`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth_base: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub test_hooks: TestHooks,
}

fn default_alphabet_size() -> usize {
    2
}

fn default_one() -> f64 {
    1.0
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum LanguageBlock {
    Builtin(String),
    Table(TableBlock),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TableBlock {
    pub max_len: usize,
    pub members: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoMode {
    #[default]
    Identity,
    Table,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IsoBlock {
    #[serde(default)]
    pub mode: IsoMode,
    /// Longest input covered by a built table; defaults to the run budget.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    /// Exported table to load instead of building one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BoundsBlock {
    #[serde(default = "default_c")]
    pub c: String,
    #[serde(default = "default_poly")]
    pub poly: Vec<Coeff>,
}

fn default_c() -> String {
    "1/sqrt(2)".into()
}

fn default_poly() -> Vec<Coeff> {
    vec![Coeff::Int(4)]
}

impl Default for BoundsBlock {
    fn default() -> Self {
        BoundsBlock { c: default_c(), poly: default_poly() }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TestHooks {
    #[serde(default)]
    pub sabotage_qprime: bool,
}

/// Command-line values that replace top-level config fields.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub budget: Option<u32>,
    pub poly: Option<String>,
    pub c: Option<String>,
    pub out: Option<PathBuf>,
    pub table: Option<PathBuf>,
    pub e1: Option<f64>,
    pub e2: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("parsing config")
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(b) = o.budget {
            self.budget = b;
        }
        if let Some(p) = &o.poly {
            self.bounds.poly = p.split(',').map(|s| Coeff::Text(s.trim().to_string())).collect();
        }
        if let Some(c) = &o.c {
            self.bounds.c = c.clone();
        }
        if let Some(out) = &o.out {
            self.output_path = Some(out.clone());
        }
        if let Some(t) = &o.table {
            self.iso.path = Some(t.clone());
        }
        if o.e1.is_some() {
            self.e1 = o.e1;
        }
        if o.e2.is_some() {
            self.e2 = o.e2;
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            bail!("budget must be at least 1");
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            bail!("delta must be a positive number (got {})", self.delta);
        }
        if !(self.exempt_radius >= 0.0 && self.exempt_radius.is_finite()) {
            bail!("exemptRadius must be non-negative (got {})", self.exempt_radius);
        }
        if let Some(g) = self.growth_base {
            if !(g > 1.0 && g.is_finite()) {
                bail!("growthBase must exceed 1 (got {g})");
            }
        }
        Ok(())
    }

    pub fn bound_params(&self) -> Result<BoundParams> {
        let c = DecayConstant::parse(&self.bounds.c)?;
        c.validate()?;
        let coeffs = self
            .bounds
            .poly
            .iter()
            .map(|k| match k {
                Coeff::Int(v) => Ok(phasebench_core::exact::int(*v)),
                Coeff::Text(s) => parse_rational(s),
            })
            .collect::<phasebench_core::Result<Vec<_>>>()?;
        Ok(BoundParams::new(c, Polynomial::new(coeffs)?))
    }

    pub fn growth_base(&self) -> f64 {
        self.growth_base.unwrap_or(self.alphabet_size as f64)
    }
}

/// Core objects resolved from a config.
pub struct Setup {
    pub config: RunConfig,
    pub alphabet: Alphabet,
    pub language: LanguageSpec,
    pub bounds: BoundParams,
}

impl Setup {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        let alphabet = Alphabet::numbered(config.alphabet_size)?;
        let language = match &config.language {
            LanguageBlock::Builtin(name) => LanguageSpec::builtin(name)?,
            LanguageBlock::Table(t) => {
                let members = t
                    .members
                    .iter()
                    .map(|m| alphabet.parse_word(m))
                    .collect::<phasebench_core::Result<Vec<_>>>()?;
                LanguageSpec::Table(TableLanguage::new(&alphabet, t.max_len, members)?)
            }
        };
        let bounds = config.bound_params()?;
        Ok(Setup { config, alphabet, language, bounds })
    }

    pub fn budget(&self) -> usize {
        self.config.budget as usize
    }

    fn splitter(&self) -> Splitter {
        if self.config.test_hooks.sabotage_qprime {
            Splitter::Sabotaged
        } else {
            Splitter::WeightParity
        }
    }

    /// A freshly built table isomorphism for the configured language.
    pub fn build_table(&self) -> Result<PIso> {
        let budget = self.config.iso.budget.unwrap_or(self.budget());
        if budget < self.budget() {
            bail!("iso budget {budget} is below the run budget {}", self.budget());
        }
        Ok(build_table_iso(&self.language, &self.alphabet, budget)?)
    }

    /// The configured isomorphism: identity, an imported table, or a built one.
    pub fn iso(&self) -> Result<PIso> {
        match (self.config.iso.mode, &self.config.iso.path) {
            (IsoMode::Identity, _) => Ok(PIso::identity(self.alphabet.clone())),
            (IsoMode::Table, Some(path)) => {
                let iso = crate::table_file::read(path, &self.alphabet)?;
                if iso.budget() < self.budget() {
                    bail!("table at {} covers lengths up to {}, below budget {}", path.display(), iso.budget(), self.budget());
                }
                Ok(PIso::Table(iso))
            }
            (IsoMode::Table, None) => self.build_table(),
        }
    }

    pub fn decider(&self) -> Result<RoughDecider> {
        Ok(RoughDecider::new(self.iso()?).with_splitter(self.splitter()))
    }

    pub fn decider_for(&self, iso: PIso) -> RoughDecider {
        RoughDecider::new(iso).with_splitter(self.splitter())
    }
}
