use anyhow::Result;
use phasebench_core::analysis::compute_f;
use phasebench_core::exact::{ratio, DecayConstant, Surd};
use phasebench_core::language::check_paddability;
use phasebench_core::roughp::{qprime, verify_errorless};
use phasebench_core::{parity_counts, parity_counts_enumerated, ClassCounts, Language, RoughDecider, Sign};
use serde::Serialize;

use crate::config::Setup;

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Suite {
    pub name: &'static str,
    pub passed: bool,
    pub skipped: bool,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, passed: true, skipped: false, checked: 0, counterexample: None, detail: None }
    }

    fn fail(&mut self, counterexample: String, detail: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(counterexample);
            self.detail = Some(detail);
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmasReport {
    pub alphabet_size: usize,
    pub language: String,
    pub iso: &'static str,
    pub budget: u32,
    pub suites: Vec<Suite>,
    pub passed: bool,
}

fn parity_suite(setup: &Setup) -> Result<Suite> {
    let mut s = Suite::new("parity_counts");
    for n in 1..=setup.budget() {
        s.checked += 1;
        let rec = parity_counts(setup.config.alphabet_size, n)?;
        let enumerated = parity_counts_enumerated(&setup.alphabet, n);
        if rec != enumerated || rec.even != rec.odd {
            s.fail(
                format!("n={n}"),
                format!("recurrence ({}, {}) vs enumeration ({}, {})", rec.even, rec.odd, enumerated.even, enumerated.odd),
            );
        }
    }
    Ok(s)
}

fn split_suite(setup: &Setup, decider: &RoughDecider) -> Result<Suite> {
    let mut s = Suite::new("dividing_split");
    for n in (2..=setup.budget()).step_by(2) {
        let (mut plus, mut minus) = (0u128, 0u128);
        for z in setup.alphabet.words(n / 2) {
            s.checked += 1;
            let w = z.concat(&z);
            let got = decider.splitter().split(&w)?;
            match got {
                Sign::Plus => plus += 1,
                Sign::Minus => minus += 1,
            }
            let expected = qprime(&w)?;
            if got != expected {
                s.fail(
                    setup.alphabet.format_word(&w),
                    format!("splitter gave {got}, half-word weight parity gives {expected}"),
                );
            }
        }
        if plus != minus {
            s.fail(format!("n={n}"), format!("symmetric words split {plus} (+1) vs {minus} (-1)"));
        }
    }
    Ok(s)
}

fn class_suites(setup: &Setup, decider: &RoughDecider) -> Result<(Suite, Suite)> {
    let mut counts = Suite::new("class_counts");
    let mut sizes = Suite::new("slice_sizes");
    for n in 1..=setup.budget() {
        counts.checked += 1;
        sizes.checked += 1;
        let c = decider.class_counts(n)?;
        let expected = ClassCounts::closed_form(&setup.alphabet, n)?;
        if c != expected || !c.lemma_holds() {
            counts.fail(
                format!("n={n}"),
                format!("(accept, reject, bottom) = ({}, {}, {}), expected ({}, {}, {})", c.accept, c.reject, c.bottom, expected.accept, expected.reject, expected.bottom),
            );
        }
        let (bp, bm) = decider.bottom_split(n)?;
        let plus = c.decided(Sign::Plus) + bp;
        let minus = c.decided(Sign::Minus) + bm;
        let (want_plus, want_minus) = (c.total / 2 + c.bottom / 2, c.total / 2 - c.bottom / 2);
        if (plus, minus) != (want_plus, want_minus) {
            sizes.fail(format!("n={n}"), format!("slice sizes ({plus}, {minus}), expected ({want_plus}, {want_minus})"));
        }
    }
    Ok((counts, sizes))
}

fn bottom_fraction_suite(setup: &Setup, decider: &RoughDecider) -> Result<Suite> {
    let mut s = Suite::new("bottom_fraction");
    let half_power = DecayConstant::InvSqrt(2);
    let size = setup.alphabet.size();
    for n in 1..=setup.budget() {
        s.checked += 1;
        let f = decider.bottom_fraction(n)?;
        let expected = if n % 2 == 0 {
            ratio(1, num_bigint::BigInt::from(size).pow((n / 2) as u32))
        } else {
            ratio(0, 1)
        };
        let bound = half_power.pow(n as u32);
        if f != expected || Surd::from_rational(f.clone()) > bound {
            s.fail(format!("n={n}"), format!("bottom fraction {f}, expected {expected}, bound {bound}"));
        }
    }
    Ok(s)
}

fn f_suite(setup: &Setup, decider: &RoughDecider) -> Result<Suite> {
    let mut s = Suite::new("f_bound");
    let c = DecayConstant::InvSqrt(2);
    for n in 1..=setup.budget() {
        for p in [Sign::Minus, Sign::Plus] {
            s.checked += 1;
            let f = compute_f(decider, n, p, &c)?;
            if f.exceeds {
                s.fail(format!("n={n}, p={p}"), format!("F = {} exceeds {}", f.value, f.bound));
            }
        }
    }
    Ok(s)
}

fn errorless_suite(setup: &Setup, decider: &RoughDecider) -> Result<Suite> {
    let mut s = Suite::new("errorless");
    let r = verify_errorless(&setup.language, decider, setup.budget())?;
    s.checked = r.checked;
    if let Some(w) = r.wrong.first() {
        s.fail(setup.alphabet.format_word(w), format!("{} inputs decided against the ground truth", r.wrong.len()));
    }
    Ok(s)
}

const PAD_PAIRS: u128 = 1 << 20;

fn paddability_suite(setup: &Setup) -> Result<Suite> {
    let mut s = Suite::new("paddability");
    let Some(padding) = setup.language.padding() else {
        s.skipped = true;
        s.detail = Some("table languages carry no padding functions".into());
        return Ok(s);
    };
    let mut len = 0;
    while len < setup.budget() {
        let next = setup.alphabet.count_up_to(len + 1)?;
        if next * next > PAD_PAIRS {
            break;
        }
        len += 1;
    }
    let r = check_paddability(&setup.language, padding, &setup.alphabet, len);
    s.checked = r.checked_pairs;
    let first = r.axiom1_violations.first().map(|p| ("pad preserves membership", p));
    let first = first.or(r.axiom2_violations.first().map(|p| ("dec inverts pad", p)));
    if let Some((what, (x, y))) = first {
        let f = |w| setup.alphabet.format_word(w);
        s.fail(format!("x={}, y={}", f(x), f(y)), format!("{what} fails"));
    }
    Ok(s)
}

pub fn run(setup: &Setup) -> Result<LemmasReport> {
    let decider = setup.decider()?;
    let (counts, sizes) = class_suites(setup, &decider)?;
    let suites = vec![
        parity_suite(setup)?,
        split_suite(setup, &decider)?,
        counts,
        sizes,
        bottom_fraction_suite(setup, &decider)?,
        f_suite(setup, &decider)?,
        errorless_suite(setup, &decider)?,
        paddability_suite(setup)?,
    ];
    Ok(LemmasReport {
        alphabet_size: setup.config.alphabet_size,
        language: setup.language.name().to_string(),
        iso: decider.iso().kind(),
        budget: setup.config.budget,
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}
