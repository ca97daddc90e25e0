//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use phasebench_cli::commands::scan as scan_cmd;
use phasebench_cli::config::{RunConfig, Setup};
use phasebench_cli::output::scan_csv;
use phasebench_core::analysis::{
    balance_check, compute_f, density_counts, fixed_width_count, generate_reassignment, geometric_count,
    inverted_threshold, requirement12_check, requirement3_check, scan, sharpen_parameter, sharpening_constant,
    threshold, threshold_holds, verify_acc_bounds, verify_zero_balance, BoundParams, ScanReport,
};
use phasebench_core::exact::{int, ratio, DecayConstant, Polynomial, Surd};
use phasebench_core::iso::build_table_iso;
use phasebench_core::{
    parity_counts, parity_counts_enumerated, Alphabet, ClassCounts, FirstIsTwo, Language, OddWeight, Orientation,
    PIso, ParamValue, RoughDecider, Sign, Word,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn alphabet(size: usize) -> Alphabet {
    Alphabet::numbered(size).unwrap()
}

fn identity(size: usize) -> RoughDecider {
    RoughDecider::new(PIso::identity(alphabet(size)))
}

fn table(lang: &dyn Language, size: usize, budget: usize) -> RoughDecider {
    RoughDecider::new(build_table_iso(lang, &alphabet(size), budget).unwrap())
}

fn pv(sign: Sign, n: u32) -> ParamValue {
    ParamValue::new(sign, n).unwrap()
}

/// Deciders covered by the counting criteria: `(label, decider, budget)`.
fn deciders() -> Vec<(&'static str, RoughDecider, usize)> {
    vec![
        ("binary identity", identity(2), 12),
        ("binary FirstIsTwo table", table(&FirstIsTwo, 2, 10), 10),
        ("quaternary identity", identity(4), 6),
        ("quaternary OddWeight table", table(&OddWeight, 4, 5), 5),
    ]
}

fn c1_parity() -> Outcome {
    let mut checked = 0;
    for (size, max) in [(2, 12), (4, 6)] {
        for n in 1..=max {
            let rec = parity_counts(size, n).map_err(|e| e.to_string())?;
            let en = parity_counts_enumerated(&alphabet(size), n);
            ensure!(rec == en, "|Σ|={size} n={n}: recurrence {rec:?} vs enumeration {en:?}");
            ensure!(rec.even == rec.odd, "|Σ|={size} n={n}: even {} != odd {}", rec.even, rec.odd);
            checked += 1;
        }
    }
    Ok(format!("{checked} (|Σ|, n) pairs, recurrence = enumeration, even = odd"))
}

fn c2_bottom_fraction() -> Outcome {
    let half = DecayConstant::InvSqrt(2);
    for (label, d, budget) in deciders() {
        let size = d.iso().alphabet().size();
        for n in 1..=budget {
            let f = d.bottom_fraction(n).unwrap();
            let want = if n % 2 == 0 { ratio(1, BigInt::from(size).pow(n as u32 / 2)) } else { ratio(0, 1) };
            ensure!(f == want, "{label} n={n}: bottom fraction {f}, expected {want}");
            ensure!(Surd::from_rational(f.clone()) <= half.pow(n as u32), "{label} n={n}: {f} > 2^(-n/2)");
        }
    }
    let f = identity(2).bottom_fraction(4).unwrap();
    ensure!(Surd::from_rational(f.clone()) == half.pow(4), "binary n=4 fraction {f} is not 1/4");
    Ok("identity and table isos exact for all n <= budget; binary n=4 gives 1/4 = 2^(-2)".into())
}

fn c3_class_counts() -> Outcome {
    for (label, d, budget) in deciders() {
        let a = d.iso().alphabet().clone();
        for n in 1..=budget {
            let c = d.class_counts(n).unwrap();
            let want = ClassCounts::closed_form(&a, n).unwrap();
            ensure!(c == want && c.lemma_holds(), "{label} n={n}: {c:?}, expected {want:?}");
        }
    }
    let c = identity(2).class_counts(4).unwrap();
    ensure!((c.accept, c.reject, c.bottom) == (8, 4, 4), "binary n=4 counts {c:?}");
    Ok("accept = |Σ|^n/2, reject = |Σ|^n/2 - bottom for every n; binary n=4 = (8, 4, 4)".into())
}

fn c4_slice_sizes() -> Outcome {
    for (label, d, budget) in deciders() {
        for n in 1..=budget {
            let c = d.class_counts(n).unwrap();
            let (bp, bm) = d.bottom_split(n).unwrap();
            let plus = c.decided(Sign::Plus) + bp;
            let minus = c.decided(Sign::Minus) + bm;
            let want = (c.total / 2 + c.bottom / 2, c.total / 2 - c.bottom / 2);
            ensure!((plus, minus) == want, "{label} n={n}: sizes ({plus}, {minus}), expected {want:?}");
        }
    }
    let d = identity(2);
    let sizes = |n| {
        let c = d.class_counts(n).unwrap();
        let (bp, bm) = d.bottom_split(n).unwrap();
        (c.accept + bp, c.reject + bm)
    };
    ensure!(sizes(4) == (10, 6), "binary n=4 sizes {:?}", sizes(4));
    ensure!(sizes(2) == (3, 1), "binary n=2 sizes {:?}", sizes(2));
    Ok("|slice(p,n)| = |Σ|^n/2 + p·bottom/2 everywhere; binary n=4 -> 10/6, n=2 -> 3/1".into())
}

fn c5_f_bound() -> Outcome {
    let c = DecayConstant::InvSqrt(2);
    let mut checked = 0;
    for (label, d, budget) in deciders() {
        for n in 1..=budget {
            for p in [Sign::Minus, Sign::Plus] {
                let f = compute_f(&d, n, p, &c).unwrap();
                ensure!(!f.exceeds, "{label} n={n} p={p}: F = {} > {}", f.value, f.bound);
                checked += 1;
            }
        }
    }
    let f = compute_f(&identity(2), 4, Sign::Minus, &c).unwrap();
    let c4 = c.pow(4);
    let tight = c4.clone() * (Surd::one() - c4).recip().unwrap();
    ensure!(f.value == ratio(1, 3), "binary n=4 p=-1: F = {}", f.value);
    ensure!(Surd::from_rational(f.value.clone()) == tight, "c^4/(1-c^4) = {tight}, F = {}", f.value);
    Ok(format!("{checked} (n, p) cases within (7/2)(1/√2)^n; binary n=4 p=-1: F = 1/3 = c^4/(1-c^4)"))
}

fn c6_acc_bounds() -> Outcome {
    let b = BoundParams::default();
    let r = verify_acc_bounds(&OddWeight, &identity(2), &b, 10).unwrap();
    ensure!(r.passed, "OddWeight identity violations {:?}", r.violations);
    let r = verify_acc_bounds(&FirstIsTwo, &table(&FirstIsTwo, 2, 10), &b, 10).unwrap();
    ensure!(r.passed, "FirstIsTwo table violations {:?}", r.violations);
    let s = scan(&OddWeight, &identity(2), &b, 10).unwrap();
    let a_plus = s.slice(pv(Sign::Plus, 4)).unwrap().accepting_fraction().unwrap();
    let a_minus = s.slice(pv(Sign::Minus, 4)).unwrap().accepting_fraction().unwrap();
    ensure!(a_plus == ratio(8, 10), "A(+2) = {a_plus}");
    ensure!(a_minus == ratio(0, 1), "A(-2) = {a_minus}");
    Ok("OddWeight+identity and FirstIsTwo+table within Poly≡4, c=1/√2 for n <= 10; A(+2) = 8/10, A(-2) = 0".into())
}

fn c7_balance() -> Outcome {
    let r = balance_check(&OddWeight, &identity(2), &Polynomial::constant(4), 12).unwrap();
    for m in r.margins.iter().filter(|m| m.n >= 4) {
        ensure!(m.passed, "n={}: in {} out {} < {}", m.n, m.in_margin, m.out_margin, m.required);
    }
    ensure!(r.poly_decreasing, "4·(1/√2)^n is not decreasing");
    let m2 = &r.margins[1];
    ensure!(!m2.passed && m2.out_margin == "0/1", "n=2 expected to fail with out-margin 0, got {m2:?}");
    Ok(format!("margins >= 1/4 for 4 <= n <= 12; n=2 fails as expected (out-margin {})", m2.out_margin))
}

fn c8_density() -> Outcome {
    let id = PIso::identity(alphabet(2));
    for e in 1..=3u32 {
        let r = density_counts(&id, 0.0, f64::from(e)).unwrap();
        let form = (BigInt::from(2).pow(e * e + 1) - 1) / BigInt::from(1);
        ensure!(r.enumerated_count == form, "E={e}: enumerated {} vs {form}", r.enumerated_count);
    }
    for e1 in 0..3u32 {
        for e2 in e1 + 1..=3 {
            let r = density_counts(&id, f64::from(e1), f64::from(e2)).unwrap();
            let range = geometric_count(2, e1 * e1, e2 * e2);
            let fixed = fixed_width_count(2, e1, e2 - e1);
            ensure!(
                r.enumerated_count == range && r.enumerated_count == fixed,
                "E1={e1} E2={e2}: enumerated {} range {range} fixed {fixed}",
                r.enumerated_count
            );
        }
    }
    let a = density_counts(&id, 0.0, 2.0).unwrap().enumerated_count;
    let b = density_counts(&id, 1.0, 2.0).unwrap().enumerated_count;
    ensure!(a == BigInt::from(31) && b == BigInt::from(30), "spot values {a}, {b}");
    let s = scan(&OddWeight, &identity(2), &BoundParams::default(), 12).unwrap();
    let r3 = requirement3_check(&s, 1.0, 1.0, 2.0);
    ensure!(r3.passed, "requirement 3 on OddWeight budget 12: {:?}", r3.reason);
    let counts: Vec<u128> = r3.windows.iter().filter(|w| w.full).map(|w| w.count).collect();
    Ok(format!("closed forms match for binary E <= 3 (31, 30); window counts {counts:?} pass with δ=1"))
}

fn c9_threshold() -> Outcome {
    let s = scan(&OddWeight, &identity(2), &BoundParams::default(), 10).unwrap();
    let t = threshold(&s.slices);
    ensure!(t.value == Some(pv(Sign::Minus, 1)), "threshold {:?} ({:?})", t.value, t.diagnostic);
    ensure!(threshold_holds(&s.slices, pv(Sign::Minus, 1)), "biconditional fails at T = -1");
    let others: Vec<ParamValue> = s.slices.iter().map(|x| x.param).filter(|&v| v < pv(Sign::Minus, 1)).collect();
    ensure!(others.iter().all(|&v| !threshold_holds(&s.slices, v)), "a smaller realized T also separates");
    Ok(format!("T = -1 over {} realized slices; v > T <=> A(v) > 1/2 holds", s.slices.len()))
}

/// Requirements read with the scan's own orientation.
fn transition_holds(s: &ScanReport) -> bool {
    let t = match s.orientation {
        Orientation::Canonical => threshold(&s.slices),
        Orientation::Inverted => inverted_threshold(&s.slices),
    };
    requirement12_check(s).passed && requirement3_check(s, 1.0, 1.0, 2.0).passed && t.value.is_some()
}

fn c10_inversion() -> Outcome {
    let growing = Polynomial::new(vec![int(0), int(0), int(1)]).unwrap();
    let cases = [
        ("OddWeight identity", scan(&OddWeight, &identity(2), &BoundParams::default(), 10).unwrap()),
        ("FirstIsTwo table", scan(&FirstIsTwo, &table(&FirstIsTwo, 2, 10), &BoundParams::default(), 10).unwrap()),
        (
            "OddWeight with growing envelope",
            scan(&OddWeight, &identity(2), &BoundParams::new(DecayConstant::InvSqrt(2), growing), 10).unwrap(),
        ),
    ];
    let mut verdicts = Vec::new();
    for (label, s) in &cases {
        let twice = s.inverted().inverted();
        ensure!(&twice == s, "{label}: double inversion changed the report");
        let (a, b) = (scan_csv(s).unwrap(), scan_csv(&twice).unwrap());
        ensure!(a.as_bytes() == b.as_bytes(), "{label}: double inversion changed the CSV bytes");
        let inv = s.inverted();
        let (orig, flipped) = (transition_holds(s), transition_holds(&inv));
        ensure!(orig == flipped, "{label}: canonical {orig} but inverted {flipped}");
        verdicts.push(format!("{label}={orig}"));
    }
    Ok(format!("involution byte-exact; canonical/inverted verdicts agree ({})", verdicts.join(", ")))
}

fn c11_sharpening() -> Outcome {
    let empty = Default::default();
    let v = sharpen_parameter(&Word::from([1]), pv(Sign::Plus, 49), &empty).map_err(|e| e.to_string())?;
    ensure!(v == Surd::one(), "τ = +7 gives {v}");
    let k = sharpening_constant(&DecayConstant::InvSqrt(2));
    ensure!((k - 5.6147).abs() <= 1e-4, "constant {k}");
    let d = identity(2);
    let table = generate_reassignment(&OddWeight, &d, 10).unwrap();
    let z = verify_zero_balance(&OddWeight, &table);
    ensure!(z.satisfied && z.members > 0, "τ†=0 holds {} members and {} non-members", z.members, z.non_members);
    Ok(format!("τ=+7 -> +1 exactly; log_(1/√2)(1/7) = {k:.6}; τ†=0 holds {} + {}", z.members, z.non_members))
}

const SCAN_CONFIG: &str = r#"{"alphabetSize": 2, "language": {"builtin": "odd_weight"}, "budget": 10}"#;

fn scan_in_pool(threads: usize) -> (String, String) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let setup = Setup::new(RunConfig::from_json(SCAN_CONFIG).unwrap()).unwrap();
        let out = scan_cmd::outputs(&setup).unwrap();
        (out.csv, out.sidecar)
    })
}

fn binary_scan(dir: &std::path::Path, threads: &str) -> Result<(Vec<u8>, Vec<u8>), String> {
    let config = dir.join("config.json");
    std::fs::write(&config, SCAN_CONFIG).unwrap();
    let out = dir.join(format!("scan-{threads}.csv"));
    let status = Command::new(env!("CARGO_BIN_EXE_phasebench"))
        .args(["scan", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .env("PHASEBENCH_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(status.status.success(), "phasebench scan exited with {:?}", status.status.code());
    let csv = std::fs::read(&out).map_err(|e| e.to_string())?;
    let side = std::fs::read(out.with_extension("sidecar.json")).map_err(|e| e.to_string())?;
    Ok((csv, side))
}

fn c12_determinism() -> Outcome {
    let one = scan_in_pool(1);
    let again = scan_in_pool(1);
    let four = scan_in_pool(4);
    ensure!(one == again, "two single-threaded runs differ");
    ensure!(one == four, "1-thread and 4-thread runs differ");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = binary_scan(dir.path(), "1")?;
    let b = binary_scan(dir.path(), "4")?;
    ensure!(a == b, "CLI output differs between PHASEBENCH_THREADS=1 and 4");
    ensure!(a.0 == one.0.as_bytes() && a.1 == one.1.as_bytes(), "CLI output differs from library output");
    Ok(format!("CSV ({} bytes) and sidecar ({} bytes) identical across runs and 1/4 workers", a.0.len(), a.1.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("equal parity counts", c1_parity),
        ("bottom-fraction bound", c2_bottom_fraction),
        ("class counts", c3_class_counts),
        ("slice sizes", c4_slice_sizes),
        ("F-statistic bound", c5_f_bound),
        ("acceptance bounds", c6_acc_bounds),
        ("balance", c7_balance),
        ("density closed forms", c8_density),
        ("threshold", c9_threshold),
        ("inversion", c10_inversion),
        ("sharpening", c11_sharpening),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
