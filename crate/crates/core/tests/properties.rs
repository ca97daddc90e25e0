//! Invariants checked on generated alphabets, words and languages.

use num_bigint::BigInt;
use phasebench_core::analysis::{
    compute_f, density_counts, geometric_count, requirement12_check, requirement3_check, scan, threshold,
    threshold_holds, BoundParams,
};
use phasebench_core::exact::{ratio, DecayConstant, Surd};
use phasebench_core::iso::{build_table_iso, slot_budget, verify_bijection};
use phasebench_core::language::{MarkerPadding, Padding};
use phasebench_core::parameter::{ball, gamma, slice};
use phasebench_core::roughp::{qprime, verify_errorless};
use phasebench_core::{
    parity_counts, parity_counts_enumerated, Alphabet, ClassCounts, Error, FirstIsTwo, Language, OddWeight, PIso,
    RoughDecider, Sign, TableLanguage, Verdict, Word,
};
use proptest::prelude::*;

fn word(size: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=size, 0..=max_len).prop_map(Word::new)
}

fn small_alphabet() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![2usize, 4, 6])
}

/// A random membership table over binary words up to `max_len`.
fn table_language(max_len: usize) -> impl Strategy<Value = TableLanguage> {
    let a = Alphabet::numbered(2).unwrap();
    let count = a.count_up_to(max_len).unwrap() as usize;
    prop::collection::vec(any::<bool>(), count).prop_map(move |bits| {
        let a = Alphabet::numbered(2).unwrap();
        let members = a.words_up_to(max_len).zip(bits).filter(|(_, b)| *b).map(|(w, _)| w);
        TableLanguage::new(&a, max_len, members).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parity_counts_are_equal_and_match_enumeration(size in small_alphabet(), n in 1usize..=5) {
        let rec = parity_counts(size, n).unwrap();
        prop_assert_eq!(rec.even, rec.odd);
        prop_assert_eq!(rec, parity_counts_enumerated(&Alphabet::numbered(size).unwrap(), n));
    }

    #[test]
    fn weight_is_additive(x in word(6, 6), y in word(6, 6)) {
        prop_assert_eq!(x.concat(&y).weight(), x.weight() + y.weight());
    }

    #[test]
    fn symmetric_word_counts(size in small_alphabet(), n in 0usize..=5) {
        let a = Alphabet::numbered(size).unwrap();
        let count = a.words(n).filter(Word::is_symmetric).count() as u128;
        let expected = if n % 2 == 0 { a.count(n / 2).unwrap() } else { 0 };
        prop_assert_eq!(count, expected);
    }

    #[test]
    fn symmetric_words_have_even_weight(z in word(8, 6)) {
        prop_assert!(!z.concat(&z).has_odd_weight());
    }

    #[test]
    fn rank_round_trips(size in small_alphabet(), n in 0usize..=6, r in any::<u64>()) {
        let a = Alphabet::numbered(size).unwrap();
        let r = u128::from(r) % a.count(n).unwrap();
        let w = a.unrank(n, r).unwrap();
        prop_assert_eq!(a.rank(&w), r);
        prop_assert_eq!(a.unrank(n, a.rank(&w)).unwrap(), w);
    }

    #[test]
    fn padding_axioms(x in word(4, 6), y in word(4, 6)) {
        let p = MarkerPadding;
        let padded = p.pad(&x, &y);
        for lang in [&OddWeight as &dyn Language, &FirstIsTwo] {
            prop_assert_eq!(lang.decide(&padded), lang.decide(&x));
            prop_assert_eq!(lang.decide(&x), lang.decide(&x));
        }
        let d = p.dec(&padded);
        prop_assert!(d.in_image);
        prop_assert_eq!(d.word, y);
    }

    #[test]
    fn slot_capacities_partition_each_length(size in small_alphabet(), n in 0usize..=8) {
        let a = Alphabet::numbered(size).unwrap();
        let s = slot_budget(&a, n).unwrap();
        prop_assert_eq!(s.total(), a.count(n).unwrap());
        if n % 2 == 0 && n > 0 {
            let frac = ratio(s.bottom_capacity, a.count(n).unwrap());
            prop_assert!(Surd::from_rational(frac) <= DecayConstant::InvSqrt(2).pow(n as u32));
        }
    }

    #[test]
    fn table_isos_are_errorless_bijections(lang in table_language(5)) {
        let a = Alphabet::numbered(2).unwrap();
        match build_table_iso(&lang, &a, 5) {
            Ok(iso) => {
                prop_assert!(verify_bijection(&iso, 5).unwrap().passed);
                let d = RoughDecider::new(iso);
                prop_assert!(verify_errorless(&lang, &d, 5).unwrap().passed);
                for n in 1..=5 {
                    let c = d.class_counts(n).unwrap();
                    prop_assert_eq!(c, ClassCounts::closed_form(&a, n).unwrap());
                    prop_assert!(c.lemma_holds());
                }
            }
            Err(Error::Infeasible { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn discriminator_follows_verdicts(lang in table_language(5)) {
        let a = Alphabet::numbered(2).unwrap();
        let Ok(iso) = build_table_iso(&lang, &a, 5) else { return Ok(()); };
        let d = RoughDecider::new(iso);
        for x in a.words_up_to(5) {
            if d.iso().output_size(&x).unwrap() == 0 {
                prop_assert_eq!(gamma(&d, &x), Err(Error::UndefinedParameter));
                continue;
            }
            let s = d.discriminate(&x).unwrap();
            match d.decide_rough(&x).unwrap() {
                Verdict::Accept => prop_assert_eq!(s, Sign::Plus),
                Verdict::Reject => prop_assert_eq!(s, Sign::Minus),
                Verdict::Bottom => {}
            }
            let g = gamma(&d, &x).unwrap();
            prop_assert_eq!(g.tau() > 0.0, s == Sign::Plus);
            prop_assert_eq!(g.tau_squared() as usize, d.iso().output_size(&x).unwrap());
        }
    }

    #[test]
    fn slices_partition_balls(lang in table_language(4), n in 1usize..=4) {
        let a = Alphabet::numbered(2).unwrap();
        let Ok(iso) = build_table_iso(&lang, &a, 4) else { return Ok(()); };
        let d = RoughDecider::new(iso);
        let mut b = ball(d.iso(), n).unwrap().members;
        let mut joined = slice(&d, Sign::Plus, n).unwrap().members;
        let minus = slice(&d, Sign::Minus, n).unwrap().members;
        prop_assert!(joined.iter().all(|x| !minus.contains(x)));
        joined.extend(minus);
        b.sort();
        joined.sort();
        prop_assert_eq!(b, joined);
    }

    #[test]
    fn qprime_halves_symmetric_words(size in small_alphabet(), half in 1usize..=3) {
        let a = Alphabet::numbered(size).unwrap();
        let plus = a.words(half).filter(|z| qprime(&z.concat(z)).unwrap() == Sign::Plus).count() as u128;
        prop_assert_eq!(2 * plus, a.count(half).unwrap());
    }

    #[test]
    fn f_grows_with_bottom_count(big_b in 2u64..10_000, b in 0u64..1000) {
        let b = b % big_b;
        for p in [1i64, -1] {
            let den = |k: u64| big_b as i64 + p * k as i64;
            let f0 = ratio(b as i64, den(b));
            let f1 = ratio(b as i64 + 1, den(b + 1));
            prop_assert!(f1 > f0);
        }
    }

    #[test]
    fn density_matches_geometric_series(size in prop::sample::select(vec![2usize, 4]), e1 in 0u32..3, w in 1u32..3) {
        let e2 = e1 + w;
        prop_assume!(size == 2 || e2 <= 2);
        let iso = PIso::identity(Alphabet::numbered(size).unwrap());
        let r = density_counts(&iso, f64::from(e1), f64::from(e2)).unwrap();
        prop_assert_eq!(&r.enumerated_count, &geometric_count(size as u32, e1 * e1, e2 * e2));
        prop_assert!(r.aligned);
        let total: BigInt = r.enumerated_count.clone();
        prop_assert!(total > BigInt::from(0));
    }

    #[test]
    fn scans_behave_under_inversion(lang in table_language(6)) {
        let a = Alphabet::numbered(2).unwrap();
        let Ok(iso) = build_table_iso(&lang, &a, 6) else { return Ok(()); };
        let d = RoughDecider::new(iso);
        let s = scan(&lang, &d, &BoundParams::default(), 6).unwrap();
        let inv = s.inverted();
        prop_assert_eq!(&inv.inverted(), &s);
        prop_assert_eq!(requirement12_check(&inv).passed, requirement12_check(&s).passed);
        prop_assert_eq!(
            requirement3_check(&inv, 1.0, 1.0, 2.0).passed,
            requirement3_check(&s, 1.0, 1.0, 2.0).passed
        );
        for x in &s.slices {
            prop_assert!(x.within_bounds());
            let f = compute_f(&d, x.param.n as usize, x.param.sign, &DecayConstant::InvSqrt(2)).unwrap();
            prop_assert!(!f.exceeds);
        }
        if let Some(t) = threshold(&s.slices).value {
            prop_assert!(threshold_holds(&s.slices, t));
        }
    }
}
