use serde::Serialize;

use super::SliceStats;
use crate::parameter::ParamValue;

/// Result of the threshold search. `value` is `None` when no realized
/// value separates the slices, with the reason in `diagnostic`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Threshold {
    pub value: Option<ParamValue>,
    pub diagnostic: Option<String>,
}

impl Threshold {
    fn none(diagnostic: String) -> Self {
        Threshold { value: None, diagnostic: Some(diagnostic) }
    }
}

/// The least realized `T` with `v > T ⟺ A(v) > 1/2` over the given slices.
///
/// In ascending `τ` order the majority flags must read `F…F T…T`; `T` is
/// the last `F`. If every slice is a majority slice there is no realized
/// value below all of them, so no threshold is returned.
pub fn threshold(slices: &[SliceStats]) -> Threshold {
    let mut sorted: Vec<&SliceStats> = slices.iter().collect();
    sorted.sort_by_key(|s| s.param);
    if sorted.is_empty() {
        return Threshold::none("no realized slices".into());
    }
    let first_true = sorted.iter().position(|s| s.accepts_majority());
    let Some(i) = first_true else {
        return Threshold { value: Some(sorted[sorted.len() - 1].param), diagnostic: None };
    };
    if let Some(bad) = sorted[i..].iter().find(|s| !s.accepts_majority()) {
        return Threshold::none(format!(
            "acceptance is not monotone: slice {} exceeds 1/2 but slice {} above it does not ({})",
            sorted[i].param,
            bad.param,
            bad.accepting_fraction_raw()
        ));
    }
    if i == 0 {
        return Threshold::none(format!(
            "every realized slice accepts more than half, down to {}; no realized value lies below them",
            sorted[0].param
        ));
    }
    Threshold { value: Some(sorted[i - 1].param), diagnostic: None }
}

/// The threshold read with the inverted orientation: the greatest realized
/// `T` with `v < T ⟺ A(v) > 1/2`.
pub fn inverted_threshold(slices: &[SliceStats]) -> Threshold {
    let mirrored = crate::parameter::invert_parameter(slices);
    let t = threshold(&mirrored);
    Threshold { value: t.value.map(ParamValue::negated), diagnostic: t.diagnostic }
}

/// Whether `v > t ⟺ A(v) > 1/2` holds on every slice.
pub fn threshold_holds(slices: &[SliceStats], t: ParamValue) -> bool {
    slices.iter().all(|s| (s.param > t) == s.accepts_majority())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::analysis::{scan, BoundKind, BoundParams};
    use crate::exact::Surd;
    use crate::iso::PIso;
    use crate::language::OddWeight;
    use crate::roughp::{RoughDecider, Sign};

    fn pv(sign: Sign, n: u32) -> ParamValue {
        ParamValue::new(sign, n).unwrap()
    }

    fn stats(param: ParamValue, accepted: u128, size: u128) -> SliceStats {
        SliceStats {
            param,
            slice_size: size,
            accepted,
            bottom_in_slice: 0,
            ball_size: size,
            ball_bottom: 0,
            envelope: Surd::one(),
            bound: BoundKind::AtLeast,
        }
    }

    fn odd_weight_scan() -> Vec<SliceStats> {
        let d = RoughDecider::new(PIso::identity(Alphabet::numbered(2).unwrap()));
        scan(&OddWeight, &d, &BoundParams::default(), 10).unwrap().slices
    }

    #[test]
    fn odd_weight_threshold_is_minus_one() {
        let slices = odd_weight_scan();
        let t = threshold(&slices);
        assert_eq!(t.value, Some(pv(Sign::Minus, 1)));
        assert!(threshold_holds(&slices, pv(Sign::Minus, 1)));
        assert!(!threshold_holds(&slices, pv(Sign::Minus, 2)));
    }

    #[test]
    fn non_monotone_scan_has_no_threshold() {
        let mut slices = odd_weight_scan();
        let p5 = slices.iter_mut().find(|s| s.param == pv(Sign::Plus, 5)).unwrap();
        p5.accepted = 2 * p5.slice_size / 5;
        let t = threshold(&slices);
        assert_eq!(t.value, None);
        assert!(t.diagnostic.unwrap().contains("+sqrt(5)"));
    }

    #[test]
    fn all_majority_has_no_minimum() {
        let slices = vec![stats(pv(Sign::Minus, 1), 3, 4), stats(pv(Sign::Plus, 1), 4, 4)];
        assert_eq!(threshold(&slices).value, None);
    }

    #[test]
    fn inverted_threshold_mirrors_canonical() {
        let slices = odd_weight_scan();
        let mirrored = crate::parameter::invert_parameter(&slices);
        assert_eq!(threshold(&mirrored).value, None);
        assert_eq!(inverted_threshold(&mirrored).value, Some(pv(Sign::Plus, 1)));
    }
}
