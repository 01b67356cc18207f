mod common;

use beta_forge::expansions::{is_admissible, is_admissible_against, quasi_greedy_one};
use beta_forge::numeric::rat::r;
use beta_forge::oracle::exhaustive_admissible_words;
use beta_forge::DigitSequence;
use proptest::prelude::*;

use common::rational_params;

/// All `(pre, per)` splits of the words of length `total` over `{0..=m}`.
fn all_words(m: u32, max_total: usize) -> Vec<DigitSequence> {
    let mut out = Vec::new();
    for total in 1..=max_total {
        let count = (m as usize + 1).pow(total as u32);
        for code in 0..count {
            let mut c = code;
            let digits: Vec<u32> = (0..total)
                .map(|_| {
                    let d = (c % (m as usize + 1)) as u32;
                    c /= m as usize + 1;
                    d
                })
                .collect();
            for per_len in 1..=total {
                let (pre, per) = digits.split_at(total - per_len);
                out.push(DigitSequence::periodic(pre.to_vec(), per.to_vec(), m).unwrap());
            }
        }
    }
    out
}

#[test]
fn parry_test_matches_exhaustive_enumeration() {
    for (m, num, den) in [(1, 19, 10), (2, 5, 2), (2, 27, 10), (3, 16, 5)] {
        let p = rational_params(m, r(num, den));
        let listed: Vec<DigitSequence> = exhaustive_admissible_words(&p, 5).unwrap();
        let d = quasi_greedy_one(&p, 256).unwrap();
        for w in all_words(m, 5) {
            let expected = listed.contains(&w.canonical());
            assert_eq!(is_admissible_against(&d, &w, 256).unwrap(), expected, "m={m} beta={num}/{den} word={w:?}");
        }
    }
}

#[test]
fn quasi_greedy_is_nonincreasing_tail_maximal() {
    // Every shift of the quasi-greedy expansion of 1 is at most the sequence.
    let p = rational_params(2, r(12, 5));
    let d = quasi_greedy_one(&p, 64).unwrap();
    for s in 1..32 {
        assert_ne!(d.shift(s).cmp_prefix(&d, 32), std::cmp::Ordering::Greater);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// A word admissible at one base stays admissible at every larger base.
    #[test]
    fn admissibility_is_monotone_in_beta(
        m in 1u32..=3,
        a in 110i64..=390,
        gap in 1i64..=60,
        pre in prop::collection::vec(0u32..=3, 0..3),
        per in prop::collection::vec(0u32..=3, 1..4),
    ) {
        let lo = r(a.min(100 * (m as i64 + 1) - gap), 100);
        let hi = &lo + r(gap, 100);
        prop_assume!(lo > r(1, 1));
        let clip = |v: &Vec<u32>| v.iter().map(|&d| d.min(m)).collect::<Vec<_>>();
        let w = DigitSequence::periodic(clip(&pre), clip(&per), m).unwrap();
        let at_lo = is_admissible(&rational_params(m, lo), &w, 128).unwrap();
        let at_hi = is_admissible(&rational_params(m, hi), &w, 128).unwrap();
        prop_assert!(!at_lo || at_hi);
    }
}

#[test]
fn families_above_beta_f() {
    use beta_forge::constants::beta_f;
    use beta_forge::geometry::ExpansionParams;

    for m in 1..=7u32 {
        let k = m / 2;
        let shifted = beta_f(m).unwrap().field().translate(&r(1, 20)).generator();
        let p = ExpansionParams::exact(m, &shifted).unwrap();
        let d = quasi_greedy_one(&p, 64).unwrap();
        let listed = exhaustive_admissible_words(&p, 8).unwrap();
        let (lead, period) = if m % 2 == 0 { (vec![k], vec![k + 1, k - 1]) } else { (vec![k + 1, k], vec![k + 1, k + 1, k, k]) };
        for j in 0..=8 {
            let pre: Vec<u32> = lead.iter().copied().cycle().take(j * lead.len()).collect();
            let w = DigitSequence::periodic(pre.clone(), period.clone(), m).unwrap();
            assert!(is_admissible_against(&d, &w, 64).unwrap(), "m = {m}, j = {j}");
            if pre.len() + period.len() <= 8 {
                assert!(listed.contains(&w.canonical()), "m = {m}, j = {j} missing from the exhaustive list");
            }
        }
    }
}
