use std::cmp::Ordering;

use beta_forge::geometry::{
    admissible_digits, apply_inverse_map, apply_map, build_catalog, switch_bounce_bound, ExpansionParams,
};
use beta_forge::numeric::rat::{int, r};
use beta_forge::{IntPolynomial, NumberField, Rational, Scalar};
use proptest::prelude::*;

/// Rational beta in `(1, m+1]` and a rational point of `[0, m/(beta-1)]`.
fn setup() -> impl Strategy<Value = (u32, Rational, Rational)> {
    (1u32..=5).prop_flat_map(|m| {
        (Just(m), 1i64..=100 * m as i64, 0i64..=1000).prop_map(|(m, b, t)| {
            let beta = int(1) + r(b, 100);
            let right = int(m as i64) / (&beta - int(1));
            let x = right * r(t, 1000);
            (m, beta, x)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn inverse_then_forward_is_identity((m, beta, x) in setup(), i in 0u32..=5) {
        let p = ExpansionParams::rational(m, beta).unwrap();
        let i = i.min(m);
        let x = p.point(x);
        let y = apply_inverse_map(&p, i, &x).unwrap();
        prop_assert_eq!(apply_map(&p, i, &y).unwrap().compare(&x), Some(Ordering::Equal));
        let z = apply_map(&p, i, &x).unwrap();
        prop_assert_eq!(apply_inverse_map(&p, i, &z).unwrap().compare(&x), Some(Ordering::Equal));
    }

    #[test]
    fn admissible_digits_match_definition((m, beta, x) in setup()) {
        let p = ExpansionParams::rational(m, beta.clone()).unwrap();
        let digits = admissible_digits(&p, &p.point(x.clone())).unwrap();
        let right = int(m as i64) / (&beta - int(1));
        let expected: Vec<u32> = (0..=m)
            .filter(|&i| {
                let y = &beta * &x - int(i as i64);
                y >= int(0) && y <= right
            })
            .collect();
        prop_assert_eq!(&digits, &expected);
        // Each point of I has at least one digit.
        prop_assert!(!digits.is_empty());
        let catalog = build_catalog(&p).unwrap();
        for i in 0..=m {
            let inside = catalog.digit[i as usize].contains(&p.point(x.clone())).unwrap();
            prop_assert_eq!(inside, digits.contains(&i));
        }
    }
}

/// Below `(m + sqrt(m^2+4))/2`, pushing with `T_0` from the left and `T_m`
/// from the right reaches the switch region.
#[test]
fn extreme_maps_reach_the_switch_region() {
    for m in 1u32..=5 {
        let bound = switch_bounce_bound(m).to_f64();
        for step in 1..=8 {
            let beta_f = 1.0 + (bound - 1.0) * step as f64 / 9.0;
            let beta = r((beta_f * 1000.0).round() as i64, 1000);
            if beta <= int(1) {
                continue;
            }
            let p = ExpansionParams::rational(m, beta).unwrap();
            let catalog = build_catalog(&p).unwrap();
            let sw = &catalog.switch_region;
            for t in 1..40 {
                let mut x: Scalar = p.right_end().scale(&r(t, 40));
                let mut reached = false;
                for _ in 0..200 {
                    if sw.contains(&x).unwrap() {
                        reached = true;
                        break;
                    }
                    let digit = if x.compare(&sw.lo) == Some(Ordering::Less) { 0 } else { m };
                    x = apply_map(&p, digit, &x).unwrap();
                    assert_eq!(p.interval_i().contains(&x), Some(true), "orbit left I");
                }
                assert!(reached, "m={m} beta={beta_f} t={t}");
            }
        }
    }
}

#[test]
fn switch_bound_is_root_of_quadratic() {
    for m in 1u32..=6 {
        let b = switch_bounce_bound(m).to_f64();
        let mf = m as f64;
        assert!((b - (mf + (mf * mf + 4.0).sqrt()) / 2.0).abs() < 1e-12);
    }
}

#[test]
fn exact_golden_geometry() {
    let f = NumberField::new(IntPolynomial::from_i64(&[-1, -1, 1]), int(1), int(2)).unwrap();
    let p = ExpansionParams::exact(1, &f.generator()).unwrap();
    // At the golden ratio the switch region of m = 1 collapses to [1/beta, 1].
    let catalog = build_catalog(&p).unwrap();
    assert_eq!(catalog.switch_region.lo.compare(&p.over_beta(1)), Some(Ordering::Equal));
    assert_eq!(catalog.switch_region.hi.compare(&p.integer(1)), Some(Ordering::Equal));
    let x = p.integer(1);
    assert_eq!(admissible_digits(&p, &x).unwrap(), vec![0, 1]);
}
