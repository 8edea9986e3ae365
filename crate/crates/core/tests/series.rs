//! Integration tests for the truncated-series kernel: algebraic laws under
//! randomized inputs, stability of prefixes under precision changes, and
//! agreement with combinatorial counting oracles.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use qrr_core::classical::h_series;
use qrr_core::series::{
    equal_to_order, inv_poch_finite_table, poch_finite, poch_finite_table, poch_inf,
    poch_inf_base, poch_mod, Monomial, TruncSeries,
};

/// Compare two series on the largest window both certify.
fn agree(a: &TruncSeries, b: &TruncSeries) -> bool {
    let n = a.prec().min(b.prec());
    equal_to_order(a, b, n).expect("n bounded by both precisions").is_none()
}

fn big(v: Vec<i64>) -> Vec<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

/// Random Laurent window: offset in [-6, 6], 1..12 coefficients in [-9, 9].
fn series_strategy() -> impl Strategy<Value = TruncSeries> {
    (-6i64..=6, proptest::collection::vec(-9i64..=9, 1..12))
        .prop_map(|(off, cs)| TruncSeries::from_coeffs(off, big(cs)))
}

/// Random series whose lowest coefficient is a unit, so inversion applies.
fn unit_lead_strategy() -> impl Strategy<Value = TruncSeries> {
    (
        -6i64..=6,
        prop_oneof![Just(1i64), Just(-1i64)],
        proptest::collection::vec(-9i64..=9, 0..10),
    )
        .prop_map(|(off, lead, tail)| {
            let mut cs = vec![lead];
            cs.extend(tail);
            TruncSeries::from_coeffs(off, big(cs))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_commutes(a in series_strategy(), b in series_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn addition_associates(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        prop_assert!(agree(&a.add(&b).add(&c), &a.add(&b.add(&c))));
    }

    #[test]
    fn multiplication_commutes(a in series_strategy(), b in series_strategy()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn multiplication_associates(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn multiplication_distributes(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        let lhs = a.mul(&b.add(&c)).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap());
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn one_is_multiplicative_identity(a in series_strategy()) {
        // Precision of 1 comfortably above the window: the product then
        // reproduces a's whole window, even for deep negative offsets.
        let one = TruncSeries::one(a.prec().max(1) + 12);
        let product = a.mul(&one).unwrap();
        prop_assert_eq!(product, a);
    }

    #[test]
    fn subtraction_cancels(a in series_strategy()) {
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn negation_matches_zero_minus(a in series_strategy()) {
        let zero = TruncSeries::zero(a.prec());
        prop_assert!(agree(&a.neg(), &zero.sub(&a)));
    }

    #[test]
    fn inversion_round_trips(a in unit_lead_strategy()) {
        let inv = a.invert().unwrap();
        let product = a.mul(&inv).unwrap();
        let one = TruncSeries::one(product.prec());
        prop_assert!(agree(&product, &one));
    }

    #[test]
    fn substitution_composes(a in series_strategy(), j in 1i64..4, k in 1i64..4) {
        prop_assert_eq!(
            a.substitute_power(j).substitute_power(k),
            a.substitute_power(j * k)
        );
    }

    #[test]
    fn truncation_only_forgets(a in series_strategy(), keep in 1i64..10) {
        let new_prec = a.offset() + keep;
        let t = a.truncated(new_prec);
        prop_assert!(t.prec() <= a.prec().min(new_prec.max(a.offset() + 1)));
        let n = t.prec().min(a.prec());
        prop_assert!(equal_to_order(&t, &a, n).unwrap().is_none());
    }

    #[test]
    fn powers_match_repeated_multiplication(a in series_strategy(), e in 0u32..5) {
        let mut expect = TruncSeries::one(a.prec().max(1));
        for _ in 0..e {
            expect = expect.mul(&a).unwrap();
        }
        prop_assert!(agree(&a.pow(e).unwrap(), &expect));
    }
}

#[test]
fn finite_pochhammer_satisfies_recurrence() {
    let prec = 60;
    for n in 1u32..=10 {
        let left = poch_finite(&Monomial::q(), n, prec);
        let factor = TruncSeries::one(prec).sub(&TruncSeries::term(
            BigInt::from(1),
            i64::from(n),
            prec,
        ));
        let right = poch_finite(&Monomial::q(), n - 1, prec).mul(&factor).unwrap();
        assert!(agree(&left, &right), "recurrence fails at n = {n}");
    }
}

#[test]
fn pochhammer_tables_match_direct_construction() {
    let prec = 40;
    let table = poch_finite_table(8, prec);
    let inv_table = inv_poch_finite_table(8, prec);
    for n in 0..=8u32 {
        let direct = poch_finite(&Monomial::q(), n, prec);
        assert_eq!(table[n as usize], direct, "table entry {n}");
        let product = inv_table[n as usize].mul(&direct).unwrap();
        assert!(agree(&product, &TruncSeries::one(prec)), "inverse entry {n}");
    }
}

#[test]
fn infinite_pochhammer_prefix_is_stable() {
    // Ten different series constructions, each expanded at two precisions;
    // the longer run must reproduce the shorter one exactly.
    let constructions: Vec<Box<dyn Fn(i64) -> TruncSeries>> = vec![
        Box::new(|p| poch_inf(&Monomial::q(), p).unwrap()),
        Box::new(|p| poch_inf(&Monomial::q(), p).unwrap().invert().unwrap()),
        Box::new(|p| poch_inf_base(&Monomial::q_pow(2), 3, p).unwrap()),
        Box::new(|p| poch_mod(1, 5, p).unwrap()),
        Box::new(|p| poch_mod(4, 5, p).unwrap().invert().unwrap()),
        Box::new(|p| poch_finite(&Monomial::neg_q_pow(2), 6, p)),
        Box::new(|p| poch_finite(&Monomial::q(), 9, p).invert().unwrap()),
        Box::new(|p| h_series(3, p).unwrap()),
        Box::new(|p| h_series(4, p).unwrap()),
        Box::new(|p| h_series(7, p).unwrap().mul(&h_series(5, p).unwrap()).unwrap()),
    ];
    for (i, f) in constructions.iter().enumerate() {
        let short = f(30);
        let long = f(75);
        let n = short.prec();
        assert!(
            equal_to_order(&short, &long, n).unwrap().is_none(),
            "construction {i} changes its prefix when precision grows"
        );
    }
}

#[test]
fn partition_generating_function_matches_counting_oracle() {
    let order = 60;
    let gf = poch_inf(&Monomial::q(), order).unwrap().invert().unwrap();
    let expected = common::partition_counts(order as usize - 1);
    assert_eq!(gf.coeff_range(0, order), expected, "1/(q)_inf vs direct partition counts");
}

#[test]
fn euler_function_matches_pentagonal_number_oracle() {
    let order = 100;
    let product = poch_inf(&Monomial::q(), order).unwrap();
    let sum = common::theta_coeffs(3, 1, -1, order);
    assert_eq!(product.coeff_range(0, order), sum, "(q)_inf vs bilateral pentagonal sum");
}

#[test]
fn index_three_series_is_the_euler_function() {
    let order = 200;
    let h3 = h_series(3, order).unwrap();
    let product = poch_inf(&Monomial::q(), order).unwrap();
    assert_eq!(h3, product);
}

#[test]
fn laurent_comparison_sees_negative_exponents() {
    // q^{-2} + 1 vs 1: the mismatch is at the negative exponent, which a
    // nonnegative-window comparison would miss.
    let a = TruncSeries::from_coeffs(-2, big(vec![1, 0, 1]));
    let b = TruncSeries::one(1);
    let m = equal_to_order(&a, &b, 1).unwrap().expect("must differ");
    assert_eq!(m.exponent, -2);
    assert_eq!(m.lhs, BigInt::from(1));
    assert_eq!(m.rhs, BigInt::from(0));
}

#[test]
fn comparison_beyond_certified_precision_is_refused() {
    let a = TruncSeries::one(10);
    let b = TruncSeries::one(8);
    let err = equal_to_order(&a, &b, 9).unwrap_err();
    assert!(matches!(
        err,
        qrr_core::QError::InsufficientPrecision { requested: 9, available: 8 }
    ));
}

#[test]
fn frozen_euler_function_prefix() {
    // (q)_inf = 1 - q - q^2 + q^5 + q^7 - q^12 - ...
    let s = poch_inf(&Monomial::q(), 13).unwrap();
    assert_eq!(
        s.coeff_range(0, 13),
        big(vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1])
    );
}
