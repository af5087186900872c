//! Property suites for the exact series ring: ring axioms on randomized
//! values, unit inversion, truncation coherence, and the partition-counting
//! content of the Pochhammer inverses.

use num_bigint::BigInt;
use proptest::prelude::*;
use qrr_core::series::{inv_poch1_table, poch_q, q_binomial, PochOrder, QLaurent};

const ORDER: i64 = 30;

/// Series with exponents in [0, ORDER): the domain on which truncated
/// multiplication is a quotient-ring operation. Laurent values (negative
/// exponents) only enter through monomial scaling and are covered by the
/// dedicated edge tests.
fn series() -> impl Strategy<Value = QLaurent> {
    proptest::collection::vec((0..ORDER, -9i64..=9), 0..12)
        .prop_map(|terms| QLaurent::from_terms(terms, ORDER))
}

/// Laurent values allowing negative exponents (for the linear axioms).
fn laurent() -> impl Strategy<Value = QLaurent> {
    proptest::collection::vec((-10..ORDER, -9i64..=9), 0..12)
        .prop_map(|terms| QLaurent::from_terms(terms, ORDER))
}

/// Unit series: constant term +-1, random higher terms.
fn unit() -> impl Strategy<Value = QLaurent> {
    (
        prop_oneof![Just(1i64), Just(-1i64)],
        proptest::collection::vec((1..ORDER, -9i64..=9), 0..10),
    )
        .prop_map(|(c0, mut terms)| {
            terms.push((0, c0));
            QLaurent::from_terms(terms, ORDER)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn add_is_commutative_and_associative(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn mul_is_commutative(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mul_is_associative_on_nonnegative_valuations(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_distributes_over_add(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn additive_inverse_cancels(a in laurent()) {
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn unit_inverse_multiplies_to_one(a in unit()) {
        let inv = a.invert_unit().unwrap();
        prop_assert_eq!(a.mul(&inv), QLaurent::one(ORDER));
    }

    #[test]
    fn truncation_coherence(a in series(), b in series(), n in 1i64..ORDER) {
        prop_assert_eq!(a.mul(&b).truncate(n), a.truncate(n).mul(&b.truncate(n)));
        prop_assert_eq!(a.add(&b).truncate(n), a.truncate(n).add(&b.truncate(n)));
        if let Ok(inv) = a.add(&QLaurent::one(ORDER)).invert_unit() {
            prop_assert_eq!(
                inv.truncate(n),
                a.add(&QLaurent::one(ORDER)).truncate(n).invert_unit().unwrap()
            );
        }
    }
}

/// Count partitions of `d` with at most `max_parts` parts (oracle).
fn partitions_at_most(d: u32, max_parts: usize) -> u64 {
    fn rec(d: u32, max_part: u32, slots: usize) -> u64 {
        if d == 0 {
            return 1;
        }
        if slots == 0 {
            return 0;
        }
        (1..=max_part.min(d)).map(|p| rec(d - p, p, slots - 1)).sum()
    }
    rec(d, d, max_parts)
}

#[test]
fn inverse_pochhammer_counts_partitions() {
    let trunc = 21;
    for n in 1..=6usize {
        let inv = inv_poch1_table(n, trunc);
        for d in 0..=20u32 {
            assert_eq!(
                inv[n].coeff(d as i64),
                BigInt::from(partitions_at_most(d, n)),
                "n={} d={}",
                n,
                d
            );
        }
    }
}

#[test]
fn q_binomial_matches_box_partitions_everywhere() {
    for n in 0..=9u32 {
        for m in 0..=n {
            let deg = (m * (n - m)) as i64;
            let qb = q_binomial(n, m, deg + 1).unwrap();
            for d in 0..=deg {
                let boxed = count_boxed(d as u32, m as usize, n - m);
                assert_eq!(qb.coeff(d), BigInt::from(boxed), "n={} m={} d={}", n, m, d);
            }
        }
    }
}

/// Count partitions of `d` with at most `len` parts, each at most `part`.
fn count_boxed(d: u32, len: usize, part: u32) -> u64 {
    fn rec(d: u32, max_part: u32, slots: usize) -> u64 {
        if d == 0 {
            return 1;
        }
        if slots == 0 {
            return 0;
        }
        (1..=max_part.min(d)).map(|p| rec(d - p, p, slots - 1)).sum()
    }
    rec(d, part, len)
}

#[test]
fn laurent_monomial_edges() {
    // Negative-exponent monomials annihilate against zero and scale exactly.
    let zero = QLaurent::zero(12);
    let qinv = QLaurent::monomial(1, -1, 12);
    assert!(qinv.mul(&zero).is_zero());
    let p = poch_q(1, PochOrder::Finite(2), 12);
    let shifted = p.mul_monomial(1, -3);
    assert_eq!(shifted.coeff(-3), BigInt::from(1));
    assert_eq!(shifted.coeff(-2), BigInt::from(-1));
    let back = shifted.mul_monomial(1, 3);
    assert_eq!(back, p.truncate(12));
}
