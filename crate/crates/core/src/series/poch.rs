//! q-Pochhammer and q-binomial constructors.
//!
//! Conventions: `(a; q)_n = prod_{0 <= j < n} (1 - a q^j)` and
//! `(a; q)_inf` is the infinite product, whose factors are multiplied only
//! while they can still touch exponents below the truncation order.

use super::{QLaurent, SeriesError, XQSeries, XValBound};

/// Finite or infinite Pochhammer order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochOrder {
    Finite(u32),
    Infinite,
}

/// `(q^e; q)_n` as an exact finite product; `e` may be any integer, so the
/// result is in general a Laurent polynomial (used by the terminating
/// q-Chu-Vandermonde sum, where `(q^{-m}; q)_u` appears).
pub fn poch_finite_qexp(e: i64, n: u32, trunc: i64) -> QLaurent {
    // Factors with negative exponents can pull high-order terms back below
    // the truncation order, so the product is formed at an order elevated by
    // the total negative depth and truncated at the end.
    let depth: i64 = (0..n as i64).map(|j| (-(e + j)).max(0)).sum();
    let t = trunc.saturating_add(depth);
    let mut acc = QLaurent::one(t);
    for j in 0..n as i64 {
        let factor = QLaurent::from_terms([(0i64, 1), (e + j, -1)], t);
        acc = acc.mul(&factor);
    }
    acc.truncate(trunc)
}

/// `(q^v; q)_n` for `v >= 1`, finite or infinite order.
pub fn poch_q(v: u32, order: PochOrder, trunc: i64) -> QLaurent {
    assert!(v >= 1, "poch_q requires v >= 1");
    match order {
        PochOrder::Finite(n) => poch_finite_qexp(v as i64, n, trunc),
        PochOrder::Infinite => poch_inf_mod(v, 1, trunc),
    }
}

/// `(q^a; q^b)_inf` for `a, b >= 1`: the product of `(1 - q^{a+bj})` over
/// all `j >= 0` with `a + bj` below the truncation order (later factors are
/// congruent to 1 there).
pub fn poch_inf_mod(a: u32, b: u32, trunc: i64) -> QLaurent {
    assert!(a >= 1 && b >= 1, "poch_inf_mod requires a, b >= 1");
    let mut acc = QLaurent::one(trunc);
    let mut e = a as i64;
    while e < trunc {
        let factor = QLaurent::from_terms([(0i64, 1i64), (e, -1i64)], trunc);
        acc = acc.mul(&factor);
        e += b as i64;
    }
    acc
}

/// `(-q; q)_inf`, the generating product of strict partitions.
pub fn poch_neg_q_inf(trunc: i64) -> QLaurent {
    let mut acc = QLaurent::one(trunc);
    for e in 1..trunc {
        let factor = QLaurent::from_terms([(0i64, 1i64), (e, 1i64)], trunc);
        acc = acc.mul(&factor);
    }
    acc
}

/// `(-xq; q)_inf` as a bivariate series: the finite product of
/// `(1 + x q^j)` over `1 <= j < trunc` with x-degree capping. The x^m
/// coefficient of the full product is `q^{m(m+1)/2} / (q; q)_m`, so the
/// staircase valuation bound applies.
pub fn poch_neg_xq(trunc: i64, x_cap: usize) -> XQSeries {
    let mut acc = XQSeries::one(x_cap, trunc);
    for j in 1..trunc {
        let factor = XQSeries::from_x_terms(
            [
                (0usize, QLaurent::one(trunc)),
                (1usize, QLaurent::monomial(1, j, trunc)),
            ],
            x_cap,
            trunc,
        );
        acc = acc.mul(&factor);
    }
    acc.with_bound(XValBound::staircase())
}

/// Gaussian binomial `[n m]_q = (q;q)_n / ((q;q)_m (q;q)_{n-m})`, truncated
/// at `trunc`. The division is by unit series with constant term 1, so the
/// result is exact in integers; when `trunc > m(n-m)` it is the complete
/// polynomial.
pub fn q_binomial(n: u32, m: u32, trunc: i64) -> Result<QLaurent, SeriesError> {
    if m > n {
        return Err(SeriesError::BadQBinomial {
            n: n as i64,
            m: m as i64,
        });
    }
    let num = poch_q(1, PochOrder::Finite(n), trunc);
    if n == 0 || m == 0 || m == n {
        return Ok(QLaurent::one(trunc));
    }
    let d1 = poch_q(1, PochOrder::Finite(m), trunc).invert_unit()?;
    let d2 = poch_q(1, PochOrder::Finite(n - m), trunc).invert_unit()?;
    Ok(num.mul(&d1).mul(&d2))
}

/// Table of `1/(q;q)_m` for `0 <= m <= max_index`, shared by the series
/// built from Pochhammer denominators. Entry m is the generating function
/// of partitions with at most m parts.
pub fn inv_poch1_table(max_index: usize, trunc: i64) -> Vec<QLaurent> {
    if trunc <= 0 {
        // Nothing is known below order 0; every entry is the empty series.
        return vec![QLaurent::zero(trunc.max(0)); max_index + 1];
    }
    let mut table = Vec::with_capacity(max_index + 1);
    table.push(QLaurent::one(trunc));
    for m in 1..=max_index {
        let factor = QLaurent::from_terms([(0i64, 1i64), (m as i64, -1i64)], trunc)
            .invert_unit()
            .expect("1 - q^m is a unit");
        let prev: &QLaurent = &table[m - 1];
        table.push(prev.mul(&factor));
    }
    table
}
