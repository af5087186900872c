//! The closing chain: the single-sum form of f_n, the terminating
//! q-Chu-Vandermonde evaluation, Euler's identities, both Rogers-Ramanujan
//! identities, and the four-link chain ending in
//! `G(1,q) = 1/(q^2,q^3;q^5)_inf`.

use std::time::Instant;

use serde_json::json;

use super::{f_n_series, f_series, g_series, staircase_bound};
use crate::partitions::lhs_theorem;
use crate::report::{params, VerificationReport, Witness};
use crate::series::{
    inv_poch1_table, poch_finite_qexp, poch_inf_mod, poch_neg_q_inf, poch_neg_xq, QLaurent,
    XQSeries,
};

/// `F(1, q)` through the x = 1 specialization (the linear valuation bound
/// needs the x-cap to reach the truncation order).
pub fn f_x1(trunc: i64) -> QLaurent {
    f_series(trunc, trunc.max(0) as usize)
        .specialize_x1()
        .expect("x_cap = order satisfies the linear valuation bound")
}

/// `G(1, q)`; the x^{2s} coefficient has valuation s(s+1), so a cap of
/// 2h-1 with h(h+1) >= order suffices.
pub fn g_x1(trunc: i64) -> QLaurent {
    let mut h = 0i64;
    while h * (h + 1) < trunc {
        h += 1;
    }
    let cap = (2 * h - 1).max(0) as usize;
    g_series(trunc, cap)
        .specialize_x1()
        .expect("cap chosen from the quadratic valuation bound")
}

/// Warnaar's single sum
/// `f_n = sum_{t=0}^{floor(n/2)} q^{C(n-2t+1,2) + t(t+1)} / ((q;q)_{n-2t} (q;q)_t)`
/// against the triple-sum definition.
pub fn warnaar_fn_check(n_max: i64, trunc: i64) -> VerificationReport {
    let started = Instant::now();
    let p = params(&[("n_max", json!(n_max)), ("order", json!(trunc))]);
    let inv = inv_poch1_table(n_max.max(0) as usize, trunc);
    let mut witness = None;
    for n in 0..=n_max {
        let mut single = QLaurent::zero(trunc);
        let mut t = 0i64;
        while 2 * t <= n {
            let v = n - 2 * t;
            let e = v * (v + 1) / 2 + t * (t + 1);
            single = single.add(&inv[v as usize].mul(&inv[t as usize]).mul_monomial(1, e));
            t += 1;
        }
        if let Some(w) = f_n_series(n, trunc).first_mismatch(&single, trunc) {
            witness = Some(Witness {
                x_deg: 0,
                q_deg: w.q_deg,
                lhs: format!("n={}: triple sum {}", n, w.lhs),
                rhs: format!("single sum {}", w.rhs),
            });
            break;
        }
    }
    VerificationReport::from_witness("warnaar_fn", p, witness, started)
}

/// Terminating q-Chu-Vandermonde evaluation with a = q^e and c = 0:
/// `sum_{u=0}^{m} (a;q)_u (q^{-m};q)_u q^u / (q;q)_u = a^m`.
///
/// The Pochhammer factors are Laurent polynomials with negative exponents,
/// so each term is assembled at an order elevated by the total negative
/// depth before the sum is cut back to the requested order.
pub fn chu_vandermonde_check(e: i64, m: i64, trunc: i64) -> VerificationReport {
    let started = Instant::now();
    assert!(e <= 0, "the exponent of a = q^e must be <= 0");
    assert!(m >= 0, "m must be a nonnegative integer");
    let p = params(&[("e", json!(e)), ("m", json!(m)), ("order", json!(trunc))]);
    let depth: i64 = (0..m)
        .map(|j| (-(e + j)).max(0) + (m - j).max(0))
        .sum();
    let elevated = trunc.saturating_add(depth);
    let inv = inv_poch1_table(m.max(0) as usize, elevated);
    let mut sum = QLaurent::zero(elevated);
    for u in 0..=m {
        let term = poch_finite_qexp(e, u as u32, elevated)
            .mul(&poch_finite_qexp(-m, u as u32, elevated))
            .mul(&inv[u as usize])
            .mul_monomial(1, u);
        sum = sum.add(&term);
    }
    let expect = QLaurent::monomial(1, e * m, trunc);
    let witness = sum
        .truncate(trunc)
        .first_mismatch(&expect, trunc)
        .map(Into::into);
    VerificationReport::from_witness("chu_vandermonde", p, witness, started)
}

/// Euler's two identities: the x-refined expansion of `(-xq;q)_inf` and the
/// product identity `(q;q^2)_inf (-q;q)_inf = 1`.
pub fn euler_checks(trunc: i64, x_cap: usize) -> Vec<VerificationReport> {
    let mut out = Vec::new();

    let started = Instant::now();
    let p = params(&[("order", json!(trunc)), ("x_cap", json!(x_cap))]);
    let product = poch_neg_xq(trunc, x_cap);
    let inv = inv_poch1_table(x_cap, trunc);
    let mut sum = XQSeries::zero(x_cap, trunc);
    for (m, inv_m) in inv.iter().enumerate() {
        let e = (m as i64) * (m as i64 + 1) / 2;
        sum.add_assign_term(m, &inv_m.mul_monomial(1, e));
    }
    let witness = product.first_mismatch(&sum, trunc, x_cap).map(Into::into);
    out.push(VerificationReport::from_witness(
        "euler.neg_xq_expansion",
        p,
        witness,
        started,
    ));

    let started = Instant::now();
    let p = params(&[("order", json!(trunc))]);
    let product = poch_inf_mod(1, 2, trunc).mul(&poch_neg_q_inf(trunc));
    let witness = product
        .first_mismatch(&QLaurent::one(trunc), trunc)
        .map(Into::into);
    out.push(VerificationReport::from_witness(
        "euler.odd_times_strict",
        p,
        witness,
        started,
    ));

    out
}

/// `1/(q^{a1},q^{a2};q^5)_inf`.
fn rr_product(a1: u32, a2: u32, trunc: i64) -> QLaurent {
    poch_inf_mod(a1, 5, trunc)
        .mul(&poch_inf_mod(a2, 5, trunc))
        .invert_unit()
        .expect("infinite products with positive exponents are units")
}

/// Both Rogers-Ramanujan identities at the given order, plus the agreement
/// of the two routes to G(1,q) (series specialization and direct sum).
pub fn rr_checks(trunc: i64) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let smax = staircase_bound(trunc) + 1;
    let inv = inv_poch1_table(smax, trunc);

    // RR1: sum q^{n^2}/(q;q)_n = 1/(q,q^4;q^5)
    let started = Instant::now();
    let mut sum = QLaurent::zero(trunc);
    let mut n = 0i64;
    while n * n < trunc {
        sum = sum.add(&inv[n as usize].mul_monomial(1, n * n));
        n += 1;
    }
    let witness = sum
        .first_mismatch(&rr_product(1, 4, trunc), trunc)
        .map(Into::into);
    out.push(VerificationReport::from_witness(
        "rr.first",
        params(&[("order", json!(trunc))]),
        witness,
        started,
    ));

    // RR2: sum q^{n(n+1)}/(q;q)_n = 1/(q^2,q^3;q^5)
    let started = Instant::now();
    let mut sum2 = QLaurent::zero(trunc);
    let mut n = 0i64;
    while n * (n + 1) < trunc {
        sum2 = sum2.add(&inv[n as usize].mul_monomial(1, n * (n + 1)));
        n += 1;
    }
    let witness = sum2
        .first_mismatch(&rr_product(2, 3, trunc), trunc)
        .map(Into::into);
    out.push(VerificationReport::from_witness(
        "rr.second",
        params(&[("order", json!(trunc))]),
        witness,
        started,
    ));

    // G(1,q) via the bivariate series equals the direct sum used above.
    let started = Instant::now();
    let witness = g_x1(trunc).first_mismatch(&sum2, trunc).map(Into::into);
    out.push(VerificationReport::from_witness(
        "rr.g_two_routes",
        params(&[("order", json!(trunc))]),
        witness,
        started,
    ));

    out
}

/// The four-link chain at one truncation order:
/// (i) the k = 3 Kleshchev sum specializes to F(1,q);
/// (ii) F(1,q) = (-q;q)_inf G(1,q);
/// (iii) F(1,q) = 1/((q;q^2)_inf (q^2,q^3;q^5)_inf), a consistency check of
///       the character input rather than an independent proof;
/// (iv) combining (ii), (iii) and Euler's product identity:
///      G(1,q) = 1/(q^2,q^3;q^5)_inf.
pub fn character_chain_check(trunc: i64) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let p = params(&[("order", json!(trunc))]);

    let started = Instant::now();
    let sk3 = lhs_theorem(3, trunc)
        .specialize_x1()
        .expect("balanced staircase bound certifies the Kleshchev cap");
    let fx1 = f_x1(trunc);
    let witness = sk3.first_mismatch(&fx1, trunc).map(Into::into);
    out.push(VerificationReport::from_witness(
        "character_chain.link_i_sk3_equals_f",
        p.clone(),
        witness,
        started,
    ));

    let started = Instant::now();
    let gx1 = g_x1(trunc);
    let rhs = poch_neg_q_inf(trunc).mul(&gx1);
    let witness = fx1.first_mismatch(&rhs, trunc).map(Into::into);
    out.push(VerificationReport::from_witness(
        "character_chain.link_ii_fincor_x1",
        p.clone(),
        witness,
        started,
    ));

    let started = Instant::now();
    let odd = poch_inf_mod(1, 2, trunc);
    let character = odd
        .mul(&poch_inf_mod(2, 5, trunc))
        .mul(&poch_inf_mod(3, 5, trunc))
        .invert_unit()
        .expect("character denominator is a unit");
    let witness = fx1.first_mismatch(&character, trunc).map(Into::into);
    out.push(VerificationReport::from_witness(
        "character_chain.link_iii_lie_input_consistency",
        p.clone(),
        witness,
        started,
    ));

    let started = Instant::now();
    let lhs = fx1.mul(&odd);
    let witness = lhs
        .first_mismatch(&rr_product(2, 3, trunc), trunc)
        .map(Into::into);
    out.push(VerificationReport::from_witness(
        "character_chain.link_iv_rr2_conclusion",
        p,
        witness,
        started,
    ));

    out
}
