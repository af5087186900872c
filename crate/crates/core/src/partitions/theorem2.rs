//! Both sides of the bivariate identity
//! `sum_{lambda in S_k} x^{len} q^{size} = sum_{i_1..i_k >= 0} q^E / prod (q;q)_{i_a} * x^{sum a i_a}`
//! with `E = sum_a a*C(1+i_a, 2) + sum_{a<b} a i_a i_b`, compared as
//! truncated x/q series.

use std::time::Instant;

use num_bigint::BigInt;
use serde_json::json;

use crate::report::{params, VerificationReport};
use crate::series::{inv_poch1_table, QLaurent, XQSeries, XValBound};

/// Largest length a single strict partition of size < trunc can have.
fn max_strict_len(trunc: i64) -> usize {
    let mut l = 0i64;
    while (l + 1) * (l + 2) / 2 < trunc {
        l += 1;
    }
    l as usize
}

/// Shared x-degree cap for both sides: no strict multipartition of size
/// below `trunc` can have total length above `k * max_strict_len(trunc)`.
pub fn theorem2_x_cap(k: usize, trunc: i64) -> usize {
    k * max_strict_len(trunc)
}

/// Valuation bound for the S_k side: a total length of m spread over k
/// strict components costs at least the balanced staircase sum, because
/// C(l+1, 2) is convex in l.
fn sk_val_bound(k: usize) -> XValBound {
    XValBound::from_fn(move |m| {
        let a = (m / k) as i64;
        let r = (m % k) as i64;
        let k = k as i64;
        r * (a + 1) * (a + 2) / 2 + (k - r) * a * (a + 1) / 2
    })
}

/// Count S_k elements by (total length, total size) without materializing
/// them: components are chosen left to right, each later component's
/// largest part capped by the previous component's length.
fn sk_counts(k: usize, max_size: i64, counts: &mut [Vec<u64>]) {
    fn rec(
        counts: &mut [Vec<u64>],
        k_left: usize,
        budget: i64,
        bound: Option<u32>,
        len_acc: usize,
        size_acc: i64,
    ) {
        if k_left == 0 || bound == Some(0) {
            counts[len_acc][size_acc as usize] += 1;
            return;
        }
        crate::partitions::visit_strict(budget, None, bound, &mut |parts| {
            let l = parts.len();
            let s: i64 = parts.iter().map(|&p| p as i64).sum();
            rec(counts, k_left - 1, budget - s, Some(l as u32), len_acc + l, size_acc + s);
        });
    }
    if max_size >= 0 && k >= 1 {
        rec(counts, k, max_size, None, 0, 0);
    }
}

/// Left side: enumerate S_k up to size trunc-1 and collect x^length q^size.
pub fn lhs_theorem(k: usize, trunc: i64) -> XQSeries {
    let x_cap = theorem2_x_cap(k, trunc);
    // Dense counting grid avoids per-element big-integer churn.
    let mut counts = vec![vec![0u64; trunc.max(0) as usize]; x_cap + 1];
    sk_counts(k, trunc - 1, &mut counts);
    let mut out = XQSeries::zero(x_cap, trunc);
    for (m, row) in counts.into_iter().enumerate() {
        let coeffs = QLaurent::from_terms(
            row.into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(d, c)| (d as i64, BigInt::from(c))),
            trunc,
        );
        out.add_assign_term(m, &coeffs);
    }
    out.with_bound(sk_val_bound(k))
}

/// Leading q-exponent of the tuple (i_1, ..., i_k).
fn tuple_exponent(i: &[u64]) -> i64 {
    let mut e = 0i64;
    for (a0, &ia) in i.iter().enumerate() {
        let a = (a0 + 1) as i64;
        let ia = ia as i64;
        e += a * ia * (ia + 1) / 2;
        for (b0, &ib) in i.iter().enumerate().skip(a0 + 1) {
            let _ = b0;
            e += a * ia * ib as i64;
        }
    }
    e
}

/// Right side: the k-fold sum over tuples whose leading exponent is below
/// the truncation order.
///
/// The enumeration bound is exact because the exponent is monotone in every
/// index: each summand a*C(1+i_a, 2) strictly increases with i_a and all
/// cross terms a*i_a*i_b are nonnegative, so once a prefix exceeds the
/// order, every extension does too (asserted below).
pub fn rhs_theorem(k: usize, trunc: i64) -> XQSeries {
    let x_cap = theorem2_x_cap(k, trunc);
    let max_i = max_strict_len(trunc).max(1);
    let inv = inv_poch1_table(max_i * 3 + 3, trunc);
    let mut out = XQSeries::zero(x_cap, trunc);
    let mut tuple = vec![0u64; k];

    fn rec(
        tuple: &mut Vec<u64>,
        pos: usize,
        trunc: i64,
        inv: &[QLaurent],
        out: &mut XQSeries,
    ) {
        let e = tuple_exponent(tuple);
        if e >= trunc {
            // Monotonicity: raising any entry cannot lower the exponent.
            debug_assert!({
                let mut probe = tuple.clone();
                if pos < probe.len() {
                    probe[pos] += 1;
                }
                tuple_exponent(&probe) >= e
            });
            return;
        }
        if pos == tuple.len() {
            let mut term = QLaurent::monomial(1, e, trunc);
            let mut x_deg = 0usize;
            for (a0, &ia) in tuple.iter().enumerate() {
                term = term.mul(&inv[ia as usize]);
                x_deg += (a0 + 1) * ia as usize;
            }
            out.add_assign_term(x_deg, &term);
            return;
        }
        loop {
            let e = tuple_exponent(tuple);
            if e >= trunc {
                break;
            }
            rec(tuple, pos + 1, trunc, inv, out);
            tuple[pos] += 1;
        }
        tuple[pos] = 0;
    }

    rec(&mut tuple, 0, trunc, &inv, &mut out);
    // Each extra unit of x-degree costs at least one box.
    out.with_bound(XValBound::linear())
}

/// Coefficientwise comparison of the two sides of the identity.
pub fn verify_theorem2(k: usize, trunc: i64) -> VerificationReport {
    let started = Instant::now();
    let lhs = lhs_theorem(k, trunc);
    let rhs = rhs_theorem(k, trunc);
    let x_cap = lhs.x_cap().min(rhs.x_cap());
    let witness = lhs.first_mismatch(&rhs, trunc, x_cap).map(Into::into);
    VerificationReport::from_witness(
        "theorem2",
        params(&[("k", json!(k)), ("order", json!(trunc))]),
        witness,
        started,
    )
}
