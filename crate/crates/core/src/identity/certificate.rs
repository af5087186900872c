//! The proper q-hypergeometric term f(n,t,u), shift operators with
//! q-power coefficients, and the certificate operator whose vanishing
//! telescopes to the six-term recurrence for f_n.
//!
//! `f(n,t,u) = q^{C(v+1,2) + 2C(t+1,2) + 3C(u+1,2) + v(t+u) + 2tu}
//!            / ((q;q)_v (q;q)_t (q;q)_u)` with `v = n - 2t - 3u`,
//! and `f(n,t,u) = 0` whenever t, u, or v is negative.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde_json::json;

use crate::report::{params, VerificationReport, Witness};
use crate::series::{inv_poch1_table, QLaurent};

/// Integer-linear exponent form `c0 + cn*n + ct*t + cu*u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinForm {
    pub c0: i64,
    pub cn: i64,
    pub ct: i64,
    pub cu: i64,
}

impl LinForm {
    pub const fn new(c0: i64, cn: i64, ct: i64, cu: i64) -> Self {
        LinForm { c0, cn, ct, cu }
    }

    pub fn eval(&self, n: i64, t: i64, u: i64) -> i64 {
        self.c0 + self.cn * n + self.ct * t + self.cu * u
    }
}

/// One operator term `scalar * q^{form} * N^a T^b U^c`; the coefficient
/// stands to the left of the shifts, so applying it to g at (n,t,u) yields
/// `scalar * q^{form(n,t,u)} * g(n-a, t-b, u-c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpTerm {
    pub scalar: i64,
    pub qpow: LinForm,
    pub shift: (i64, i64, i64),
}

/// Finite sum of shift terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOperator {
    pub terms: Vec<OpTerm>,
}

impl ShiftOperator {
    pub fn new(terms: Vec<OpTerm>) -> Self {
        ShiftOperator { terms }
    }

    pub fn identity() -> Self {
        ShiftOperator {
            terms: vec![OpTerm {
                scalar: 1,
                qpow: LinForm::new(0, 0, 0, 0),
                shift: (0, 0, 0),
            }],
        }
    }

    /// Operator sum (term concatenation).
    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        ShiftOperator { terms }
    }
}

const fn term(scalar: i64, qpow: LinForm, shift_n: i64, shift_t: i64, shift_u: i64) -> OpTerm {
    OpTerm {
        scalar,
        qpow,
        shift: (shift_n, shift_t, shift_u),
    }
}

/// `A = (1-q^n) - q^n N - q^n(1+q)(N^2+N^3) + q^{2n-1} N^4
///      + q^{2n-2}((1+q) N^5 + N^6)`.
pub fn op_a() -> ShiftOperator {
    let n = LinForm::new(0, 1, 0, 0);
    let n1 = LinForm::new(1, 1, 0, 0);
    let nn1 = LinForm::new(-1, 2, 0, 0);
    let nn2 = LinForm::new(-2, 2, 0, 0);
    ShiftOperator::new(vec![
        term(1, LinForm::new(0, 0, 0, 0), 0, 0, 0),
        term(-1, n, 0, 0, 0),
        term(-1, n, 1, 0, 0),
        term(-1, n, 2, 0, 0),
        term(-1, n1, 2, 0, 0),
        term(-1, n, 3, 0, 0),
        term(-1, n1, 3, 0, 0),
        term(1, nn1, 4, 0, 0),
        term(1, nn2, 5, 0, 0),
        term(1, nn1, 5, 0, 0),
        term(1, nn2, 6, 0, 0),
    ])
}

/// `B = (q^n - q^{2t+u}) + q^n(-1 + q^t + q^u) N + q^{n+u}(1 + q^{1+t}) N^2
///      + q^{n+2t+u} U N^3`.
pub fn op_b() -> ShiftOperator {
    let n = LinForm::new(0, 1, 0, 0);
    ShiftOperator::new(vec![
        term(1, n, 0, 0, 0),
        term(-1, LinForm::new(0, 0, 2, 1), 0, 0, 0),
        term(-1, n, 1, 0, 0),
        term(1, LinForm::new(0, 1, 1, 0), 1, 0, 0),
        term(1, LinForm::new(0, 1, 0, 1), 1, 0, 0),
        term(1, LinForm::new(0, 1, 0, 1), 2, 0, 0),
        term(1, LinForm::new(1, 1, 1, 1), 2, 0, 0),
        term(1, LinForm::new(0, 1, 2, 1), 3, 0, 1),
    ])
}

/// `C = q^n(1-q^t) N + q^{1+n+u}(1-q^t) N^2 + q^n(1 + q^{1+u}) N^3
///      - q^{2n-1} N^4 - q^{2n-2}((1+q) N^5 + N^6)`.
pub fn op_c() -> ShiftOperator {
    let n = LinForm::new(0, 1, 0, 0);
    let nn1 = LinForm::new(-1, 2, 0, 0);
    let nn2 = LinForm::new(-2, 2, 0, 0);
    ShiftOperator::new(vec![
        term(1, n, 1, 0, 0),
        term(-1, LinForm::new(0, 1, 1, 0), 1, 0, 0),
        term(1, LinForm::new(1, 1, 0, 1), 2, 0, 0),
        term(-1, LinForm::new(1, 1, 1, 1), 2, 0, 0),
        term(1, n, 3, 0, 0),
        term(1, LinForm::new(1, 1, 0, 1), 3, 0, 0),
        term(-1, nn1, 4, 0, 0),
        term(-1, nn2, 5, 0, 0),
        term(-1, nn1, 5, 0, 0),
        term(-1, nn2, 6, 0, 0),
    ])
}

/// Memoized table of f(n,t,u) at a fixed truncation order. Lookup-or-compute
/// is idempotent, so concurrent access only risks recomputing a value.
pub struct TermTable {
    trunc: i64,
    inv: Vec<QLaurent>,
    memo: Mutex<HashMap<(i64, i64, i64), Arc<QLaurent>>>,
}

impl TermTable {
    /// Table valid for first arguments up to `n_max`.
    pub fn new(n_max: i64, trunc: i64) -> Self {
        TermTable {
            trunc,
            inv: inv_poch1_table(n_max.max(0) as usize, trunc),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    pub fn f(&self, n: i64, t: i64, u: i64) -> Arc<QLaurent> {
        let v = n - 2 * t - 3 * u;
        if t < 0 || u < 0 || v < 0 {
            return Arc::new(QLaurent::zero(self.trunc));
        }
        if let Some(hit) = self.memo.lock().unwrap().get(&(n, t, u)) {
            return hit.clone();
        }
        let e = v * (v + 1) / 2 + t * (t + 1) + 3 * u * (u + 1) / 2 + v * (t + u) + 2 * t * u;
        let value = self.inv[v as usize]
            .mul(&self.inv[t as usize])
            .mul(&self.inv[u as usize])
            .mul_monomial(1, e);
        let value = Arc::new(value);
        self.memo
            .lock()
            .unwrap()
            .entry((n, t, u))
            .or_insert_with(|| value.clone())
            .clone()
    }
}

/// Single term of f(n,t,u) without a shared table.
pub fn f_term(n: i64, t: i64, u: i64, trunc: i64) -> QLaurent {
    (*TermTable::new(n, trunc).f(n, t, u)).clone()
}

/// Apply an operator to an arbitrary lattice function at (n,t,u).
pub fn apply_operator_fn(
    op: &ShiftOperator,
    g: &dyn Fn(i64, i64, i64) -> QLaurent,
    n: i64,
    t: i64,
    u: i64,
    trunc: i64,
) -> QLaurent {
    let mut acc = QLaurent::zero(trunc);
    for term in &op.terms {
        let (a, b, c) = term.shift;
        let val = g(n - a, t - b, u - c);
        let e = term.qpow.eval(n, t, u);
        acc = acc.add(&val.mul_monomial(term.scalar, e).truncate(trunc));
    }
    acc
}

/// Apply an operator to the memoized f table at (n,t,u).
pub fn apply_operator(op: &ShiftOperator, table: &TermTable, n: i64, t: i64, u: i64) -> QLaurent {
    apply_operator_fn(
        op,
        &|n2, t2, u2| (*table.f(n2, t2, u2)).clone(),
        n,
        t,
        u,
        table.trunc,
    )
}

/// `(A + (1-T)B + (1-U)C) f` at one lattice point: the (1-T) and (1-U)
/// layers act after B and C, i.e. the B and C values are taken at the
/// outer point and at the t- or u-shifted point.
fn certificate_residual(
    table: &TermTable,
    a: &ShiftOperator,
    b: &ShiftOperator,
    c: &ShiftOperator,
    n: i64,
    t: i64,
    u: i64,
) -> QLaurent {
    let av = apply_operator(a, table, n, t, u);
    let bv = apply_operator(b, table, n, t, u).sub(&apply_operator(b, table, n, t - 1, u));
    let cv = apply_operator(c, table, n, t, u).sub(&apply_operator(c, table, n, t, u - 1));
    av.add(&bv).add(&cv)
}

/// Check the certificate with explicit operators (the mutation suite passes
/// deliberately corrupted ones). The lattice includes the -1 boundary in t
/// and u, where shifted arguments go negative and the vanishing convention
/// for 1/(q;q)_v with v < 0 carries the identity.
pub fn certificate_check_with(
    a: &ShiftOperator,
    b: &ShiftOperator,
    c: &ShiftOperator,
    n_max: i64,
    t_max: i64,
    u_max: i64,
    trunc: i64,
) -> VerificationReport {
    let started = Instant::now();
    let p = params(&[
        ("n_max", json!(n_max)),
        ("t_max", json!(t_max)),
        ("u_max", json!(u_max)),
        ("order", json!(trunc)),
    ]);
    let table = TermTable::new(n_max, trunc);
    let mut witness = None;
    'outer: for n in 0..=n_max {
        for t in -1..=t_max {
            for u in -1..=u_max {
                let residual = certificate_residual(&table, a, b, c, n, t, u);
                if let Some(w) = residual.first_mismatch(&QLaurent::zero(trunc), trunc) {
                    witness = Some(Witness {
                        x_deg: 0,
                        q_deg: w.q_deg,
                        lhs: format!("(n,t,u)=({},{},{}): residual coefficient {}", n, t, u, w.lhs),
                        rhs: "0".into(),
                    });
                    break 'outer;
                }
            }
        }
    }
    VerificationReport::from_witness("certificate", p, witness, started)
}

/// Certificate check with the published operators.
pub fn certificate_check(n_max: i64, t_max: i64, u_max: i64, trunc: i64) -> VerificationReport {
    certificate_check_with(&op_a(), &op_b(), &op_c(), n_max, t_max, u_max, trunc)
}

/// `f_n = sum f(n,t,u)` over the finitely many (t,u) with 2t + 3u <= n.
pub fn f_n_series(n: i64, trunc: i64) -> QLaurent {
    f_n_from_table(&TermTable::new(n, trunc), n)
}

fn f_n_from_table(table: &TermTable, n: i64) -> QLaurent {
    let mut acc = QLaurent::zero(table.trunc);
    if n < 0 {
        return acc;
    }
    let mut u = 0;
    while 3 * u <= n {
        let mut t = 0;
        while 2 * t + 3 * u <= n {
            acc = acc.add(&table.f(n, t, u));
            t += 1;
        }
        u += 1;
    }
    acc
}

/// Six-term recurrence
/// `(1-q^n) f_n - q^n f_{n-1} - q^n(1+q)(f_{n-2}+f_{n-3}) + q^{2n-1} f_{n-4}
///  + q^{2n-2}((1+q) f_{n-5} + f_{n-6}) = 0` over a window of n.
pub fn fn_recurrence_check(n_min: i64, n_max: i64, trunc: i64) -> VerificationReport {
    let started = Instant::now();
    let p = params(&[
        ("n_min", json!(n_min)),
        ("n_max", json!(n_max)),
        ("order", json!(trunc)),
    ]);
    let table = TermTable::new(n_max, trunc);
    let f = |j: i64| f_n_from_table(&table, j);
    let one_plus_q = QLaurent::from_terms([(0i64, 1), (1, 1)], trunc);
    let mut witness = None;
    for n in n_min..=n_max {
        let lead = f(n).sub(&f(n).mul_monomial(1, n));
        let near = f(n - 1)
            .add(&f(n - 2).add(&f(n - 3)).mul(&one_plus_q))
            .mul_monomial(1, n);
        let far = f(n - 4).mul_monomial(1, 2 * n - 1).add(
            &f(n - 5)
                .mul(&one_plus_q)
                .add(&f(n - 6))
                .mul_monomial(1, 2 * n - 2),
        );
        let residual = lead.sub(&near).add(&far);
        if let Some(w) = residual.first_mismatch(&QLaurent::zero(trunc), trunc) {
            witness = Some(Witness {
                x_deg: 0,
                q_deg: w.q_deg,
                lhs: format!("n={}: residual coefficient {}", n, w.lhs),
                rhs: "0".into(),
            });
            break;
        }
    }
    VerificationReport::from_witness("fn_recurrence", p, witness, started)
}
