//! Polynomials in x with truncated q-series coefficients.
//!
//! An [`XQSeries`] stores the coefficient of `x^m` for `m <= x_cap`; indices
//! above `x_cap` are untrusted, exactly analogous to q-truncation. All
//! entries share one q-truncation order.
//!
//! Every series carries an [`XValBound`]: a nondecreasing lower bound on the
//! q-valuation of the x^m coefficient of the untruncated object it stands
//! for. `specialize_x1` uses it to prove that the discarded x-degrees cannot
//! contribute below the truncation order.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{QLaurent, SeriesError};

/// Nondecreasing lower bound `m -> v(m)` on the q-valuation of x^m
/// coefficients. Combining operations preserve validity: `min` for sums,
/// `convolve` for products, `shifted` for the substitution x -> x q^r.
#[derive(Clone)]
pub struct XValBound(Arc<dyn Fn(usize) -> i64 + Send + Sync>);

impl XValBound {
    pub fn from_fn<F: Fn(usize) -> i64 + Send + Sync + 'static>(f: F) -> Self {
        XValBound(Arc::new(f))
    }

    /// No information: v(m) = 0.
    pub fn trivial() -> Self {
        Self::from_fn(|_| 0)
    }

    /// Each unit of x-degree costs at least one power of q: v(m) = m.
    pub fn linear() -> Self {
        Self::from_fn(|m| m as i64)
    }

    /// Strict-partition staircase: v(m) = m(m+1)/2.
    pub fn staircase() -> Self {
        Self::from_fn(|m| {
            let m = m as i64;
            m * (m + 1) / 2
        })
    }

    /// An exact polynomial in x of the given degree: coefficients above it
    /// are identically zero.
    pub fn exact_poly(deg: usize) -> Self {
        Self::from_fn(move |m| if m <= deg { 0 } else { i64::MAX })
    }

    pub fn eval(&self, m: usize) -> i64 {
        (self.0)(m)
    }

    /// Pointwise minimum (valid for a sum of two series).
    pub fn min(&self, other: &Self) -> Self {
        let a = self.clone();
        let b = other.clone();
        Self::from_fn(move |m| a.eval(m).min(b.eval(m)))
    }

    /// Min-plus convolution (valid for a product of two series).
    pub fn convolve(&self, other: &Self) -> Self {
        let a = self.clone();
        let b = other.clone();
        Self::from_fn(move |m| {
            (0..=m)
                .map(|i| a.eval(i).saturating_add(b.eval(m - i)))
                .min()
                .unwrap_or(0)
        })
    }

    /// Bound after the substitution x -> x q^r.
    pub fn shifted(&self, r: i64) -> Self {
        let a = self.clone();
        Self::from_fn(move |m| a.eval(m).saturating_add(r * m as i64))
    }
}

impl fmt::Debug for XValBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XValBound(..)")
    }
}

/// First coefficient mismatch between two bivariate series, minimal in
/// `(q_deg, x_deg)` lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XQMismatch {
    pub x_deg: usize,
    pub q_deg: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Polynomial in x whose coefficients are truncated q-series.
#[derive(Clone, Debug)]
pub struct XQSeries {
    trunc: i64,
    per_x: Vec<QLaurent>,
    bound: XValBound,
}

impl XQSeries {
    pub fn zero(x_cap: usize, trunc: i64) -> Self {
        XQSeries {
            trunc,
            per_x: vec![QLaurent::zero(trunc); x_cap + 1],
            bound: XValBound::trivial(),
        }
    }

    pub fn one(x_cap: usize, trunc: i64) -> Self {
        let mut s = Self::zero(x_cap, trunc);
        s.per_x[0] = QLaurent::one(trunc);
        s.bound = XValBound::exact_poly(0);
        s
    }

    /// Build an exact x-polynomial from `(x_deg, coefficient)` terms, each
    /// coefficient re-truncated to `trunc`. Terms above `x_cap` are dropped.
    pub fn from_x_terms<I: IntoIterator<Item = (usize, QLaurent)>>(
        terms: I,
        x_cap: usize,
        trunc: i64,
    ) -> Self {
        let mut s = Self::zero(x_cap, trunc);
        let mut deg = 0usize;
        for (m, c) in terms {
            deg = deg.max(m);
            if m <= x_cap {
                s.per_x[m] = s.per_x[m].add(&c.truncate(trunc));
            }
        }
        s.bound = XValBound::exact_poly(deg);
        s
    }

    pub fn with_bound(mut self, bound: XValBound) -> Self {
        self.bound = bound;
        self
    }

    pub fn bound(&self) -> &XValBound {
        &self.bound
    }

    pub fn x_cap(&self) -> usize {
        self.per_x.len() - 1
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    /// Coefficient of `x^m` as a q-series. Panics above `x_cap`.
    pub fn coeff_x(&self, m: usize) -> &QLaurent {
        assert!(
            m <= self.x_cap(),
            "coefficient of x^{} is unknown: series capped at x^{}",
            m,
            self.x_cap()
        );
        &self.per_x[m]
    }

    /// Single coefficient of `x^m q^d`.
    pub fn coefficient(&self, m: usize, d: i64) -> BigInt {
        self.coeff_x(m).coeff(d)
    }

    /// Accumulate `term * x^m`, silently ignoring `m > x_cap`.
    pub fn add_assign_term(&mut self, m: usize, term: &QLaurent) {
        if m <= self.x_cap() {
            self.per_x[m] = self.per_x[m].add(&term.truncate(self.trunc));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let x_cap = self.x_cap().min(other.x_cap());
        let trunc = self.trunc.min(other.trunc);
        let per_x = (0..=x_cap)
            .map(|m| self.per_x[m].truncate(trunc).add(&other.per_x[m]))
            .collect();
        XQSeries {
            trunc,
            per_x,
            bound: self.bound.min(&other.bound),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        XQSeries {
            trunc: self.trunc,
            per_x: self.per_x.iter().map(|c| c.neg()).collect(),
            bound: self.bound.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let x_cap = self.x_cap().min(other.x_cap());
        let trunc = self.trunc.min(other.trunc);
        let mut per_x = vec![QLaurent::zero(trunc); x_cap + 1];
        for (m, slot) in per_x.iter_mut().enumerate() {
            for i in 0..=m {
                let a = &self.per_x[i];
                let b = &other.per_x[m - i];
                if !a.is_zero() && !b.is_zero() {
                    *slot = slot.add(&a.mul(b).truncate(trunc));
                }
            }
        }
        XQSeries {
            trunc,
            per_x,
            bound: self.bound.convolve(&other.bound),
        }
    }

    /// Multiply every x-coefficient by a fixed q-series.
    pub fn mul_qlaurent(&self, q: &QLaurent) -> Self {
        let trunc = self.trunc.min(q.trunc_order());
        XQSeries {
            trunc,
            per_x: self.per_x.iter().map(|c| c.mul(q).truncate(trunc)).collect(),
            bound: self.bound.clone(),
        }
    }

    /// Substitution x -> x q^r: the x^m coefficient picks up q^{rm}.
    pub fn x_shift(&self, r: i64) -> Self {
        assert!(r >= 0, "x_shift exponent must be >= 0");
        XQSeries {
            trunc: self.trunc,
            per_x: self
                .per_x
                .iter()
                .enumerate()
                .map(|(m, c)| c.mul_monomial(1, r * m as i64).truncate(self.trunc))
                .collect(),
            bound: self.bound.shifted(r),
        }
    }

    /// Sum of all x-coefficients, i.e. the substitution x = 1.
    ///
    /// Sound only when every discarded x-degree has q-valuation at or above
    /// the truncation order; the recorded bound must certify
    /// `v(x_cap + 1) >= trunc_order`, otherwise the call is rejected.
    pub fn specialize_x1(&self) -> Result<QLaurent, SeriesError> {
        let next = self.x_cap() + 1;
        let bound = self.bound.eval(next);
        if bound < self.trunc {
            return Err(SeriesError::XCapInsufficient {
                x_cap: self.x_cap(),
                trunc: self.trunc,
                bound,
            });
        }
        let mut acc = QLaurent::zero(self.trunc);
        for c in &self.per_x {
            acc = acc.add(c);
        }
        Ok(acc)
    }

    /// First mismatch below `(upto, x_cap)`, scanning q-degrees in ascending
    /// order and x-degrees within each q-degree, so the witness is the
    /// minimal-degree discrepancy.
    pub fn first_mismatch(&self, other: &Self, upto: i64, x_cap: usize) -> Option<XQMismatch> {
        assert!(
            x_cap <= self.x_cap() && x_cap <= other.x_cap(),
            "comparison cap {} exceeds x caps ({}, {})",
            x_cap,
            self.x_cap(),
            other.x_cap()
        );
        let mut degs: Vec<i64> = Vec::new();
        for m in 0..=x_cap {
            degs.extend(self.per_x[m].terms().map(|(d, _)| d));
            degs.extend(other.per_x[m].terms().map(|(d, _)| d));
        }
        degs.retain(|d| *d < upto);
        degs.sort_unstable();
        degs.dedup();
        for d in degs {
            for m in 0..=x_cap {
                let l = self.per_x[m].coeff(d);
                let r = other.per_x[m].coeff(d);
                if l != r {
                    return Some(XQMismatch {
                        x_deg: m,
                        q_deg: d,
                        lhs: l,
                        rhs: r,
                    });
                }
            }
        }
        None
    }

    pub fn eq_up_to(&self, other: &Self, upto: i64, x_cap: usize) -> bool {
        self.first_mismatch(other, upto, x_cap).is_none()
    }

    /// All stored coefficients as `(x_deg, q_deg, coefficient)` triples in
    /// ascending `(x_deg, q_deg)` order.
    pub fn to_triples(&self) -> Vec<(usize, i64, BigInt)> {
        let mut out = Vec::new();
        for (m, c) in self.per_x.iter().enumerate() {
            for (d, v) in c.terms() {
                out.push((m, d, v.clone()));
            }
        }
        out
    }
}

impl PartialEq for XQSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.per_x == other.per_x
    }
}

impl Eq for XQSeries {}

impl fmt::Display for XQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (m, c) in self.per_x.iter().enumerate() {
            if !c.is_zero() {
                if any {
                    writeln!(f)?;
                }
                write!(f, "x^{}: {}", m, c)?;
                any = true;
            }
        }
        if !any {
            write!(f, "0 + O(q^{})", self.trunc)?;
        }
        Ok(())
    }
}
