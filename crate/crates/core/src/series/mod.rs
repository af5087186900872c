//! Exact truncated Laurent series in q and bivariate x/q series.
//!
//! A [`QLaurent`] stores sparse integer coefficients by exponent and an
//! explicit truncation order: coefficients of `q^d` are stored and trusted
//! for `d < trunc_order`, everything at or above the order is unknown.
//! Negative exponents are permitted (they arise from monomial scaling in
//! recurrence certificates) but every constructor that builds a series from
//! partitions or Pochhammer products produces exponents >= 0.
//!
//! Invariants:
//! - no stored coefficient is zero;
//! - every stored exponent is `< trunc_order`;
//! - the zero series has an empty coefficient map;
//! - binary operations adopt the minimum truncation order of their inputs.

mod poch;
mod xq;

pub use poch::{
    inv_poch1_table, poch_finite_qexp, poch_inf_mod, poch_neg_q_inf, poch_neg_xq, poch_q,
    q_binomial, PochOrder,
};
pub use xq::{XQMismatch, XQSeries, XValBound};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors for the few series operations with rejectable inputs.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// `invert_unit` requires lowest exponent 0 and constant term +-1.
    #[error("series is not a unit with constant term +-1 (valuation {valuation:?}, constant {constant})")]
    NonUnit {
        valuation: Option<i64>,
        constant: String,
    },
    /// q-binomial arguments must satisfy `n >= m >= 0`.
    #[error("q-binomial requires n >= m >= 0, got n={n}, m={m}")]
    BadQBinomial { n: i64, m: i64 },
    /// `specialize_x1` refuses when discarded x-degrees could contribute
    /// below the truncation order.
    #[error("x_cap {x_cap} is insufficient for order {trunc}: valuation bound at x^{} is only {bound}", x_cap + 1)]
    XCapInsufficient { x_cap: usize, trunc: i64, bound: i64 },
}

/// First coefficient mismatch between two univariate series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMismatch {
    pub q_deg: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Truncated Laurent series in q with exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QLaurent {
    trunc: i64,
    coeffs: BTreeMap<i64, BigInt>,
}

impl QLaurent {
    /// The zero series known up to (but excluding) `q^trunc`.
    pub fn zero(trunc: i64) -> Self {
        assert!(trunc >= 0, "truncation order must be >= 0");
        QLaurent {
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series 1.
    pub fn one(trunc: i64) -> Self {
        Self::monomial(1, 0, trunc)
    }

    /// `c * q^d` truncated at `trunc`; the zero series if `d >= trunc` or `c = 0`.
    pub fn monomial<C: Into<BigInt>>(c: C, d: i64, trunc: i64) -> Self {
        let mut s = Self::zero(trunc);
        let c = c.into();
        if d < trunc && !c.is_zero() {
            s.coeffs.insert(d, c);
        }
        s
    }

    /// Build from `(exponent, coefficient)` pairs, dropping zeros and
    /// exponents at or above `trunc`. Repeated exponents accumulate.
    pub fn from_terms<C: Into<BigInt>, I: IntoIterator<Item = (i64, C)>>(
        terms: I,
        trunc: i64,
    ) -> Self {
        let mut s = Self::zero(trunc);
        for (d, c) in terms {
            s.add_term(d, c.into());
        }
        s
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest stored exponent, `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficient of `q^d`. Panics if `d >= trunc_order` (unknown region).
    pub fn coeff(&self, d: i64) -> BigInt {
        assert!(
            d < self.trunc,
            "coefficient of q^{} is unknown: series truncated at {}",
            d,
            self.trunc
        );
        self.coeffs.get(&d).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterate stored `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    fn add_term(&mut self, d: i64, c: BigInt) {
        if d >= self.trunc || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(d).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    /// Restrict to truncation order `min(trunc, n)`.
    pub fn truncate(&self, n: i64) -> Self {
        let t = self.trunc.min(n.max(0));
        QLaurent {
            trunc: t,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(d, _)| **d < t)
                .map(|(d, c)| (*d, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.trunc.min(other.trunc);
        let mut out = self.truncate(t);
        for (d, c) in &other.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QLaurent {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }

    /// Exact product, discarding exponents at or above the adopted order.
    /// Multiplication by the zero series yields zero even when the other
    /// factor carries negative exponents.
    pub fn mul(&self, other: &Self) -> Self {
        let t = self.trunc.min(other.trunc);
        let mut out = Self::zero(t);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (da, ca) in &self.coeffs {
            // Ascending order: once da + smallest db reaches t, later da only grow.
            let min_db = *other.coeffs.keys().next().expect("nonzero series");
            if da.saturating_add(min_db) >= t {
                break;
            }
            for (db, cb) in &other.coeffs {
                let d = da + db;
                if d >= t {
                    break;
                }
                out.add_term(d, ca * cb);
            }
        }
        out
    }

    /// Multiply by the monomial `c * q^d` (Laurent shift allowed).
    pub fn mul_monomial<C: Into<BigInt>>(&self, c: C, d: i64) -> Self {
        // The monomial is built above its own exponent so that it is never
        // silently truncated away; the product still adopts `self.trunc`.
        self.mul(&Self::monomial(c, d, self.trunc.max(d.saturating_add(1))))
    }

    /// Inverse of a unit: requires lowest exponent 0 and constant term +-1,
    /// so the inverse again has integer coefficients.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let c0 = match self.valuation() {
            Some(0) => self.coeffs[&0].clone(),
            v => {
                return Err(SeriesError::NonUnit {
                    valuation: v,
                    constant: "0".to_string(),
                })
            }
        };
        if !(c0.clone().abs().is_one()) {
            return Err(SeriesError::NonUnit {
                valuation: Some(0),
                constant: c0.to_string(),
            });
        }
        let n = self.trunc;
        // Dense recurrence: b_0 = c0, b_k = -c0 * sum_{j=1..k} a_j b_{k-j}.
        let mut a = vec![BigInt::zero(); n.max(0) as usize];
        for (d, c) in &self.coeffs {
            if *d >= 0 && *d < n {
                a[*d as usize] = c.clone();
            }
        }
        let mut b = vec![BigInt::zero(); n.max(0) as usize];
        if n > 0 {
            b[0] = c0.clone();
            for k in 1..n as usize {
                let mut acc = BigInt::zero();
                for j in 1..=k {
                    if !a[j].is_zero() && !b[k - j].is_zero() {
                        acc += &a[j] * &b[k - j];
                    }
                }
                b[k] = -&c0 * acc;
            }
        }
        Ok(Self::from_terms(
            b.into_iter().enumerate().map(|(d, c)| (d as i64, c)),
            n,
        ))
    }

    /// First mismatching coefficient below `upto` (which must not exceed
    /// either truncation order), or `None` if the series agree there.
    pub fn first_mismatch(&self, other: &Self, upto: i64) -> Option<QMismatch> {
        assert!(
            upto <= self.trunc && upto <= other.trunc,
            "comparison window {} exceeds truncation orders ({}, {})",
            upto,
            self.trunc,
            other.trunc
        );
        let mut degs: Vec<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|d| *d < upto)
            .collect();
        degs.sort_unstable();
        degs.dedup();
        for d in degs {
            let l = self.coeffs.get(&d).cloned().unwrap_or_else(BigInt::zero);
            let r = other.coeffs.get(&d).cloned().unwrap_or_else(BigInt::zero);
            if l != r {
                return Some(QMismatch {
                    q_deg: d,
                    lhs: l,
                    rhs: r,
                });
            }
        }
        None
    }

    /// Equality of all coefficients below `upto`.
    pub fn eq_up_to(&self, other: &Self, upto: i64) -> bool {
        self.first_mismatch(other, upto).is_none()
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (d, c)) in self.coeffs.iter().enumerate() {
                let mag = c.abs();
                if i == 0 {
                    if c.is_negative() {
                        write!(f, "-")?;
                    }
                } else if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                match (*d, mag.is_one()) {
                    (0, _) => write!(f, "{}", mag)?,
                    (1, true) => write!(f, "q")?,
                    (1, false) => write!(f, "{}*q", mag)?,
                    (_, true) => write!(f, "q^{}", d)?,
                    (_, false) => write!(f, "{}*q^{}", mag, d)?,
                }
            }
        }
        write!(f, " + O(q^{})", self.trunc)
    }
}

impl std::ops::Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        QLaurent::add(self, rhs)
    }
}

impl std::ops::Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        QLaurent::sub(self, rhs)
    }
}

impl std::ops::Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        QLaurent::mul(self, rhs)
    }
}

impl std::ops::Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_basics() {
        assert_eq!(QLaurent::monomial(1, 0, 10), QLaurent::one(10));
        let m = QLaurent::monomial(3, -1, 10);
        assert_eq!(m.coeff(-1), BigInt::from(3));
        assert!(QLaurent::monomial(1, 12, 10).is_zero());
        assert!(QLaurent::monomial(0, 2, 10).is_zero());
    }

    #[test]
    fn telescoping_product() {
        let n = 10;
        let a = QLaurent::from_terms([(0i64, 1i64), (1, -1)], n);
        let b = QLaurent::from_terms((0..n).map(|d| (d, 1i64)), n);
        assert_eq!(a.mul(&b), QLaurent::one(n));
    }

    #[test]
    fn additive_inverse() {
        let a = QLaurent::from_terms([(0i64, 2i64), (3, -5), (7, 1)], 9);
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn laurent_annihilation() {
        let qinv = QLaurent::monomial(1, -1, 10);
        assert!(qinv.mul(&QLaurent::zero(10)).is_zero());
        assert!(QLaurent::zero(10).mul(&qinv).is_zero());
    }

    #[test]
    fn invert_geometric() {
        let n = 12;
        let a = QLaurent::from_terms([(0i64, 1i64), (1, -1)], n);
        let inv = a.invert_unit().unwrap();
        for d in 0..n {
            assert_eq!(inv.coeff(d), BigInt::one());
        }
        assert_eq!(QLaurent::one(n).invert_unit().unwrap(), QLaurent::one(n));
    }

    #[test]
    fn invert_rejects_non_units() {
        assert!(QLaurent::zero(5).invert_unit().is_err());
        assert!(QLaurent::monomial(1, 1, 5).invert_unit().is_err());
        assert!(QLaurent::monomial(2, 0, 5).invert_unit().is_err());
        let neg_unit = QLaurent::from_terms([(0i64, -1i64), (1, 1)], 8);
        let inv = neg_unit.invert_unit().unwrap();
        assert_eq!(neg_unit.mul(&inv), QLaurent::one(8));
    }

    #[test]
    fn truncate_is_coherent_with_ops() {
        let a = QLaurent::from_terms([(0i64, 1i64), (2, 3), (5, -2)], 10);
        let b = QLaurent::from_terms([(1i64, 4i64), (3, -1)], 10);
        assert_eq!(a.mul(&b).truncate(6), a.truncate(6).mul(&b.truncate(6)));
        assert_eq!(a.add(&b).truncate(6), a.truncate(6).add(&b.truncate(6)));
    }

    #[test]
    fn mismatch_is_minimal_degree() {
        let a = QLaurent::from_terms([(0i64, 1i64), (2, 3), (5, 1)], 10);
        let b = QLaurent::from_terms([(0i64, 1i64), (2, 4), (3, 9)], 10);
        let w = a.first_mismatch(&b, 10).unwrap();
        assert_eq!(w.q_deg, 2);
        assert_eq!(w.lhs, BigInt::from(3));
        assert_eq!(w.rhs, BigInt::from(4));
        assert!(a.eq_up_to(&b, 2));
    }

    #[test]
    fn display_renders_terms_in_ascending_order() {
        let a = QLaurent::from_terms([(-1i64, 3i64), (0, 1), (2, -2)], 6);
        assert_eq!(a.to_string(), "3*q^-1 + 1 - 2*q^2 + O(q^6)");
        assert_eq!(QLaurent::zero(4).to_string(), "0 + O(q^4)");
    }
}
