//! Distance values.
//!
//! Continuum spaces measure with `f64`; the indexed example space measures
//! with exact rationals so that identities can be asserted with zero slack.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A nonnegative distance-like quantity.
pub trait Scalar:
    Clone
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    /// True when arithmetic and comparisons are exact.
    const EXACT: bool;

    fn zero() -> Self;

    /// Converts a grid value. Exact for every finite `f64` when `EXACT`.
    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    fn is_zero(&self) -> bool;

    /// Serialized form used in reports.
    fn to_record(&self) -> NumberRecord;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    /// Three-way comparison with an indeterminate band of half-width `tol`.
    ///
    /// Exact scalars never return [`Cmp::Near`]; `tol` is ignored for them.
    fn compare(&self, other: &Self, tol: f64) -> Cmp {
        if !Self::EXACT && (self.to_f64() - other.to_f64()).abs() < tol {
            return Cmp::Near;
        }
        match self.partial_cmp(other) {
            Some(Ordering::Less) => Cmp::Less,
            Some(Ordering::Equal) => Cmp::Equal,
            Some(Ordering::Greater) => Cmp::Greater,
            None => Cmp::Near,
        }
    }

    /// Whether a residual certifies a fixed point: exactly zero for exact
    /// scalars, at most `tol` otherwise.
    fn certifies(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64() <= tol
        }
    }
}

/// Outcome of [`Scalar::compare`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Less,
    Equal,
    Greater,
    /// Within tolerance of each other (inexact scalars only).
    Near,
}

/// Three-valued truth used by the tolerance-aware sequence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Cmp {
    /// `a <= b`
    pub fn le(self) -> Truth {
        match self {
            Cmp::Less | Cmp::Equal => Truth::True,
            Cmp::Greater => Truth::False,
            Cmp::Near => Truth::Unknown,
        }
    }

    /// `a < b`
    pub fn lt(self) -> Truth {
        match self {
            Cmp::Less => Truth::True,
            Cmp::Equal | Cmp::Greater => Truth::False,
            Cmp::Near => Truth::Unknown,
        }
    }
}

/// A number as written into reports: a decimal rendering plus, for exact
/// values, the lossless `p/q` form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumberRecord {
    pub decimal: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl NumberRecord {
    /// Parses the exact form back into a rational, if present.
    pub fn to_rational(&self) -> Option<BigRational> {
        let exact = self.exact.as_ref()?;
        let mut parts = exact.splitn(2, '/');
        let num: BigInt = parts.next()?.trim().parse().ok()?;
        let den: BigInt = match parts.next() {
            Some(d) => d.trim().parse().ok()?,
            None => BigInt::from(1),
        };
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn to_record(&self) -> NumberRecord {
        NumberRecord {
            decimal: format!("{self:?}"),
            exact: None,
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("grid values are finite")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn to_record(&self) -> NumberRecord {
        NumberRecord {
            decimal: format!("{:?}", Scalar::to_f64(self)),
            exact: Some(format!("{}/{}", self.numer(), self.denom())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_record_round_trips() {
        let q = BigRational::new(BigInt::from(-7), BigInt::from(4));
        let rec = q.to_record();
        assert_eq!(rec.exact.as_deref(), Some("-7/4"));
        assert_eq!(rec.decimal, "-1.75");
        assert_eq!(rec.to_rational(), Some(q));
    }

    #[test]
    fn grid_values_convert_exactly() {
        let q = <BigRational as Scalar>::from_f64(0.015625);
        assert_eq!(q, BigRational::new(BigInt::from(1), BigInt::from(64)));
    }

    #[test]
    fn float_comparison_has_a_band() {
        assert_eq!(1.0f64.compare(&(1.0 + 1e-12), 1e-9), Cmp::Near);
        assert_eq!(1.0f64.compare(&2.0, 1e-9), Cmp::Less);
        assert_eq!(Cmp::Near.le(), Truth::Unknown);
        assert_eq!(Cmp::Equal.lt(), Truth::False);
    }

    #[test]
    fn exact_comparison_ignores_tolerance() {
        let a = <BigRational as Scalar>::from_f64(1.0);
        let b = <BigRational as Scalar>::from_f64(1.0 + 1e-12);
        assert_eq!(a.compare(&b, 1e-3), Cmp::Less);
        assert_eq!(a.compare(&a, 1e-3), Cmp::Equal);
    }
}
