//! The indexed counterexample space.
//!
//! Points are formal indices `l`, valued at `val(4n + i) = i + r_n` with
//! `r_0 = 0` and `r_n = 1/n`. Distinct indices can share a value
//! (`val(1) = val(4) = 1`), so the distance `|val(l) - val(v)|` is a
//! pseudometric on indices. Index semantics keep the doubling map
//! `x_l -> x_{2l}` well defined.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::MetricSpace;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `a_{l mod 4} + r_{floor(l / 4)}` as an exact rational.
pub fn example_value(index: &BigUint) -> BigRational {
    let (n, i) = index.div_rem(&BigUint::from(4u32));
    let base = BigRational::from_integer(i.to_u32().unwrap_or(0).into());
    if n.is_zero() {
        base
    } else {
        base + BigRational::new(One::one(), n.into())
    }
}

pub fn example_value_u64(index: u64) -> BigRational {
    example_value(&BigUint::from(index))
}

/// A point `x_l` of [`ExampleSpace`]. Equality is index equality; the value
/// is cached alongside.
#[derive(Clone)]
pub struct ExamplePoint {
    index: BigUint,
    value: BigRational,
}

impl ExamplePoint {
    pub fn new(index: impl Into<BigUint>) -> Self {
        let index = index.into();
        let value = example_value(&index);
        ExamplePoint { index, value }
    }

    pub fn index(&self) -> &BigUint {
        &self.index
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// The index as a `u64`, if it fits.
    pub fn small_index(&self) -> Option<u64> {
        self.index.to_u64()
    }
}

impl PartialEq for ExamplePoint {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for ExamplePoint {}

impl fmt::Debug for ExamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{}", self.index)
    }
}

impl fmt::Display for ExamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{}", self.index)
    }
}

/// The counterexample space with exact rational distances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExampleSpace;

impl ExampleSpace {
    pub fn point(&self, index: u64) -> ExamplePoint {
        ExamplePoint::new(index)
    }
}

impl MetricSpace for ExampleSpace {
    type Point = ExamplePoint;
    type Dist = BigRational;

    fn distance(&self, a: &ExamplePoint, b: &ExamplePoint) -> BigRational {
        Scalar::abs(&(a.value.clone() - b.value.clone()))
    }

    fn describe(&self) -> String {
        "example".to_string()
    }

    fn format_point(&self, p: &ExamplePoint) -> String {
        p.to_string()
    }

    fn parse_point(&self, s: &str) -> Result<ExamplePoint> {
        let t = s.trim();
        let digits = t.strip_prefix("x_").unwrap_or(t);
        let index: BigUint = digits
            .parse()
            .map_err(|_| Error::parse(s, "expected an index such as `x_9` or `9`"))?;
        Ok(ExamplePoint::new(index))
    }

    fn sample_points<R: Rng>(
        &self,
        cutoff: usize,
        _count: usize,
        _rng: &mut R,
    ) -> Vec<ExamplePoint> {
        (0..=cutoff as u64).map(ExamplePoint::new).collect()
    }

    fn is_indexed(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn values_follow_the_construction() {
        assert_eq!(example_value_u64(0), q(0, 1));
        assert_eq!(example_value_u64(8), q(1, 2));
        assert_eq!(example_value_u64(9), q(3, 2));
        assert_eq!(example_value_u64(24), q(1, 6));
        for n in 1..50u64 {
            assert_eq!(example_value_u64(4 * n), q(1, n as i64));
        }
    }

    #[test]
    fn distances_are_exact() {
        let s = ExampleSpace;
        assert_eq!(s.distance(&s.point(2), &s.point(2)), q(0, 1));
        assert_eq!(s.distance(&s.point(9), &s.point(2)), q(1, 2));
    }

    #[test]
    fn colliding_indices_are_distinct_points() {
        let s = ExampleSpace;
        assert_ne!(s.point(1), s.point(4));
        assert_eq!(s.distance(&s.point(1), &s.point(4)), q(0, 1));
    }

    #[test]
    fn parses_both_index_forms() {
        let s = ExampleSpace;
        assert_eq!(s.parse_point("x_12").unwrap(), s.point(12));
        assert_eq!(s.parse_point("12").unwrap(), s.point(12));
        assert!(s.parse_point("x_-1").is_err());
        let huge = s
            .parse_point("x_340282366920938463463374607431768211456")
            .unwrap();
        assert_eq!(
            huge.value(),
            &BigRational::new(1.into(), BigInt::from(1) << 126u32)
        );
    }
}
