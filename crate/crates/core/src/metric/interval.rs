use rand::Rng;

use super::MetricSpace;
use crate::error::{Error, Result};

/// A real interval with the Euclidean distance.
///
/// The bounds govern sampling and membership. Distances are defined for any
/// pair of reals, so maps such as `x + 1` may leave the interval without
/// breaking the metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::usage(format!(
                "interval bounds must be finite with lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval { lo: 0.0, hi: 1.0 }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

impl MetricSpace for Interval {
    type Point = f64;
    type Dist = f64;

    fn distance(&self, a: &f64, b: &f64) -> f64 {
        (a - b).abs()
    }

    fn describe(&self) -> String {
        format!("interval:{:?},{:?}", self.lo, self.hi)
    }

    fn contains(&self, p: &f64) -> bool {
        (self.lo..=self.hi).contains(p)
    }

    fn format_point(&self, p: &f64) -> String {
        format!("{p:?}")
    }

    fn parse_point(&self, s: &str) -> Result<f64> {
        let x: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::parse(s, "expected a real number"))?;
        if !x.is_finite() {
            return Err(Error::parse(s, "point must be finite"));
        }
        Ok(x)
    }

    fn sample_points<R: Rng>(&self, _cutoff: usize, count: usize, rng: &mut R) -> Vec<f64> {
        (0..count)
            .map(|_| rng.gen_range(self.lo..=self.hi))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_distance() {
        let s = Interval::unit();
        assert_eq!(s.distance(&0.25, &0.75), 0.5);
        assert_eq!(s.distance(&0.75, &0.25), 0.5);
    }

    #[test]
    fn rejects_empty_interval() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn descriptor_round_trips_through_parse_point() {
        let s = Interval::new(0.0, 10.0).unwrap();
        assert_eq!(s.describe(), "interval:0.0,10.0");
        assert_eq!(s.parse_point(&s.format_point(&0.1)).unwrap(), 0.1);
    }
}
