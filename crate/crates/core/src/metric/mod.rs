//! Metric spaces: the abstraction, the built-in spaces, and the axiom harness.

mod axioms;
mod example;
mod interval;
mod matrix;
mod table;

pub use axioms::{verify_metric_axioms, Axiom, AxiomReport};
pub use example::{example_value, example_value_u64, ExamplePoint, ExampleSpace};
pub use interval::Interval;
pub use matrix::DistanceMatrix;
pub use table::TableSpace;

use std::fmt;

use rand::Rng;

use crate::error::Result;
use crate::scalar::Scalar;

/// A space together with its distance function.
///
/// Spaces are immutable after construction. Points carry no reference to
/// their space, so a point is only meaningful to the space that produced it.
pub trait MetricSpace: Clone + Send + Sync {
    type Point: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Dist: Scalar;

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> Self::Dist;

    /// Descriptor string accepted by [`crate::descriptor::SpaceDescriptor`].
    fn describe(&self) -> String;

    fn contains(&self, _p: &Self::Point) -> bool {
        true
    }

    fn format_point(&self, p: &Self::Point) -> String;

    fn parse_point(&self, s: &str) -> Result<Self::Point>;

    /// Points used by sampling harnesses: an exhaustive enumeration up to
    /// `cutoff` where the space is indexed, otherwise `count` seeded draws.
    fn sample_points<R: Rng>(&self, cutoff: usize, count: usize, rng: &mut R) -> Vec<Self::Point>;

    /// Whether distinct points may lie at distance zero. Identity of
    /// indiscernibles is then reported, not enforced.
    fn is_indexed(&self) -> bool {
        false
    }
}
