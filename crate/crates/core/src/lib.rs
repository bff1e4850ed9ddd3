//! Fixed-point iteration on metric spaces, with falsifiable checks of
//! Meir-Keeler type contraction conditions and Cauchy diagnostics.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]

pub mod check;
pub mod descriptor;
pub mod error;
pub mod gauges;
pub mod grid;
pub mod maps;
pub mod metric;
pub mod prefix;
pub mod report;
pub mod scalar;
pub mod seqlab;
pub mod verdict;

pub use error::{Error, Result};
pub use gauges::{evaluate_gauge, Gauge, GaugeTable, PairFamily};
pub use grid::{DeltaGrid, EpsGrid};
pub use maps::{picard_solve, Affine, DoubleIndex, FixedPointResult, Orbit, SelfMap};
pub use metric::{ExamplePoint, ExampleSpace, Interval, MetricSpace, TableSpace};
pub use prefix::SequencePrefix;
pub use report::{emit_report, Report, RunConfig};
pub use scalar::Scalar;
pub use verdict::{CheckVerdict, Condition, EpsDeltaProfile, ProfileEntry, SampleStats, Witness};
