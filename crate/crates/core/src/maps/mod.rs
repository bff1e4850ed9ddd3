//! Self-maps, memoized orbits, and the Picard solver.

mod orbit;
mod solve;

pub use orbit::{
    asymptotic_regularity_estimate, iterate, orbit_diameter, orbit_prefix, Orbit,
    RegularityEstimate,
};
pub use solve::{picard_solve, FixedPointResult, DEFAULT_MAX_ITER, DEFAULT_TOL};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::metric::{ExamplePoint, TableSpace};

/// A total map from a space into itself.
pub trait SelfMap: Send + Sync {
    type Point: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn apply(&self, x: &Self::Point) -> Self::Point;

    /// Descriptor string accepted by [`crate::descriptor::MapDescriptor`].
    fn describe(&self) -> String;
}

/// `T(x) = a x + c` on the reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub a: f64,
    pub c: f64,
}

impl Affine {
    pub fn new(a: f64, c: f64) -> Self {
        Affine { a, c }
    }

    pub fn identity() -> Self {
        Affine { a: 1.0, c: 0.0 }
    }

    pub fn constant(c: f64) -> Self {
        Affine { a: 0.0, c }
    }

    /// The fixed point `c / (1 - a)` when `a != 1`.
    pub fn fixed_point(&self) -> Option<f64> {
        (self.a != 1.0).then(|| self.c / (1.0 - self.a))
    }
}

impl SelfMap for Affine {
    type Point = f64;

    fn apply(&self, x: &f64) -> f64 {
        self.a * x + self.c
    }

    fn describe(&self) -> String {
        format!("affine:{:?},{:?}", self.a, self.c)
    }
}

/// `T(x_l) = x_{2l}` on the example space.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DoubleIndex;

impl SelfMap for DoubleIndex {
    type Point = ExamplePoint;

    fn apply(&self, x: &ExamplePoint) -> ExamplePoint {
        ExamplePoint::new(x.index() * BigUint::from(2u32))
    }

    fn describe(&self) -> String {
        "double-index".to_string()
    }
}

/// An explicit point-to-point map on a [`TableSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct TableMap {
    images: Arc<Vec<usize>>,
    source: Option<String>,
}

impl TableMap {
    pub fn new(images: Vec<usize>) -> Self {
        TableMap {
            images: Arc::new(images),
            source: None,
        }
    }

    /// Reads `from,to` rows of point names (an optional header `from,to` is
    /// skipped). Every point of `space` must have exactly one image.
    pub fn from_csv(path: impl AsRef<std::path::Path>, space: &TableSpace) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        let mut map = Self::from_csv_str(&text, space)?;
        map.source = Some(path.display().to_string());
        Ok(map)
    }

    pub fn from_csv_str(text: &str, space: &TableSpace) -> Result<Self> {
        let mut images: Vec<Option<usize>> = vec![None; space.len()];
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        for (row, record) in reader.records().enumerate() {
            let record = record?;
            if record.len() != 2 {
                return Err(Error::parse(
                    format!("{:?}", record.as_slice()),
                    "expected `from,to`",
                ));
            }
            if row == 0 && &record[0] == "from" && &record[1] == "to" {
                continue;
            }
            let lookup = |name: &str| {
                space
                    .index_of(name)
                    .ok_or_else(|| Error::parse(name, "not a point of the table space"))
            };
            let from = lookup(&record[0])?;
            let to = lookup(&record[1])?;
            if images[from].replace(to).is_some() {
                return Err(Error::usage(format!(
                    "point `{}` has two images",
                    &record[0]
                )));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| Error::usage(format!("point `{}` has no image", space.name(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TableMap::new(images))
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

impl SelfMap for TableMap {
    type Point = usize;

    fn apply(&self, x: &usize) -> usize {
        self.images[*x]
    }

    fn describe(&self) -> String {
        match &self.source {
            Some(p) => format!("table:{p}"),
            None => format!("table:<{} points>", self.images.len()),
        }
    }
}

/// A map given by a closure, for experiments not covered by the built-ins.
pub struct FnMap<P, F> {
    name: String,
    f: F,
    _point: std::marker::PhantomData<fn(&P) -> P>,
}

impl<P, F: Fn(&P) -> P> FnMap<P, F> {
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnMap {
            name: name.into(),
            f,
            _point: std::marker::PhantomData,
        }
    }
}

impl<P, F> SelfMap for FnMap<P, F>
where
    P: Clone + PartialEq + fmt::Debug + Send + Sync,
    F: Fn(&P) -> P + Send + Sync,
{
    type Point = P;

    fn apply(&self, x: &P) -> P {
        (self.f)(x)
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}
