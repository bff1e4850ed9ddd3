//! Textual descriptors for spaces, maps and conditions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gauges::Gauge;

/// `example`, `interval:lo,hi` or `table:<path>`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceDescriptor {
    Example,
    Interval { lo: f64, hi: f64 },
    Table { path: String },
}

/// `double-index`, `affine:a,c` or `table:<path>`.
#[derive(Debug, Clone, PartialEq)]
pub enum MapDescriptor {
    DoubleIndex,
    Affine { a: f64, c: f64 },
    Table { path: String },
}

/// `banach`, `meir-keeler`, `ciric-matkowski`, `shifted:<gauge>`, `acf`
/// or `amc:<gauge>`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConditionDescriptor {
    Banach,
    MeirKeeler,
    CiricMatkowski,
    Shifted(Gauge),
    Acf,
    Amc(Gauge),
}

fn two_reals(token: &str, body: &str) -> Result<(f64, f64)> {
    let mut it = body.split(',').map(str::trim);
    let parse = |v: Option<&str>| -> Result<f64> {
        let v = v.ok_or_else(|| Error::parse(token, "expected two comma-separated reals"))?;
        let x: f64 = v.parse().map_err(|_| Error::parse(v, "expected a real"))?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::parse(v, "expected a finite real"))
        }
    };
    let a = parse(it.next())?;
    let b = parse(it.next())?;
    if it.next().is_some() {
        return Err(Error::parse(token, "expected exactly two reals"));
    }
    Ok((a, b))
}

impl FromStr for SpaceDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "example" => Ok(SpaceDescriptor::Example),
            Some(("interval", body)) => {
                let (lo, hi) = two_reals(s, body)?;
                if lo >= hi {
                    return Err(Error::parse(s, "interval needs lo < hi"));
                }
                Ok(SpaceDescriptor::Interval { lo, hi })
            }
            Some(("table", path)) if !path.is_empty() => Ok(SpaceDescriptor::Table {
                path: path.to_string(),
            }),
            _ => Err(Error::parse(
                s,
                "unknown space (expected example, interval:lo,hi or table:<path>)",
            )),
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Example => f.write_str("example"),
            SpaceDescriptor::Interval { lo, hi } => write!(f, "interval:{lo},{hi}"),
            SpaceDescriptor::Table { path } => write!(f, "table:{path}"),
        }
    }
}

impl FromStr for MapDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "double-index" => Ok(MapDescriptor::DoubleIndex),
            Some(("affine", body)) => {
                let (a, c) = two_reals(s, body)?;
                Ok(MapDescriptor::Affine { a, c })
            }
            Some(("table", path)) if !path.is_empty() => Ok(MapDescriptor::Table {
                path: path.to_string(),
            }),
            _ => Err(Error::parse(
                s,
                "unknown map (expected double-index, affine:a,c or table:<path>)",
            )),
        }
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapDescriptor::DoubleIndex => f.write_str("double-index"),
            MapDescriptor::Affine { a, c } => write!(f, "affine:{a},{c}"),
            MapDescriptor::Table { path } => write!(f, "table:{path}"),
        }
    }
}

impl FromStr for ConditionDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "banach" => ConditionDescriptor::Banach,
            "meir-keeler" => ConditionDescriptor::MeirKeeler,
            "ciric-matkowski" => ConditionDescriptor::CiricMatkowski,
            "acf" => ConditionDescriptor::Acf,
            _ => match s.split_once(':') {
                Some(("shifted", g)) => ConditionDescriptor::Shifted(g.parse()?),
                Some(("amc", g)) => ConditionDescriptor::Amc(g.parse()?),
                _ => return Err(Error::parse(s, "unknown condition")),
            },
        })
    }
}

impl fmt::Display for ConditionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionDescriptor::Banach => f.write_str("banach"),
            ConditionDescriptor::MeirKeeler => f.write_str("meir-keeler"),
            ConditionDescriptor::CiricMatkowski => f.write_str("ciric-matkowski"),
            ConditionDescriptor::Shifted(g) => write!(f, "shifted:{g}"),
            ConditionDescriptor::Acf => f.write_str("acf"),
            ConditionDescriptor::Amc(g) => write!(f, "amc:{g}"),
        }
    }
}
