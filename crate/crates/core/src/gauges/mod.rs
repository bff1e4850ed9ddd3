//! Gauge functions `m(x, y)` that stand in for `d(x, y)` in contraction
//! hypotheses, and the tail comparison of a gauge against the metric.

mod families;
mod limsup;
mod table;

pub use families::PairFamily;
pub use limsup::{limsup_comparison, LimsupComparison};
pub(crate) use table::evaluate_indexed;
pub use table::GaugeTable;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{Orbit, SelfMap};
use crate::metric::MetricSpace;
use crate::scalar::Scalar;

/// The gauge catalog.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Gauge {
    /// `d(x, y)`
    PlainD,
    /// `max{d(x,Tx), d(y,Ty)}`
    Bianchini,
    /// `[d(x,Ty) + d(y,Tx)] / 2`
    Chatterjea,
    /// `max{d(x,y), d(x,Tx), d(y,Ty)}`
    MaitiPal,
    /// `max{d(x,y), d(x,Tx), d(y,Ty), d(x,Ty), d(y,Tx)}`
    Ciric,
    /// `max{d(x,y), d(x,Tx), d(y,Ty), [d(x,Ty) + d(y,Tx)] / 2}`
    Jachymski,
    /// `d(x,y) + gamma [d(x,Tx) + d(y,Ty)]`
    Proinov { gamma: f64 },
    /// `d(x,y) + alpha diam O_s(x) + beta diam O_t(y)`
    GeneralizedProinov {
        alpha: f64,
        beta: f64,
        s: usize,
        t: usize,
    },
}

impl Gauge {
    /// Every kind, with representative parameters.
    pub fn catalog() -> Vec<Gauge> {
        vec![
            Gauge::PlainD,
            Gauge::Bianchini,
            Gauge::Chatterjea,
            Gauge::MaitiPal,
            Gauge::Ciric,
            Gauge::Jachymski,
            Gauge::Proinov { gamma: 1.0 },
            Gauge::GeneralizedProinov {
                alpha: 1.0,
                beta: 1.0,
                s: 1,
                t: 1,
            },
        ]
    }

    pub fn proinov(gamma: f64) -> Result<Self> {
        let g = Gauge::Proinov { gamma };
        g.validate()?;
        Ok(g)
    }

    pub fn generalized_proinov(alpha: f64, beta: f64, s: usize, t: usize) -> Result<Self> {
        let g = Gauge::GeneralizedProinov { alpha, beta, s, t };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let nonneg = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::usage(format!(
                    "gauge parameter {name} must be a nonnegative real, got {v}"
                )))
            }
        };
        match *self {
            Gauge::Proinov { gamma } => nonneg("gamma", gamma),
            Gauge::GeneralizedProinov { alpha, beta, s, t } => {
                nonneg("alpha", alpha)?;
                nonneg("beta", beta)?;
                if s == 0 || t == 0 {
                    return Err(Error::usage("gauge orbit sections need s >= 1 and t >= 1"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// How many iterates beyond `x` (and `y`) an evaluation reads.
    pub fn probe_depth(&self) -> usize {
        match *self {
            Gauge::PlainD => 0,
            Gauge::GeneralizedProinov { s, t, .. } => s.max(t),
            _ => 1,
        }
    }

    /// `m(x, y) = m(y, x)` for every input.
    pub fn is_symmetric(&self) -> bool {
        match *self {
            Gauge::GeneralizedProinov { alpha, beta, s, t } => alpha == beta && s == t,
            _ => true,
        }
    }

    /// `m(x, y) >= d(x, y)` for every input.
    pub fn dominates_metric(&self) -> bool {
        !matches!(self, Gauge::Bianchini | Gauge::Chatterjea)
    }

    /// Core evaluation. `dist(a, b)` measures between nodes `(side, k)`:
    /// side `false` is `T^k x`, side `true` is `T^k y`.
    pub(crate) fn evaluate_nodes<D: Scalar>(
        &self,
        dist: impl Fn((bool, usize), (bool, usize)) -> D,
    ) -> D {
        let x = (false, 0);
        let y = (true, 0);
        let tx = (false, 1);
        let ty = (true, 1);
        let half = D::from_f64(0.5);
        let max = |vals: Vec<D>| vals.into_iter().reduce(D::max_of).expect("nonempty");
        match *self {
            Gauge::PlainD => dist(x, y),
            Gauge::Bianchini => max(vec![dist(x, tx), dist(y, ty)]),
            Gauge::Chatterjea => half * (dist(x, ty) + dist(y, tx)),
            Gauge::MaitiPal => max(vec![dist(x, y), dist(x, tx), dist(y, ty)]),
            Gauge::Ciric => max(vec![
                dist(x, y),
                dist(x, tx),
                dist(y, ty),
                dist(x, ty),
                dist(y, tx),
            ]),
            Gauge::Jachymski => max(vec![
                dist(x, y),
                dist(x, tx),
                dist(y, ty),
                half * (dist(x, ty) + dist(y, tx)),
            ]),
            Gauge::Proinov { gamma } => {
                dist(x, y) + D::from_f64(gamma) * (dist(x, tx) + dist(y, ty))
            }
            Gauge::GeneralizedProinov { alpha, beta, s, t } => {
                let diam = |side: bool, len: usize| {
                    let mut best = D::zero();
                    for i in 0..=len {
                        for j in i + 1..=len {
                            best = D::max_of(best, dist((side, i), (side, j)));
                        }
                    }
                    best
                };
                dist(x, y) + D::from_f64(alpha) * diam(false, s) + D::from_f64(beta) * diam(true, t)
            }
        }
    }
}

/// `m(x, y)` for the gauge built on `map`.
pub fn evaluate_gauge<S, M>(
    gauge: &Gauge,
    space: &S,
    map: &M,
    x: &S::Point,
    y: &S::Point,
) -> S::Dist
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let depth = gauge.probe_depth();
    let mut ox = Orbit::new(map, x.clone());
    let mut oy = Orbit::new(map, y.clone());
    let xs = ox.prefix(depth).to_vec();
    let ys = oy.prefix(depth).to_vec();
    evaluate_on_sections(gauge, space, &xs, &ys)
}

/// `m(x, y)` from orbit sections `xs[k] = T^k x`, `ys[k] = T^k y`, each at
/// least [`Gauge::probe_depth`] + 1 long.
pub fn evaluate_on_sections<S: MetricSpace>(
    gauge: &Gauge,
    space: &S,
    xs: &[S::Point],
    ys: &[S::Point],
) -> S::Dist {
    gauge.evaluate_nodes(|(sa, a), (sb, b)| {
        let pa = if sa { &ys[a] } else { &xs[a] };
        let pb = if sb { &ys[b] } else { &xs[b] };
        space.distance(pa, pb)
    })
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gauge::PlainD => f.write_str("d"),
            Gauge::Bianchini => f.write_str("bianchini"),
            Gauge::Chatterjea => f.write_str("chatterjea"),
            Gauge::MaitiPal => f.write_str("maiti-pal"),
            Gauge::Ciric => f.write_str("ciric"),
            Gauge::Jachymski => f.write_str("jachymski"),
            Gauge::Proinov { gamma } => write!(f, "proinov:gamma={gamma}"),
            Gauge::GeneralizedProinov { alpha, beta, s, t } => {
                write!(f, "gproinov:alpha={alpha},beta={beta},s={s},t={t}")
            }
        }
    }
}

impl FromStr for Gauge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, params) = match s.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (s, None),
        };
        let kv = |params: Option<&str>| -> Result<Vec<(String, String)>> {
            let p = params.ok_or_else(|| Error::parse(s, "missing parameters"))?;
            p.split(',')
                .map(|pair| {
                    pair.split_once('=')
                        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                        .ok_or_else(|| Error::parse(pair, "expected key=value"))
                })
                .collect()
        };
        let get = |pairs: &[(String, String)], key: &str| -> Result<String> {
            pairs
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::parse(s, format!("missing `{key}`")))
        };
        let real = |v: String| {
            v.parse::<f64>()
                .map_err(|_| Error::parse(v.clone(), "expected a real"))
        };
        let count = |v: String| {
            v.parse::<usize>()
                .map_err(|_| Error::parse(v.clone(), "expected a count"))
        };
        let simple = |g: Gauge| {
            if params.is_some() {
                Err(Error::parse(s, "this gauge takes no parameters"))
            } else {
                Ok(g)
            }
        };
        let gauge = match head {
            "d" => simple(Gauge::PlainD)?,
            "bianchini" => simple(Gauge::Bianchini)?,
            "chatterjea" => simple(Gauge::Chatterjea)?,
            "maiti-pal" => simple(Gauge::MaitiPal)?,
            "ciric" => simple(Gauge::Ciric)?,
            "jachymski" => simple(Gauge::Jachymski)?,
            "proinov" => {
                let p = kv(params)?;
                Gauge::Proinov {
                    gamma: real(get(&p, "gamma")?)?,
                }
            }
            "gproinov" => {
                let p = kv(params)?;
                Gauge::GeneralizedProinov {
                    alpha: real(get(&p, "alpha")?)?,
                    beta: real(get(&p, "beta")?)?,
                    s: count(get(&p, "s")?)?,
                    t: count(get(&p, "t")?)?,
                }
            }
            _ => return Err(Error::parse(s, "unknown gauge")),
        };
        gauge.validate()?;
        Ok(gauge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{Affine, DoubleIndex};
    use crate::metric::{ExamplePoint, ExampleSpace, Interval};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn descriptors_round_trip() {
        for g in Gauge::catalog() {
            let text = g.to_string();
            assert_eq!(text.parse::<Gauge>().unwrap(), g, "{text}");
        }
        assert_eq!(
            "gproinov:alpha=1,beta=0.5,s=2,t=3"
                .parse::<Gauge>()
                .unwrap(),
            Gauge::GeneralizedProinov {
                alpha: 1.0,
                beta: 0.5,
                s: 2,
                t: 3
            }
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!("proinov:gamma=-1".parse::<Gauge>().is_err());
        assert!("gproinov:alpha=1,beta=1,s=0,t=1".parse::<Gauge>().is_err());
        assert!("proinov".parse::<Gauge>().is_err());
        assert!("d:gamma=1".parse::<Gauge>().is_err());
        assert!("kannan".parse::<Gauge>().is_err());
    }

    #[test]
    fn proinov_with_zero_gamma_is_the_metric() {
        let s = Interval::unit();
        let m = Affine::new(0.3, 0.2);
        let g = Gauge::proinov(0.0).unwrap();
        assert_eq!(evaluate_gauge(&g, &s, &m, &0.1, &0.9), 0.8);
    }

    #[test]
    fn jachymski_vanishes_at_a_fixed_point() {
        let s = Interval::unit();
        let m = Affine::new(0.5, 1.0);
        assert_eq!(evaluate_gauge(&Gauge::Jachymski, &s, &m, &2.0, &2.0), 0.0);
    }

    #[test]
    fn generalized_gauge_on_the_example_pair() {
        let g = Gauge::generalized_proinov(1.0, 1.0, 1, 1).unwrap();
        let v = evaluate_gauge(
            &g,
            &ExampleSpace,
            &DoubleIndex,
            &ExamplePoint::new(4u32),
            &ExamplePoint::new(9u32),
        );
        assert_eq!(v, q(7, 4));
    }

    #[test]
    fn each_kind_on_a_hand_computed_pair() {
        // T(x) = x/2 on the reals, x = 1, y = 0.5: Tx = 0.5, Ty = 0.25.
        let s = Interval::unit();
        let m = Affine::new(0.5, 0.0);
        let eval = |g: Gauge| evaluate_gauge(&g, &s, &m, &1.0, &0.5);
        assert_eq!(eval(Gauge::PlainD), 0.5);
        assert_eq!(eval(Gauge::Bianchini), 0.5);
        assert_eq!(eval(Gauge::Chatterjea), 0.375);
        assert_eq!(eval(Gauge::MaitiPal), 0.5);
        assert_eq!(eval(Gauge::Ciric), 0.75);
        assert_eq!(eval(Gauge::Jachymski), 0.5);
        assert_eq!(eval(Gauge::Proinov { gamma: 2.0 }), 0.5 + 2.0 * 0.75);
        // O_2(1) = {1, 0.5, 0.25}, O_1(0.5) = {0.5, 0.25}
        assert_eq!(
            eval(Gauge::GeneralizedProinov {
                alpha: 1.0,
                beta: 2.0,
                s: 2,
                t: 1
            }),
            0.5 + 0.75 + 0.5
        );
    }
}
