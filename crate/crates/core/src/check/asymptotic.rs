use rayon::prelude::*;

use super::search::{search, Conclusion, Lower, Outcome, Prepared, Record, Shape};
use crate::error::{Error, Result};
use crate::gauges::Gauge;
use crate::grid::{DeltaGrid, EpsGrid};
use crate::maps::{Orbit, SelfMap};
use crate::metric::{DistanceMatrix, MetricSpace};
use crate::scalar::Scalar;
use crate::verdict::{
    CheckVerdict, Condition, EpsDeltaProfile, ProfileEntry, SampleStats, Witness,
};

/// Orbit length and search bounds for the asymptotic checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticBudget {
    /// Orbit positions `0..=horizon` are materialized.
    pub horizon: usize,
    pub nu_max: usize,
    pub n_max: usize,
    /// Trailing positions read by the orbit-merging tail check.
    pub window: usize,
    pub tol: f64,
}

impl Default for AsymptoticBudget {
    fn default() -> Self {
        AsymptoticBudget {
            horizon: 128,
            nu_max: 8,
            n_max: 8,
            window: 8,
            tol: 1e-6,
        }
    }
}

impl AsymptoticBudget {
    fn validate(&self) -> Result<()> {
        if self.nu_max == 0 {
            return Err(Error::usage("nu-max must be at least 1"));
        }
        if self.horizon < self.nu_max + 2 {
            return Err(Error::usage(format!(
                "orbit horizon {} is too short for nu-max {} (need at least nu-max + 2)",
                self.horizon, self.nu_max
            )));
        }
        if self.window == 0 || self.window > self.horizon {
            return Err(Error::usage("tail window must lie in 1..=horizon"));
        }
        Ok(())
    }
}

type LagRecords<D> = (Vec<(usize, usize)>, Vec<Record<D>>);

/// Orbits-merge tail check together with the epsilon-delta-nu profile.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport<P, D> {
    pub merge: CheckVerdict<P, D>,
    pub profile: EpsDeltaProfile<P, D>,
}

impl<P, D> AsymptoticReport<P, D> {
    pub fn is_consistent(&self) -> bool {
        self.merge.is_consistent() && self.profile.is_consistent()
    }
}

/// Final-type condition on the orbit of `seed`:
/// `eps < d(T^p x, T^q x) < eps + delta  =>  d(T^{p+nu} x, T^{q+nu} x) <= eps`
/// for `1 <= p < q`, with `nu` ascending, then `delta` descending.
///
/// `companions` are the points `y` for the tail check `d(T^n x, T^n y) -> 0`;
/// when empty, `Tx` is used.
pub fn check_asymptotic_final_type<S, M>(
    space: &S,
    map: &M,
    seed: &S::Point,
    companions: &[S::Point],
    budget: &AsymptoticBudget,
    eps_grid: &EpsGrid,
    deltas: &DeltaGrid,
) -> Result<AsymptoticReport<S::Point, S::Dist>>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    budget.validate()?;
    let k = budget.horizon;
    let mut orbit = Orbit::new(map, seed.clone());
    let dist = DistanceMatrix::build(space, orbit.prefix(k));
    let merge = merge_check(space, map, seed, companions, budget);
    let per_lag: Vec<LagRecords<S::Dist>> = (1..=budget.nu_max)
        .map(|nu| {
            let pairs = ordered_pairs(1, k - nu);
            let records = pairs
                .par_iter()
                .map(|&(p, q)| {
                    let d = dist.get(p, q);
                    Record {
                        key: 0,
                        hyp: d.clone(),
                        lower: Some(d),
                        concl: dist.get(p + nu, q + nu),
                    }
                })
                .collect();
            (pairs, records)
        })
        .collect();
    let shape = Shape {
        lower: Lower::Above,
        conclusion: Conclusion::AtMost,
    };
    let mut profile = EpsDeltaProfile::new("acf");
    for &eps in eps_grid.values() {
        let grid = deltas.values(eps);
        let mut entry = None;
        let mut failure = None;
        for (i, (pairs, records)) in per_lag.iter().enumerate() {
            let nu = i + 1;
            let prep = Prepared::new(records, shape, eps, eps, 0.0, 0);
            match search(&prep, &grid, 0, 0) {
                Outcome::Found {
                    delta,
                    unbounded,
                    evaluated,
                    indeterminate,
                    ..
                } => {
                    entry = Some(consistent(
                        eps,
                        delta,
                        unbounded,
                        None,
                        nu,
                        evaluated,
                        indeterminate,
                    ));
                    break;
                }
                Outcome::Failed { record, delta, .. } => {
                    let (p, q) = pairs[record];
                    let r = prep.record(record);
                    failure = Some(
                        Witness::new(Condition::FinalType {
                            eps,
                            delta,
                            lag: nu,
                        })
                        .with_points(vec![seed.clone()])
                        .with_indices(vec![p, q])
                        .measure("d", r.hyp.clone())
                        .measure("d-lagged", r.concl.clone()),
                    );
                }
            }
        }
        profile.entries.push(entry.unwrap_or_else(|| {
            let mut e = ProfileEntry::falsified(eps, failure.expect("every lag failed"));
            e.lag = Some(budget.nu_max);
            e
        }));
    }
    Ok(AsymptoticReport { merge, profile })
}

/// Asymptotic m-contraction on the orbit of `seed`:
/// `m(T^p x, T^q x) < eps + delta  =>  d(T^{p+nu} x, T^{q+nu} x) <= eps`
/// for `p, q >= N`, with `nu` ascending, then `N` ascending, then `delta`
/// descending.
pub fn check_asymptotic_m_contraction<S, M>(
    space: &S,
    map: &M,
    gauge: &Gauge,
    seed: &S::Point,
    companions: &[S::Point],
    budget: &AsymptoticBudget,
    eps_grid: &EpsGrid,
    deltas: &DeltaGrid,
) -> Result<AsymptoticReport<S::Point, S::Dist>>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    budget.validate()?;
    gauge.validate()?;
    let k = budget.horizon;
    let depth = gauge.probe_depth();
    if k < depth + 2 {
        return Err(Error::usage(format!(
            "orbit horizon {k} is too short for gauge {gauge}"
        )));
    }
    let mut orbit = Orbit::new(map, seed.clone());
    let dist = DistanceMatrix::build(space, orbit.prefix(k));
    let merge = merge_check(space, map, seed, companions, budget);
    let symmetric = gauge.is_symmetric();
    let lim = k - depth;
    let gauge_of = |p: usize, q: usize| {
        let m = crate::gauges::evaluate_indexed(gauge, &dist, p, q);
        if symmetric {
            m
        } else {
            S::Dist::min_of(m, crate::gauges::evaluate_indexed(gauge, &dist, q, p))
        }
    };
    let all_pairs = ordered_pairs(0, lim);
    let gauges: Vec<S::Dist> = all_pairs.par_iter().map(|&(p, q)| gauge_of(p, q)).collect();
    let per_lag: Vec<LagRecords<S::Dist>> = (1..=budget.nu_max)
        .map(|nu| {
            let top = lim.min(k - nu);
            let (pairs, records) = all_pairs
                .iter()
                .zip(&gauges)
                .filter(|((_, q), _)| *q <= top)
                .map(|(&(p, q), m)| {
                    (
                        (p, q),
                        Record {
                            key: p,
                            hyp: m.clone(),
                            lower: None,
                            concl: dist.get(p + nu, q + nu),
                        },
                    )
                })
                .unzip();
            (pairs, records)
        })
        .collect();
    let shape = Shape {
        lower: Lower::None,
        conclusion: Conclusion::AtMost,
    };
    let mut profile = EpsDeltaProfile::new(format!("amc:{gauge}"));
    for &eps in eps_grid.values() {
        let grid = deltas.values(eps);
        let mut entry = None;
        let mut failure = None;
        for (i, (pairs, records)) in per_lag.iter().enumerate() {
            let nu = i + 1;
            let prep = Prepared::new(records, shape, eps, eps, 0.0, budget.n_max);
            match search(&prep, &grid, 0, budget.n_max) {
                Outcome::Found {
                    shift,
                    delta,
                    unbounded,
                    evaluated,
                    indeterminate,
                } => {
                    entry = Some(consistent(
                        eps,
                        delta,
                        unbounded,
                        Some(shift),
                        nu,
                        evaluated,
                        indeterminate,
                    ));
                    break;
                }
                Outcome::Failed {
                    record,
                    shift,
                    delta,
                } => {
                    let (p, q) = pairs[record];
                    let r = prep.record(record);
                    failure = Some(
                        Witness::new(Condition::AsymptoticM {
                            gauge: *gauge,
                            eps,
                            delta,
                            lag: nu,
                            shift,
                        })
                        .with_points(vec![seed.clone()])
                        .with_indices(vec![p, q])
                        .measure("m", r.hyp.clone())
                        .measure("d-lagged", r.concl.clone()),
                    );
                }
            }
        }
        profile.entries.push(entry.unwrap_or_else(|| {
            let mut e = ProfileEntry::falsified(eps, failure.expect("every lag failed"));
            e.lag = Some(budget.nu_max);
            e.shift = Some(budget.n_max);
            e
        }));
    }
    Ok(AsymptoticReport { merge, profile })
}

fn consistent<P, D>(
    eps: f64,
    delta: f64,
    unbounded: bool,
    shift: Option<usize>,
    lag: usize,
    evaluated: usize,
    indeterminate: usize,
) -> ProfileEntry<P, D> {
    ProfileEntry {
        eps,
        best_delta: Some(delta),
        delta_unbounded: unbounded,
        shift,
        lag: Some(lag),
        eta: None,
        verdict: CheckVerdict::ConsistentUpToSample(SampleStats {
            evaluated,
            indeterminate,
            notes: Vec::new(),
        }),
    }
}

/// `(p, q)` with `lo <= p < q <= hi`.
fn ordered_pairs(lo: usize, hi: usize) -> Vec<(usize, usize)> {
    (lo..=hi)
        .flat_map(|p| (p + 1..=hi).map(move |q| (p, q)))
        .collect()
}

/// Tail check for `d(T^n x, T^n y) -> 0` over the last `window` positions.
fn merge_check<S, M>(
    space: &S,
    map: &M,
    seed: &S::Point,
    companions: &[S::Point],
    budget: &AsymptoticBudget,
) -> CheckVerdict<S::Point, S::Dist>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let k = budget.horizon;
    let default = [map.apply(seed)];
    let companions = if companions.is_empty() {
        &default[..]
    } else {
        companions
    };
    let mut ox = Orbit::new(map, seed.clone());
    let xs = ox.prefix(k).to_vec();
    let tol = S::Dist::from_f64(budget.tol);
    let start = k + 1 - budget.window;
    for y in companions {
        let mut oy = Orbit::new(map, y.clone());
        let ys = oy.prefix(k);
        let (arg, worst) = (start..=k)
            .map(|n| (n, space.distance(&xs[n], &ys[n])))
            .fold((start, S::Dist::zero()), |acc, (n, d)| {
                if d > acc.1 {
                    (n, d)
                } else {
                    acc
                }
            });
        if worst > tol {
            return CheckVerdict::Falsified(
                Witness::new(Condition::OrbitsMerge {
                    depth: k,
                    window: budget.window,
                    tol: budget.tol,
                })
                .with_points(vec![seed.clone(), y.clone()])
                .with_indices(vec![arg])
                .measure("d-tail-max", worst),
            );
        }
    }
    CheckVerdict::ConsistentUpToSample(SampleStats::evaluated(companions.len() * budget.window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{Affine, DoubleIndex};
    use crate::metric::{ExamplePoint, ExampleSpace, Interval};

    #[test]
    fn doubling_orbit_is_of_the_final_type() {
        let r = check_asymptotic_final_type(
            &ExampleSpace,
            &DoubleIndex,
            &ExamplePoint::new(1u32),
            &[],
            &AsymptoticBudget::default(),
            &EpsGrid::default(),
            &DeltaGrid::default(),
        )
        .unwrap();
        assert!(r.is_consistent());
        assert!(r.profile.entries.iter().all(|e| e.lag.unwrap() <= 2));
    }

    #[test]
    fn halving_needs_lag_one() {
        let space = Interval::new(0.0, 1.0).unwrap();
        let r = check_asymptotic_final_type(
            &space,
            &Affine::new(0.5, 0.0),
            &1.0,
            &[],
            &AsymptoticBudget::default(),
            &EpsGrid::default(),
            &DeltaGrid::default(),
        )
        .unwrap();
        assert!(r.is_consistent());
        assert!(r.profile.entries.iter().all(|e| e.lag == Some(1)));
    }

    #[test]
    fn translation_fails_the_merge_check() {
        let space = Interval::new(0.0, 200.0).unwrap();
        let b = AsymptoticBudget::default();
        let r = check_asymptotic_final_type(
            &space,
            &Affine::new(1.0, 1.0),
            &0.0,
            &[],
            &b,
            &EpsGrid::default(),
            &DeltaGrid::default(),
        )
        .unwrap();
        assert!(r.merge.is_falsified());
        let m = check_asymptotic_m_contraction(
            &space,
            &Affine::new(1.0, 1.0),
            &Gauge::Ciric,
            &0.0,
            &[],
            &b,
            &EpsGrid::default(),
            &DeltaGrid::default(),
        )
        .unwrap();
        assert!(!m.is_consistent());
    }

    #[test]
    fn proinov_gauge_on_the_doubling_orbit() {
        let r = check_asymptotic_m_contraction(
            &ExampleSpace,
            &DoubleIndex,
            &Gauge::Proinov { gamma: 1.0 },
            &ExamplePoint::new(1u32),
            &[],
            &AsymptoticBudget::default(),
            &EpsGrid::default(),
            &DeltaGrid::default(),
        )
        .unwrap();
        assert!(r.is_consistent());
    }

    #[test]
    fn short_horizon_is_rejected() {
        let b = AsymptoticBudget {
            horizon: 5,
            ..Default::default()
        };
        let space = Interval::unit();
        assert!(check_asymptotic_final_type(
            &space,
            &Affine::new(0.5, 0.0),
            &1.0,
            &[],
            &b,
            &EpsGrid::default(),
            &DeltaGrid::default()
        )
        .is_err());
    }
}
