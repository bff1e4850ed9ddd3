use rayon::prelude::*;

use super::search::{search, Conclusion, Lower, Outcome, Prepared, Record, Shape};
use super::PairSample;
use crate::grid::{DeltaGrid, EpsGrid};
use crate::maps::SelfMap;
use crate::metric::MetricSpace;
use crate::scalar::Scalar;
use crate::verdict::{
    CheckVerdict, Condition, EpsDeltaProfile, ProfileEntry, SampleStats, Witness,
};

/// `eps <= d(x,y) < eps + delta  =>  d(Tx,Ty) < eps`, searched per grid `eps`.
pub fn check_meir_keeler<S, M>(
    space: &S,
    map: &M,
    sample: &PairSample<S::Point>,
    eps_grid: &EpsGrid,
    deltas: &DeltaGrid,
) -> EpsDeltaProfile<S::Point, S::Dist>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let records = pair_records(space, map, sample);
    let shape = Shape {
        lower: Lower::AtLeast,
        conclusion: Conclusion::Below,
    };
    profile(
        "meir-keeler",
        sample,
        &records,
        shape,
        eps_grid,
        deltas,
        |eps, delta| Condition::MeirKeeler { eps, delta },
    )
}

/// Outcome of the Ciric-Matkowski check: the epsilon-delta profile and the
/// contractivity scan `d(Tx,Ty) < d(x,y)` for `x != y`.
#[derive(Debug, Clone, PartialEq)]
pub struct CiricMatkowskiReport<P, D> {
    pub profile: EpsDeltaProfile<P, D>,
    pub contractive: CheckVerdict<P, D>,
}

impl<P, D> CiricMatkowskiReport<P, D> {
    pub fn is_consistent(&self) -> bool {
        self.profile.is_consistent() && self.contractive.is_consistent()
    }
}

/// `eps < d(x,y) < eps + delta  =>  d(Tx,Ty) <= eps`, plus contractivity.
pub fn check_ciric_matkowski<S, M>(
    space: &S,
    map: &M,
    sample: &PairSample<S::Point>,
    eps_grid: &EpsGrid,
    deltas: &DeltaGrid,
) -> CiricMatkowskiReport<S::Point, S::Dist>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let records = pair_records(space, map, sample);
    let shape = Shape {
        lower: Lower::Above,
        conclusion: Conclusion::AtMost,
    };
    let profile = profile(
        "ciric-matkowski",
        sample,
        &records,
        shape,
        eps_grid,
        deltas,
        |eps, delta| Condition::CiricMatkowski { eps, delta },
    );
    let mut checked = 0;
    let mut contractive = None;
    for (k, r) in records.iter().enumerate() {
        let (x, y) = sample.pair(k);
        if x == y {
            continue;
        }
        checked += 1;
        if r.concl >= r.hyp {
            contractive = Some(
                Witness::new(Condition::Contractive)
                    .with_points(vec![x.clone(), y.clone()])
                    .measure("d", r.hyp.clone())
                    .measure("d-image", r.concl.clone()),
            );
            break;
        }
    }
    let contractive = match contractive {
        Some(w) => CheckVerdict::Falsified(w),
        None => CheckVerdict::ConsistentUpToSample(SampleStats::evaluated(checked)),
    };
    CiricMatkowskiReport {
        profile,
        contractive,
    }
}

fn pair_records<S, M>(space: &S, map: &M, sample: &PairSample<S::Point>) -> Vec<Record<S::Dist>>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let images: Vec<S::Point> = sample.points.par_iter().map(|p| map.apply(p)).collect();
    sample
        .pairs
        .par_iter()
        .map(|&(i, j)| {
            let d = space.distance(&sample.points[i], &sample.points[j]);
            Record {
                key: 0,
                hyp: d.clone(),
                lower: Some(d),
                concl: space.distance(&images[i], &images[j]),
            }
        })
        .collect()
}

fn profile<P: Clone, D: Scalar>(
    name: &str,
    sample: &PairSample<P>,
    records: &[Record<D>],
    shape: Shape,
    eps_grid: &EpsGrid,
    deltas: &DeltaGrid,
    condition: impl Fn(f64, f64) -> Condition,
) -> EpsDeltaProfile<P, D> {
    let mut out = EpsDeltaProfile::new(name);
    for &eps in eps_grid.values() {
        let grid = deltas.values(eps);
        let prep = Prepared::new(records, shape, eps, eps, 0.0, 0);
        let entry = match search(&prep, &grid, 0, 0) {
            Outcome::Found {
                delta,
                unbounded,
                evaluated,
                indeterminate,
                ..
            } => ProfileEntry {
                eps,
                best_delta: Some(delta),
                delta_unbounded: unbounded,
                shift: None,
                lag: None,
                eta: None,
                verdict: CheckVerdict::ConsistentUpToSample(SampleStats {
                    evaluated,
                    indeterminate,
                    notes: Vec::new(),
                }),
            },
            Outcome::Failed { record, delta, .. } => {
                let (x, y) = sample.pair(record);
                let r = prep.record(record);
                let w = Witness::new(condition(eps, delta))
                    .with_points(vec![x.clone(), y.clone()])
                    .measure("d", r.hyp.clone())
                    .measure("d-image", r.concl.clone());
                ProfileEntry::falsified(eps, w)
            }
        };
        out.entries.push(entry);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::Affine;
    use crate::metric::Interval;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample(space: &Interval, n: usize) -> PairSample<f64> {
        PairSample::draw(space, 0, n, &mut ChaCha8Rng::seed_from_u64(11))
    }

    #[test]
    fn halving_admits_delta_equal_to_eps() {
        let space = Interval::unit();
        let s = sample(&space, 4000);
        let p = check_meir_keeler(
            &space,
            &Affine::new(0.5, 0.0),
            &s,
            &EpsGrid::default(),
            &DeltaGrid::default(),
        );
        assert!(p.is_consistent());
        let e = p.entry(0.5).unwrap();
        assert_eq!(e.best_delta, Some(0.5));
    }

    #[test]
    fn isometry_is_falsified_at_distance_one() {
        let space = Interval::new(0.0, 4.0).unwrap();
        let s = PairSample::from_pairs(vec![(0.0, 1.0), (1.0, 3.5)]);
        let p = check_meir_keeler(
            &space,
            &Affine::identity(),
            &s,
            &EpsGrid::from_values(vec![1.0]).unwrap(),
            &DeltaGrid::default(),
        );
        let w = p.entries[0].verdict.witness().unwrap();
        assert_eq!(w.points, vec![0.0, 1.0]);
        assert_eq!(w.measured("d-image"), Some(&1.0));
    }

    #[test]
    fn constant_map_is_unbounded() {
        let space = Interval::unit();
        let s = sample(&space, 500);
        let p = check_meir_keeler(
            &space,
            &Affine::constant(0.3),
            &s,
            &EpsGrid::default(),
            &DeltaGrid::default(),
        );
        assert!(p
            .entries
            .iter()
            .all(|e| e.delta_unbounded && e.verdict.is_consistent()));
    }

    #[test]
    fn ciric_matkowski_catches_the_identity_by_contractivity() {
        let space = Interval::unit();
        let s = sample(&space, 100);
        let r = check_ciric_matkowski(
            &space,
            &Affine::identity(),
            &s,
            &EpsGrid::default(),
            &DeltaGrid::default(),
        );
        assert!(r.contractive.is_falsified());
        assert!(!r.is_consistent());
        let h = check_ciric_matkowski(
            &space,
            &Affine::new(0.5, 0.0),
            &s,
            &EpsGrid::default(),
            &DeltaGrid::default(),
        );
        assert!(h.is_consistent());
    }
}
