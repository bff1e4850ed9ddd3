use rayon::prelude::*;

use super::search::{search, Conclusion, Lower, Outcome, Prepared, Record, Shape};
use super::{orbit_sections, PairSample};
use crate::error::{Error, Result};
use crate::gauges::{evaluate_on_sections, Gauge};
use crate::grid::{DeltaGrid, EpsGrid};
use crate::maps::SelfMap;
use crate::metric::MetricSpace;
use crate::verdict::{
    CheckVerdict, Condition, EpsDeltaProfile, ProfileEntry, SampleStats, Witness,
};

/// `m(T^N x, T^N y) < delta + eps  =>  d(T^{N+1} x, T^{N+1} y) <= eps`.
///
/// For each grid `eps`, shifts `N` in `n_range` are tried in ascending
/// order and, for each, the grid deltas in descending order. The first
/// admissible pair is recorded. Both orientations of a pair are covered.
pub fn check_shifted_m_contraction<S, M>(
    space: &S,
    map: &M,
    gauge: &Gauge,
    sample: &PairSample<S::Point>,
    eps_grid: &EpsGrid,
    deltas: &DeltaGrid,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<EpsDeltaProfile<S::Point, S::Dist>>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let (n_lo, n_hi) = (*n_range.start(), *n_range.end());
    if n_lo > n_hi {
        return Err(Error::usage(format!("empty shift range {n_lo}..={n_hi}")));
    }
    gauge.validate()?;
    let depth = n_hi + gauge.probe_depth().max(1);
    let sections = orbit_sections(map, &sample.points, depth);
    let symmetric = gauge.is_symmetric();
    let per_shift: Vec<Vec<Record<S::Dist>>> = (n_lo..=n_hi)
        .map(|n| {
            sample
                .pairs
                .par_iter()
                .map(|&(i, j)| {
                    let (xs, ys) = (&sections[i][n..], &sections[j][n..]);
                    let mut m = evaluate_on_sections(gauge, space, xs, ys);
                    if !symmetric {
                        let back = evaluate_on_sections(gauge, space, ys, xs);
                        if back < m {
                            m = back;
                        }
                    }
                    Record {
                        key: 0,
                        hyp: m,
                        lower: None,
                        concl: space.distance(&xs[1], &ys[1]),
                    }
                })
                .collect()
        })
        .collect();
    let shape = Shape {
        lower: Lower::None,
        conclusion: Conclusion::AtMost,
    };
    let mut out = EpsDeltaProfile::new(format!("shifted:{gauge}"));
    for &eps in eps_grid.values() {
        let grid = deltas.values(eps);
        let mut entry = None;
        let mut failure = None;
        for (offset, records) in per_shift.iter().enumerate() {
            let n = n_lo + offset;
            let prep = Prepared::new(records, shape, eps, eps, 0.0, 0);
            match search(&prep, &grid, 0, 0) {
                Outcome::Found {
                    delta,
                    unbounded,
                    evaluated,
                    indeterminate,
                    ..
                } => {
                    entry = Some(ProfileEntry {
                        eps,
                        best_delta: Some(delta),
                        delta_unbounded: unbounded,
                        shift: Some(n),
                        lag: None,
                        eta: None,
                        verdict: CheckVerdict::ConsistentUpToSample(SampleStats {
                            evaluated,
                            indeterminate,
                            notes: Vec::new(),
                        }),
                    });
                    break;
                }
                Outcome::Failed { record, delta, .. } => {
                    let (x, y) = sample.pair(record);
                    let r = prep.record(record);
                    failure = Some(
                        Witness::new(Condition::Shifted {
                            gauge: *gauge,
                            eps,
                            delta,
                            shift: n,
                        })
                        .with_points(vec![x.clone(), y.clone()])
                        .measure("m", r.hyp.clone())
                        .measure("d-image", r.concl.clone()),
                    );
                }
            }
        }
        out.entries.push(entry.unwrap_or_else(|| {
            let mut e = ProfileEntry::falsified(eps, failure.expect("every shift failed"));
            e.shift = Some(n_hi);
            e
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{Affine, DoubleIndex};
    use crate::metric::{ExampleSpace, Interval};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn halving_with_the_metric_at_shift_zero() {
        let space = Interval::unit();
        let s = PairSample::draw(&space, 0, 2000, &mut ChaCha8Rng::seed_from_u64(5));
        let p = check_shifted_m_contraction(
            &space,
            &Affine::new(0.5, 0.0),
            &Gauge::PlainD,
            &s,
            &EpsGrid::default(),
            &DeltaGrid::eps_only(),
            0..=0,
        )
        .unwrap();
        assert!(p.is_consistent());
        assert!(p
            .entries
            .iter()
            .all(|e| e.shift == Some(0) && e.best_delta == Some(e.eps)));
    }

    #[test]
    fn example_space_at_shift_two() {
        let points = (0..=64u32).map(crate::metric::ExamplePoint::new).collect();
        let s = PairSample::all_pairs(points);
        let g = Gauge::GeneralizedProinov {
            alpha: 1.0,
            beta: 1.0,
            s: 1,
            t: 1,
        };
        let p = check_shifted_m_contraction(
            &ExampleSpace,
            &DoubleIndex,
            &g,
            &s,
            &EpsGrid::default(),
            &DeltaGrid::eps_only(),
            2..=2,
        )
        .unwrap();
        assert!(p.is_consistent());
    }

    #[test]
    fn translation_fails_every_shift() {
        // Bianchini sees only the unit steps; the pair stays 2 apart.
        let space = Interval::new(0.0, 10.0).unwrap();
        let s = PairSample::from_pairs(vec![(0.0, 2.0)]);
        let ep = EpsGrid::from_values(vec![1.0]).unwrap();
        let p = check_shifted_m_contraction(
            &space,
            &Affine::new(1.0, 1.0),
            &Gauge::Bianchini,
            &s,
            &ep,
            &DeltaGrid::default(),
            0..=3,
        )
        .unwrap();
        let e = &p.entries[0];
        assert!(e.verdict.is_falsified());
        assert_eq!(e.shift, Some(3));
    }
}
