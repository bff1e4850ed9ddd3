use crate::check::search::{search, Conclusion, Lower, Outcome, Prepared, Record, Shape};
use crate::error::{Error, Result};
use crate::gauges::{GaugeTable, PairFamily};
use crate::grid::{DeltaGrid, EpsGrid};
use crate::metric::MetricSpace;
use crate::prefix::SequencePrefix;
use crate::scalar::{Cmp, Scalar};
use crate::verdict::{
    CheckVerdict, Condition, EpsDeltaProfile, ProfileEntry, SampleStats, Witness,
};

/// Pairs `p < q` whose gauge value and shifted distance are both available.
fn sampled_pairs<D: Scalar>(len: usize, table: &GaugeTable<D>) -> Result<Vec<(usize, usize)>> {
    let depth = table.gauge().probe_depth();
    if table.covered() + depth != len {
        return Err(Error::usage(format!(
            "gauge table covers {} positions, the prefix needs {}",
            table.covered(),
            len.saturating_sub(depth)
        )));
    }
    let top = table.covered().min(len.saturating_sub(1));
    Ok((0..top)
        .flat_map(|p| (p + 1..top).map(move |q| (p, q)))
        .collect())
}

fn records<S: MetricSpace>(
    prefix: &SequencePrefix<S>,
    table: &GaugeTable<S::Dist>,
    pairs: &[(usize, usize)],
) -> Vec<Record<S::Dist>> {
    let symmetric = table.gauge().is_symmetric();
    let dist = prefix.distances();
    pairs
        .iter()
        .map(|&(p, q)| {
            let mut m = table.get(p, q).clone();
            if !symmetric {
                m = S::Dist::min_of(m, table.get(q, p).clone());
            }
            Record {
                key: p,
                hyp: m,
                lower: None,
                concl: dist.get(p + 1, q + 1),
            }
        })
        .collect()
}

const SHAPE: Shape = Shape {
    lower: Lower::None,
    conclusion: Conclusion::AtMost,
};

/// `m(x_p, x_q) < eps + delta  =>  d(x_{p+1}, x_{q+1}) <= eps` for all
/// sampled `p, q >= N`, searched with `N` ascending in `0..=n_max`, then
/// `delta` descending. Implications within `tol` of a boundary are counted
/// as indeterminate and never decide the verdict.
pub fn check_m_contractive<S: MetricSpace>(
    prefix: &SequencePrefix<S>,
    table: &GaugeTable<S::Dist>,
    eps_grid: &EpsGrid,
    deltas: &DeltaGrid,
    n_max: usize,
    tol: f64,
) -> Result<EpsDeltaProfile<S::Point, S::Dist>> {
    let pairs = sampled_pairs(prefix.len(), table)?;
    let recs = records(prefix, table, &pairs);
    let gauge = *table.gauge();
    let mut out = EpsDeltaProfile::new(format!("m-contractive:{gauge}"));
    for &eps in eps_grid.values() {
        let grid = deltas.values(eps);
        let prep = Prepared::new(&recs, SHAPE, eps, eps, tol, n_max);
        out.entries.push(match search(&prep, &grid, 0, n_max) {
            Outcome::Found {
                shift,
                delta,
                unbounded,
                evaluated,
                indeterminate,
            } => ProfileEntry {
                eps,
                best_delta: Some(delta),
                delta_unbounded: unbounded,
                shift: Some(shift),
                lag: None,
                eta: None,
                verdict: CheckVerdict::ConsistentUpToSample(SampleStats {
                    evaluated,
                    indeterminate,
                    notes: Vec::new(),
                }),
            },
            Outcome::Failed {
                record,
                shift,
                delta,
            } => {
                let (p, q) = pairs[record];
                let r = prep.record(record);
                let w = Witness::new(Condition::MContractive {
                    gauge,
                    eps,
                    delta,
                    shift,
                })
                .with_indices(vec![p, q])
                .measure("m", r.hyp.clone())
                .measure("d-next", r.concl.clone());
                let mut e = ProfileEntry::falsified(eps, w);
                e.shift = Some(shift);
                e
            }
        });
    }
    Ok(out)
}

/// The subsequence form at one `eps`, judged on one pair family.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsequenceVerdict<D> {
    pub eps: f64,
    pub family: String,
    /// Sup of `m` over the family tail.
    pub m_tail_sup: Option<D>,
    /// Sup of `d(x_{p+1}, x_{q+1})` over the family tail.
    pub next_tail_sup: Option<D>,
    /// `Some(true)`: the hypothesis holds and the conclusion fails.
    pub violated: Option<bool>,
    /// Distance of the deciding comparisons from their boundaries.
    pub margin: f64,
}

/// For a family whose tail keeps `m` below `eps + delta_min` (the finite
/// stand-in for `limsup m <= eps`), the subsequence form requires the tail
/// of `d(x_{p+1}, x_{q+1})` to stay within `eps`.
pub fn subsequence_verdict<S: MetricSpace>(
    prefix: &SequencePrefix<S>,
    table: &GaugeTable<S::Dist>,
    family: &PairFamily,
    eps: f64,
    delta_min: f64,
    window: usize,
    tol: f64,
) -> Result<SubsequenceVerdict<S::Dist>> {
    let len = prefix.len();
    if let Some(top) = family.max_index() {
        if top + 1 >= len || top >= table.covered() {
            return Err(Error::usage(format!(
                "pair family `{}` reaches past the prefix",
                family.label
            )));
        }
    }
    let tail = family.tail(window);
    if tail.is_empty() {
        return Ok(SubsequenceVerdict {
            eps,
            family: family.label.clone(),
            m_tail_sup: None,
            next_tail_sup: None,
            violated: Some(false),
            margin: f64::INFINITY,
        });
    }
    let symmetric = table.gauge().is_symmetric();
    let m_of = |p: usize, q: usize| {
        let m = table.get(p, q).clone();
        if symmetric {
            m
        } else {
            S::Dist::min_of(m, table.get(q, p).clone())
        }
    };
    let m_sup = tail
        .iter()
        .map(|&(p, q)| m_of(p, q))
        .reduce(S::Dist::max_of)
        .expect("nonempty");
    let n_sup = tail
        .iter()
        .map(|&(p, q)| prefix.dist(p + 1, q + 1))
        .reduce(S::Dist::max_of)
        .expect("nonempty");
    let bound = S::Dist::from_f64(eps) + S::Dist::from_f64(delta_min);
    let hyp = m_sup.compare(&bound, tol);
    let concl = n_sup.compare(&S::Dist::from_f64(eps), tol);
    let gap_h = (m_sup.to_f64() - bound.to_f64()).abs();
    let gap_c = (n_sup.to_f64() - eps).abs();
    let (violated, margin) = match hyp {
        Cmp::Near => (None, gap_h),
        Cmp::Equal | Cmp::Greater => (Some(false), gap_h),
        Cmp::Less => match concl {
            Cmp::Near => (None, gap_c),
            Cmp::Greater => (Some(true), gap_h.min(gap_c)),
            Cmp::Less | Cmp::Equal => (Some(false), gap_h.min(gap_c)),
        },
    };
    Ok(SubsequenceVerdict {
        eps,
        family: family.label.clone(),
        m_tail_sup: Some(m_sup),
        next_tail_sup: Some(n_sup),
        violated,
        margin,
    })
}

/// The pairs realizing the failure of the epsilon-delta-N form: for each
/// `N = 0..=n_max`, the implication with `p >= N` whose gauge value is
/// smallest among those with a failed conclusion. Their gauge values are
/// nondecreasing in `N`. Empty when no failure survives to `N = n_max`.
pub fn critical_family<S: MetricSpace>(
    prefix: &SequencePrefix<S>,
    table: &GaugeTable<S::Dist>,
    eps: f64,
    n_max: usize,
    tol: f64,
) -> Result<PairFamily> {
    let pairs = sampled_pairs(prefix.len(), table)?;
    let recs = records(prefix, table, &pairs);
    let prep = Prepared::new(&recs, SHAPE, eps, eps, tol, n_max);
    let fam = if prep.critical(n_max).is_some() {
        (0..=n_max)
            .filter_map(|n| prep.critical(n).map(|i| pairs[i]))
            .collect()
    } else {
        Vec::new()
    };
    Ok(PairFamily::new(format!("critical(eps={eps})"), fam))
}

/// Steps nonincreasing, and strictly decreasing while positive.
pub fn check_monotone_contractive<S: MetricSpace>(
    prefix: &SequencePrefix<S>,
) -> Result<CheckVerdict<S::Point, S::Dist>> {
    if prefix.len() < 3 {
        return Err(Error::usage(
            "the monotone-steps check needs at least three entries",
        ));
    }
    let steps = prefix.steps();
    for n in 0..steps.len() - 1 {
        let (a, b) = (&steps[n], &steps[n + 1]);
        let bad = if a.is_zero() { !b.is_zero() } else { b >= a };
        if bad {
            return Ok(CheckVerdict::Falsified(
                Witness::new(Condition::MonotoneSteps { step: n })
                    .with_indices(vec![n])
                    .measure("step", a.clone())
                    .measure("next-step", b.clone()),
            ));
        }
    }
    Ok(CheckVerdict::ConsistentUpToSample(SampleStats::evaluated(
        steps.len() - 1,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::Gauge;
    use crate::metric::Interval;

    fn reals(v: Vec<f64>) -> SequencePrefix<Interval> {
        SequencePrefix::from_reals(v).unwrap()
    }

    #[test]
    fn geometric_is_d_contractive_at_shift_zero() {
        let pre = reals((0..60).map(|n| 0.5f64.powi(n)).collect());
        let t = GaugeTable::on_prefix(Gauge::PlainD, &pre);
        let p = check_m_contractive(
            &pre,
            &t,
            &EpsGrid::default(),
            &DeltaGrid::default(),
            10,
            0.0,
        )
        .unwrap();
        assert!(p.is_consistent());
        for e in &p.entries {
            assert_eq!(e.shift, Some(0));
            assert_eq!(e.best_delta, Some(e.eps));
        }
    }

    #[test]
    fn engineered_violation_is_named() {
        // Only (0, 2) is followed by a pair farther apart than 1.
        let pre = reals(vec![0.4, 0.0, 0.8, 1.6]);
        let t = GaugeTable::on_prefix(Gauge::PlainD, &pre);
        let ep = EpsGrid::from_values(vec![1.0]).unwrap();
        let p = check_m_contractive(&pre, &t, &ep, &DeltaGrid::default(), 0, 0.0).unwrap();
        let w = p.entries[0].verdict.witness().unwrap();
        assert_eq!(w.indices, vec![0, 2]);
    }

    #[test]
    fn coverage_gap_is_a_usage_error() {
        let pre = reals((0..20).map(|n| n as f64).collect());
        let t = GaugeTable::on_prefix(Gauge::PlainD, &pre.truncated(10));
        assert!(
            check_m_contractive(&pre, &t, &EpsGrid::default(), &DeltaGrid::default(), 0, 0.0)
                .is_err()
        );
    }

    #[test]
    fn critical_family_reproduces_the_falsification() {
        let v: Vec<f64> = (0..40)
            .map(|n| if n % 2 == 0 { 0.0 } else { 1.0 })
            .collect();
        let pre = reals(v);
        let t = GaugeTable::on_prefix(Gauge::Ciric, &pre);
        let fam = critical_family(&pre, &t, 1.0, 5, 0.0).unwrap();
        let eps_form = check_m_contractive(
            &pre,
            &t,
            &EpsGrid::from_values(vec![1.0]).unwrap(),
            &DeltaGrid::default(),
            5,
            0.0,
        )
        .unwrap();
        let sub = subsequence_verdict(&pre, &t, &fam, 1.0, 1.0 / 4096.0, 0, 0.0).unwrap();
        assert_eq!(
            sub.violated,
            Some(eps_form.entries[0].verdict.is_falsified())
        );
    }

    #[test]
    fn monotone_steps() {
        assert!(check_monotone_contractive(&reals(vec![0.0, 1.0, 1.5, 1.6]))
            .unwrap()
            .is_consistent());
        let bad = check_monotone_contractive(&reals(vec![0.0, 1.0, 3.0])).unwrap();
        assert_eq!(bad.witness().unwrap().indices, vec![0]);
        assert!(check_monotone_contractive(&reals(vec![1.0, 0.5, 0.5, 0.5]))
            .unwrap()
            .is_consistent());
        assert!(
            check_monotone_contractive(&reals((0..30).map(|n| 0.5f64.powi(n)).collect()))
                .unwrap()
                .is_consistent()
        );
        assert!(check_monotone_contractive(&reals(vec![1.0, 2.0])).is_err());
    }
}
