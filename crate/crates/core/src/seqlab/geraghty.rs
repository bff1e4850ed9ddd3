use crate::check::search::{and, Conclusion, Lower, Prepared, Record, Shape};
use crate::error::{Error, Result};
use crate::gauges::PairFamily;
use crate::grid::{eta_values, DeltaGrid, EpsGrid};
use crate::metric::MetricSpace;
use crate::prefix::SequencePrefix;
use crate::scalar::{Cmp, Scalar, Truth};
use crate::verdict::{
    CheckVerdict, Condition, EpsDeltaProfile, ProfileEntry, SampleStats, Witness,
};

/// Ratio-route classification at one `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioClass {
    pub eps: f64,
    /// A tail pair at distance below `eps + delta_min` whose ratio
    /// `d(x_{p+1},x_{q+1}) / d(x_p,x_q)` exceeds `eta_max / d(x_p,x_q)`.
    pub critical: Option<(usize, usize)>,
    pub critical_ratio: Option<f64>,
    pub evaluated: usize,
    pub indeterminate: usize,
}

impl RatioClass {
    pub fn violated(&self) -> bool {
        self.critical.is_some()
    }
}

/// `d(x_{p+1}, x_{q+1}) / d(x_p, x_q)` along a pair family.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSeries {
    pub family: String,
    pub values: Vec<(usize, usize, f64)>,
    /// Pairs at distance zero.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeraghtyReport<P, D> {
    /// `d(x_{p+1},x_{q+1}) < d(x_p,x_q)` whenever `d(x_p,x_q) > 0`.
    pub standing: CheckVerdict<P, D>,
    /// Empty when the standing hypothesis fails.
    pub profile: EpsDeltaProfile<P, D>,
    pub ratio_route: Vec<RatioClass>,
    pub series: Vec<RatioSeries>,
}

impl<P, D> GeraghtyReport<P, D> {
    pub fn is_consistent(&self) -> bool {
        self.standing.is_consistent() && self.profile.is_consistent()
    }
}

/// Searches `d(x_p,x_q) < eps + delta  =>  d(x_{p+1},x_{q+1}) <= eta` for
/// `p, q >= N`, in the order `N` ascending, `delta` descending, `eta`
/// ascending, with `eta` drawn from `eps (1 - 2^-j)`. The ratio route
/// classifies each `eps` pairwise at the weakest grid point
/// `(n_max, delta_min, eta_max)`.
pub fn check_geraghty<S: MetricSpace>(
    prefix: &SequencePrefix<S>,
    eps_grid: &EpsGrid,
    deltas: &DeltaGrid,
    n_max: usize,
    tol: f64,
    families: &[PairFamily],
) -> Result<GeraghtyReport<S::Point, S::Dist>> {
    let len = prefix.len();
    if len < 3 {
        return Err(Error::usage(
            "the Geraghty check needs at least three entries",
        ));
    }
    let dist = prefix.distances();
    let pairs: Vec<(usize, usize)> = (0..len - 1)
        .flat_map(|p| (p + 1..len - 1).map(move |q| (p, q)))
        .collect();
    let recs: Vec<Record<S::Dist>> = pairs
        .iter()
        .map(|&(p, q)| Record {
            key: p,
            hyp: dist.get(p, q),
            lower: None,
            concl: dist.get(p + 1, q + 1),
        })
        .collect();

    let mut series = Vec::new();
    for fam in families {
        if fam.max_index().is_some_and(|m| m + 1 >= len) {
            return Err(Error::usage(format!(
                "pair family `{}` reaches past the prefix",
                fam.label
            )));
        }
        let mut values = Vec::new();
        let mut skipped = 0;
        for &(p, q) in &fam.pairs {
            let d = dist.get(p, q);
            if d.is_zero() {
                skipped += 1;
            } else {
                values.push((p, q, (dist.get(p + 1, q + 1) / d).to_f64()));
            }
        }
        series.push(RatioSeries {
            family: fam.label.clone(),
            values,
            skipped,
        });
    }

    let standing = standing_check(&pairs, &recs);
    let mut profile = EpsDeltaProfile::new("geraghty");
    let mut ratio_route = Vec::new();
    if !standing.is_consistent() {
        return Ok(GeraghtyReport {
            standing,
            profile,
            ratio_route,
            series,
        });
    }

    let shape = Shape {
        lower: Lower::None,
        conclusion: Conclusion::AtMost,
    };
    for &eps in eps_grid.values() {
        let grid = deltas.values(eps);
        let etas = eta_values(eps);
        let preps: Vec<Prepared<'_, S::Dist>> = etas
            .iter()
            .map(|&eta| Prepared::new(&recs, shape, eps, eta, tol, n_max))
            .collect();
        let mut found = None;
        'search: for n in 0..=n_max {
            for &delta in &grid {
                for (j, prep) in preps.iter().enumerate() {
                    if prep.admissible(n, delta) {
                        found = Some((n, delta, j));
                        break 'search;
                    }
                }
            }
        }
        let entry = match found {
            Some((n, delta, j)) => {
                let (evaluated, indeterminate) = preps[j].counts(n, delta);
                ProfileEntry {
                    eps,
                    best_delta: Some(delta),
                    delta_unbounded: preps[j].critical(n).is_none(),
                    shift: Some(n),
                    lag: None,
                    eta: Some(etas[j]),
                    verdict: CheckVerdict::ConsistentUpToSample(SampleStats {
                        evaluated,
                        indeterminate,
                        notes: Vec::new(),
                    }),
                }
            }
            None => {
                let last = preps.last().expect("eta grid is nonempty");
                let i = last
                    .critical(n_max)
                    .expect("failed search has a critical record");
                let delta = *grid.last().expect("delta grid is nonempty");
                let eta = *etas.last().expect("eta grid is nonempty");
                let r = last.record(i);
                let w = Witness::new(Condition::Geraghty {
                    eps,
                    delta,
                    eta,
                    shift: n_max,
                })
                .with_indices(vec![pairs[i].0, pairs[i].1])
                .measure("d", r.hyp.clone())
                .measure("d-next", r.concl.clone());
                let mut e = ProfileEntry::falsified(eps, w);
                e.shift = Some(n_max);
                e.eta = Some(eta);
                e
            }
        };
        profile.entries.push(entry);
        ratio_route.push(ratio_class(
            &pairs,
            &recs,
            eps,
            grid[grid.len() - 1],
            etas[etas.len() - 1],
            n_max,
            tol,
        ));
    }
    Ok(GeraghtyReport {
        standing,
        profile,
        ratio_route,
        series,
    })
}

fn standing_check<P, D: Scalar>(
    pairs: &[(usize, usize)],
    recs: &[Record<D>],
) -> CheckVerdict<P, D> {
    for (k, r) in recs.iter().enumerate() {
        let bad = if r.hyp.is_zero() {
            !r.concl.is_zero()
        } else {
            r.concl >= r.hyp
        };
        if bad {
            let (p, q) = pairs[k];
            return CheckVerdict::PreconditionFailed(
                Witness::new(Condition::NonexpansivePairs)
                    .with_indices(vec![p, q])
                    .measure("d", r.hyp.clone())
                    .measure("d-next", r.concl.clone()),
            );
        }
    }
    CheckVerdict::ConsistentUpToSample(SampleStats::evaluated(recs.len()))
}

fn ratio_class<D: Scalar>(
    pairs: &[(usize, usize)],
    recs: &[Record<D>],
    eps: f64,
    delta_min: f64,
    eta_max: f64,
    n_max: usize,
    tol: f64,
) -> RatioClass {
    let bound = D::from_f64(eps) + D::from_f64(delta_min);
    let eta = D::from_f64(eta_max);
    let mut out = RatioClass {
        eps,
        critical: None,
        critical_ratio: None,
        evaluated: 0,
        indeterminate: 0,
    };
    let mut best: Option<(usize, D)> = None;
    for (k, r) in recs.iter().enumerate() {
        if r.key < n_max {
            continue;
        }
        out.evaluated += 1;
        let positive = match r.hyp.compare(&D::zero(), tol) {
            Cmp::Greater => Truth::True,
            Cmp::Near => Truth::Unknown,
            _ => Truth::False,
        };
        let in_scope = and(positive, r.hyp.compare(&bound, tol).lt());
        if in_scope == Truth::False {
            continue;
        }
        // Compare on the distance scale: |ratio - eta/d| * d.
        let ratio = r.concl.clone() / r.hyp.clone();
        let threshold = eta.clone() / r.hyp.clone();
        let gap = (ratio.to_f64() - threshold.to_f64()) * r.hyp.to_f64();
        let critical = if !D::EXACT && gap.abs() < tol {
            Truth::Unknown
        } else if ratio > threshold {
            Truth::True
        } else {
            Truth::False
        };
        match and(in_scope, critical) {
            Truth::True => {
                if best.as_ref().is_none_or(|(_, b)| r.hyp < *b) {
                    best = Some((k, r.hyp.clone()));
                    out.critical_ratio = Some(ratio.to_f64());
                }
            }
            Truth::Unknown => out.indeterminate += 1,
            Truth::False => {}
        }
    }
    out.critical = best.map(|(k, _)| pairs[k]);
    out
}
