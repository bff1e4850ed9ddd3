use rayon::prelude::*;

use super::families::PairFamily;
use super::table::evaluate_indexed;
use super::Gauge;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::prefix::SequencePrefix;
use crate::scalar::Scalar;
use crate::verdict::{CheckVerdict, Condition, SampleStats, Witness};

/// Tail suprema of `m` and `d` along one pair family.
#[derive(Debug, Clone, PartialEq)]
pub struct LimsupComparison<P, D> {
    pub family: String,
    pub window: usize,
    pub m_tail_sup: D,
    pub d_tail_sup: D,
    pub verdict: CheckVerdict<P, D>,
}

/// Compares `limsup m(x_{p_n}, x_{q_n})` with `limsup d(x_{p_n}, x_{q_n})`
/// through their suprema over the last `window` pairs (zero picks the last
/// quarter). The shift `T x_p = x_{p+1}` supplies the iterates the gauge
/// reads. Falsified when the gauge sup exceeds the metric sup by more than
/// `tol`.
pub fn limsup_comparison<S: MetricSpace>(
    gauge: &Gauge,
    prefix: &SequencePrefix<S>,
    family: &PairFamily,
    window: usize,
    tol: f64,
) -> Result<LimsupComparison<S::Point, S::Dist>> {
    if family.is_empty() {
        return Err(Error::usage(format!(
            "pair family `{}` is empty",
            family.label
        )));
    }
    let reach = family.max_index().unwrap_or(0) + gauge.probe_depth();
    if reach >= prefix.len() {
        return Err(Error::usage(format!(
            "pair family `{}` reads position {reach}, prefix has length {}",
            family.label,
            prefix.len()
        )));
    }
    let dist = prefix.truncated(reach + 1).distances();
    let tail = family.tail(window);
    let window = tail.len();
    let rows: Vec<(S::Dist, S::Dist)> = tail
        .par_iter()
        .map(|&(p, q)| (evaluate_indexed(gauge, &dist, p, q), dist.get(p, q)))
        .collect();
    let mut m_sup = S::Dist::zero();
    let mut d_sup = S::Dist::zero();
    let mut arg = 0;
    for (i, (m, d)) in rows.iter().enumerate() {
        if *m > m_sup {
            m_sup = m.clone();
            arg = i;
        }
        d_sup = S::Dist::max_of(d_sup, d.clone());
    }
    let verdict = if m_sup > d_sup.clone() + S::Dist::from_f64(tol) {
        let (p, q) = tail[arg];
        CheckVerdict::Falsified(
            Witness::new(Condition::LimsupComparison {
                gauge: *gauge,
                family: family.label.clone(),
                window,
                tol,
            })
            .with_indices(vec![p, q])
            .measure("m-tail-sup", m_sup.clone())
            .measure("d-tail-sup", d_sup.clone()),
        )
    } else {
        CheckVerdict::ConsistentUpToSample(SampleStats::evaluated(window))
    };
    Ok(LimsupComparison {
        family: family.label.clone(),
        window,
        m_tail_sup: m_sup,
        d_tail_sup: d_sup,
        verdict,
    })
}
