//! The grid search shared by every epsilon-delta check.
//!
//! A check reduces its sample to [`Record`]s: the quantity bounded by
//! `eps + delta` in the hypothesis, an optional lower-bound quantity, the
//! quantity bounded in the conclusion, and a threshold key (`min(p, q)` for
//! conditions quantified over `p, q >= N`). For a fixed `eps`, the only
//! records that can ever violate the implication are those whose lower
//! bound and failed conclusion are both settled; the smallest hypothesis
//! value among them decides every `delta` at once.

use crate::scalar::{Cmp, Scalar, Truth};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Lower {
    None,
    /// `eps <= d`
    AtLeast,
    /// `eps < d`
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Conclusion {
    /// `value < bound`
    Below,
    /// `value <= bound`
    AtMost,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Shape {
    pub lower: Lower,
    pub conclusion: Conclusion,
}

#[derive(Debug, Clone)]
pub(crate) struct Record<D> {
    pub key: usize,
    pub hyp: D,
    pub lower: Option<D>,
    pub concl: D,
}

pub(crate) fn and(a: Truth, b: Truth) -> Truth {
    match (a, b) {
        (Truth::False, _) | (_, Truth::False) => Truth::False,
        (Truth::True, Truth::True) => Truth::True,
        _ => Truth::Unknown,
    }
}

pub(crate) fn not(a: Truth) -> Truth {
    match a {
        Truth::True => Truth::False,
        Truth::False => Truth::True,
        Truth::Unknown => Truth::Unknown,
    }
}

/// Records evaluated at one `eps` and conclusion bound.
pub(crate) struct Prepared<'r, D> {
    records: &'r [Record<D>],
    lower_ok: Vec<Truth>,
    concl_ok: Vec<Truth>,
    eps: D,
    tol: f64,
    n_hi: usize,
    /// `suffix[N]`: hard candidate with the smallest hypothesis value among
    /// keys `>= N`, lowest record index on ties.
    suffix: Vec<Option<usize>>,
}

impl<'r, D: Scalar> Prepared<'r, D> {
    pub fn new(
        records: &'r [Record<D>],
        shape: Shape,
        eps: f64,
        bound: f64,
        tol: f64,
        n_hi: usize,
    ) -> Self {
        let eps_d = D::from_f64(eps);
        let bound_d = D::from_f64(bound);
        let lower_ok: Vec<Truth> = records
            .iter()
            .map(|r| match (shape.lower, &r.lower) {
                (Lower::None, _) | (_, None) => Truth::True,
                (Lower::AtLeast, Some(l)) => eps_d.compare(l, tol).le(),
                (Lower::Above, Some(l)) => eps_d.compare(l, tol).lt(),
            })
            .collect();
        let concl_ok: Vec<Truth> = records
            .iter()
            .map(|r| {
                let c = r.concl.compare(&bound_d, tol);
                match shape.conclusion {
                    Conclusion::Below => c.lt(),
                    Conclusion::AtMost => c.le(),
                }
            })
            .collect();
        let mut bucket: Vec<Option<usize>> = vec![None; n_hi + 1];
        for (i, r) in records.iter().enumerate() {
            if lower_ok[i] == Truth::True && concl_ok[i] == Truth::False {
                let slot = &mut bucket[r.key.min(n_hi)];
                match slot {
                    Some(j) if records[*j].hyp <= r.hyp => {}
                    _ => *slot = Some(i),
                }
            }
        }
        let mut suffix = vec![None; n_hi + 1];
        let mut best: Option<usize> = None;
        for n in (0..=n_hi).rev() {
            if let Some(i) = bucket[n] {
                best = match best {
                    Some(j)
                        if records[j].hyp < records[i].hyp
                            || (records[j].hyp == records[i].hyp && j < i) =>
                    {
                        Some(j)
                    }
                    _ => Some(i),
                };
            }
            suffix[n] = best;
        }
        Prepared {
            records,
            lower_ok,
            concl_ok,
            eps: eps_d,
            tol,
            n_hi,
            suffix,
        }
    }

    fn bound(&self, delta: f64) -> D {
        self.eps.clone() + D::from_f64(delta)
    }

    /// The hard candidate deciding threshold `n`, if any.
    pub fn critical(&self, n: usize) -> Option<usize> {
        self.suffix[n.min(self.n_hi)]
    }

    /// No settled violation among keys `>= n` at this `delta`.
    pub fn admissible(&self, n: usize, delta: f64) -> bool {
        match self.critical(n) {
            None => true,
            Some(i) => self.records[i].hyp.compare(&self.bound(delta), self.tol) != Cmp::Less,
        }
    }

    /// Records with keys `>= n`, and those among them whose violation is
    /// undecided at this `delta`.
    pub fn counts(&self, n: usize, delta: f64) -> (usize, usize) {
        let bound = self.bound(delta);
        let mut evaluated = 0;
        let mut unknown = 0;
        for (i, r) in self.records.iter().enumerate() {
            if r.key < n {
                continue;
            }
            evaluated += 1;
            let hyp = and(self.lower_ok[i], r.hyp.compare(&bound, self.tol).lt());
            if and(hyp, not(self.concl_ok[i])) == Truth::Unknown {
                unknown += 1;
            }
        }
        (evaluated, unknown)
    }

    pub fn record(&self, i: usize) -> &Record<D> {
        &self.records[i]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    Found {
        shift: usize,
        delta: f64,
        unbounded: bool,
        evaluated: usize,
        indeterminate: usize,
    },
    /// Index of a record violating the implication at the last tried
    /// `(N, delta)`.
    Failed {
        record: usize,
        shift: usize,
        delta: f64,
    },
}

/// First `(N, delta)` in the order `N` ascending, then `delta` descending,
/// under which nothing is violated. `deltas` must be descending and
/// nonempty.
pub(crate) fn search<D: Scalar>(
    prep: &Prepared<'_, D>,
    deltas: &[f64],
    n_lo: usize,
    n_hi: usize,
) -> Outcome {
    for n in n_lo..=n_hi {
        if prep.critical(n).is_none() {
            let (evaluated, indeterminate) = prep.counts(n, deltas[0]);
            return Outcome::Found {
                shift: n,
                delta: deltas[0],
                unbounded: true,
                evaluated,
                indeterminate,
            };
        }
        if let Some(&delta) = deltas.iter().find(|&&d| prep.admissible(n, d)) {
            let (evaluated, indeterminate) = prep.counts(n, delta);
            return Outcome::Found {
                shift: n,
                delta,
                unbounded: false,
                evaluated,
                indeterminate,
            };
        }
    }
    let delta = *deltas.last().expect("nonempty delta grid");
    Outcome::Failed {
        record: prep
            .critical(n_hi)
            .expect("failed search has a critical record"),
        shift: n_hi,
        delta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(key: usize, hyp: f64, lower: f64, concl: f64) -> Record<f64> {
        Record {
            key,
            hyp,
            lower: Some(lower),
            concl,
        }
    }

    const MK: Shape = Shape {
        lower: Lower::AtLeast,
        conclusion: Conclusion::Below,
    };

    #[test]
    fn largest_delta_stops_below_the_nearest_violation() {
        // A violation at d = 1.3 allows delta with 1 + delta <= 1.3.
        let records = vec![rec(0, 1.3, 1.3, 1.0), rec(0, 0.5, 0.5, 0.2)];
        let prep = Prepared::new(&records, MK, 1.0, 1.0, 0.0, 0);
        let deltas = [1.0, 0.5, 0.25, 0.125];
        match search(&prep, &deltas, 0, 0) {
            Outcome::Found {
                delta, unbounded, ..
            } => {
                assert_eq!(delta, 0.25);
                assert!(!unbounded);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn violation_at_the_boundary_fails() {
        let records = vec![rec(0, 1.0, 1.0, 1.0)];
        let prep = Prepared::new(&records, MK, 1.0, 1.0, 0.0, 0);
        assert_eq!(
            search(&prep, &[0.5], 0, 0),
            Outcome::Failed {
                record: 0,
                shift: 0,
                delta: 0.5
            }
        );
    }

    #[test]
    fn threshold_skips_early_violations() {
        let records = vec![rec(0, 0.6, 0.6, 1.0), rec(3, 0.1, 0.1, 0.0)];
        let shape = Shape {
            lower: Lower::None,
            conclusion: Conclusion::AtMost,
        };
        let prep = Prepared::new(&records, shape, 0.5, 0.5, 0.0, 5);
        match search(&prep, &[0.5, 0.25], 0, 5) {
            Outcome::Found {
                shift,
                unbounded,
                evaluated,
                ..
            } => {
                assert_eq!(shift, 1);
                assert!(unbounded);
                assert_eq!(evaluated, 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn near_boundary_records_are_counted_not_decided() {
        let records = vec![rec(0, 1.0, 1.0, 1.0 - 1e-9)];
        let prep = Prepared::new(&records, MK, 1.0, 1.0, 1e-6, 0);
        match search(&prep, &[0.5], 0, 0) {
            Outcome::Found { indeterminate, .. } => assert_eq!(indeterminate, 1),
            other => panic!("{other:?}"),
        }
    }
}
