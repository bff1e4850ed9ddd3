use serde::{Deserialize, Serialize};

use super::MetricSpace;
use crate::scalar::{Cmp, Scalar};
use crate::verdict::{CheckVerdict, Condition, SampleStats, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Nonnegativity,
    /// `d(a, a) = 0`
    ZeroSelfDistance,
    Symmetry,
    Triangle,
    /// `d(a, b) = 0` only if `a = b`; enforced for continuum spaces only.
    Indiscernibles,
}

/// Result of [`verify_metric_axioms`].
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport<P, D> {
    pub verdict: CheckVerdict<P, D>,
    /// Distinct sampled points at distance zero (indexed spaces).
    pub collisions: Vec<(P, P)>,
}

/// Checks the metric axioms on every point, pair and triple of `sample`.
///
/// Comparisons allow a slack of `tol` for inexact distances and none for
/// exact ones. On indexed spaces distinct points at distance zero are
/// recorded as collisions instead of failures.
pub fn verify_metric_axioms<S: MetricSpace>(
    space: &S,
    sample: &[S::Point],
    tol: f64,
) -> AxiomReport<S::Point, S::Dist> {
    let n = sample.len();
    let fail = |axiom: Axiom, pts: Vec<S::Point>, vals: Vec<(&str, S::Dist)>| {
        let mut w = Witness::new(Condition::MetricAxiom { axiom }).with_points(pts);
        for (label, v) in vals {
            w = w.measure(label, v);
        }
        AxiomReport {
            verdict: CheckVerdict::Falsified(w),
            collisions: Vec::new(),
        }
    };

    // Matrix of all ordered distances; symmetry is one of the things checked.
    let mut d = Vec::with_capacity(n * n);
    for a in sample {
        for b in sample {
            d.push(space.distance(a, b));
        }
    }
    let at = |i: usize, j: usize| &d[i * n + j];
    let zero = S::Dist::zero();

    for (i, a) in sample.iter().enumerate() {
        if at(i, i).compare(&zero, tol) == Cmp::Greater || at(i, i).compare(&zero, tol) == Cmp::Less
        {
            return fail(
                Axiom::ZeroSelfDistance,
                vec![a.clone()],
                vec![("d(a,a)", at(i, i).clone())],
            );
        }
    }

    let mut collisions = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dij = at(i, j);
            if dij.compare(&zero, tol) == Cmp::Less {
                return fail(
                    Axiom::Nonnegativity,
                    vec![sample[i].clone(), sample[j].clone()],
                    vec![("d(a,b)", dij.clone())],
                );
            }
            if j > i {
                let dji = at(j, i);
                if !matches!(dij.compare(dji, tol), Cmp::Equal | Cmp::Near) {
                    return fail(
                        Axiom::Symmetry,
                        vec![sample[i].clone(), sample[j].clone()],
                        vec![("d(a,b)", dij.clone()), ("d(b,a)", dji.clone())],
                    );
                }
                if sample[i] != sample[j]
                    && matches!(dij.compare(&zero, tol), Cmp::Equal | Cmp::Near)
                {
                    if !space.is_indexed() {
                        return fail(
                            Axiom::Indiscernibles,
                            vec![sample[i].clone(), sample[j].clone()],
                            vec![("d(a,b)", dij.clone())],
                        );
                    }
                    collisions.push((sample[i].clone(), sample[j].clone()));
                }
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = at(i, k);
                let rhs = at(i, j).clone() + at(j, k).clone();
                if lhs.compare(&rhs, tol) == Cmp::Greater {
                    return fail(
                        Axiom::Triangle,
                        vec![sample[i].clone(), sample[j].clone(), sample[k].clone()],
                        vec![("d(a,c)", lhs.clone()), ("d(a,b)+d(b,c)", rhs)],
                    );
                }
            }
        }
    }

    let mut stats = SampleStats::evaluated(n);
    stats.notes = collisions
        .iter()
        .map(|(a, b)| {
            format!(
                "{} and {} share a value (distance 0)",
                space.format_point(a),
                space.format_point(b)
            )
        })
        .collect();
    AxiomReport {
        verdict: CheckVerdict::ConsistentUpToSample(stats),
        collisions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{ExampleSpace, Interval, TableSpace};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interval_sample_is_consistent() {
        let s = Interval::unit();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts = s.sample_points(0, 100, &mut rng);
        let r = verify_metric_axioms(&s, &pts, 1e-9);
        assert!(r.verdict.is_consistent());
        assert!(r.collisions.is_empty());
    }

    #[test]
    fn example_space_reports_collisions() {
        let s = ExampleSpace;
        let pts: Vec<_> = (0..=64).map(|i| s.point(i)).collect();
        let r = verify_metric_axioms(&s, &pts, 0.0);
        assert!(r.verdict.is_consistent());
        assert!(r.collisions.contains(&(s.point(1), s.point(4))));
        assert_eq!(r.collisions.len(), 3);
        let notes = &r.verdict.stats().unwrap().notes;
        assert!(notes
            .iter()
            .any(|n| n == "x_1 and x_4 share a value (distance 0)"));
    }

    #[test]
    fn corrupted_table_fails_symmetry() {
        let t = TableSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 1.0], vec![2.0, 0.0]],
        )
        .unwrap();
        let r = verify_metric_axioms(&t, &[0, 1], 1e-9);
        let w = r.verdict.witness().expect("falsified");
        assert_eq!(
            w.condition,
            Condition::MetricAxiom {
                axiom: Axiom::Symmetry
            }
        );
        assert_eq!(w.points, vec![0, 1]);
    }

    #[test]
    fn triangle_violation_is_found() {
        let t = TableSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 1.0, 5.0],
                vec![1.0, 0.0, 1.0],
                vec![5.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        let r = verify_metric_axioms(&t, &[0, 1, 2], 1e-9);
        assert_eq!(
            r.verdict.witness().unwrap().condition,
            Condition::MetricAxiom {
                axiom: Axiom::Triangle
            }
        );
    }

    #[test]
    fn duplicate_real_points_are_not_a_violation() {
        let s = Interval::unit();
        let r = verify_metric_axioms(&s, &[0.5, 0.5, 0.25], 1e-9);
        assert!(r.verdict.is_consistent());
    }
}
