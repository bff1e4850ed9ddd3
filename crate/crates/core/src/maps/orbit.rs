use super::SelfMap;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::prefix::SequencePrefix;
use crate::scalar::Scalar;

/// Memoized Picard iterates `T^0 x, T^1 x, ...` of one seed.
///
/// The cache is append-only and grows geometrically on demand, so repeated
/// probes at increasing depth do not redo work.
pub struct Orbit<'m, M: SelfMap> {
    map: &'m M,
    points: Vec<M::Point>,
}

impl<'m, M: SelfMap> Orbit<'m, M> {
    pub fn new(map: &'m M, seed: M::Point) -> Self {
        Orbit {
            map,
            points: vec![seed],
        }
    }

    pub fn seed(&self) -> &M::Point {
        &self.points[0]
    }

    /// Number of materialized iterates.
    pub fn materialized(&self) -> usize {
        self.points.len()
    }

    /// Materializes at least `T^0 x .. T^n x`.
    pub fn ensure(&mut self, n: usize) {
        if n < self.points.len() {
            return;
        }
        let target = (n + 1).max(2 * self.points.len()).min(n + 1 + n / 2 + 8);
        self.points.reserve(target - self.points.len());
        while self.points.len() < target {
            let next = self
                .map
                .apply(self.points.last().expect("orbit has a seed"));
            self.points.push(next);
        }
    }

    /// `T^n x`
    pub fn get(&mut self, n: usize) -> &M::Point {
        self.ensure(n);
        &self.points[n]
    }

    /// `[T^0 x, ..., T^k x]`
    pub fn prefix(&mut self, k: usize) -> &[M::Point] {
        self.ensure(k);
        &self.points[..=k]
    }
}

/// `T^n x`, computed through a fresh memoized orbit.
pub fn iterate<M: SelfMap>(map: &M, x: &M::Point, n: usize) -> M::Point {
    Orbit::new(map, x.clone()).get(n).clone()
}

/// The prefix `[T^0 x, ..., T^k x]` as a sequence in `space`.
pub fn orbit_prefix<S, M>(space: &S, map: &M, x: &S::Point, k: usize) -> SequencePrefix<S>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let mut orbit = Orbit::new(map, x.clone());
    SequencePrefix::new(space.clone(), orbit.prefix(k).to_vec())
}

/// `diam O_s(x)`, the largest distance within `{T^n x : 0 <= n <= s}`.
pub fn orbit_diameter<S, M>(space: &S, map: &M, x: &S::Point, s: usize) -> S::Dist
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let mut orbit = Orbit::new(map, x.clone());
    section_diameter(space, orbit.prefix(s))
}

pub(crate) fn section_diameter<S: MetricSpace>(space: &S, section: &[S::Point]) -> S::Dist {
    let mut best = S::Dist::zero();
    for (i, a) in section.iter().enumerate() {
        for b in &section[i + 1..] {
            best = S::Dist::max_of(best, space.distance(a, b));
        }
    }
    best
}

/// Step distances of a prefix and the tail verdict on `d(x_n, x_{n+1}) -> 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityEstimate<D> {
    pub steps: Vec<D>,
    pub window: usize,
    pub tol: f64,
    /// Largest step among the final `window` steps.
    pub tail_max: D,
    pub holds: bool,
}

/// Estimates asymptotic regularity: holds iff the largest of the final
/// `window` steps is at most `tol`.
pub fn asymptotic_regularity_estimate<S: MetricSpace>(
    prefix: &SequencePrefix<S>,
    window: usize,
    tol: f64,
) -> Result<RegularityEstimate<S::Dist>> {
    if window == 0 || prefix.len() < window + 1 {
        return Err(Error::usage(format!(
            "asymptotic regularity needs a prefix of at least window + 1 = {} points, got {}",
            window + 1,
            prefix.len()
        )));
    }
    let steps = prefix.steps();
    let tail_max = steps[steps.len() - window..]
        .iter()
        .cloned()
        .fold(S::Dist::zero(), S::Dist::max_of);
    let holds = tail_max <= S::Dist::from_f64(tol);
    Ok(RegularityEstimate {
        steps,
        window,
        tol,
        tail_max,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{Affine, DoubleIndex, FnMap};
    use crate::metric::{ExamplePoint, ExampleSpace, Interval};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zeroth_and_third_iterates_of_the_doubling_map() {
        let x3 = ExamplePoint::new(3u32);
        assert_eq!(iterate(&DoubleIndex, &x3, 0), x3);
        let t3 = iterate(&DoubleIndex, &x3, 3);
        assert_eq!(t3, ExamplePoint::new(24u32));
        assert_eq!(t3.value(), &q(1, 6));
    }

    #[test]
    fn halving_map_iterates() {
        assert_eq!(iterate(&Affine::new(0.5, 0.0), &1.0, 4), 0.0625);
    }

    #[test]
    fn orbit_prefixes() {
        let p = orbit_prefix(&ExampleSpace, &DoubleIndex, &ExamplePoint::new(1u32), 2);
        let idx: Vec<_> = p
            .entries()
            .iter()
            .map(|x| x.small_index().unwrap())
            .collect();
        assert_eq!(idx, vec![1, 2, 4]);
        let p = orbit_prefix(&Interval::unit(), &Affine::new(0.5, 0.0), &1.0, 3);
        assert_eq!(p.entries(), &[1.0, 0.5, 0.25, 0.125]);
        let p = orbit_prefix(&Interval::unit(), &Affine::new(7.0, 1.0), &0.3, 0);
        assert_eq!(p.entries(), &[0.3]);
    }

    #[test]
    fn memoized_cache_is_stable_under_growth() {
        let map = Affine::new(0.5, 1.0);
        let mut orbit = Orbit::new(&map, 0.0);
        let early: Vec<f64> = orbit.prefix(10).to_vec();
        orbit.ensure(500);
        assert_eq!(orbit.prefix(10), &early[..]);
        assert!(orbit.materialized() >= 501);
    }

    #[test]
    fn orbit_diameters() {
        let s = ExampleSpace;
        let x3 = ExamplePoint::new(3u32);
        assert_eq!(orbit_diameter(&s, &DoubleIndex, &x3, 0), q(0, 1));
        assert_eq!(orbit_diameter(&s, &DoubleIndex, &x3, 1), q(0, 1));
        assert_eq!(orbit_diameter(&s, &DoubleIndex, &x3, 2), q(8, 3));
    }

    #[test]
    fn regularity_of_doubling_orbit() {
        let p = orbit_prefix(&ExampleSpace, &DoubleIndex, &ExamplePoint::new(1u32), 40);
        let est = asymptotic_regularity_estimate(&p, 8, 1e-6).unwrap();
        assert!(est.holds);
        assert_eq!(est.steps[0], q(1, 1));
        assert_eq!(est.steps[1], q(1, 1));
        for n in 2..40usize {
            assert_eq!(
                est.steps[n],
                BigRational::new(1.into(), BigInt::from(1) << (n - 1))
            );
        }
    }

    #[test]
    fn regularity_of_identity_and_translation() {
        let s = Interval::unit();
        let id = FnMap::new("identity", |x: &f64| *x);
        let p = orbit_prefix(&s, &id, &0.7, 20);
        let est = asymptotic_regularity_estimate(&p, 5, 1e-9).unwrap();
        assert!(est.holds && est.steps.iter().all(|d| *d == 0.0));

        let p = orbit_prefix(&s, &Affine::new(1.0, 1.0), &0.0, 40);
        let est = asymptotic_regularity_estimate(&p, 8, 1e-6).unwrap();
        assert!(!est.holds);
        assert!(est.steps.iter().all(|d| *d == 1.0));
    }

    #[test]
    fn short_prefix_is_a_usage_error() {
        let p = orbit_prefix(&Interval::unit(), &Affine::identity(), &0.0, 3);
        assert!(asymptotic_regularity_estimate(&p, 4, 1e-9).is_err());
    }
}
