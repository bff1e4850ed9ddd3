use super::SelfMap;
use crate::metric::MetricSpace;
use crate::scalar::Scalar;

/// Outcome of [`picard_solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointResult<P, D> {
    pub approx: P,
    /// `d(T z, z)` at the reported point.
    pub residual: D,
    /// Map applications performed by the stopping rule.
    pub iterations: usize,
    /// The stopping rule fired and the residual certifies the point: at
    /// most `tol` for continuum spaces, exactly zero for exact ones.
    pub converged: bool,
    /// Recorded `d(x_n, x_{n+1})`.
    pub steps: Vec<D>,
}

pub const DEFAULT_MAX_ITER: usize = 100_000;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Picard iteration `x_{n+1} = T x_n` until `d(x_n, x_{n+1}) <= tol` or
/// `max_iter` applications.
///
/// On a successful stop the reported point is `x_{n+1}`. Running out of
/// iterations is a result with `converged = false`, not an error.
pub fn picard_solve<S, M>(
    space: &S,
    map: &M,
    x0: &S::Point,
    tol: f64,
    max_iter: usize,
) -> FixedPointResult<S::Point, S::Dist>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    assert!(
        tol > 0.0 && max_iter >= 1,
        "picard_solve needs tol > 0 and max_iter >= 1"
    );
    let bound = S::Dist::from_f64(tol);
    let mut x = x0.clone();
    let mut steps = Vec::new();
    for it in 1..=max_iter {
        let next = map.apply(&x);
        let step = space.distance(&x, &next);
        let stop = step <= bound;
        steps.push(step);
        if stop {
            let residual = space.distance(&map.apply(&next), &next);
            return FixedPointResult {
                converged: residual.certifies(tol),
                approx: next,
                residual,
                iterations: it,
                steps,
            };
        }
        x = next;
    }
    let residual = space.distance(&map.apply(&x), &x);
    FixedPointResult {
        approx: x,
        residual,
        iterations: max_iter,
        converged: false,
        steps,
    }
}
