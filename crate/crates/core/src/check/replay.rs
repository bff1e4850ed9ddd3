use crate::error::{Error, Result};
use crate::gauges::{evaluate_indexed, evaluate_on_sections};
use crate::maps::{Orbit, SelfMap};
use crate::metric::{DistanceMatrix, MetricSpace};
use crate::scalar::Scalar;
use crate::verdict::{Condition, Witness};

fn pair_of<P: Clone, D>(w: &Witness<P, D>) -> Result<(P, P)> {
    match w.points.as_slice() {
        [x, y] => Ok((x.clone(), y.clone())),
        _ => Err(Error::usage("witness does not name a pair of points")),
    }
}

/// Re-evaluates a pair witness from its points and condition parameters.
/// Returns whether the violation is reproduced.
pub fn replay_pair<S, M>(space: &S, map: &M, w: &Witness<S::Point, S::Dist>) -> Result<bool>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let (x, y) = pair_of(w)?;
    let d = || space.distance(&x, &y);
    let image = || space.distance(&map.apply(&x), &map.apply(&y));
    let f = S::Dist::from_f64;
    Ok(match w.condition {
        Condition::Banach => {
            let d = d();
            !d.is_zero() && image() / d >= f(1.0)
        }
        Condition::MeirKeeler { eps, delta } => {
            let d = d();
            f(eps) <= d && d < f(eps) + f(delta) && !(image() < f(eps))
        }
        Condition::CiricMatkowski { eps, delta } => {
            let d = d();
            f(eps) < d && d < f(eps) + f(delta) && !(image() <= f(eps))
        }
        Condition::Contractive => x != y && !(image() < d()),
        Condition::Shifted {
            gauge,
            eps,
            delta,
            shift,
        } => {
            let depth = shift + gauge.probe_depth().max(1);
            let xs = Orbit::new(map, x.clone()).prefix(depth).to_vec();
            let ys = Orbit::new(map, y.clone()).prefix(depth).to_vec();
            let (xs, ys) = (&xs[shift..], &ys[shift..]);
            let mut m = evaluate_on_sections(&gauge, space, xs, ys);
            if !gauge.is_symmetric() {
                m = S::Dist::min_of(m, evaluate_on_sections(&gauge, space, ys, xs));
            }
            m < f(eps) + f(delta) && !(space.distance(&xs[1], &ys[1]) <= f(eps))
        }
        _ => return Err(Error::usage("witness is not a pair condition")),
    })
}

/// Re-evaluates an orbit witness (`points[0]` is the seed, `indices` are
/// orbit positions).
pub fn replay_on_orbit<S, M>(space: &S, map: &M, w: &Witness<S::Point, S::Dist>) -> Result<bool>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let seed = w
        .points
        .first()
        .ok_or_else(|| Error::usage("orbit witness has no seed"))?;
    let f = S::Dist::from_f64;
    let positions = |need: usize| -> Result<(usize, usize)> {
        match w.indices.as_slice() {
            [p, q] if need > 0 => Ok((*p, *q)),
            _ => Err(Error::usage("orbit witness needs two positions")),
        }
    };
    Ok(match w.condition {
        Condition::FinalType { eps, delta, lag } => {
            let (p, q) = positions(1)?;
            let mut o = Orbit::new(map, seed.clone());
            let dm = DistanceMatrix::build(space, o.prefix(p.max(q) + lag));
            let d = dm.get(p, q);
            p >= 1
                && q >= 1
                && f(eps) < d
                && d < f(eps) + f(delta)
                && !(dm.get(p + lag, q + lag) <= f(eps))
        }
        Condition::AsymptoticM {
            gauge,
            eps,
            delta,
            lag,
            shift,
        } => {
            let (p, q) = positions(1)?;
            let mut o = Orbit::new(map, seed.clone());
            let dm =
                DistanceMatrix::build(space, o.prefix(p.max(q) + lag.max(gauge.probe_depth())));
            let mut m = evaluate_indexed(&gauge, &dm, p, q);
            if !gauge.is_symmetric() {
                m = S::Dist::min_of(m, evaluate_indexed(&gauge, &dm, q, p));
            }
            p >= shift
                && q >= shift
                && m < f(eps) + f(delta)
                && !(dm.get(p + lag, q + lag) <= f(eps))
        }
        Condition::OrbitsMerge { tol, .. } => {
            let y = w
                .points
                .get(1)
                .ok_or_else(|| Error::usage("merge witness has no companion"))?;
            let n = *w
                .indices
                .first()
                .ok_or_else(|| Error::usage("merge witness has no position"))?;
            let a = Orbit::new(map, seed.clone()).get(n).clone();
            let b = Orbit::new(map, y.clone()).get(n).clone();
            space.distance(&a, &b) > f(tol)
        }
        _ => return Err(Error::usage("witness is not an orbit condition")),
    })
}
