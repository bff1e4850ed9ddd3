use rayon::prelude::*;

use super::MetricSpace;
use crate::scalar::Scalar;

/// Pairwise distances of a finite point list, stored as the strict upper
/// triangle. The diagonal is zero by construction and `get` is symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<D> {
    n: usize,
    upper: Vec<D>,
}

impl<D: Scalar> DistanceMatrix<D> {
    pub fn build<S: MetricSpace<Dist = D>>(space: &S, points: &[S::Point]) -> Self {
        let n = points.len();
        let upper = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| (i + 1..n).map(move |j| space.distance(&points[i], &points[j])))
            .collect();
        DistanceMatrix { n, upper }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        // Row i starts after the rows 0..i, which hold (n-1) + ... + (n-i) entries.
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Distance between positions `i` and `j`. Zero on the diagonal.
    pub fn get(&self, i: usize, j: usize) -> D {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => D::zero(),
            std::cmp::Ordering::Less => self.upper[self.offset(i, j)].clone(),
            std::cmp::Ordering::Greater => self.upper[self.offset(j, i)].clone(),
        }
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&D> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some(&self.upper[self.offset(i, j)]),
            std::cmp::Ordering::Greater => Some(&self.upper[self.offset(j, i)]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Interval;

    #[test]
    fn indexes_every_pair() {
        let pts: Vec<f64> = (0..7).map(|i| (i * i) as f64).collect();
        let m = DistanceMatrix::build(&Interval::unit(), &pts);
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(m.get(i, j), (pts[i] - pts[j]).abs());
            }
        }
    }
}
