use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An explicit list of index pairs `(p_n, q_n)` standing in for a pair of
/// subsequences. Tail statistics read the last entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFamily {
    pub label: String,
    pub pairs: Vec<(usize, usize)>,
}

impl PairFamily {
    pub fn new(label: impl Into<String>, pairs: Vec<(usize, usize)>) -> Self {
        PairFamily {
            label: label.into(),
            pairs,
        }
    }

    /// `(n, n + 1)` for `n` in `start..end`.
    pub fn consecutive(start: usize, end: usize) -> Self {
        PairFamily::new("consecutive", (start..end).map(|n| (n, n + 1)).collect())
    }

    /// `count` seeded pairs `p < q < limit`, ordered so the tail holds the
    /// largest indices.
    pub fn random(limit: usize, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs: Vec<(usize, usize)> = if limit < 2 {
            Vec::new()
        } else {
            (0..count)
                .map(|_| {
                    let a = rng.gen_range(0..limit);
                    let mut b = rng.gen_range(0..limit - 1);
                    if b >= a {
                        b += 1;
                    }
                    (a.min(b), a.max(b))
                })
                .collect()
        };
        pairs.sort_unstable();
        PairFamily::new(format!("random(seed={seed})"), pairs)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Largest index any pair touches.
    pub fn max_index(&self) -> Option<usize> {
        self.pairs.iter().map(|&(p, q)| p.max(q)).max()
    }

    /// The last `window` pairs, or the last quarter when `window` is zero.
    pub fn tail(&self, window: usize) -> &[(usize, usize)] {
        let w = if window == 0 {
            default_window(self.pairs.len())
        } else {
            window
        };
        &self.pairs[self.pairs.len() - w.min(self.pairs.len())..]
    }
}

/// Last quarter of a sample, at least one entry.
pub fn default_window(len: usize) -> usize {
    (len / 4).max(1).min(len)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_family_is_reproducible_and_ordered() {
        let a = PairFamily::random(100, 50, 3);
        let b = PairFamily::random(100, 50, 3);
        assert_eq!(a, b);
        assert!(a.pairs.iter().all(|&(p, q)| p < q && q < 100));
        assert!(a.pairs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn tail_defaults_to_last_quarter() {
        let f = PairFamily::consecutive(0, 40);
        assert_eq!(f.tail(0).len(), 10);
        assert_eq!(f.tail(0)[0], (30, 31));
        assert_eq!(f.tail(100).len(), 40);
    }
}
