use crate::metric::{DistanceMatrix, MetricSpace};
use crate::prefix::SequencePrefix;
use crate::scalar::Scalar;

/// First position of the tail in which Cauchy behaviour is judged.
pub fn tail_start(len: usize) -> usize {
    len / 2
}

/// `diam {x_N, ..., x_{len-1}}` for every `N`.
pub fn tail_diameters<D: Scalar>(dist: &DistanceMatrix<D>) -> Vec<D> {
    let n = dist.len();
    let mut out = vec![D::zero(); n + 1];
    for p in (0..n).rev() {
        let mut best = out[p + 1].clone();
        for q in p + 1..n {
            if let Some(d) = dist.get_ref(p, q) {
                if *d > best {
                    best = d.clone();
                }
            }
        }
        out[p] = best;
    }
    out.truncate(n.max(1));
    out
}

/// Least `N` no later than the tail start such that every pair at or past
/// `N` lies within `eps`. `None` when even the tail has a pair farther
/// apart than `eps`.
pub fn cauchy_modulus<S: MetricSpace>(prefix: &SequencePrefix<S>, eps: f64) -> Option<usize> {
    modulus_from(&tail_diameters(&prefix.distances()), prefix.len(), eps)
}

pub(crate) fn modulus_from<D: Scalar>(diam: &[D], len: usize, eps: f64) -> Option<usize> {
    if len == 0 {
        return Some(0);
    }
    let e = D::from_f64(eps);
    let h = tail_start(len);
    if diam[h] > e {
        return None;
    }
    (0..=h).find(|&n| diam[n] <= e)
}

/// One stage of the witness construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaStage<D> {
    pub n: usize,
    pub nu: usize,
    pub k: usize,
    /// Whether the steps past `k` are all below `1 / (n (nu + 1))`. False
    /// when the prefix is too short and `k` had to be clamped to the tail.
    pub step_bound_met: bool,
    pub s: usize,
    pub t: usize,
    pub p: usize,
    pub q: usize,
    /// `d(x_s, x_t) > eps`
    pub d_st: D,
    /// `d(x_s, x_{t-1}) <= eps`
    pub d_s_tprev: D,
    pub d_pq: D,
}

/// The stages of the construction at one `eps`, the last of which starts
/// at the tail.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaWitness<D> {
    pub eps: f64,
    pub stages: Vec<LemmaStage<D>>,
}

impl<D: Clone> LemmaWitness<D> {
    pub fn final_stage(&self) -> &LemmaStage<D> {
        self.stages
            .last()
            .expect("a witness has at least one stage")
    }

    pub fn k(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.k).collect()
    }

    pub fn s(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.s).collect()
    }

    pub fn t(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.t).collect()
    }

    pub fn p(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.p).collect()
    }

    pub fn q(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.q).collect()
    }
}

/// Runs the construction from the proof of the technical lemma on a
/// finite prefix.
///
/// Stage `n` picks `k_n > k_{n-1}` past which every step is below
/// `1 / (n (nu_n + 1))`, then the least `s_n >= k_n + nu_n` that has a
/// partner farther than `eps`, and the least such partner `t_n`. Stages
/// stop once `k_n + nu_n` reaches the tail start, which the last stage is
/// clamped to. `nu[i]` serves stage `i + 1`; the last value repeats and an
/// empty list means `nu = 0`.
///
/// Returns `None` as soon as a stage finds no `s_n`, i.e. when no pair past
/// its start is farther apart than `eps`.
pub fn lemma_criterion_witness_search<S: MetricSpace>(
    prefix: &SequencePrefix<S>,
    eps: f64,
    nu: &[usize],
) -> Option<LemmaWitness<S::Dist>> {
    let len = prefix.len();
    if len < 2 {
        return None;
    }
    let dist = prefix.distances();
    let e = S::Dist::from_f64(eps);
    let h = tail_start(len);

    // first_t[s]: least t > s with d(x_s, x_t) > eps.
    let first_t: Vec<Option<usize>> = (0..len)
        .map(|s| (s + 1..len).find(|&t| dist.get(s, t) > e))
        .collect();
    // next_s[i]: least s >= i with a partner.
    let mut next_s = vec![None; len + 1];
    for s in (0..len).rev() {
        next_s[s] = if first_t[s].is_some() {
            Some(s)
        } else {
            next_s[s + 1]
        };
    }
    // step_sup[k]: sup of d(x_l, x_{l+1}) over l >= k, as f64.
    let steps = prefix.steps();
    let mut step_sup = vec![0.0f64; len + 1];
    for l in (0..steps.len()).rev() {
        step_sup[l] = step_sup[l + 1].max(steps[l].to_f64());
    }

    let nu_at = |n: usize| -> usize {
        if nu.is_empty() {
            0
        } else {
            nu[(n - 1).min(nu.len() - 1)]
        }
    };

    let mut stages = Vec::new();
    let mut prev_k = 0usize;
    for n in 1.. {
        let nu_n = nu_at(n);
        let bound = 1.0 / (n as f64 * (nu_n as f64 + 1.0));
        let natural = (prev_k + 1..=len)
            .find(|&k| step_sup[k] < bound)
            .unwrap_or(len);
        let cap = h.saturating_sub(nu_n);
        let (k, met, last) = if natural >= cap {
            (cap, natural <= cap, true)
        } else {
            (natural, true, false)
        };
        let start = (k + nu_n).min(len);
        let s = next_s[start]?;
        let t = first_t[s].expect("next_s points at a position with a partner");
        let p = s - nu_n;
        let q = t - nu_n;
        stages.push(LemmaStage {
            n,
            nu: nu_n,
            k,
            step_bound_met: met,
            s,
            t,
            p,
            q,
            d_st: dist.get(s, t),
            d_s_tprev: dist.get(s, t - 1),
            d_pq: dist.get(p, q),
        });
        if last {
            break;
        }
        prev_k = k;
    }
    Some(LemmaWitness { eps, stages })
}
