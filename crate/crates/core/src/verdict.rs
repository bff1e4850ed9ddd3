//! Outcomes of falsifiable checks.
//!
//! A check never proves a condition. It either exhibits a witness that
//! violates it on the sample, or reports that the sample is consistent.

use serde::{Deserialize, Serialize};

use crate::gauges::Gauge;

/// The instance of a quantified condition a witness violates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Condition {
    MetricAxiom {
        axiom: crate::metric::Axiom,
    },
    /// `d(Tx,Ty) <= alpha d(x,y)` with some `alpha < 1`.
    Banach,
    /// `eps <= d(x,y) < eps + delta  =>  d(Tx,Ty) < eps`
    MeirKeeler {
        eps: f64,
        delta: f64,
    },
    /// `eps < d(x,y) < eps + delta  =>  d(Tx,Ty) <= eps`
    CiricMatkowski {
        eps: f64,
        delta: f64,
    },
    /// `d(Tx,Ty) < d(x,y)` for `x != y`.
    Contractive,
    /// `m(T^N x, T^N y) < delta + eps  =>  d(T^{N+1} x, T^{N+1} y) <= eps`
    Shifted {
        gauge: Gauge,
        eps: f64,
        delta: f64,
        shift: usize,
    },
    /// `d(T^n x, T^n y) -> 0`, estimated on an orbit tail.
    OrbitsMerge {
        depth: usize,
        window: usize,
        tol: f64,
    },
    /// `eps < d(T^p x, T^q x) < eps + delta  =>  d(T^{p+nu} x, T^{q+nu} x) <= eps`
    FinalType {
        eps: f64,
        delta: f64,
        lag: usize,
    },
    /// `m(T^p x, T^q x) < eps + delta  =>  d(T^{p+nu} x, T^{q+nu} x) <= eps` for `p, q >= N`.
    AsymptoticM {
        gauge: Gauge,
        eps: f64,
        delta: f64,
        lag: usize,
        shift: usize,
    },
    /// `limsup m <= limsup d` along a pair family.
    LimsupComparison {
        gauge: Gauge,
        family: String,
        window: usize,
        tol: f64,
    },
    /// `m(x_p,x_q) < eps + delta  =>  d(x_{p+1},x_{q+1}) <= eps` for `p, q >= N`.
    MContractive {
        gauge: Gauge,
        eps: f64,
        delta: f64,
        shift: usize,
    },
    /// Nonincreasing steps, strictly decreasing while positive.
    MonotoneSteps {
        step: usize,
    },
    /// `d(x_{p+1},x_{q+1}) < d(x_p,x_q)` whenever `d(x_p,x_q) > 0`.
    NonexpansivePairs,
    /// `d(x_p,x_q) < eps + delta  =>  d(x_{p+1},x_{q+1}) <= eta` for `p, q >= N`.
    Geraghty {
        eps: f64,
        delta: f64,
        eta: f64,
        shift: usize,
    },
}

/// A named measured quantity attached to a witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement<D> {
    pub label: String,
    pub value: D,
}

/// A concrete violation, replayable from its points and indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<P, D> {
    pub condition: Condition,
    /// Points involved: `[x, y]` for pair conditions, `[seed]` for orbit
    /// conditions, empty for conditions stated on a sequence prefix.
    pub points: Vec<P>,
    /// Orbit or sequence positions involved, e.g. `[p, q]`.
    pub indices: Vec<usize>,
    pub measured: Vec<Measurement<D>>,
}

impl<P, D> Witness<P, D> {
    pub fn new(condition: Condition) -> Self {
        Witness {
            condition,
            points: Vec::new(),
            indices: Vec::new(),
            measured: Vec::new(),
        }
    }

    pub fn with_points(mut self, points: Vec<P>) -> Self {
        self.points = points;
        self
    }

    pub fn with_indices(mut self, indices: Vec<usize>) -> Self {
        self.indices = indices;
        self
    }

    pub fn measure(mut self, label: &str, value: D) -> Self {
        self.measured.push(Measurement {
            label: label.to_string(),
            value,
        });
        self
    }

    pub fn measured(&self, label: &str) -> Option<&D> {
        self.measured
            .iter()
            .find(|m| m.label == label)
            .map(|m| &m.value)
    }
}

/// Counters for a consistent (or partially consistent) sample.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    /// Implications (or pairs, or points) evaluated.
    pub evaluated: usize,
    /// Evaluations too close to a decision boundary to count either way.
    pub indeterminate: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SampleStats {
    pub fn evaluated(n: usize) -> Self {
        SampleStats {
            evaluated: n,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckVerdict<P, D> {
    ConsistentUpToSample(SampleStats),
    Falsified(Witness<P, D>),
    /// A standing hypothesis of the check does not hold on the sample.
    PreconditionFailed(Witness<P, D>),
}

impl<P, D> CheckVerdict<P, D> {
    pub fn is_consistent(&self) -> bool {
        matches!(self, CheckVerdict::ConsistentUpToSample(_))
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, CheckVerdict::Falsified(_))
    }

    pub fn witness(&self) -> Option<&Witness<P, D>> {
        match self {
            CheckVerdict::ConsistentUpToSample(_) => None,
            CheckVerdict::Falsified(w) | CheckVerdict::PreconditionFailed(w) => Some(w),
        }
    }

    pub fn stats(&self) -> Option<&SampleStats> {
        match self {
            CheckVerdict::ConsistentUpToSample(s) => Some(s),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CheckVerdict::ConsistentUpToSample(_) => "consistent",
            CheckVerdict::Falsified(_) => "falsified",
            CheckVerdict::PreconditionFailed(_) => "precondition-failed",
        }
    }
}

/// One row of an epsilon-delta profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileEntry<P, D> {
    pub eps: f64,
    /// Largest admissible grid delta, if any.
    pub best_delta: Option<f64>,
    /// No sampled implication constrained delta at all.
    pub delta_unbounded: bool,
    /// Threshold `N` (shifted and asymptotic conditions).
    pub shift: Option<usize>,
    /// Lag `nu` (asymptotic conditions).
    pub lag: Option<usize>,
    /// Conclusion bound `eta` (Geraghty-type conditions).
    pub eta: Option<f64>,
    pub verdict: CheckVerdict<P, D>,
}

impl<P, D> ProfileEntry<P, D> {
    pub(crate) fn falsified(eps: f64, witness: Witness<P, D>) -> Self {
        ProfileEntry {
            eps,
            best_delta: None,
            delta_unbounded: false,
            shift: None,
            lag: None,
            eta: None,
            verdict: CheckVerdict::Falsified(witness),
        }
    }
}

/// Per-epsilon record of the strongest certificate found.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsDeltaProfile<P, D> {
    pub condition: String,
    pub entries: Vec<ProfileEntry<P, D>>,
}

impl<P, D> EpsDeltaProfile<P, D> {
    pub fn new(condition: impl Into<String>) -> Self {
        EpsDeltaProfile {
            condition: condition.into(),
            entries: Vec::new(),
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.is_consistent())
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness<P, D>> {
        self.entries.iter().filter_map(|e| e.verdict.witness())
    }

    pub fn entry(&self, eps: f64) -> Option<&ProfileEntry<P, D>> {
        self.entries.iter().find(|e| e.eps == eps)
    }
}
