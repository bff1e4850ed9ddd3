use serde::{Deserialize, Serialize};

use crate::grid::{DeltaGrid, EpsGrid};

/// Everything a run depends on. Echoed verbatim into every report so that
/// the run can be repeated from the report alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub space: String,
    pub map: String,
    pub conditions: Vec<String>,
    pub gauges: Vec<String>,
    pub eps_grid: Vec<f64>,
    pub delta_steps: u32,
    /// Index cutoff `L` on indexed spaces.
    pub cutoff: usize,
    /// Pair count on continuum spaces; point count for axiom checks.
    pub pairs: usize,
    pub seed: u64,
    pub tol: f64,
    pub tail_tol: f64,
    pub n_min: usize,
    pub n_max: usize,
    pub nu_max: usize,
    pub horizon: usize,
    pub x0: Option<String>,
    pub companions: Vec<String>,
    /// Sequence input file; the orbit of `x0` is used when absent.
    pub input: Option<String>,
    pub length: usize,
    pub window: usize,
    pub nu: Vec<usize>,
    pub max_iter: usize,
    /// Extra seeded starting points for `solve`.
    pub starts: usize,
    pub out: Option<String>,
    pub format: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            space: "example".into(),
            map: "double-index".into(),
            conditions: Vec::new(),
            gauges: Vec::new(),
            eps_grid: EpsGrid::default().values().to_vec(),
            delta_steps: DeltaGrid::default().steps,
            cutoff: 512,
            pairs: 4096,
            seed: 0,
            tol: crate::maps::DEFAULT_TOL,
            tail_tol: 1e-6,
            n_min: 0,
            n_max: 4,
            nu_max: 8,
            horizon: 128,
            x0: None,
            companions: Vec::new(),
            input: None,
            length: 256,
            window: 0,
            nu: vec![1],
            max_iter: crate::maps::DEFAULT_MAX_ITER,
            starts: 0,
            out: None,
            format: "json".into(),
        }
    }
}

impl RunConfig {
    pub fn eps(&self) -> crate::Result<EpsGrid> {
        EpsGrid::from_values(self.eps_grid.clone())
    }

    pub fn deltas(&self) -> DeltaGrid {
        DeltaGrid::new(self.delta_steps)
    }
}
