//! Fixed-point iteration for T(x) = x/2 + 1 on [0, 10].

use contraction_lab::{picard_solve, Affine, Interval, MetricSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> contraction_lab::Result<()> {
    let space = Interval::new(0.0, 10.0)?;
    let map = Affine::new(0.5, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for x0 in space.sample_points(0, 5, &mut rng) {
        let r = picard_solve(&space, &map, &x0, 1e-10, 1000);
        let ratios: Vec<f64> = r
            .steps
            .windows(2)
            .filter(|w| w[0] > 0.0)
            .map(|w| w[1] / w[0])
            .collect();
        let worst = ratios.iter().copied().fold(0.0, f64::max);
        println!(
            "x0 = {x0:.6}: {} after {} steps, approx {:.12}, worst step ratio {worst:.3}",
            if r.converged { "converged" } else { "stopped" },
            r.iterations,
            r.approx
        );
    }
    Ok(())
}
