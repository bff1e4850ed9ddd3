//! Epsilon-delta profiles for a contraction and for an isometry.

use contraction_lab::check::{check_ciric_matkowski, check_meir_keeler, PairSample};
use contraction_lab::{Affine, DeltaGrid, EpsGrid, Interval};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> contraction_lab::Result<()> {
    let space = Interval::new(0.0, 1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sample = PairSample::draw(&space, 0, 2048, &mut rng);
    let eps = EpsGrid::geometric(1.0 / 64.0, 0.5)?;
    for (name, map) in [
        ("x/2", Affine::new(0.5, 0.0)),
        ("identity", Affine::identity()),
    ] {
        let mk = check_meir_keeler(&space, &map, &sample, &eps, &DeltaGrid::default());
        println!("{name}: meir-keeler consistent = {}", mk.is_consistent());
        for e in &mk.entries {
            println!(
                "  eps {:<9} best delta {:?} {}",
                e.eps,
                e.best_delta,
                e.verdict.label()
            );
        }
        let cm = check_ciric_matkowski(&space, &map, &sample, &eps, &DeltaGrid::default());
        println!(
            "  ciric-matkowski consistent = {}, contractive scan {}",
            cm.is_consistent(),
            cm.contractive.label()
        );
    }
    Ok(())
}
