//! The shifted m-contraction on the counterexample space under doubling.

use contraction_lab::check::{check_shifted_m_contraction, PairSample};
use contraction_lab::{DeltaGrid, DoubleIndex, EpsGrid, ExampleSpace, Gauge};

fn main() -> contraction_lab::Result<()> {
    let space = ExampleSpace;
    let gauge = Gauge::generalized_proinov(1.0, 1.0, 1, 1)?;
    let sample = PairSample::all_pairs((0..=128).map(|i| space.point(i)).collect());
    let eps = EpsGrid::default();
    for n in [0, 2] {
        let prof = check_shifted_m_contraction(
            &space,
            &DoubleIndex,
            &gauge,
            &sample,
            &eps,
            &DeltaGrid::eps_only(),
            n..=n,
        )?;
        println!("N = {n}: consistent = {}", prof.is_consistent());
        for w in prof.witnesses() {
            println!(
                "  {:?} on {:?}: m = {}, d(Tx,Ty) = {}",
                w.condition,
                w.points,
                w.measured("m").unwrap(),
                w.measured("d-image").unwrap()
            );
        }
    }
    Ok(())
}
