//! Final-type and asymptotic m-contraction checks on single orbits.

use contraction_lab::check::{
    check_asymptotic_final_type, check_asymptotic_m_contraction, AsymptoticBudget,
};
use contraction_lab::{Affine, DeltaGrid, DoubleIndex, EpsGrid, ExampleSpace, Gauge, Interval};

fn main() -> contraction_lab::Result<()> {
    let budget = AsymptoticBudget::default();
    let eps = EpsGrid::default();
    let deltas = DeltaGrid::default();

    let iv = Interval::new(0.0, 10.0)?;
    let map = Affine::new(0.5, 1.0);
    let acf = check_asymptotic_final_type(&iv, &map, &10.0, &[0.0], &budget, &eps, &deltas)?;
    let amc = check_asymptotic_m_contraction(
        &iv,
        &map,
        &Gauge::Ciric,
        &10.0,
        &[0.0],
        &budget,
        &eps,
        &deltas,
    )?;
    println!(
        "x/2+1 from 10: final type {}, m-contraction (ciric) {}",
        acf.is_consistent(),
        amc.is_consistent()
    );

    let ex = ExampleSpace;
    let acf =
        check_asymptotic_final_type(&ex, &DoubleIndex, &ex.point(1), &[], &budget, &eps, &deltas)?;
    println!(
        "doubling from x_1: orbits merge {}, profile:",
        acf.merge.label()
    );
    for e in &acf.profile.entries {
        println!(
            "  eps {:<9} nu {:?} delta {:?} {}",
            e.eps,
            e.lag,
            e.best_delta,
            e.verdict.label()
        );
    }
    Ok(())
}
