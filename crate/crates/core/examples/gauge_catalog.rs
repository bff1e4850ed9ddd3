//! Every gauge at one pair, and a limsup comparison along consecutive pairs.

use contraction_lab::gauges::limsup_comparison;
use contraction_lab::seqlab::Generator;
use contraction_lab::{evaluate_gauge, DoubleIndex, ExampleSpace, Gauge, PairFamily};

fn main() -> contraction_lab::Result<()> {
    let space = ExampleSpace;
    let (x, y) = (space.point(4), space.point(9));
    let gauges = Gauge::catalog();
    for g in &gauges {
        println!(
            "{:<34} m(x_4, x_9) = {}",
            g.to_string(),
            evaluate_gauge(g, &space, &DoubleIndex, &x, &y)
        );
    }

    let prefix = Generator::Harmonic { scale: 1.0 }.prefix(200);
    let fam = PairFamily::consecutive(0, 190);
    for g in &gauges {
        let c = limsup_comparison(g, &prefix, &fam, 0, 1e-9)?;
        println!(
            "{:<34} tail sup m {:.4} vs d {:.4}: {}",
            g.to_string(),
            c.m_tail_sup,
            c.d_tail_sup,
            c.verdict.label()
        );
    }
    Ok(())
}
