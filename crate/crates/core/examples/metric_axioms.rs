//! Axiom checks on the three kinds of space.

use contraction_lab::metric::verify_metric_axioms;
use contraction_lab::{ExampleSpace, Interval, MetricSpace, TableSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> contraction_lab::Result<()> {
    let ex = ExampleSpace;
    let pts: Vec<_> = (0..=40).map(|i| ex.point(i)).collect();
    let rep = verify_metric_axioms(&ex, &pts, 0.0);
    println!("example space, x_0..x_40: {}", rep.verdict.label());
    for (a, b) in &rep.collisions {
        println!("  {a} and {b} are at distance {}", ex.distance(a, b));
    }

    let iv = Interval::new(-1.0, 3.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts = iv.sample_points(0, 48, &mut rng);
    println!(
        "[-1, 3], 48 points: {}",
        verify_metric_axioms(&iv, &pts, 1e-12).verdict.label()
    );

    let bad = TableSpace::from_csv_str(",a,b,c\na,0,1,5\nb,1,0,1\nc,5,1,0\n")?;
    let rep = verify_metric_axioms(&bad, &[0, 1, 2], 1e-12);
    println!("table with a long edge: {}", rep.verdict.label());
    if let Some(w) = rep.verdict.witness() {
        println!(
            "  {:?} at {:?}",
            w.condition,
            w.points.iter().map(|p| bad.name(*p)).collect::<Vec<_>>()
        );
    }
    Ok(())
}
