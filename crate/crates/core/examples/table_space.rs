//! A finite space and map read from CSV.

use contraction_lab::check::{check_banach, check_meir_keeler, PairSample};
use contraction_lab::maps::TableMap;
use contraction_lab::{DeltaGrid, EpsGrid, MetricSpace, TableSpace};

const SPACE: &str = include_str!("../data/square.csv");
const MAP: &str = include_str!("../data/square_collapse.csv");

fn main() -> contraction_lab::Result<()> {
    let space = TableSpace::from_csv_str(SPACE)?;
    let map = TableMap::from_csv_str(MAP, &space)?;
    let pts: Vec<usize> = (0..space.len()).collect();
    let sample = PairSample::all_pairs(pts);
    let b = check_banach(&space, &map, &sample)?;
    println!("lipschitz estimate {} ({})", b.lipschitz, b.verdict.label());
    let eps = EpsGrid::from_values(vec![0.5, 1.0])?;
    let mk = check_meir_keeler(&space, &map, &sample, &eps, &DeltaGrid::default());
    for e in &mk.entries {
        let pts = e.verdict.witness().map(|w| {
            w.points
                .iter()
                .map(|p| space.format_point(p))
                .collect::<Vec<_>>()
        });
        println!("eps {}: {} {:?}", e.eps, e.verdict.label(), pts);
    }
    Ok(())
}
