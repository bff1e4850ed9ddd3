//! Geraghty-type classification by ratios and by (delta, eta) search.

use contraction_lab::seqlab::{check_geraghty, Generator};
use contraction_lab::{DeltaGrid, EpsGrid, PairFamily};

fn main() -> contraction_lab::Result<()> {
    let eps = EpsGrid::geometric(1.0 / 64.0, 1.0)?;
    for gen in [
        Generator::Geometric {
            start: 1.0,
            ratio: 0.7,
        },
        Generator::Inverse { shift: 1.0 },
        Generator::AffineOrbit {
            a: 1.0,
            c: 0.001,
            seed: 0.0,
        },
    ] {
        let prefix = gen.prefix(150);
        let fam = [PairFamily::consecutive(0, 140)];
        let rep = check_geraghty(&prefix, &eps, &DeltaGrid::default(), 4, 1e-9, &fam)?;
        println!("{}: standing {}", gen.label(), rep.standing.label());
        for (e, r) in rep.profile.entries.iter().zip(&rep.ratio_route) {
            println!(
                "  eps {:<9} (delta, eta) route {:<12} ratio route {}",
                e.eps,
                e.verdict.label(),
                if r.violated() { "violated" } else { "holds" }
            );
        }
        if let Some(s) = rep.series.first() {
            let tail: Vec<String> = s
                .values
                .iter()
                .rev()
                .take(3)
                .map(|v| format!("{:.4}", v.2))
                .collect();
            println!("  last consecutive ratios {}", tail.join(" "));
        }
    }
    Ok(())
}
