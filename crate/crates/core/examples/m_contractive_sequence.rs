//! The epsilon-delta-N form on a sequence, and the critical pairs that
//! witness its failure.

use contraction_lab::seqlab::{
    check_m_contractive, critical_family, subsequence_verdict, Generator,
};
use contraction_lab::{DeltaGrid, EpsGrid, Gauge, GaugeTable, SequencePrefix};

fn main() -> contraction_lab::Result<()> {
    let eps = EpsGrid::geometric(0.125, 1.0)?;
    let cases = [
        (
            "geometric, proinov",
            Generator::Geometric {
                start: 1.0,
                ratio: 0.5,
            }
            .prefix(120),
            Gauge::Proinov { gamma: 1.0 },
        ),
        (
            "harmonic, proinov",
            Generator::Harmonic { scale: 1.0 }.prefix(120),
            Gauge::Proinov { gamma: 1.0 },
        ),
        (
            "period-three cycle, d",
            SequencePrefix::from_reals([0.0, 0.5, 2.0].repeat(20))?,
            Gauge::PlainD,
        ),
    ];
    for (label, prefix, gauge) in cases {
        let table = GaugeTable::on_prefix(gauge, &prefix);
        let prof = check_m_contractive(&prefix, &table, &eps, &DeltaGrid::default(), 8, 1e-9)?;
        println!("{label}: consistent = {}", prof.is_consistent());
        for e in &prof.entries {
            println!(
                "  eps {:<6} N {:?} delta {:?} {}",
                e.eps,
                e.shift,
                e.best_delta,
                e.verdict.label()
            );
            if !e.verdict.is_consistent() {
                let fam = critical_family(&prefix, &table, e.eps, 8, 1e-9)?;
                let sub =
                    subsequence_verdict(&prefix, &table, &fam, e.eps, e.eps / 4096.0, 0, 1e-9)?;
                println!(
                    "    critical pairs {:?}, subsequence form violated: {:?}",
                    fam.pairs, sub.violated
                );
            }
        }
    }
    Ok(())
}
