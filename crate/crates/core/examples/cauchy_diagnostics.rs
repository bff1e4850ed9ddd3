//! Cauchy modulus and the witness construction on a convergent and a
//! divergent prefix.

use contraction_lab::seqlab::{cauchy_modulus, lemma_criterion_witness_search, Generator};

fn main() {
    for gen in [
        Generator::Geometric {
            start: 1.0,
            ratio: 0.8,
        },
        Generator::Harmonic { scale: 1.0 },
    ] {
        let prefix = gen.prefix(500);
        println!("{}", gen.label());
        for eps in [0.5, 0.1, 0.01] {
            let modulus = cauchy_modulus(&prefix, eps);
            match lemma_criterion_witness_search(&prefix, eps, &[1]) {
                None => println!("  eps {eps}: modulus {modulus:?}, no witness"),
                Some(w) => {
                    let f = w.final_stage();
                    println!(
                        "  eps {eps}: modulus {modulus:?}, {} stages, final pair ({}, {}) at distance {:.4}",
                        w.stages.len(),
                        f.p,
                        f.q,
                        f.d_pq
                    );
                }
            }
        }
    }
}
