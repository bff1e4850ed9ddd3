//! Diagnostics on finite sequence prefixes.

mod cauchy;
mod contractive;
mod generators;
mod geraghty;

pub use cauchy::{
    cauchy_modulus, lemma_criterion_witness_search, tail_diameters, tail_start, LemmaStage,
    LemmaWitness,
};
pub use contractive::{
    check_m_contractive, check_monotone_contractive, critical_family, subsequence_verdict,
    SubsequenceVerdict,
};
pub use generators::{corpus, Generated, Generator};
pub use geraghty::{check_geraghty, GeraghtyReport, RatioClass, RatioSeries};
