//! Builds a classify report in code and writes it as JSON and CSV.

use contraction_lab::report::{run_classify, Format};
use contraction_lab::{emit_report, Report, RunConfig};

fn main() -> contraction_lab::Result<()> {
    let cfg = RunConfig {
        space: "interval:0,1".into(),
        map: "affine:0.5,0.25".into(),
        conditions: vec!["banach".into(), "meir-keeler".into(), "acf".into()],
        pairs: 1024,
        seed: 11,
        ..RunConfig::default()
    };
    let rep = run_classify(cfg)?;
    let dir = std::env::temp_dir();
    let json = dir.join("contraction-lab-classify.json");
    emit_report(&rep, Format::Json, Some(&json))?;
    emit_report(&rep, Format::Csv, None)?;
    let back = Report::from_json(&std::fs::read_to_string(&json).expect("just written"))?;
    println!(
        "exit code {}, round trip equal: {}",
        rep.exit_code(),
        back == rep
    );
    Ok(())
}
