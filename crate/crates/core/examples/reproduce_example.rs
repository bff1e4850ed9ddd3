//! Audits the counterexample space and prints the first rows of the
//! witness family table.

use contraction_lab::report::run_reproduce_example;
use contraction_lab::RunConfig;

fn main() -> contraction_lab::Result<()> {
    let rep = run_reproduce_example(RunConfig::default())?;
    for v in &rep.verdicts {
        let vals: Vec<String> = v
            .values
            .iter()
            .map(|m| format!("{}={}", m.label, m.value.decimal))
            .collect();
        println!("{:<26} {:<11} {}", v.name, v.verdict, vals.join(" "));
    }
    let fam = rep.diagnostic("witness-family").expect("always emitted");
    println!("{}", fam.columns.join(" | "));
    for row in fam.rows.iter().take(4) {
        let cells: Vec<String> = row
            .iter()
            .map(|c| {
                c.get("exact")
                    .and_then(|e| e.as_str())
                    .map(str::to_string)
                    .unwrap_or_else(|| c.to_string())
            })
            .collect();
        println!("{}", cells.join(" | "));
    }
    Ok(())
}
