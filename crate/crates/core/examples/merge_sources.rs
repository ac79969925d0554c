// Querying several sources without pooling them: a goal is accepted when
// some source supports it more strongly than any source refutes it.

use argkb::merge::{am_holds, merged_base};
use argkb::stratified::Layer;
use argkb::{parse_formula, SourceSet, StratifiedKb, Weight};

fn source(weight: &str, formulas: &[&str]) -> Result<StratifiedKb, Box<dyn std::error::Error>> {
    let formulas = formulas
        .iter()
        .map(|s| parse_formula(s))
        .collect::<Result<_, _>>()?;
    Ok(StratifiedKb::new_source(vec![Layer {
        weight: weight.parse::<Weight>()?,
        formulas,
    }])?)
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let sources = SourceSet::new(vec![
        ("sensor", source("0.8", &["A", "!A | B"])?),
        ("report", source("0.6", &["!A"])?),
        ("rumour", source("0.3", &["!B", "C"])?),
    ])?;
    let queries: Vec<_> = ["A", "!A", "B", "C", "A & C"]
        .iter()
        .map(|s| parse_formula(s))
        .collect::<Result<_, _>>()?;

    for q in &queries {
        let v = am_holds(&sources, q)?;
        let against = v
            .strongest_against
            .map(|(_, w)| w.to_string())
            .unwrap_or_else(|| "-".into());
        let support = v
            .weight
            .map(|w| w.to_string())
            .unwrap_or_else(|| "-".into());
        println!(
            "{q:>6}: {:5}  support {support}  against {against}",
            v.holds
        );
    }
    let merged = merged_base(&sources, &queries)?;
    for (f, w) in &merged {
        println!("merged: {f} @ {w}");
    }
    assert_eq!(merged.len(), 3);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
