// Layered bases: the possibilistic relation drowns formulas below the
// inconsistency level, the others recover some of them.

use argkb::{parse_formula, StratifiedKb, StratifiedReasoner, StratifiedRelation};

fn show(name: &str, kb: &StratifiedKb, goal: &str) -> Result<(), Box<dyn std::error::Error>> {
    let r = StratifiedReasoner::new(kb);
    let g = parse_formula(goal)?;
    println!("{name}: inconsistency level {}", r.inconsistency_level()?);
    for rel in StratifiedRelation::ALL {
        let (holds, weight) = r.decide(&g, rel)?;
        match weight {
            Some(w) if holds => println!("  {goal} under {rel}: holds at {w}"),
            _ => println!(
                "  {goal} under {rel}: {}",
                if holds { "holds" } else { "fails" }
            ),
        }
    }
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let drowning = StratifiedKb::parse(
        "[layer 1]\n!A | !B\n[layer 0.75]\nA\n[layer 0.5]\nB\n[layer 0.25]\nC\n",
    )?;
    show("drowning", &drowning, "C")?;

    let penguin = StratifiedKb::from_unweighted(vec![
        vec![parse_formula("p")?],
        vec![parse_formula("!p | b")?, parse_formula("!p | !f")?],
        vec![parse_formula("!b | f")?, parse_formula("!b | w")?],
    ])?;
    show("penguin", &penguin, "w")?;

    let r = StratifiedReasoner::new(&penguin);
    assert!(!r.decide(&parse_formula("w")?, StratifiedRelation::Pi)?.0);
    assert!(
        r.decide(&parse_formula("w")?, StratifiedRelation::PiFree)?
            .0
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
