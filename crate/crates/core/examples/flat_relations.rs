// The five consequence relations on one inconsistent base. Lex and the
// argumentative relation disagree in both directions here.

use argkb::{parse_formula, FlatKb, FlatReasoner, FlatRelation};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let kb = FlatKb::parse("A\n!B | !A\nB\n!C | !A\nC\n!A | D\n")?;
    let r = FlatReasoner::new(&kb);

    for goal in ["!A", "D", "B & C"] {
        let g = parse_formula(goal)?;
        let verdicts: Vec<String> = FlatRelation::ALL
            .iter()
            .map(|rel| Ok(format!("{rel}={}", r.decide(&g, *rel)?)))
            .collect::<argkb::Result<_>>()?;
        println!("{goal:>6}: {}", verdicts.join(" "));
    }

    let v = r.holds(&parse_formula("D")?, FlatRelation::Argumentative)?;
    for a in &v.arguments_for {
        println!("argument for D: {}", a.support);
    }
    assert!(v.holds);
    assert!(!r.decide(&parse_formula("!A")?, FlatRelation::Argumentative)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
