// Deciding weighted argumentative consequence one prefix at a time, and
// the arguments behind the answer.

use argkb::{parse_formula, StratifiedKb, StratifiedReasoner, StratifiedRelation};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let kb = StratifiedKb::from_unweighted(vec![
        vec![
            parse_formula("A")?,
            parse_formula("!B | !A")?,
            parse_formula("B")?,
            parse_formula("C")?,
        ],
        vec![parse_formula("!C | !A")?],
        vec![parse_formula("!A | D")?],
    ])?;
    let r = StratifiedReasoner::new(&kb);

    for goal in ["D", "!A", "C"] {
        let g = parse_formula(goal)?;
        let v = r.decide_by_layers(&g)?;
        let direct = r.holds(&g, StratifiedRelation::Argumentative)?;
        assert_eq!(v.holds, direct.holds);
        let weight = v
            .weight
            .filter(|_| v.holds)
            .map(|w| format!(" at {w}"))
            .unwrap_or_default();
        println!(
            "{goal}: {}{weight}",
            if v.holds { "holds" } else { "fails" }
        );
        for a in &direct.arguments_for {
            println!(
                "  for      {} @ {}",
                a.support,
                a.weight.unwrap_or_default()
            );
        }
        for a in &direct.arguments_against {
            println!(
                "  against  {} @ {}",
                a.support,
                a.weight.unwrap_or_default()
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
