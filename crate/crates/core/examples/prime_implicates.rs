// Argumentative prime implicates: every argumentative consequence follows
// from one of them, but the conjunction of two of them need not be one.

use argkb::{parse_formula, FlatKb, FlatReasoner, FlatRelation};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let kb = FlatKb::parse("!A | B\nA | C\nA\n!A\n")?;
    let r = FlatReasoner::new(&kb);

    let pis = r.prime_implicates()?;
    for p in &pis {
        println!("prime implicate: {p}");
    }
    assert_eq!(pis.len(), 4);

    let goal = parse_formula("B | C")?;
    println!(
        "B | C in the closure: {}",
        r.in_argumentative_closure(&goal)?
    );
    assert_eq!(
        r.in_argumentative_closure(&goal)?,
        r.decide(&goal, FlatRelation::Argumentative)?
    );

    for (i, p) in pis.iter().enumerate() {
        for q in &pis[i + 1..] {
            let both = p.clone().and(q.clone());
            let joint = r.decide(&both, FlatRelation::Argumentative)?;
            println!("({p}) & ({q}): {}", if joint { "holds" } else { "fails" });
            assert!(!joint);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
