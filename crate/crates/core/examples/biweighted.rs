// Biweighted clauses: each clause carries the weight of its best argument
// and of the best argument against it. Resolution propagates both.

use argkb::para::ParaBase;
use argkb::{Limits, StratifiedKb};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let kb = StratifiedKb::parse(
        "[layer 1]\nA\nF\n[layer 0.8]\n!A | B\n[layer 0.7]\n!A | E\n[layer 0.6]\n!B\n\
         [layer 0.5]\n!A | C\n!F | G\n[layer 0.4]\n!A | D\nH\n[layer 0.3]\n!D\n!H | I\n[layer 0.2]\n!F\n",
    )?;
    let limits = Limits::default();
    let base = ParaBase::from_stratified(&kb, &limits)?;
    print!("base:\n{}", base.to_text());

    let closed = base.saturate(&limits)?;
    println!("derived:");
    for e in closed.entries() {
        if !base.contains(&e) && e.clause.len() == 1 {
            println!("{e}  paraconsistency {}", e.weight.paraconsistency());
        }
    }
    assert!(closed.contains(&"E @ 0.7 ; 0.6".parse()?));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
