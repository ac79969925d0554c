// Maximal consistent subsets, minimal conflicts and the free base of a flat
// knowledge base.

use argkb::{FlatKb, FlatReasoner};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let kb = FlatKb::parse("!A\n!B\nA\nB\n!C | !D\n!A | B\n")?;
    let r = FlatReasoner::new(&kb);

    println!("maximal consistent subsets:");
    for s in r.maximal_consistent_subsets()? {
        let items: Vec<String> = kb.select(&s).iter().map(|f| f.to_string()).collect();
        println!("  {s}  {}", items.join(", "));
    }
    println!("minimal inconsistent subsets:");
    for s in r.minimal_inconsistent_subsets()? {
        println!("  {s}");
    }
    let free = r.free_base()?;
    println!("free base: {free}");
    assert_eq!(free.indices(), [4]);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
