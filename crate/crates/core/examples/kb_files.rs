// Reading and writing the text formats: flat files hold one formula per
// line, layered files group formulas under `[layer <weight>]` headers.

use argkb::kbfile::{self, KbFile};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let flat = "# birds\nbird\n!bird | flies\n!flies\n";
    let layered = "[layer 1]\np\n[layer 0.5]\n!p | b  # penguins are birds\n";

    for text in [flat, layered] {
        match kbfile::parse(text)? {
            KbFile::Flat(kb) => println!("flat base with {} formulas", kb.len()),
            KbFile::Stratified(kb) => {
                println!("layered base with {} layers", kb.num_layers());
                print!("{}", kbfile::write_stratified(&kb));
            }
        }
    }

    match kbfile::parse("[layer 1]\nA &\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("dangling operator"),
    }
    let round = kbfile::parse_stratified(&kbfile::write_stratified(&kbfile::parse_stratified(
        layered,
    )?))?;
    assert_eq!(round, kbfile::parse_stratified(layered)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
