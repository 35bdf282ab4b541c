//! The named example streams, each with two conflicting witnesses.

use equistream::constructions::{example_streams, verify, EXAMPLE_NAMES};

fn main() -> equistream::Result<()> {
    for name in EXAMPLE_NAMES {
        let ex = example_streams(name, 400)?;
        let t = verify(&ex)?;
        println!("{name}: {}", if t.passed() { "all claims hold" } else { "FAILED" });
        for step in &t.steps {
            println!("  [{}] {}", if step.passed { "ok" } else { "!!" }, step.detail);
        }
        for note in &t.notes {
            println!("  note: {note}");
        }
    }
    Ok(())
}
