//! Searching for and validating pairing-function witnesses.

use equistream::pairing::{brute_force_witness, find_witness, validate};
use equistream::{AxiomTag, PairingFunction, Rational, Stream};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| Rational::integer(n)).collect()
}

fn main() -> equistream::Result<()> {
    let x = Stream::periodic(vec![], ints(&[1, 2, 4]))?;
    let y = Stream::periodic(vec![], ints(&[0, 3, 4]))?;
    for axiom in [AxiomTag::GE, AxiomTag::IE, AxiomTag::WE, AxiomTag::GPD] {
        let report = find_witness(&x, &y, axiom, 200)?;
        let dir = report.direction.map_or("-".to_string(), |d| d.to_string());
        println!("{axiom:>3}: {} ({dir})", report.status);
    }

    // A hand-written pairing, checked against the definition.
    let alpha = PairingFunction::periodic([(1, 2)], 3, 3)?;
    let report = validate(&alpha, &x, &y, AxiomTag::IE)?;
    println!("alpha = {{3k+1, 3k+2}}: {}", report.status);

    // Short finite profiles can be settled exhaustively.
    let xs = ints(&[0, 3, 2, 2]);
    let ys = ints(&[1, 2, 2, 2]);
    match brute_force_witness(&xs, &ys, AxiomTag::PD)? {
        Some((dir, pairing)) => println!("PD on {xs:?} / {ys:?}: {dir} via {:?}", pairing.defining_pairs()),
        None => println!("no PD witness"),
    }
    let t = find_witness(&Stream::truncated(xs)?, &Stream::truncated(ys)?, AxiomTag::PD, 4)?;
    println!("find_witness agrees: {}", t.status);
    Ok(())
}
