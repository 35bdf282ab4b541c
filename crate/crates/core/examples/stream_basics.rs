//! Eventually periodic and truncated streams, alignment and difference sets.

use equistream::streams::{align, difference_set, dominates, is_finite_permutation};
use equistream::{q, Rational, Stream};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| Rational::integer(n)).collect()
}

fn main() -> equistream::Result<()> {
    // b c e b c e ... against a d e a d e ...
    let x = Stream::periodic(vec![], ints(&[1, 2, 4]))?;
    let y = Stream::periodic(vec![], ints(&[0, 3, 4]))?;
    println!("x[1..=6] = {:?}", x.prefix(6)?.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("x and y differ on {:?}", difference_set(&x, &y)?);

    let z = Stream::periodic(ints(&[7]), ints(&[1, 0]))?;
    let (xa, za) = align(&x, &z)?;
    println!("aligned: pre {} / {}, period {} / {}", xa.pre().len(), za.pre().len(), xa.period().len(), za.period().len());

    let swapped = Stream::periodic(ints(&[2, 1, 4]), ints(&[1, 2, 4]))?;
    println!("finite permutation of x: {}", is_finite_permutation(&x, &swapped)?);
    println!("constant 5 dominates x: {}", dominates(&Stream::constant(q(5, 1)), &x)?);

    let t = Stream::from_rule(10, |n| q(n as i64, 2))?.with_provenance("halves");
    println!("{:?} truncated at {:?}: x_10 = {}", t.provenance(), t.depth(), t.coordinate(10)?);
    match t.coordinate(11) {
        Err(e) => println!("x_11: {e}"),
        Ok(v) => println!("x_11 = {v}"),
    }
    Ok(())
}
