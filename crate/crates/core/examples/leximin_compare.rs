//! Filter-leximin comparisons, exact on eventually periodic streams.

use equistream::swr::{filter_compare, sorted_prefix};
use equistream::{Rational, Stream};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| Rational::integer(n)).collect()
}

fn show(name: &str, x: &Stream, y: &Stream, depth: usize, window: usize) -> equistream::Result<()> {
    let v = filter_compare(x, y, depth, window)?;
    println!(
        "{name}: {:?}, stabilizes at {:?}, pattern {:?}, certified {}",
        v.relation, v.stabilization, v.pattern, v.certified
    );
    Ok(())
}

fn main() -> equistream::Result<()> {
    let x = Stream::periodic(vec![], ints(&[1, 2, 4]))?;
    let y = Stream::periodic(vec![], ints(&[0, 3, 4]))?;
    println!("sorted x[5] = {:?}", sorted_prefix(&x, 5)?.iter().map(ToString::to_string).collect::<Vec<_>>());
    show("bce vs ade", &x, &y, 400, 100)?;
    show("10 vs 01", &Stream::periodic(vec![], ints(&[1, 0]))?, &Stream::periodic(vec![], ints(&[0, 1]))?, 400, 100)?;
    show("permuted", &Stream::periodic(ints(&[2, 1]), ints(&[0]))?, &Stream::periodic(ints(&[1, 2]), ints(&[0]))?, 400, 100)?;

    // Truncations are judged on a window and may stay undetermined.
    let t = Stream::truncated(ints(&[0, 5, 1, 1, 1, 1, 1, 1]))?;
    let u = Stream::truncated(ints(&[1, 1, 1, 1, 1, 1, 1, 0]))?;
    show("truncated", &t, &u, 8, 4)?;
    let u = Stream::truncated(ints(&[1, 1, 1, 1, 1, 1, 1, 1]))?;
    show("truncated, later", &t, &u, 8, 4)?;
    Ok(())
}
