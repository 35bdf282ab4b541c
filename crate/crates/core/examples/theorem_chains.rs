//! Witness chains x(r) < ... < x(s) over non-periodic streams.

use equistream::constructions::{thm1_construction, thm2_construction, thm3_construction, verify, NamedExample};
use equistream::{q, Error, Rational};

fn report(ex: &NamedExample) -> equistream::Result<()> {
    let t = verify(ex)?;
    println!("{}: {}", ex.name, if t.passed() { "verified" } else { "FAILED" });
    for step in &t.steps {
        println!("  {}", step.detail);
    }
    Ok(())
}

fn main() -> equistream::Result<()> {
    let values = |n: i64| (0..n).map(Rational::integer).collect::<Vec<_>>();
    let (r, s) = (q(1, 3), q(1, 2));
    report(&thm1_construction(&r, &s, 2000, &values(4))?)?;
    report(&thm2_construction(&r, &s, 2000, &values(6))?)?;
    report(&thm3_construction(&r, &s, 2000, &values(8))?)?;

    // The first crossing index for 3/5 < 2/3 is q_8 = 3/5, far out.
    match thm2_construction(&q(3, 5), &q(2, 3), 2000, &values(6)) {
        Err(Error::DepthTooSmall { needed, depth }) => println!("thm2(3/5, 2/3): depth {depth} too small, need {needed}"),
        other => println!("thm2(3/5, 2/3): {:?}", other.map(|e| e.name)),
    }
    Ok(())
}
