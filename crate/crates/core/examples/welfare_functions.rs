//! Exact evaluation of the explicit welfare functions.

use equistream::domains::UtilityDomain;
use equistream::swf::{periodic_base_sum, w_min, w_prop1, w_prop2, w_rho_inf};
use equistream::{q, FiveValueDomain, MonotoneChain, PeriodicIndexSet, Rational, SevenValueDomain, Stream};

fn ints<const N: usize>(v: [i64; N]) -> [Rational; N] {
    v.map(Rational::integer)
}

fn main() -> equistream::Result<()> {
    // Odd indices: 2^-1 + 2^-3 + ... = 2/3.
    let odd = PeriodicIndexSet::new([], 0, 2, [1])?;
    println!("sum over odd n of 2^-n = {}", periodic_base_sum(&odd, 2));

    let five = FiveValueDomain::new(ints([0, 1, 2, 3, 4]))?;
    let seven = SevenValueDomain::new(ints([0, 1, 2, 3, 4, 5, 6]))?;
    let x = Stream::periodic(vec![], vec![q(1, 1), q(0, 1)])?;
    println!("w_prop1(1,0,1,0,...) = {}", w_prop1(&x, &five)?);
    println!("w_prop2(1,0,1,0,...) = {}", w_prop2(&x, &seven)?);

    // Raising the first coordinate lowers w_prop2.
    let c = Stream::constant(q(2, 1));
    let raised = Stream::periodic(vec![q(6, 1)], vec![q(2, 1)])?;
    println!("w_prop2: {} -> {} after raising x_1", w_prop2(&c, &seven)?, w_prop2(&raised, &seven)?);

    let z = Stream::periodic(vec![q(-3, 1)], vec![q(5, 2), q(1, 2)])?;
    println!("w_min = {}", w_min(&z)?);

    let bold_y = UtilityDomain::new(
        [],
        vec![MonotoneChain::parse("1/2 - 1/(n+1)")?, MonotoneChain::parse("1/2 + 1/(n+1)")?],
    )?;
    let s = Stream::periodic(vec![], vec![q(1, 3), q(3, 4)])?;
    for rho in [q(1, 4), q(1, 2), q(3, 4)] {
        println!("w_rho_inf(rho = {rho}) = {}", w_rho_inf(&s, &rho, &bold_y)?);
    }
    Ok(())
}
