//! Order-type classification of utility domains.

use equistream::domains::{classify, map_domain, IncreasingMap};
use equistream::{q, MonotoneChain, UtilityDomain};

fn domain(finite: Vec<equistream::Rational>, chains: &[&str]) -> equistream::Result<UtilityDomain> {
    let chains = chains.iter().map(|c| MonotoneChain::parse(c)).collect::<Result<Vec<_>, _>>()?;
    UtilityDomain::new(finite, chains)
}

fn main() -> equistream::Result<()> {
    let cases = [
        ("{0,1,2}", domain(vec![q(0, 1), q(1, 1), q(2, 1)], &[])?),
        ("N", domain(vec![], &["n"])?),
        ("negative integers", domain(vec![], &["-n"])?),
        ("1/(n+2), n/(n+1)", domain(vec![], &["1/(n+2)", "n/(n+1)"])?),
        ("-1, 1, -2, 2, ...", domain(vec![], &["n", "-n"])?),
        ("1/2 -+ 1/(n+1)", domain(vec![], &["1/2 - 1/(n+1)", "1/2 + 1/(n+1)"])?),
    ];
    let map = "(2n+1)/(n+2)";
    let f = IncreasingMap::parse(map)?;
    for (name, y) in &cases {
        let c = classify(y);
        let min = c.min.as_ref().map_or("-".into(), ToString::to_string);
        let max = c.max.as_ref().map_or("-".into(), ToString::to_string);
        print!("{name:>20}: {:?} (min {min}, max {max})", c.class);
        match map_domain(y, &f) {
            Ok(image) => println!(", image under {map}: {:?}", classify(&image).class),
            Err(e) => println!(", not mapped: {e}"),
        }
    }
    Ok(())
}
