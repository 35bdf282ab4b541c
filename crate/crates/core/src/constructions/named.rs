//! The small named examples.

use super::verify::{Check, Claim, NamedExample};
use crate::axioms::AxiomTag;
use crate::error::{Error, Result};
use crate::pairing::{Direction, PairingFunction};
use crate::rational::{q, Rational};
use crate::streams::Stream;

pub const EXAMPLE_NAMES: [&str; 4] = ["ex1", "ex2", "intro", "section3"];

const MIN_EXAMPLE_DEPTH: usize = 8;

/// Builds a named example. `depth` is the truncation depth of the examples
/// with unbounded values (`ex1`, `ex2`) and is ignored by the others.
pub fn example_streams(name: &str, depth: usize) -> Result<NamedExample> {
    match name {
        "ex1" | "ex2" if depth < MIN_EXAMPLE_DEPTH => {
            Err(Error::DepthTooSmall { needed: MIN_EXAMPLE_DEPTH, depth })
        }
        "ex1" => ex1(depth),
        "ex2" => ex2(depth),
        "intro" => intro(),
        "section3" => section3(),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn int(n: i64) -> Rational {
    Rational::integer(n)
}

fn witness(statement: &str, axiom: AxiomTag, pairing: &str, x: &str, y: &str, expect: Direction) -> Claim {
    Claim {
        statement: statement.to_string(),
        check: Check::Witness {
            axiom,
            pairing: pairing.into(),
            x: x.into(),
            y: y.into(),
            expect,
        },
    }
}

fn no_premise(statement: &str, axiom: AxiomTag, x: &str, y: &str, depth: usize) -> Claim {
    Claim {
        statement: statement.to_string(),
        check: Check::NoPremise { axiom, x: x.into(), y: y.into(), depth },
    }
}

// α pairs each odd n with n + 1; β pairs 1 with 3, each even n with n + 3.
// Both repeat with the period 4 of the examples' blocks.
fn alpha_beta() -> Result<Vec<(String, PairingFunction)>> {
    Ok(vec![
        ("alpha".into(), PairingFunction::periodic([(1, 2), (3, 4)], 4, 4)?),
        ("beta".into(), PairingFunction::periodic([(1, 3), (2, 5), (4, 7), (6, 9)], 7, 4)?),
    ])
}

fn ex1(depth: usize) -> Result<NamedExample> {
    let block = |t: usize, offsets: [i64; 4]| {
        let k = ((t - 1) / 4) as i64;
        let j = (t - 1) % 4;
        let magnitude = 4 * k + offsets[j].abs();
        int(magnitude * offsets[j].signum())
    };
    let x = Stream::from_rule(depth, |t| block(t, [1, 4, -1, -4]))?.with_provenance("ex1:x");
    let y = Stream::from_rule(depth, |t| block(t, [2, 3, -2, -3]))?.with_provenance("ex1:y");
    let mut claims = Vec::new();
    for axiom in [AxiomTag::WE, AxiomTag::GE] {
        claims.push(witness("alpha gives x < y", axiom, "alpha", "x", "y", Direction::YOverX));
        claims.push(witness("beta gives y < x", axiom, "beta", "x", "y", Direction::XOverY));
    }
    Ok(NamedExample {
        name: "ex1".into(),
        streams: vec![("x".into(), x), ("y".into(), y)],
        pairings: alpha_beta()?,
        claims,
        notes: vec![
            "relation inconsistent on this domain: both strict directions are witnessed".into(),
        ],
    })
}

fn ex2(depth: usize) -> Result<NamedExample> {
    let value = |t: usize, offsets: [i64; 2]| {
        let k = ((t - 1) / 2) as i64;
        int(-4 * k - offsets[(t - 1) % 2])
    };
    let x = Stream::from_rule(depth, |t| value(t, [2, 5]))?.with_provenance("ex2:x");
    let y = Stream::from_rule(depth, |t| value(t, [3, 4]))?.with_provenance("ex2:y");
    let y_prime = Stream::from_rule(depth, |t| if t == 1 { int(-1) } else { value(t, [3, 4]) })?
        .with_provenance("ex2:y'");
    let mut claims = vec![Claim {
        statement: "y' dominates y, so M gives y <= y'".into(),
        check: Check::Dominates { upper: "y'".into(), lower: "y".into() },
    }];
    for axiom in [AxiomTag::WE, AxiomTag::GE] {
        claims.push(witness("alpha gives x < y", axiom, "alpha", "x", "y", Direction::YOverX));
        claims.push(witness("beta gives y' < x", axiom, "beta", "y'", "x", Direction::YOverX));
    }
    Ok(NamedExample {
        name: "ex2".into(),
        streams: vec![("x".into(), x), ("y".into(), y), ("y'".into(), y_prime)],
        pairings: alpha_beta()?,
        claims,
        notes: vec![
            "relation inconsistent on this domain: x < y <= y' < x under GE and M".into(),
        ],
    })
}

fn intro() -> Result<NamedExample> {
    let ones = || vec![int(1), int(0), int(1)];
    let x = Stream::periodic(vec![], ones())?.with_provenance("intro:x");
    let z = Stream::periodic(
        vec![q(3, 4), q(1, 4), int(1), q(3, 5), q(1, 10), int(1)],
        ones(),
    )?
    .with_provenance("intro:z");
    let z_prime = Stream::periodic(vec![q(3, 4), q(1, 4), int(1)], vec![q(3, 5), q(1, 10), int(1)])?
        .with_provenance("intro:z'");
    let claims = vec![
        witness("two transfers make z better than x", AxiomTag::GE, "x_z", "x", "z", Direction::YOverX),
        no_premise("a single transfer does not turn x into z", AxiomTag::SE, "x", "z", 60),
        witness("infinitely many transfers make z' better than z", AxiomTag::GE, "z_z'", "z", "z'", Direction::YOverX),
        witness("the z to z' transfers are infinitely many", AxiomTag::IE, "z_z'", "z", "z'", Direction::YOverX),
        no_premise("strong equity cannot compare z and z'", AxiomTag::SE, "z", "z'", 60),
        no_premise("Pigou-Dalton cannot compare z and z'", AxiomTag::PD, "z", "z'", 60),
        witness("z' is better than x directly", AxiomTag::IE, "x_z'", "x", "z'", Direction::YOverX),
    ];
    Ok(NamedExample {
        name: "intro".into(),
        streams: vec![("x".into(), x), ("z".into(), z), ("z'".into(), z_prime)],
        pairings: vec![
            ("x_z".into(), PairingFunction::finite([(1, 2), (4, 5)])?),
            ("z_z'".into(), PairingFunction::periodic([(7, 8)], 8, 3)?),
            ("x_z'".into(), PairingFunction::periodic([(1, 2)], 3, 3)?),
        ],
        claims,
        notes: vec![],
    })
}

fn section3() -> Result<NamedExample> {
    // a, b, c, d, e = 0, 1, 2, 3, 4
    let x = Stream::periodic(vec![], vec![int(1), int(2), int(4)])?.with_provenance("section3:x");
    let y = Stream::periodic(vec![], vec![int(0), int(3), int(4)])?.with_provenance("section3:y");
    let claims = vec![
        witness("pairing 3k+1 with 3k+2 gives y < x", AxiomTag::GE, "alpha", "x", "y", Direction::XOverY),
        witness("the pairing has infinite domain", AxiomTag::IE, "alpha", "x", "y", Direction::XOverY),
        no_premise("every third coordinate agrees, so no weak equity premise", AxiomTag::WE, "x", "y", 60),
    ];
    Ok(NamedExample {
        name: "section3".into(),
        streams: vec![("x".into(), x), ("y".into(), y)],
        pairings: vec![("alpha".into(), PairingFunction::periodic([(1, 2)], 3, 3)?)],
        claims,
        notes: vec![],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::verify;

    #[test]
    fn values() {
        let ex = example_streams("ex1", 12).unwrap();
        let x = ex.stream("x").unwrap().prefix(8).unwrap();
        assert_eq!(x, [1, 4, -1, -4, 5, 8, -5, -8].map(int));
        let y = ex.stream("y").unwrap().prefix(8).unwrap();
        assert_eq!(y, [2, 3, -2, -3, 6, 7, -6, -7].map(int));
        let ex = example_streams("ex2", 8).unwrap();
        assert_eq!(ex.stream("x").unwrap().prefix(4).unwrap(), [-2, -5, -6, -9].map(int));
        assert_eq!(ex.stream("y").unwrap().prefix(4).unwrap(), [-3, -4, -7, -8].map(int));
        assert_eq!(ex.stream("y'").unwrap().prefix(4).unwrap(), [-1, -4, -7, -8].map(int));
    }

    #[test]
    fn beta_matches_its_rule() {
        let beta = example_streams("ex1", 8).unwrap().pairing("beta").unwrap().clone();
        use crate::pairing::Partner;
        assert_eq!(beta.partner(1), Partner::Paired(3));
        assert_eq!(beta.partner(3), Partner::Paired(1));
        for n in 2..200 {
            let expected = if n % 2 == 0 { n + 3 } else if n >= 5 { n - 3 } else { continue };
            assert_eq!(beta.partner(n), Partner::Paired(expected), "{n}");
        }
    }

    #[test]
    fn all_claims_hold() {
        for name in EXAMPLE_NAMES {
            let t = verify(&example_streams(name, 400).unwrap()).unwrap();
            for s in &t.steps {
                assert!(s.passed, "{name}: {} ({})", s.statement, s.detail);
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(example_streams("ex3", 40), Err(Error::UnknownName(_))));
        assert!(matches!(example_streams("ex1", 4), Err(Error::DepthTooSmall { .. })));
    }
}
