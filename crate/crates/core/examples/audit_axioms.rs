//! Randomized axiom audits of welfare functions and the leximin relation.

use equistream::axioms::{audit_swf, audit_swr, GeneratorConfig};
use equistream::swf::{MinSwf, Prop1Swf, Prop2Swf};
use equistream::swr::Leximin;
use equistream::{AuditReport, AxiomTag, FiveValueDomain, Rational, SevenValueDomain};

fn line(r: &AuditReport) {
    let first = r.violations.first().map(|v| format!(", first at trial {}", v.trial)).unwrap_or_default();
    println!("{:>8} {:>3}: {}/{} clean{first}", r.subject, r.axiom, r.trials - r.violations.len(), r.trials);
}

fn main() -> equistream::Result<()> {
    let seed = std::env::var("EQUISTREAM_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7);
    let ints = |n: i64| (0..n).map(Rational::integer).collect::<Vec<_>>();
    let five = GeneratorConfig::new(ints(5))?;
    let seven = GeneratorConfig::new(ints(7))?;

    let p1 = Prop1Swf(FiveValueDomain::new(ints(5).try_into().unwrap())?);
    let p2 = Prop2Swf(SevenValueDomain::new(ints(7).try_into().unwrap())?);
    for axiom in [AxiomTag::GE, AxiomTag::M, AxiomTag::AN] {
        line(&audit_swf(&p1, axiom, &five, 300, seed)?);
    }
    line(&audit_swf(&p2, AxiomTag::GE, &seven, 300, seed)?);
    line(&audit_swf(&p2, AxiomTag::M, &seven, 300, seed)?);
    for axiom in [AxiomTag::WE, AxiomTag::M, AxiomTag::AN] {
        line(&audit_swf(&MinSwf, axiom, &five, 300, seed)?);
    }
    for axiom in [AxiomTag::GE, AxiomTag::AN, AxiomTag::M] {
        line(&audit_swr(&Leximin::default(), axiom, &five, 300, seed)?);
    }
    Ok(())
}
