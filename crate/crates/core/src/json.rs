//! JSON documents for streams, domains, pairings and results.
//!
//! Rationals are `"p/q"` strings. Every document written by the CLI carries
//! a `version` field; readers ignore it.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::axioms::{AuditReport, Observation};
use crate::domains::{ChainDirection, Classification, Extended, MonotoneChain, UtilityDomain};
use crate::error::{Error, Result};
use crate::pairing::{PairingFunction, WitnessReport};
use crate::rational::Rational;
use crate::streams::Stream;
use crate::SCHEMA_VERSION;

/// `{"kind":"ep","pre":[...],"per":[...]}` or `{"kind":"trunc","values":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pre: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing)]
    pub version: Option<u32>,
}

impl StreamDoc {
    pub fn from_stream(x: &Stream) -> Self {
        let periodic = x.is_periodic();
        StreamDoc {
            kind: if periodic { "ep" } else { "trunc" }.into(),
            pre: periodic.then(|| x.pre().to_vec()),
            per: periodic.then(|| x.period().to_vec()),
            values: (!periodic).then(|| x.pre().to_vec()),
            provenance: x.provenance().map(str::to_string),
            version: None,
        }
    }

    pub fn into_stream(self) -> Result<Stream> {
        let stream = match (self.kind.as_str(), self.pre, self.per, self.values) {
            ("ep", pre, Some(per), None) => Stream::periodic(pre.unwrap_or_default(), per)?,
            ("trunc", None, None, Some(values)) => Stream::truncated(values)?,
            ("ep", ..) => return Err(Error::Parse("stream: \"ep\" takes \"pre\" and \"per\"".into())),
            ("trunc", ..) => return Err(Error::Parse("stream: \"trunc\" takes \"values\"".into())),
            (other, ..) => return Err(Error::Parse(format!("stream: unknown kind {other:?}"))),
        };
        Ok(match self.provenance {
            Some(p) => stream.with_provenance(p),
            None => stream,
        })
    }
}

pub fn stream_to_value(x: &Stream) -> Value {
    with_version(serde_json::to_value(StreamDoc::from_stream(x)).expect("serializable"))
}

pub fn parse_stream(src: &str) -> Result<Stream> {
    let doc: StreamDoc = serde_json::from_str(src).map_err(|e| Error::Parse(format!("stream: {e}")))?;
    doc.into_stream()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDoc {
    pub form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<ChainDirection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub start: usize,
}

fn one() -> usize {
    1
}

fn is_one(n: &usize) -> bool {
    *n == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainDoc {
    #[serde(default)]
    pub finite: Vec<Rational>,
    #[serde(default)]
    pub chains: Vec<ChainDoc>,
    #[serde(default, skip_serializing)]
    pub version: Option<u32>,
}

impl DomainDoc {
    pub fn from_domain(y: &UtilityDomain) -> Self {
        DomainDoc {
            finite: y.finite_part().iter().cloned().collect(),
            chains: y
                .chains()
                .iter()
                .map(|c| ChainDoc {
                    form: c.source().to_string(),
                    dir: Some(c.direction()),
                    limit: Some(c.limit().to_string()),
                    start: c.start(),
                })
                .collect(),
            version: None,
        }
    }

    pub fn into_domain(self) -> Result<UtilityDomain> {
        let mut chains = Vec::with_capacity(self.chains.len());
        for c in self.chains {
            let limit: Option<Extended> = c.limit.as_deref().map(str::parse).transpose()?;
            chains.push(MonotoneChain::parse_from(&c.form, c.start)?.expect(c.dir, limit.as_ref())?);
        }
        UtilityDomain::new(self.finite, chains)
    }
}

pub fn domain_to_value(y: &UtilityDomain) -> Value {
    with_version(serde_json::to_value(DomainDoc::from_domain(y)).expect("serializable"))
}

pub fn parse_domain(src: &str) -> Result<UtilityDomain> {
    let doc: DomainDoc = serde_json::from_str(src).map_err(|e| Error::Parse(format!("domain: {e}")))?;
    doc.into_domain()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingDoc {
    pub pairs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub open: BTreeSet<usize>,
    #[serde(default, skip_serializing)]
    pub version: Option<u32>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PairingInput {
    Bare(Vec<(usize, usize)>),
    Full(PairingDoc),
}

impl PairingDoc {
    pub fn from_pairing(alpha: &PairingFunction) -> Self {
        PairingDoc {
            pairs: alpha.defining_pairs(),
            period: alpha.period(),
            window: alpha.period().map(|_| alpha.window()),
            open: alpha.open().clone(),
            version: None,
        }
    }

    pub fn into_pairing(self) -> Result<PairingFunction> {
        match (self.period, self.window) {
            (Some(p), w) => {
                let w = w.unwrap_or_else(|| self.pairs.iter().map(|&(i, j)| i.max(j)).fold(p, usize::max));
                if !self.open.is_empty() {
                    return Err(Error::InvalidPairing("open indices need a finite pairing".into()));
                }
                PairingFunction::periodic(self.pairs, w, p)
            }
            (None, Some(_)) => Err(Error::InvalidPairing("a window without a period".into())),
            (None, None) => PairingFunction::finite(self.pairs)?.with_open(self.open),
        }
    }
}

pub fn pairing_to_value(alpha: &PairingFunction) -> Value {
    serde_json::to_value(PairingDoc::from_pairing(alpha)).expect("serializable")
}

/// Accepts a bare `[[i, j], ...]` list or an object with `pairs`. A periodic
/// pairing without a `window` gets the smallest one holding every listed pair.
pub fn parse_pairing(src: &str) -> Result<PairingFunction> {
    let input: PairingInput =
        serde_json::from_str(src).map_err(|e| Error::Parse(format!("pairing: {e}")))?;
    match input {
        PairingInput::Bare(pairs) => PairingFunction::finite(pairs),
        PairingInput::Full(doc) => doc.into_pairing(),
    }
}

pub fn witness_to_value(report: &WitnessReport) -> Value {
    json!({
        "axiom": report.axiom,
        "status": report.status.to_string(),
        "verified": report.is_verified(),
        "direction": report.direction.map(|d| d.to_string()),
        "pairing": report.pairing.as_ref().map(pairing_to_value),
    })
}

pub fn classification_to_value(c: &Classification) -> Value {
    json!({
        "class": c.class,
        "well_ordered": c.well_ordered,
        "contains_sigma": c.contains_sigma,
        "min": c.min,
        "max": c.max,
        "inf": c.inf.to_string(),
        "sup": c.sup.to_string(),
        "descending_witness": c.descending_witness,
        "sigma_witness": c.sigma_witness,
    })
}

pub fn audit_to_value(report: &AuditReport) -> Value {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            let observed = match &v.observed {
                Observation::Values { better, worse } => json!({ "better": better, "worse": worse }),
                Observation::Verdict(rel) => json!({ "verdict": rel }),
            };
            json!({
                "trial": v.trial,
                "better": stream_to_value(&v.better),
                "worse": stream_to_value(&v.worse),
                "witness": v.witness.as_ref().map(pairing_to_value),
                "observed": observed,
            })
        })
        .collect();
    json!({
        "subject": report.subject,
        "axiom": report.axiom,
        "trials": report.trials,
        "seed": report.seed,
        "passed": report.passed(),
        "violations": violations,
    })
}

/// Adds the `version` field to an object.
pub fn with_version(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut out = Map::new();
            out.insert("version".into(), json!(SCHEMA_VERSION));
            out.extend(map.into_iter().filter(|(k, _)| k != "version"));
            Value::Object(out)
        }
        other => json!({ "version": SCHEMA_VERSION, "data": other }),
    }
}

/// Decimal rendering for display next to an exact value.
pub fn approx(r: &Rational) -> Value {
    let f = r.to_f64();
    json!((f * 1e4).round() / 1e4)
}
