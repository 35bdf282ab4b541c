//! The `equistream` command line.
//!
//! Exit codes: 0 for success or a definite verdict, 1 for a negative verdict
//! (no witness, failed claim, audit violation, incomparable streams), 2 for
//! usage and input errors, 3 when the finite representation cannot decide.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::axioms::{audit_swf, audit_swr, AxiomTag, GeneratorConfig};
use crate::constructions::{
    example_streams, thm1_construction, thm2_construction, thm3_construction, verify, NamedExample,
    EXAMPLE_NAMES,
};
use crate::domains::{classify, UtilityDomain};
use crate::error::{Error, Result};
use crate::json::{
    approx, audit_to_value, classification_to_value, pairing_to_value, parse_domain, parse_pairing,
    parse_stream, stream_to_value, with_version, witness_to_value,
};
use crate::pairing::{find_witness, validate};
use crate::rational::Rational;
use crate::streams::Stream;
use crate::swf::{
    FiveValueDomain, MinSwf, Prop1Swf, Prop2Swf, RhoInfSwf, SevenValueDomain, WelfareFunction,
};
use crate::swr::{filter_compare, Leximin, Relation, DEFAULT_DEPTH, DEFAULT_WINDOW};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

pub const SEED_ENV: &str = "EQUISTREAM_SEED";

const DEFAULT_SEED: u64 = 0;
const DEFAULT_TRIALS: usize = 1000;
const DEFAULT_WITNESS_DEPTH: usize = 200;

#[derive(Debug, Parser)]
#[command(name = "equistream", version, about = "Equity axioms for infinite utility streams")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML or JSON file with defaults for the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SwfName {
    Prop1,
    Prop2,
    Min,
    Rhoinf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SwrName {
    Leximin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Subject {
    Prop1,
    Prop2,
    Min,
    Rhoinf,
    Leximin,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a social welfare function on a stream.
    Eval {
        #[arg(long, value_enum)]
        swf: SwfName,
        #[arg(long)]
        rho: Option<Rational>,
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long)]
        stream: PathBuf,
    },
    /// Compare two streams under the leximin relation.
    Compare {
        #[arg(long, value_enum, default_value = "leximin")]
        swr: SwrName,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        window: Option<usize>,
        x: PathBuf,
        y: PathBuf,
    },
    /// Search for (or check) a pairing witness.
    Witness {
        #[arg(long)]
        axiom: AxiomTag,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        /// Validate this pairing instead of searching.
        #[arg(long)]
        pairing: Option<PathBuf>,
    },
    /// Classify a utility domain by order type.
    Classify {
        #[arg(long)]
        domain: PathBuf,
    },
    /// Build a named example or theorem chain and verify its claims.
    Construct {
        #[arg(long)]
        name: String,
        #[arg(long)]
        r: Option<Rational>,
        #[arg(long)]
        s: Option<Rational>,
        #[arg(long)]
        depth: Option<usize>,
        /// Comma-separated, strictly increasing.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<Rational>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit a welfare function or relation against an axiom.
    Audit {
        #[arg(long, value_enum)]
        subject: Subject,
        #[arg(long)]
        axiom: AxiomTag,
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        rho: Option<Rational>,
    },
}

/// Defaults read from `--config`; flags win, and `EQUISTREAM_SEED` beats
/// the file's seed.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    format: Option<Format>,
    seed: Option<u64>,
    trials: Option<usize>,
    depth: Option<usize>,
    window: Option<usize>,
    rho: Option<Rational>,
    domain: Option<PathBuf>,
}

impl Config {
    fn load(path: &Path) -> Result<Config> {
        let text = read(path)?;
        let is_toml = path.extension().is_some_and(|e| e == "toml");
        let parsed = if is_toml {
            toml::from_str(&text).map_err(|e| e.to_string())
        } else {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        };
        parsed.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

struct Outcome {
    value: Value,
    code: i32,
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = match cli.config.as_deref().map(Config::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => return report_error(&e),
    };
    let format = cli.format.or(config.format).unwrap_or(Format::Json);
    match dispatch(cli.command, &config) {
        Ok(out) => {
            let value = with_version(out.value);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
                Format::Table => print!("{}", table(&value)),
            }
            out.code
        }
        Err(e) => report_error(&e),
    }
}

fn report_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    if e.is_representation_limit() {
        EXIT_UNDECIDED
    } else {
        EXIT_USAGE
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_stream(path: &Path) -> Result<Stream> {
    parse_stream(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_domain(path: &Path) -> Result<UtilityDomain> {
    parse_domain(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn domain_arg(flag: Option<PathBuf>, config: &Config) -> Result<UtilityDomain> {
    let path = flag
        .or_else(|| config.domain.clone())
        .ok_or_else(|| Error::BadParameter("--domain is required here".into()))?;
    load_domain(&path)
}

fn rho_arg(flag: Option<Rational>, config: &Config) -> Rational {
    flag.or_else(|| config.rho.clone()).unwrap_or_else(|| Rational::new(1, 2))
}

fn dispatch(command: Command, config: &Config) -> Result<Outcome> {
    match command {
        Command::Eval { swf, rho, domain, stream } => {
            let x = load_stream(&stream)?;
            let w = build_swf(swf, rho, domain, config)?;
            let value = w.evaluate(&x)?;
            Ok(Outcome {
                value: json!({ "swf": w.name(), "value": value, "approx": approx(&value) }),
                code: EXIT_OK,
            })
        }
        Command::Compare { swr: SwrName::Leximin, depth, window, x, y } => {
            let (x, y) = (load_stream(&x)?, load_stream(&y)?);
            let depth = depth.or(config.depth).unwrap_or(DEFAULT_DEPTH);
            let window = window.or(config.window).unwrap_or(DEFAULT_WINDOW.min(depth / 2));
            let verdict = filter_compare(&x, &y, depth, window)?;
            let code = match verdict.relation {
                Relation::Undetermined => EXIT_UNDECIDED,
                Relation::Incomparable => EXIT_NEGATIVE,
                _ => EXIT_OK,
            };
            Ok(Outcome { value: json!({ "swr": "leximin", "verdict": verdict }), code })
        }
        Command::Witness { axiom, x, y, depth, pairing } => {
            let (x, y) = (load_stream(&x)?, load_stream(&y)?);
            let report = match pairing {
                Some(path) => {
                    let alpha = parse_pairing(&read(&path)?)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    validate(&alpha, &x, &y, axiom)?
                }
                None => {
                    let depth = depth.or(config.depth).unwrap_or(DEFAULT_WITNESS_DEPTH);
                    find_witness(&x, &y, axiom, depth)?
                }
            };
            let code = if report.is_verified() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome { value: witness_to_value(&report), code })
        }
        Command::Classify { domain } => {
            let y = load_domain(&domain)?;
            Ok(Outcome { value: classification_to_value(&classify(&y)), code: EXIT_OK })
        }
        Command::Construct { name, r, s, depth, values, out } => {
            let depth = depth.or(config.depth);
            let example = build_example(&name, r, s, depth, values)?;
            let transcript = verify(&example)?;
            if let Some(dir) = out {
                write_example(&dir, &example, &transcript)?;
            }
            let code = if transcript.passed() { EXIT_OK } else { EXIT_NEGATIVE };
            let streams: serde_json::Map<String, Value> = example
                .streams
                .iter()
                .map(|(n, x)| (n.clone(), stream_to_value(x)))
                .collect();
            let pairings: serde_json::Map<String, Value> = example
                .pairings
                .iter()
                .map(|(n, p)| (n.clone(), pairing_to_value(p)))
                .collect();
            let mut value = json!({ "transcript": transcript, "passed": transcript.passed() });
            // Long truncations are only written to files.
            if example.streams.iter().all(|(_, x)| x.defining_len() <= 64) {
                value["streams"] = Value::Object(streams);
                value["pairings"] = Value::Object(pairings);
            }
            Ok(Outcome { value, code })
        }
        Command::Audit { subject, axiom, domain, trials, seed, depth, rho } => {
            let domain = domain_arg(domain, config)?;
            let trials = trials.or(config.trials).unwrap_or(DEFAULT_TRIALS);
            let seed = seed.or(config.seed).unwrap_or(DEFAULT_SEED);
            let mut gen = GeneratorConfig::from_domain(&domain)?;
            if let Some(d) = depth.or(config.depth) {
                gen = gen.with_depth(d);
            }
            let report = match subject {
                Subject::Leximin => audit_swr(&Leximin::default(), axiom, &gen, trials, seed)?,
                other => {
                    let name = match other {
                        Subject::Prop1 => SwfName::Prop1,
                        Subject::Prop2 => SwfName::Prop2,
                        Subject::Min => SwfName::Min,
                        _ => SwfName::Rhoinf,
                    };
                    let w = swf_for_domain(name, rho_arg(rho, config), domain)?;
                    audit_swf(w.as_ref(), axiom, &gen, trials, seed)?
                }
            };
            let code = if report.passed() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome { value: audit_to_value(&report), code })
        }
    }
}

fn build_swf(
    swf: SwfName,
    rho: Option<Rational>,
    domain: Option<PathBuf>,
    config: &Config,
) -> Result<Box<dyn WelfareFunction + Sync>> {
    if swf == SwfName::Min {
        return Ok(Box::new(MinSwf));
    }
    swf_for_domain(swf, rho_arg(rho, config), domain_arg(domain, config)?)
}

fn swf_for_domain(
    swf: SwfName,
    rho: Rational,
    domain: UtilityDomain,
) -> Result<Box<dyn WelfareFunction + Sync>> {
    Ok(match swf {
        SwfName::Prop1 => Box::new(Prop1Swf(FiveValueDomain::from_domain(&domain)?)),
        SwfName::Prop2 => Box::new(Prop2Swf(SevenValueDomain::from_domain(&domain)?)),
        SwfName::Min => Box::new(MinSwf),
        SwfName::Rhoinf => {
            if !rho.is_positive() || rho >= Rational::one() {
                return Err(Error::BadRho(rho));
            }
            Box::new(RhoInfSwf { rho, domain })
        }
    })
}

fn build_example(
    name: &str,
    r: Option<Rational>,
    s: Option<Rational>,
    depth: Option<usize>,
    values: Option<Vec<Rational>>,
) -> Result<NamedExample> {
    let family = match name {
        "thm1" => 4,
        "thm2" => 6,
        "thm3" => 8,
        _ if EXAMPLE_NAMES.contains(&name) => return example_streams(name, depth.unwrap_or(400)),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    let (Some(r), Some(s)) = (r, s) else {
        return Err(Error::BadParameter(format!("{name} needs --r and --s")));
    };
    let values = values.unwrap_or_else(|| (0..family).map(Rational::integer).collect());
    let depth = depth.unwrap_or(5000);
    match family {
        4 => thm1_construction(&r, &s, depth, &values),
        6 => thm2_construction(&r, &s, depth, &values),
        _ => thm3_construction(&r, &s, depth, &values),
    }
}

/// File stem for a stream or pairing name: `y'` becomes `y_prime`,
/// `x(r)` becomes `x_r`.
pub fn file_stem(name: &str) -> String {
    let mut out = String::new();
    for c in name.chars() {
        match c {
            '\'' => out.push_str("_prime"),
            '+' => out.push('_'),
            c if c.is_ascii_alphanumeric() => out.push(c),
            '(' => out.push('_'),
            _ => {}
        }
    }
    out
}

fn write_example(dir: &Path, example: &NamedExample, transcript: &crate::constructions::Transcript) -> Result<()> {
    fs::create_dir_all(dir)?;
    let write = |file: String, value: Value| -> Result<()> {
        let text = serde_json::to_string_pretty(&value).expect("json");
        fs::write(dir.join(file), text + "\n")?;
        Ok(())
    };
    for (name, x) in &example.streams {
        write(format!("{}.json", file_stem(name)), stream_to_value(x))?;
    }
    for (name, p) in &example.pairings {
        write(format!("pairing_{}.json", file_stem(name)), with_version(pairing_to_value(p)))?;
    }
    write("transcript.json".into(), with_version(json!(transcript)))
}

/// Flattens a JSON document into aligned `key  value` lines.
fn table(value: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.into_iter().map(|(k, v)| format!("{k:width$}  {v}\n")).collect()
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&key(k), v, rows)),
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            items.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, rows))
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems() {
        assert_eq!(file_stem("y'"), "y_prime");
        assert_eq!(file_stem("x(r)"), "x_r");
        assert_eq!(file_stem("z_z'"), "zz_prime");
        assert_eq!(file_stem("alpha+beta"), "alpha_beta");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["equistream", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["equistream", "witness", "--axiom", "XX", "--x", "a", "--y", "b"]), EXIT_USAGE);
        assert_eq!(run(["equistream", "--help"]), EXIT_OK);
    }

    #[test]
    fn tables() {
        let t = table(&json!({ "a": "1/2", "b": { "c": 3 } }));
        assert_eq!(t, "a    1/2\nb.c  3\n");
    }
}
