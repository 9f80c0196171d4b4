//! Command-line front end. `run` parses arguments, dispatches, and returns the
//! exit code together with the text written to standard output.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::curves::{CurveModel, CurveSpec};
use crate::error::{Error, Place, Result};
use crate::json::{canonical_pretty, input_hash};
use crate::local::{everywhere_locally_soluble, local_index, qp_soluble, LocalOptions};
use crate::period::{conic_has_rational_point, index_upper_bound, period_report, sha_corollary_report};
use crate::sieve::{sieve_run, verify_certificate, PrimeSelection, SieveCertificate, SieveConfig, ASSUMPTIONS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_CERTIFICATE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_OBSTRUCTION: i32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "zcs", version, about = "Local solubility, period/index bounds and Mordell-Weil sieving for curves over Q")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads (defaults to ZCS_THREADS, then the number of cores).
    #[arg(long, env = "ZCS_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solubility at the real place and at primes, with local indices at bad primes.
    Local {
        #[arg(long)]
        curve: PathBuf,
        /// Check only this prime.
        #[arg(long)]
        prime: Option<u64>,
        /// Check good primes explicitly up to this bound.
        #[arg(long)]
        prime_bound: Option<u64>,
        /// Hensel precision (exponent of p).
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Run the Mordell-Weil sieve and print a certificate.
    Sieve {
        #[arg(long)]
        config: PathBuf,
        /// Override the modulus B.
        #[arg(long)]
        modulus: Option<u64>,
        /// Override the prime selection with the first N admissible primes.
        #[arg(long)]
        prime_count: Option<usize>,
    },
    /// Upper bound on the index from closed points.
    Index {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 100)]
        height: u64,
    },
    /// Period/index relations.
    Period {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 100)]
        height: u64,
        #[arg(long)]
        prime_bound: Option<u64>,
    },
    /// Decide whether aX² + bY² = cZ² has a rational point.
    Conic {
        #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["A", "B", "C"])]
        coeffs: Vec<i64>,
    },
    /// Degree-1 zero-cycles from Sha[p] = 0 assertions for p | 2g − 2.
    Corollary {
        /// Curve file; local solubility is computed.
        #[arg(long, conflicts_with_all = ["genus", "locally_soluble"])]
        curve: Option<PathBuf>,
        /// Genus, for curves without a supported model.
        #[arg(long, requires = "locally_soluble")]
        genus: Option<u32>,
        /// Assert everywhere-local solubility (with --genus).
        #[arg(long)]
        locally_soluble: bool,
        /// Primes p for which Sha(A)[p] = 0 is asserted.
        #[arg(long = "sha-trivial-at", num_args = 1..)]
        sha_trivial_at: Vec<u64>,
    },
    /// Re-check a sieve certificate from scratch.
    VerifyCert {
        #[arg(long)]
        certificate: PathBuf,
        /// Refuse the certificate unless it was produced from this config.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// Common wrapper around every JSON report.
#[derive(Debug, Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    input_hash: String,
    assumptions: Vec<&'static str>,
    payload: Value,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Reads and validates a curve file.
pub fn parse_curve(path: &Path) -> Result<CurveModel> {
    let value = read_json(path)?;
    let spec: CurveSpec =
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    CurveModel::try_from(spec)
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } => EXIT_PRECISION,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::CompositeModulus(_) => "CompositeModulus",
        Error::NonResidue(..) => "NonResidue",
        Error::FieldMismatch => "FieldMismatch",
        Error::NotIrreducible => "NotIrreducible",
        Error::UnsupportedDegree(_) => "UnsupportedDegree",
        Error::ShapeMismatch => "ShapeMismatch",
        Error::OutOfRange => "OutOfRange",
        Error::SingularModel => "SingularModel",
        Error::MalformedModel(_) => "MalformedModel",
        Error::BadReduction(_) => "BadReduction",
        Error::PointNotOnCurve => "PointNotOnCurve",
        Error::InvalidDivisor(_) => "InvalidDivisor",
        Error::NonIntegralAtP(_) => "NonIntegralAtP",
        Error::UnsupportedModel(_) => "UnsupportedModel",
        Error::PrecisionExhausted { .. } => "PrecisionExhausted",
        Error::EmbeddingUnavailable(_) => "EmbeddingUnavailable",
        Error::NoAdmissiblePrimes => "NoAdmissiblePrimes",
        Error::InadmissiblePrime(_) => "InadmissiblePrime",
        Error::InvalidBasis(_) => "InvalidBasis",
        Error::HypothesisUnmet(_) => "HypothesisUnmet",
        Error::FactorizationIncomplete(_) => "FactorizationIncomplete",
        Error::Parse(_) => "ParseError",
        Error::InvalidInput(_) => "InvalidInput",
    }
}

struct Outcome {
    code: i32,
    command: &'static str,
    hash_of: Value,
    payload: Value,
    text: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let format = cli.format;
    let result = match cli.threads {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(Error::InvalidInput(format!("thread pool: {e}"))),
        },
        Some(_) => Err(Error::InvalidInput("threads must be positive".into())),
        None => dispatch(&cli.command),
    };
    match result {
        Ok(o) => {
            let out = match format {
                Format::Json => {
                    let report = Report {
                        tool: "zcs",
                        version: env!("CARGO_PKG_VERSION"),
                        command: o.command,
                        input_hash: input_hash(&o.hash_of),
                        assumptions: if o.command == "sieve" { ASSUMPTIONS.to_vec() } else { vec![] },
                        payload: o.payload,
                    };
                    canonical_pretty(&report)
                }
                Format::Text => o.text,
            };
            (o.code, out)
        }
        Err(e) => {
            let out = match format {
                Format::Json => canonical_pretty(&json!({"error": {"kind": error_kind(&e), "message": e.to_string()}})),
                Format::Text => format!("error: {e}"),
            };
            (exit_code_for(&e), out)
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Local { curve, prime, prime_bound, precision } => cmd_local(curve, *prime, *prime_bound, *precision),
        Command::Sieve { config, modulus, prime_count } => cmd_sieve(config, *modulus, *prime_count),
        Command::Index { curve, height } => cmd_index(curve, *height),
        Command::Period { curve, height, prime_bound } => cmd_period(curve, *height, *prime_bound),
        Command::Conic { coeffs } => cmd_conic(coeffs),
        Command::Corollary { curve, genus, locally_soluble, sha_trivial_at } => {
            cmd_corollary(curve.as_deref(), *genus, *locally_soluble, sha_trivial_at)
        }
        Command::VerifyCert { certificate, config } => cmd_verify(certificate, config.as_deref()),
    }
}

fn curve_echo(curve: &CurveModel) -> Value {
    json!({"curve": curve.to_spec()})
}

fn cmd_local(path: &Path, prime: Option<u64>, prime_bound: Option<u64>, precision: Option<u32>) -> Result<Outcome> {
    let curve = parse_curve(path)?;
    let echo = json!({"curve": curve.to_spec(), "prime": prime, "prime_bound": prime_bound, "precision": precision});
    if let Some(p) = prime {
        let report = qp_soluble(&curve, p, precision)?;
        let text = format!("{curve}\n  {}: {}", report.place, if report.soluble { "soluble" } else { "insoluble" });
        return Ok(Outcome {
            code: if report.soluble { EXIT_OK } else { EXIT_OBSTRUCTION },
            command: "local",
            hash_of: echo,
            payload: json!({"report": report}),
            text,
        });
    }
    let report = everywhere_locally_soluble(&curve, &LocalOptions { prime_bound, precision })?;
    let indices = report
        .bad_primes
        .iter()
        .map(|&p| local_index(&curve, p, precision))
        .collect::<Result<Vec<_>>>()?;
    let mut text = format!("{curve}\n");
    for r in &report.places {
        text.push_str(&format!("  {}: {}\n", r.place, if r.soluble { "soluble" } else { "insoluble" }));
    }
    text.push_str(&format!("  {}\n", report.above_bound));
    text.push_str(&format!("everywhere locally soluble: {}", report.soluble));
    Ok(Outcome {
        code: if report.soluble { EXIT_OK } else { EXIT_OBSTRUCTION },
        command: "local",
        hash_of: echo,
        payload: json!({"everywhere": report, "local_indices": indices}),
        text,
    })
}

fn cmd_sieve(path: &Path, modulus: Option<u64>, prime_count: Option<usize>) -> Result<Outcome> {
    let mut config = SieveConfig::from_json(&read_json(path)?)?;
    if let Some(b) = modulus {
        config = SieveConfig::new(config.curve, config.basis, config.base, b, config.primes, config.mode)?;
    }
    if let Some(n) = prime_count {
        config = SieveConfig::new(config.curve, config.basis, config.base, config.modulus, PrimeSelection::Count(n), config.mode)?;
    }
    let cert = sieve_run(&config)?;
    let text = format!(
        "{}\nmodulus {}, primes {:?}\n{}",
        config.curve,
        config.modulus,
        cert.primes,
        match &cert.verdict {
            crate::sieve::Verdict::Empty => "verdict: empty (obstruction established, conditional on the stated assumptions)".to_string(),
            crate::sieve::Verdict::Survivors(s) => format!("verdict: {} surviving coset(s): {s:?}", s.len()),
        }
    );
    Ok(Outcome {
        code: if cert.verdict.is_empty() { EXIT_OBSTRUCTION } else { EXIT_OK },
        command: "sieve",
        hash_of: config.to_json(),
        payload: serde_json::to_value(&cert).expect("serializable"),
        text,
    })
}

fn cmd_index(path: &Path, height: u64) -> Result<Outcome> {
    let curve = parse_curve(path)?;
    let report = index_upper_bound(&curve, height);
    let text = format!(
        "{curve}\nindex divides {} ({} rational point(s) up to height {height})",
        report.index_upper_bound, report.rational_point_count
    );
    Ok(Outcome { code: EXIT_OK, command: "index", hash_of: json!({"curve": curve.to_spec(), "height": height}), payload: json!(report), text })
}

fn cmd_period(path: &Path, height: u64, prime_bound: Option<u64>) -> Result<Outcome> {
    let curve = parse_curve(path)?;
    let local = everywhere_locally_soluble(&curve, &LocalOptions { prime_bound, precision: None })?;
    let index = index_upper_bound(&curve, height);
    let relation = period_report(&curve, &local, &index);
    let mut text = format!("{curve}\n");
    for c in &relation.claims {
        text.push_str(&format!("  [{}] {}\n", serde_json::to_value(c.status).unwrap().as_str().unwrap(), c.statement));
    }
    Ok(Outcome {
        code: EXIT_OK,
        command: "period",
        hash_of: json!({"curve": curve.to_spec(), "height": height, "prime_bound": prime_bound}),
        payload: json!({"relation": relation, "index": index, "local_failures": local.failures}),
        text: text.trim_end().to_string(),
    })
}

fn cmd_conic(coeffs: &[i64]) -> Result<Outcome> {
    let [a, b, c] = <[i64; 3]>::try_from(coeffs).map_err(|_| Error::InvalidInput("conic needs three coefficients".into()))?;
    let report = conic_has_rational_point(a, b, c)?;
    let text = if report.soluble {
        let w = report.witness.as_ref().map(|w| format!("({}, {}, {})", w[0], w[1], w[2])).unwrap_or_default();
        format!("{a}X^2 + {b}Y^2 = {c}Z^2 has the rational point {w}")
    } else {
        let places: Vec<String> = report.obstructions.iter().map(Place::to_string).collect();
        format!("{a}X^2 + {b}Y^2 = {c}Z^2 has no rational point: obstruction at {}", places.join(", "))
    };
    Ok(Outcome {
        code: if report.soluble { EXIT_OK } else { EXIT_OBSTRUCTION },
        command: "conic",
        hash_of: json!({"coeffs": [a, b, c]}),
        payload: json!(report),
        text,
    })
}

fn cmd_corollary(path: Option<&Path>, genus: Option<u32>, asserted_ls: bool, sha: &[u64]) -> Result<Outcome> {
    let (genus, soluble, echo) = match (path, genus) {
        (Some(p), _) => {
            let curve = parse_curve(p)?;
            let local = everywhere_locally_soluble(&curve, &LocalOptions::default())?;
            (curve.genus(), local.soluble, curve_echo(&curve))
        }
        (None, Some(g)) => (g, asserted_ls, json!({"genus": g, "locally_soluble": asserted_ls})),
        (None, None) => return Err(Error::InvalidInput("give --curve or --genus".into())),
    };
    let report = sha_corollary_report(genus, soluble, sha)?;
    let text = format!("genus {genus}: {}", report.claim.statement);
    let mut hash_of = echo;
    hash_of["sha_trivial_at"] = json!(report.asserted_primes);
    Ok(Outcome { code: EXIT_OK, command: "corollary", hash_of, payload: json!(report), text })
}

fn cmd_verify(path: &Path, config: Option<&Path>) -> Result<Outcome> {
    let value = read_json(path)?;
    // accept either a bare certificate or a full report wrapping one
    let cert_value = value.get("payload").cloned().unwrap_or(value);
    let cert: SieveCertificate =
        serde_json::from_value(cert_value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut verification = verify_certificate(&cert);
    if let Some(cfg) = config {
        let expected = SieveConfig::from_json(&read_json(cfg)?)?.input_hash();
        if verification.valid && expected != cert.input_hash {
            verification = crate::sieve::Verification { valid: false, first_mismatch: Some("input_hash: config differs".into()) };
        }
    }
    let text = match &verification.first_mismatch {
        None => "certificate valid".to_string(),
        Some(m) => format!("certificate invalid: first mismatch at {m}"),
    };
    Ok(Outcome {
        code: if verification.valid { EXIT_OK } else { EXIT_INVALID_CERTIFICATE },
        command: "verify-cert",
        hash_of: json!({"certificate_input_hash": cert.input_hash}),
        payload: json!(verification),
        text,
    })
}
