//! Command-line front end: parse domain/spectrum JSON files, dispatch to
//! the library, and stream JSON or CSV results.
//!
//! Exit codes: 0 success (including negative verdicts), 1 precondition or
//! input failure (structured error on stderr), 2 search budget exhausted
//! (partial results on stdout), 64 usage errors, 65 malformed JSON.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use crate::domain::{DiscreteSampleSet, IntervalUnion, PeriodicSet};
use crate::error::Error;
use crate::expoly::{plot_csv, ExpPolynomial};
use crate::json as schema;
use crate::newton::{extend_ap_in_spectrum, verify_tiling};
use crate::rational::{parse_rational, Rational};
use crate::search::{fuglede_crosscheck, search_spectra, verify_spectrum, SearchConfig};
use crate::structure::{decompose, discover_period, landau_counts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_PRECONDITION: i32 = 1;
pub const EXIT_BUDGET_EXHAUSTED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_BAD_JSON: i32 = 65;

#[derive(Parser)]
#[command(
    name = "spectral-workbench",
    version,
    about = "Exact workbench for spectra and tilings of rational interval unions"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Translate and rescale a domain to leftmost point 0 and measure 1.
    Normalize {
        #[arg(long)]
        domain: PathBuf,
    },
    /// Numerically scan a real range for zeros of the domain's transform.
    Zeros {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        range: Vec<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Exactly verify that a periodic set is a spectrum for a domain.
    VerifySpectrum {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        spectrum: PathBuf,
    },
    /// Check that the domain tiles the line at level d.
    VerifyTiling {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        d: u64,
    },
    /// Extend an arithmetic progression through a sampled spectrum window.
    ApExtend {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        range: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Rank of the embedded span of a sampled spectrum window.
    Rank {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        range: Vec<String>,
    },
    /// Nominate candidate periods of a sampled window by pigeonhole.
    DiscoverPeriod {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        range: Vec<String>,
        /// Window length L; repeat the flag to try several.
        #[arg(long, required = true)]
        window: Vec<String>,
    },
    /// Sliding-window count extremes and mean density of a sampled window.
    Density {
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        range: Vec<String>,
        /// Window length R.
        #[arg(long)]
        window: String,
    },
    /// Fiber decomposition of a d-tiling domain.
    Decompose {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        d: u64,
    },
    /// Search for all periodic spectra up to a period bound.
    Search {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        d_max: u64,
        /// Offset denominator bound (default: d times the endpoint lcm).
        #[arg(long)]
        denom: Option<u64>,
        /// Node budget per period shard.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        /// Widen per-pair shift checks to |k| ≤ 50.
        #[arg(long)]
        paranoid: bool,
    },
    /// Tiling-vs-spectrum table for d = 1..d_max.
    Crosscheck {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        d_max: u64,
    },
    /// CSV samples of the transform along a real range.
    PlotData {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        range: Vec<f64>,
        #[arg(long, default_value_t = 512)]
        samples: usize,
    },
}

/// A handler either finishes with an exit code or fails with a code and a
/// message for the structured error channel.
type CmdResult = std::result::Result<i32, (i32, String)>;

fn classify(e: Error) -> (i32, String) {
    let code = match e {
        Error::Json(_) => EXIT_BAD_JSON,
        _ => EXIT_FAILED_PRECONDITION,
    };
    (code, e.to_string())
}

fn load_domain(path: &PathBuf) -> std::result::Result<IntervalUnion, (i32, String)> {
    let text = fs::read_to_string(path).map_err(|e| {
        (
            EXIT_FAILED_PRECONDITION,
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    schema::parse_domain(&text).map_err(classify)
}

fn load_spectrum(path: &PathBuf) -> std::result::Result<PeriodicSet, (i32, String)> {
    let text = fs::read_to_string(path).map_err(|e| {
        (
            EXIT_FAILED_PRECONDITION,
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    schema::parse_periodic_set(&text).map_err(classify)
}

/// Rationals arriving on the command line itself (not in JSON files) are
/// usage errors when malformed.
fn arg_rational(s: &str) -> std::result::Result<Rational, (i32, String)> {
    parse_rational(s).map_err(|_| (EXIT_USAGE, format!("not a rational: {s:?}")))
}

fn sample_window(
    spectrum: &PeriodicSet,
    range: &[String],
) -> std::result::Result<(DiscreteSampleSet, Rational, Rational), (i32, String)> {
    let lo = arg_rational(&range[0])?;
    let hi = arg_rational(&range[1])?;
    let sample = spectrum.window(&lo, &hi).map_err(classify)?;
    Ok((sample, lo, hi))
}

fn emit(out: &mut dyn Write, value: &serde_json::Value) -> i32 {
    let _ = writeln!(out, "{value}");
    EXIT_OK
}

pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.verb, out) {
        Ok(code) => code,
        Err((code, message)) => {
            let _ = writeln!(err, "{}", json!({ "error": message }));
            code
        }
    }
}

fn dispatch(verb: Verb, out: &mut dyn Write) -> CmdResult {
    match verb {
        Verb::Normalize { domain } => {
            let raw = load_domain(&domain)?;
            let (normalized, map) = raw.normalize();
            let payload = json!({
                "domain": schema::domain_json(&normalized),
                "scale": crate::rational::format_rational(&map.scale),
                "shift": crate::rational::format_rational(&map.shift),
            });
            Ok(emit(out, &payload))
        }
        Verb::Zeros { domain, range, tol } => {
            let domain = load_domain(&domain)?;
            let poly = ExpPolynomial::from_domain(&domain).map_err(classify)?;
            let zeros = poly
                .scan_zeros_numeric(range[0], range[1], tol)
                .map_err(classify)?;
            Ok(emit(
                out,
                &json!({ "zeros": zeros, "tol": tol, "method": "numeric" }),
            ))
        }
        Verb::VerifySpectrum { domain, spectrum } => {
            let domain = load_domain(&domain)?;
            let spectrum = load_spectrum(&spectrum)?;
            let verdict = verify_spectrum(&domain, &spectrum).map_err(classify)?;
            Ok(emit(out, &schema::spectrum_verdict_json(&verdict)))
        }
        Verb::VerifyTiling { domain, d } => {
            let domain = load_domain(&domain)?;
            let tiles = verify_tiling(&domain, d).map_err(classify)?;
            Ok(emit(
                out,
                &json!({ "d": d, "tiles": tiles, "method": "exact" }),
            ))
        }
        Verb::ApExtend {
            domain,
            spectrum,
            range,
            a,
            d,
        } => {
            let domain = load_domain(&domain)?;
            let spectrum = load_spectrum(&spectrum)?;
            let (sample, _, _) = sample_window(&spectrum, &range)?;
            let a = arg_rational(&a)?;
            let d = arg_rational(&d)?;
            let verdict = extend_ap_in_spectrum(&domain, &sample, &a, &d).map_err(classify)?;
            Ok(emit(out, &schema::ap_verdict_json(&verdict)))
        }
        Verb::Rank {
            domain,
            spectrum,
            range,
        } => {
            let domain = load_domain(&domain)?;
            let spectrum = load_spectrum(&spectrum)?;
            let (sample, _, _) = sample_window(&spectrum, &range)?;
            let basis = crate::embedding::rank_span(&domain, &sample).map_err(classify)?;
            Ok(emit(out, &schema::rank_json(&basis)))
        }
        Verb::DiscoverPeriod {
            domain,
            spectrum,
            range,
            window,
        } => {
            let domain = load_domain(&domain)?;
            let spectrum = load_spectrum(&spectrum)?;
            let (sample, _, _) = sample_window(&spectrum, &range)?;
            let lengths = window
                .iter()
                .map(|w| arg_rational(w))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let candidates = discover_period(&domain, &sample, &lengths).map_err(classify)?;
            let payload = json!({
                "candidates": candidates
                    .iter()
                    .map(crate::rational::format_rational)
                    .collect::<Vec<_>>(),
                "method": "exact",
            });
            Ok(emit(out, &payload))
        }
        Verb::Density {
            spectrum,
            range,
            window,
        } => {
            let spectrum = load_spectrum(&spectrum)?;
            let (sample, _, _) = sample_window(&spectrum, &range)?;
            let r = arg_rational(&window)?;
            let report = landau_counts(&sample, &r).map_err(classify)?;
            let _ = write!(out, "{}", report.csv());
            Ok(EXIT_OK)
        }
        Verb::Decompose { domain, d } => {
            let domain = load_domain(&domain)?;
            let dec = decompose(&domain, d).map_err(classify)?;
            Ok(emit(out, &schema::decomposition_json(&dec)))
        }
        Verb::Search {
            domain,
            d_max,
            denom,
            budget,
            workers,
            paranoid,
        } => {
            let domain = load_domain(&domain)?;
            let workers = workers.or_else(|| {
                std::env::var("SPECTRAL_WORKBENCH_WORKERS")
                    .ok()
                    .and_then(|s| s.parse().ok())
            });
            let mut cfg = SearchConfig::new(d_max);
            cfg.denominator_bound = denom;
            cfg.paranoid = paranoid;
            cfg.workers = workers;
            if let Some(b) = budget {
                cfg.node_budget = b;
            }
            let outcome = search_spectra(&domain, &cfg).map_err(classify)?;
            let code = if outcome.exhausted {
                EXIT_BUDGET_EXHAUSTED
            } else {
                EXIT_OK
            };
            emit(out, &schema::search_outcome_json(&outcome));
            Ok(code)
        }
        Verb::Crosscheck { domain, d_max } => {
            let domain = load_domain(&domain)?;
            let rows = fuglede_crosscheck(&domain, d_max).map_err(classify)?;
            Ok(emit(out, &schema::crosscheck_json(&rows)))
        }
        Verb::PlotData {
            domain,
            range,
            samples,
        } => {
            let domain = load_domain(&domain)?;
            let csv = plot_csv(&domain, range[0], range[1], samples).map_err(classify)?;
            let _ = write!(out, "{csv}");
            Ok(EXIT_OK)
        }
    }
}
