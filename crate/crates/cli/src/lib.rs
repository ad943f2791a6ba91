//! Command-line front end: parses arguments, runs the requested computation
//! and renders a [`Report`].
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
//! arguments or inputs the computations reject.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homkit_core::complex::ChainComplex;
use homkit_core::intdyn::{
    build_sigma, hk_check, homology_bruteforce, homology_closed_form, parse_sigma, torsion_ktheory_e2,
    torsion_ktheory_kunneth, truncation_stability, DEFAULT_MAX_N,
};
use homkit_core::numfield::{
    build_profile, finite_model_limit_check, groupoid_homology, ring_cstar_ktheory, tfg_report, MuSource, Poly,
};
use homkit_core::report::{serialize, Check, Format, Report, ReportValue};
use homkit_core::verify::{verify_all, DEFAULT_SEED};

pub const MAX_N_VAR: &str = "HOMKIT_MAX_N";

/// Degrees beyond the field degree covered by the finite-model comparison.
const MODEL_DEPTH: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "homkit", version, about = "Exact groupoid homology and K-theory invariants")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json, global = true)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Homology and K-theory for the number field Q[x]/(f).
    Numberfield {
        /// Irreducible integer polynomial, e.g. x^3-2.
        #[arg(long)]
        poly: String,
        /// Order of the group of roots of unity, when it cannot be computed.
        #[arg(long)]
        mu: Option<u64>,
        /// Highest homology degree to report (default: field degree + 4).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Homology and torsion K-theory for a set of pairwise coprime integers.
    Intdyn {
        /// Comma-separated generators, e.g. 3,5,7.
        #[arg(long)]
        sigma: String,
        /// Treat the generators as a finite prefix of an infinite family.
        #[arg(long)]
        infinite: bool,
        /// Highest homology degree to report (default: N + 2, or 4 for infinite families).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Recompute the homology from chain complexes and compare.
        #[arg(long)]
        brute_force: bool,
        /// Compare parity-summed homology with the torsion K-theory.
        #[arg(long)]
        hk: bool,
    },
    /// Operations on chain complexes given as JSON.
    Complex {
        #[command(subcommand)]
        action: ComplexAction,
    },
    /// Seeded property suites.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
}

#[derive(Debug, Subcommand)]
enum ComplexAction {
    /// Homology of the complex in a JSON file.
    Homology {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyAction {
    /// Run every suite.
    All {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Runs the command line `argv` (program name first) with the brute-force
/// bound read from the environment.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let max_n = match std::env::var(MAX_N_VAR) {
        Err(_) => DEFAULT_MAX_N,
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) => n,
            Err(_) => return Outcome::input_error(format!("{MAX_N_VAR} must be a non-negative integer, got {v:?}")),
        },
    };
    run_with_bound(argv, max_n)
}

pub fn run_with_bound<I, T>(argv: I, max_n: usize) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let report = match cli.command {
        Command::Numberfield { poly, mu, max_degree } => numberfield(&poly, mu, max_degree),
        Command::Intdyn {
            sigma,
            infinite,
            max_degree,
            brute_force,
            hk,
        } => intdyn(&sigma, infinite, max_degree, brute_force, hk, max_n),
        Command::Complex {
            action: ComplexAction::Homology { input },
        } => complex_homology(&input),
        Command::Verify {
            action: VerifyAction::All { seed },
        } => Ok(verify(seed)),
    };
    match report {
        Ok(r) => Outcome {
            code: r.exit_code(),
            stdout: serialize(&r, format),
            stderr: String::new(),
        },
        Err(msg) => Outcome::input_error(msg),
    }
}

fn numberfield(poly: &str, mu: Option<u64>, max_degree: Option<usize>) -> Result<Report, String> {
    let f: Poly = poly.parse().map_err(|e| format!("{e}"))?;
    let profile = build_profile(&f, mu).map_err(|e| e.to_string())?;
    let d = profile.degree();
    let n_max = max_degree.unwrap_or(d + MODEL_DEPTH);

    let mut report = Report::new(json!({
        "command": "numberfield",
        "poly": f.to_string(),
        "mu": mu,
        "max_degree": n_max,
    }));
    report.result("profile", ReportValue::Json(profile.to_json()));
    report.result("homology", ReportValue::Graded(groupoid_homology(&profile, n_max)));
    report.result("full_group", ReportValue::Json(tfg_report(&profile).to_json()));
    report.result(
        "ring_ktheory",
        ReportValue::Json(ring_cstar_ktheory(&profile).to_json()),
    );

    let model_top = n_max.min(d + MODEL_DEPTH);
    let limits = finite_model_limit_check(&profile, model_top).map_err(|e| e.to_string())?;
    for c in limits {
        let models: Vec<String> = c.models.iter().map(ToString::to_string).collect();
        report.check(
            Check::with_outcome(
                format!("finite models converge in degree {}", c.degree),
                c.pass,
                c.closed.to_string(),
                models.join(" | "),
            )
            .detail("free rank of Gamma growing over three consecutive values"),
        );
    }
    if profile.mu_source() == MuSource::Asserted {
        report.warn(format!(
            "the order {} of the roots of unity was supplied and is not verified",
            profile.mu_order()
        ));
    }
    if d > 3 {
        report.warn(format!("irreducibility of {f} is assumed, not checked"));
    }
    Ok(report)
}

fn intdyn(
    sigma: &str,
    infinite: bool,
    max_degree: Option<usize>,
    brute_force: bool,
    hk: bool,
    max_n: usize,
) -> Result<Report, String> {
    let values = parse_sigma(sigma).map_err(|e| e.to_string())?;
    let profile = build_sigma(&values, infinite).map_err(|e| e.to_string())?;
    let n_max = max_degree.unwrap_or(if infinite { 4 } else { values.len() + 2 });

    let mut report = Report::new(json!({
        "command": "intdyn",
        "sigma": values,
        "infinite": infinite,
        "max_degree": n_max,
        "brute_force": brute_force,
        "hk": hk,
    }));
    report.result("sigma", ReportValue::Json(profile.to_json()));
    let closed = homology_closed_form(&profile, n_max);
    report.result("homology", ReportValue::Graded(closed.clone()));

    if infinite {
        if profile.g_provisional() {
            report.warn(format!(
                "g = {} is read off a finite prefix and may decrease",
                profile.g()
            ));
        }
        if brute_force || hk {
            report.warn("--brute-force and --hk need a finite generator set and were skipped");
        }
        let mut sorted = profile.sigma().to_vec();
        sorted.sort_unstable();
        let prefixes: Vec<Vec<u64>> = (1..=sorted.len()).map(|k| sorted[..k].to_vec()).collect();
        let checks = truncation_stability(&prefixes, n_max).map_err(|e| e.to_string())?;
        report.checks(checks);
        return Ok(report);
    }

    let e2 = torsion_ktheory_e2(&profile).map_err(|e| e.to_string())?;
    let kunneth = torsion_ktheory_kunneth(&profile).map_err(|e| e.to_string())?;
    report.result("torsion_ktheory", ReportValue::Pair(e2));
    report.result("torsion_ktheory_kunneth", ReportValue::Pair(kunneth));

    if brute_force {
        let brute = homology_bruteforce(&profile, n_max, max_n).map_err(|e| e.to_string())?;
        report.check(Check::with_outcome(
            "closed-form homology = brute force",
            closed == brute,
            &closed,
            &brute,
        ));
        report.result("homology_bruteforce", ReportValue::Graded(brute));
    }
    if hk {
        let r = hk_check(&profile).map_err(|e| e.to_string())?;
        report.checks(r.checks);
        for w in r.warnings {
            report.warn(w);
        }
    }
    Ok(report)
}

fn complex_homology(path: &PathBuf) -> Result<Report, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("{} is not valid JSON: {e}", path.display()))?;
    let complex = ChainComplex::from_json(&value).map_err(|e| e.to_string())?;
    let mut report = Report::new(json!({
        "command": "complex homology",
        "input": path.display().to_string(),
    }));
    report.result("ring", ReportValue::Text(complex.ring().to_string()));
    report.result("homology", ReportValue::Graded(complex.homology()));
    report.result(
        "euler_characteristic",
        ReportValue::Json(json!(complex.euler_characteristic())),
    );
    Ok(report)
}

fn verify(seed: u64) -> Report {
    let outcome = verify_all(seed);
    let mut report = Report::new(json!({"command": "verify all", "seed": seed}));
    let passed = outcome.checks.iter().filter(|c| c.pass).count();
    report.result("suites", ReportValue::Count(outcome.checks.len() as u64));
    report.result("passed", ReportValue::Count(passed as u64));
    report.checks(outcome.checks);
    for n in outcome.notes {
        report.warn(n);
    }
    report
}
