//! `jhankel`: compute, certify and verify Hankel determinants of Jacobi-symbol
//! polynomials.
//!
//! Exit status is 0 on success, 1 when a computed result contradicts a proved
//! statement, and 2 for usage or validation errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jacobi_hankel::certificates::CertificateKind;
use jacobi_hankel::hankel::h_one;
use jacobi_hankel::spectral::{spectrum_check_with, DEFAULT_COFACTOR_BOUND};
use jacobi_hankel::suite::{run_all, run_suite, CheckOutcome, Suite, SuiteConfig};
use jacobi_hankel::{
    arith::is_prime, build_hankel, closed_form, composite_certificate, det_direct, det_interp,
    verify_certificate, Degree, IntPoly, OddPrime,
};
use serde_json::{json, Value};

const THREADS_VAR: &str = "JHANKEL_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "jhankel",
    version,
    about = "Exact Hankel determinants of Jacobi-symbol polynomials"
)]
struct Cli {
    /// Also write the JSON report to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Interp,
    Closed,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute H_n(x) for odd n.
    Compute {
        #[arg(short = 'n', long = "n")]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Interp)]
        method: Method,
    },
    /// Emit and check a vanishing certificate for an odd composite n.
    Certify {
        #[arg(short = 'n', long = "n")]
        n: u64,
    },
    /// Determinant, spectrum and eigenvector report for an odd prime p.
    Spectrum {
        #[arg(short = 'p', long = "p")]
        p: u64,
        /// Compute all p^2 cofactors of A_p only when p is at most this.
        #[arg(long, default_value_t = DEFAULT_COFACTOR_BOUND)]
        cofactor_bound: u64,
    },
    /// Run the verification suites up to a bound.
    Verify {
        #[arg(long = "max-p", default_value_t = 101)]
        max_p: u64,
        /// Restrict to one suite; repeatable.
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        /// Tolerance for the floating-point spot checks.
        #[arg(long = "tol", default_value_t = 1e-9)]
        tolerance: f64,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: jacobi_hankel::Error| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

enum Failure {
    Usage(String),
    Falsified(String),
}

impl From<jacobi_hankel::Error> for Failure {
    fn from(e: jacobi_hankel::Error) -> Self {
        match e {
            jacobi_hankel::Error::Falsified(msg) => Failure::Falsified(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Falsified(msg)) => {
            eprintln!("falsified: {msg}");
            return ExitCode::from(1);
        }
    };
    let body = match cli.format {
        Format::Text => report.text.clone(),
        Format::Json => serde_json::to_string_pretty(&report.json).expect("JSON value"),
    };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    if let Err(e) = writeln!(io::stdout().lock(), "{body}") {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(path) = &cli.out {
        let body = serde_json::to_string_pretty(&report.json).expect("JSON value");
        if let Err(e) = fs::write(path, body + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))?;
    if threads == 0 {
        return Err(format!("{THREADS_VAR} must be positive"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(command: &Command) -> Result<Report, Failure> {
    match *command {
        Command::Compute { n, method } => compute(n, method),
        Command::Certify { n } => certify(n),
        Command::Spectrum { p, cofactor_bound } => spectrum(p, cofactor_bound),
        Command::Verify {
            max_p,
            ref suites,
            seed,
            tolerance,
        } => verify(max_p, suites, seed, tolerance),
    }
}

fn poly_json(h: &IntPoly) -> Value {
    json!({ "text": h.to_string(), "coefficients": h.to_json() })
}

fn compute(n: u64, method: Method) -> Result<Report, Failure> {
    if n.is_multiple_of(2) {
        return Err(Failure::Usage(format!("n must be odd, got {n}")));
    }
    if n == 1 {
        eprintln!("warning: n = 1 lies outside the theorem's range; H_1(x) = 1 trivially");
        let h = h_one();
        return Ok(Report {
            text: format!("H_1(x) = {h}"),
            json: json!({ "n": 1, "method": "trivial", "determinant": poly_json(&h) }),
            ok: true,
        });
    }
    let prime = is_prime(n);
    if method == Method::Closed && !prime {
        return Err(Failure::Usage(format!(
            "the closed form needs a prime n; {n} is composite (try `certify -n {n}`)"
        )));
    }

    let mut results: Vec<(&str, IntPoly)> = Vec::new();
    if matches!(method, Method::Direct | Method::All) {
        results.push(("direct", det_direct(&build_hankel(n)?)));
    }
    if matches!(method, Method::Interp | Method::All) {
        results.push(("interp", det_interp(n)?));
    }
    if matches!(method, Method::Closed | Method::All) && prime {
        results.push(("closed", closed_form(n)?));
    }

    let h = results[0].1.clone();
    let agree = results.iter().all(|(_, r)| *r == h);
    let mut text = format!("H_{n}(x) = {h}");
    let mut json = json!({
        "n": n,
        "prime": prime,
        "method": format!("{method:?}").to_lowercase(),
        "determinant": poly_json(&h),
    });
    let mut ok = agree;

    if method == Method::All {
        let mut names: Vec<&str> = results.iter().map(|(m, _)| *m).collect();
        if !prime {
            let cert = composite_certificate(n)?;
            let verified = verify_certificate(&cert)?;
            ok &= verified && h.degree() == Degree::MinusInfinity;
            names.push("certificate");
            json["certificate_verified"] = json!(verified);
        }
        let verdict = if ok { "agree" } else { "DISAGREE" };
        text.push_str(&format!("\n{}: {verdict}", names.join(" = ")));
        for (m, r) in &results {
            json["results"][*m] = poly_json(r);
        }
    }
    json["agree"] = json!(ok);
    if !ok {
        for (m, r) in &results {
            text.push_str(&format!("\n  {m}: {r}"));
        }
    }
    Ok(Report { text, json, ok })
}

fn certify(n: u64) -> Result<Report, Failure> {
    let cert = composite_certificate(n)?;
    let verified = verify_certificate(&cert)?;
    let case = match cert.kind {
        CertificateKind::Square { m } => format!("SquareCase m={m}"),
        CertificateKind::OddPower { p, e, q } => format!("OddPowerCase p={p}, e={e}, q={q}"),
    };
    let cert_json = cert.to_json();
    let text = format!(
        "n={n}: {case}, verified={verified}\n{}",
        serde_json::to_string_pretty(&cert_json).expect("JSON value")
    );
    Ok(Report {
        text,
        json: json!({ "certificate": cert_json, "verified": verified }),
        ok: verified,
    })
}

fn spectrum(p: u64, cofactor_bound: u64) -> Result<Report, Failure> {
    let p = OddPrime::new(p)?;
    let report = spectrum_check_with(p, cofactor_bound);
    let yes_no = |b: bool| if b { "yes" } else { "NO" };
    let mut text = format!(
        "p = {p}\n\
         det C_p = {} (expected {}): {}\n\
         det C_p = (-1/p) det B_p: {}\n\
         char poly B_p = {}: {}\n\
         B_p^T = (-1/p) B_p: {}\n\
         w1 relation: {}\n\
         w2 relation: {}",
        report.det_c,
        report.expected_det_c,
        yes_no(report.det_c_ok()),
        yes_no(report.exchange_relation()),
        report.char_poly_b,
        yes_no(report.char_poly_ok()),
        yes_no(report.transpose_relation),
        yes_no(report.w1_ok),
        yes_no(report.w2_ok),
    );
    match report.cofactors_equal {
        Some(eq) => text.push_str(&format!("\ncofactors of A_p all equal: {}", yes_no(eq))),
        None => text.push_str(&format!(
            "\ncofactors of A_p: skipped (p > {cofactor_bound})"
        )),
    }
    if let (Some(plus), Some(minus)) = (&report.chapman_plus, &report.chapman_minus) {
        text.push_str(&format!("\nChapman determinants: {plus}, {minus}"));
    }
    text.push_str(&format!(
        "\nresidues in 1..=(p-1)/2: {}",
        report.lower_half_residues
    ));
    let ok = report.passed();
    text.push_str(&format!("\nverdict: {}", if ok { "pass" } else { "FAIL" }));
    let mut json = serde_json::to_value(&report).expect("report serializes");
    json["passed"] = json!(ok);
    Ok(Report { text, json, ok })
}

fn verify(max_p: u64, suites: &[Suite], seed: u64, tolerance: f64) -> Result<Report, Failure> {
    if max_p < 3 {
        return Err(Failure::Usage(format!(
            "--max-p must be at least 3, got {max_p}"
        )));
    }
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Failure::Usage(format!(
            "--tol must be positive, got {tolerance}"
        )));
    }
    let config = SuiteConfig {
        max_p,
        seed,
        tolerance,
        ..SuiteConfig::default()
    };
    let outcomes: Vec<CheckOutcome> = if suites.is_empty() {
        run_all(&config)
    } else {
        suites.iter().flat_map(|&s| run_suite(s, &config)).collect()
    };
    let failures = outcomes.iter().filter(|o| o.is_failure()).count();
    let warnings = outcomes.iter().filter(|o| !o.passed && o.advisory).count();
    let mut text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    text.push_str(&format!(
        "{} checks, {failures} failed, {warnings} advisory warning(s)",
        outcomes.len()
    ));
    let json = json!({
        "config": config,
        "outcomes": outcomes,
        "failures": failures,
        "warnings": warnings,
    });
    Ok(Report {
        text,
        json,
        ok: failures == 0,
    })
}
