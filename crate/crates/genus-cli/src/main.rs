//! Command-line interface for the twisted elliptic-genus verifier.
//!
//! Exit codes: 0 all checks pass, 1 at least one verification failure,
//! 2 usage or configuration error.

use clap::{Args, Parser, Subcommand};
use genus_core::kernel::{GradedElement, PuiseuxQSeries, VariableTable};
use genus_core::verifier::{
    self, case_for_theorem, run_suite, verify_theorem, Profile, SuiteOptions, VerificationReport,
};
use genus_core::{bundles, e8, modforms, numeric, theta};
use num_complex::Complex64;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "genus", about = "Exact verification of twisted elliptic-genus identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Truncation order in whole powers of q.
    #[arg(long)]
    q_order: Option<u32>,
    /// Degree cap of the graded polynomial ring.
    #[arg(long)]
    degree_cap: Option<u16>,
    /// Active formal variables per E8 factor (4 or 8).
    #[arg(long)]
    e8_vars: Option<u8>,
    /// Write a JSON report to this path.
    #[arg(long)]
    json: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification profile (quick, full or deep).
    Suite {
        #[arg(long, default_value = "quick")]
        profile: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Verify one theorem case by id (T3.3 ... T4.9, X9, AGW).
    Theorem {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Print q-coefficients of a named object as readable polynomials.
    Expand {
        /// theta1|theta2|theta3|qE|thetaV|thetaVpair|eisenstein:k|case:<id>
        #[arg(long)]
        object: String,
        #[arg(long, default_value_t = 4)]
        q_order: u32,
        #[arg(long, default_value_t = 8)]
        degree_cap: u16,
        #[arg(long)]
        json: Option<String>,
    },
    /// Numeric checks of the theta/E2 transformation laws.
    Numeric {
        #[arg(long, default_value = "theta-laws")]
        check: String,
        /// tau as RE+IMi, e.g. 0.25+1.3i
        #[arg(long, default_value = "0.25+1.3i")]
        tau: String,
        /// v as RE+IMi
        #[arg(long, default_value = "0.31+0.04i")]
        v: String,
        #[arg(long, default_value_t = 40)]
        terms: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: Option<String>,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    // RE+IMi / RE-IMi, with an optional leading sign on RE
    let body = s.trim().trim_end_matches('i');
    if body.len() == s.trim().len() {
        // no trailing i: pure real
        return body.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|e| e.to_string());
    }
    let split = body
        .char_indices()
        .skip(1)
        .find(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .ok_or_else(|| format!("expected RE+IMi, got `{s}`"))?;
    let re: f64 = body[..split].parse().map_err(|e| format!("bad real part: {e}"))?;
    let im: f64 = body[split..].parse().map_err(|e| format!("bad imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

fn write_json(path: &Option<String>, value: &impl serde::Serialize) -> Result<(), String> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        std::fs::write(p, text).map_err(|e| format!("cannot write {p}: {e}"))?;
    }
    Ok(())
}

fn print_report(r: &VerificationReport) {
    let status = if r.pass() { "PASS" } else { "FAIL" };
    println!(
        "[{status}] {} ({}) weight {} residual_zero={} negative_control_ok={} ({} ms)",
        r.case,
        r.theorem,
        r.weight_used,
        r.residual_zero,
        r.negative_control_failed_as_expected,
        r.elapsed_ms
    );
    for row in &r.identity_table {
        println!("    q^{}: coefficient {} matched={}", row.q, row.display, row.matched);
    }
    for n in &r.notes {
        println!("    note: {n}");
    }
}

fn cmd_suite(profile: &str, opts: &CommonOpts) -> Result<bool, String> {
    let profile = Profile::parse(profile)
        .ok_or_else(|| format!("unknown profile `{profile}` (quick|full|deep)"))?;
    let suite = run_suite(
        profile,
        SuiteOptions { q_order: opts.q_order, degree_cap: opts.degree_cap, e8_vars: opts.e8_vars },
    );
    for r in &suite.reports {
        print_report(r);
    }
    for (k, p) in &suite.crosschecks {
        println!("[{}] theta-quotient crosscheck k={k}", if *p { "PASS" } else { "FAIL" });
    }
    println!("[{}] AGW 12-dim identity", if suite.agw_pass { "PASS" } else { "FAIL" });
    println!(
        "[{}] Eisenstein golden files",
        if suite.eisenstein_golden_pass { "PASS" } else { "FAIL" }
    );
    println!(
        "[{}] numeric theta laws (3 samples)",
        if suite.numeric_laws_pass { "PASS" } else { "FAIL" }
    );
    println!("suite: {} ({} ms)", if suite.all_pass { "ALL PASS" } else { "FAILURES" }, suite.elapsed_ms);
    write_json(&opts.json, &suite.to_json())?;
    Ok(suite.all_pass)
}

fn cmd_theorem(id: &str, opts: &CommonOpts) -> Result<bool, String> {
    if id == "AGW" {
        let r = bundles::agw_check(opts.degree_cap.unwrap_or(12));
        println!(
            "[{}] AGW 12-dim identity{}",
            if r.pass { "PASS" } else { "FAIL" },
            r.mismatch.as_deref().map(|m| format!(": {m}")).unwrap_or_default()
        );
        return Ok(r.pass);
    }
    let mut case =
        case_for_theorem(id).ok_or_else(|| format!("unknown theorem id `{id}`"))?;
    if let Some(n) = opts.q_order {
        case.q_order = n;
    }
    if let Some(d) = opts.degree_cap {
        case.degree_cap = Some(d);
    }
    if let Some(v) = opts.e8_vars {
        case.e8_vars = v;
    }
    let r = verify_theorem(&case);
    print_report(&r);
    write_json(&opts.json, &r.to_json())?;
    Ok(r.pass())
}

#[derive(serde::Serialize)]
struct ExpandJson {
    object: String,
    q_order: u32,
    degree_cap: u16,
    coefficients: Vec<ExpandCoeff>,
}

#[derive(serde::Serialize)]
struct ExpandCoeff {
    q_eighths: i64,
    value: String,
}

fn expand_series(object: &str, n: u32, cap: u16) -> Result<PuiseuxQSeries, String> {
    let one_var = || -> (Arc<VariableTable>, GradedElement) {
        let t = VariableTable::builder().even("w", 2).build();
        let w = GradedElement::variable_by_name(&t, cap, "w");
        (t, w)
    };
    match object {
        "theta1" | "theta2" | "theta3" | "theta" => {
            let (_, w) = one_var();
            let kind = match object {
                "theta" => theta::ThetaKind::Theta,
                "theta1" => theta::ThetaKind::Theta1,
                "theta2" => theta::ThetaKind::Theta2,
                _ => theta::ThetaKind::Theta3,
            };
            Ok(theta::theta_expansion(kind, &w, n))
        }
        "qE" => {
            let mut b = VariableTable::builder();
            for j in 1..=4 {
                b = b.even(&format!("e{j}"), 2);
            }
            let t = b.build();
            let pairs = (1..=4)
                .map(|j| GradedElement::variable_by_name(&t, cap, &format!("e{j}")))
                .collect();
            let e = bundles::RootBundle::real_from_pairs(&t, cap, pairs, 0);
            Ok(bundles::bundle_series(&bundles::BundleSeries::QE { e: &e }, n))
        }
        "thetaV" | "thetaVpair" => {
            let mut b = VariableTable::builder();
            for l in 1..=8 {
                b = b.even(&format!("y{l}"), 2);
            }
            if object == "thetaVpair" {
                for l in 1..=8 {
                    b = b.even(&format!("z{l}"), 2);
                }
            }
            let t = b.build();
            let mk = |prefix: &str| -> [GradedElement; 8] {
                (1..=8)
                    .map(|l| GradedElement::variable_by_name(&t, cap, &format!("{prefix}{l}")))
                    .collect::<Vec<_>>()
                    .try_into()
                    .unwrap()
            };
            if object == "thetaV" {
                Ok(e8::theta_v(&mk("y"), n))
            } else {
                Ok(e8::theta_v_pair(&mk("y"), &mk("z"), n))
            }
        }
        _ => {
            if let Some(k) = object.strip_prefix("eisenstein:") {
                let k: u32 = k.parse().map_err(|_| format!("bad eisenstein index `{k}`"))?;
                let t = VariableTable::builder().even("w", 2).build();
                return modforms::eisenstein(k, n, &t, cap).map_err(|e| e.to_string());
            }
            if let Some(id) = object.strip_prefix("case:") {
                let mut case =
                    case_for_theorem(id).ok_or_else(|| format!("unknown theorem id `{id}`"))?;
                case.q_order = n;
                let asm = verifier::assemble(&case).map_err(|e| e.to_string())?;
                return Ok(asm.series);
            }
            Err(format!("unknown object `{object}`"))
        }
    }
}

fn cmd_expand(object: &str, n: u32, cap: u16, json: &Option<String>) -> Result<bool, String> {
    let s = expand_series(object, n, cap)?;
    let mut coeffs = Vec::new();
    for (e, c) in s.iter() {
        if e % 8 == 0 {
            println!("q^{}: {}", e / 8, c);
        } else {
            println!("q^({e}/8): {c}");
        }
        coeffs.push(ExpandCoeff { q_eighths: *e, value: c.to_string() });
    }
    write_json(
        json,
        &ExpandJson { object: object.to_string(), q_order: n, degree_cap: cap, coefficients: coeffs },
    )?;
    Ok(true)
}

fn cmd_numeric(
    check: &str,
    tau: &str,
    v: &str,
    terms: u32,
    tol: f64,
    json: &Option<String>,
) -> Result<bool, String> {
    if check != "theta-laws" {
        return Err(format!("unknown check `{check}` (supported: theta-laws)"));
    }
    let tau = parse_complex(tau)?;
    let v = parse_complex(v)?;
    let report = numeric::check_theta_laws(tau, v, terms, tol).map_err(|e| e.to_string())?;
    for law in &report.laws {
        println!(
            "[{}] {}: deviation {:.3e}",
            if law.deviation < tol { "PASS" } else { "FAIL" },
            law.name,
            law.deviation
        );
    }
    println!(
        "max deviation {:.3e} (tol {:.1e}, tail estimate {:.1e}): {}",
        report.max_deviation,
        report.tol,
        report.tail_estimate,
        if report.pass { "PASS" } else { "FAIL" }
    );
    write_json(json, &report)?;
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Suite { profile, opts } => cmd_suite(profile, opts),
        Command::Theorem { id, opts } => cmd_theorem(id, opts),
        Command::Expand { object, q_order, degree_cap, json } => {
            cmd_expand(object, *q_order, *degree_cap, json)
        }
        Command::Numeric { check, tau, v, terms, tol, json } => {
            cmd_numeric(check, tau, v, *terms, *tol, json)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
