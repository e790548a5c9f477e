//! Floating-point checks of the theta and E2 transformation laws.
//!
//! The theta functions are evaluated through their product expansions
//! truncated at `terms` factors; for `Im(tau) >= 0.5` the products converge
//! geometrically in `|q| = e^{-2 pi Im(tau)}`, so the truncation tail after
//! `terms` factors is bounded by a small multiple of `|q|^terms`.  The
//! tolerance passed by callers is expected to sit at least 10x above that
//! estimate; `check_theta_laws` reports a diagnostic instead of silently
//! returning garbage when the parameters cannot converge.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericError {
    #[error("non-convergent parameters: {0}")]
    NonConvergent(String),
}

/// One transformation law, both sides evaluated, and their deviation.
#[derive(Clone, Debug, Serialize)]
pub struct LawResult {
    pub name: String,
    pub deviation: f64,
}

/// Outcome of evaluating every T- and S-law at one `(tau, v)` sample.
#[derive(Clone, Debug, Serialize)]
pub struct TransformationReport {
    pub tau: (f64, f64),
    pub v: (f64, f64),
    pub terms: u32,
    pub tol: f64,
    pub tail_estimate: f64,
    pub laws: Vec<LawResult>,
    pub max_deviation: f64,
    pub pass: bool,
}

fn qtau(tau: Complex64) -> Complex64 {
    (Complex64::i() * 2.0 * PI * tau).exp()
}

/// q^{1/8} = e^{pi i tau / 4}, continuous in tau (not the principal eighth
/// root of q, which would break the T-laws).
fn q_eighth(tau: Complex64) -> Complex64 {
    (Complex64::i() * PI * tau / 4.0).exp()
}

/// q^{1/2} = e^{pi i tau}, continuous in tau.
fn q_half(tau: Complex64) -> Complex64 {
    (Complex64::i() * PI * tau).exp()
}

/// theta(v, tau) = 2 q^{1/8} sin(pi v) prod (1-q^j)(1-a q^j)(1-q^j/a).
pub fn theta(v: Complex64, tau: Complex64, terms: u32) -> Complex64 {
    let q = qtau(tau);
    let a = (Complex64::i() * 2.0 * PI * v).exp();
    let mut p = 2.0 * q_eighth(tau) * (PI * v).sin();
    let mut qj = Complex64::new(1.0, 0.0);
    for _ in 1..=terms {
        qj *= q;
        p *= (1.0 - qj) * (1.0 - a * qj) * (1.0 - qj / a);
    }
    p
}

pub fn theta1(v: Complex64, tau: Complex64, terms: u32) -> Complex64 {
    let q = qtau(tau);
    let a = (Complex64::i() * 2.0 * PI * v).exp();
    let mut p = 2.0 * q_eighth(tau) * (PI * v).cos();
    let mut qj = Complex64::new(1.0, 0.0);
    for _ in 1..=terms {
        qj *= q;
        p *= (1.0 - qj) * (1.0 + a * qj) * (1.0 + qj / a);
    }
    p
}

pub fn theta2(v: Complex64, tau: Complex64, terms: u32) -> Complex64 {
    let q = qtau(tau);
    let a = (Complex64::i() * 2.0 * PI * v).exp();
    let mut p = Complex64::new(1.0, 0.0);
    let mut qj = Complex64::new(1.0, 0.0);
    let mut qjh = q_half(tau); // q^{j-1/2}
    for _ in 1..=terms {
        qj *= q;
        p *= (1.0 - qj) * (1.0 - a * qjh) * (1.0 - qjh / a);
        qjh *= q;
    }
    p
}

pub fn theta3(v: Complex64, tau: Complex64, terms: u32) -> Complex64 {
    let q = qtau(tau);
    let a = (Complex64::i() * 2.0 * PI * v).exp();
    let mut p = Complex64::new(1.0, 0.0);
    let mut qj = Complex64::new(1.0, 0.0);
    let mut qjh = q_half(tau);
    for _ in 1..=terms {
        qj *= q;
        p *= (1.0 - qj) * (1.0 + a * qjh) * (1.0 + qjh / a);
        qjh *= q;
    }
    p
}

/// theta'(v, tau) via the logarithmic derivative of the product expansion.
pub fn theta_prime(v: Complex64, tau: Complex64, terms: u32) -> Complex64 {
    let q = qtau(tau);
    let a = (Complex64::i() * 2.0 * PI * v).exp();
    let mut log_deriv = PI * (PI * v).cos() / (PI * v).sin();
    let mut qj = Complex64::new(1.0, 0.0);
    for _ in 1..=terms {
        qj *= q;
        let inv_a = qj / a / (1.0 - qj / a);
        let plus_a = a * qj / (1.0 - a * qj);
        log_deriv += Complex64::i() * 2.0 * PI * (inv_a - plus_a);
    }
    theta(v, tau, terms) * log_deriv
}

/// theta'(0, tau) = 2 pi q^{1/8} prod (1-q^j)^3.
pub fn theta_prime_zero(tau: Complex64, terms: u32) -> Complex64 {
    let q = qtau(tau);
    let mut p = 2.0 * PI * q_eighth(tau);
    let mut qj = Complex64::new(1.0, 0.0);
    for _ in 1..=terms {
        qj *= q;
        let f = 1.0 - qj;
        p *= f * f * f;
    }
    p
}

/// E2(tau) = 1 - 24 sum sigma_1(n) q^n, partial sum over `terms` terms.
pub fn eisenstein2(tau: Complex64, terms: u32) -> Complex64 {
    let q = qtau(tau);
    let mut s = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=terms as i64 {
        qn *= q;
        let sigma: i64 = (1..=n).filter(|d| n % d == 0).sum();
        s -= 24.0 * sigma as f64 * qn;
    }
    s
}

fn sqrt_tau_over_i(tau: Complex64) -> Complex64 {
    (tau / Complex64::i()).sqrt()
}

/// Evaluate both sides of every T-law (tau -> tau+1) and S-law
/// (tau -> -1/tau) for theta, theta1, theta2, theta3, theta' and E2.
pub fn check_theta_laws(
    tau: Complex64,
    v: Complex64,
    terms: u32,
    tol: f64,
) -> Result<TransformationReport, NumericError> {
    if tau.im < 0.5 {
        return Err(NumericError::NonConvergent(format!(
            "Im(tau) = {} < 0.5; product expansions converge too slowly",
            tau.im
        )));
    }
    let qabs = (-2.0 * PI * tau.im).exp();
    // Geometric tail after `terms` product factors; the constant 100 covers
    // the accumulated factor derivatives at moderate |v|.
    let tail = 100.0 * qabs.powi(terms as i32);
    if tail > tol / 10.0 {
        return Err(NumericError::NonConvergent(format!(
            "tail estimate {tail:.3e} exceeds tol/10 = {:.3e}; raise `terms`",
            tol / 10.0
        )));
    }

    let i = Complex64::i();
    let st = sqrt_tau_over_i(tau);
    let s_tau = -1.0 / tau;
    let gauss = (i * PI * tau * v * v).exp();
    let e14 = (i * PI / 4.0).exp();

    let mut laws: Vec<LawResult> = Vec::new();
    let mut push = |name: &str, lhs: Complex64, rhs: Complex64| {
        laws.push(LawResult { name: name.to_string(), deviation: (lhs - rhs).norm() });
    };

    push("theta_T", theta(v, tau + 1.0, terms), e14 * theta(v, tau, terms));
    push("theta_S", theta(v, s_tau, terms), (1.0 / i) * st * gauss * theta(tau * v, tau, terms));
    push("theta1_T", theta1(v, tau + 1.0, terms), e14 * theta1(v, tau, terms));
    push("theta1_S", theta1(v, s_tau, terms), st * gauss * theta2(tau * v, tau, terms));
    push("theta2_T", theta2(v, tau + 1.0, terms), theta3(v, tau, terms));
    push("theta2_S", theta2(v, s_tau, terms), st * gauss * theta1(tau * v, tau, terms));
    push("theta3_T", theta3(v, tau + 1.0, terms), theta2(v, tau, terms));
    push("theta3_S", theta3(v, s_tau, terms), st * gauss * theta3(tau * v, tau, terms));
    push("theta_prime_T", theta_prime(v, tau + 1.0, terms), e14 * theta_prime(v, tau, terms));
    push(
        "theta_prime_S",
        theta_prime(v, s_tau, terms),
        (1.0 / i)
            * st
            * gauss
            * (i * 2.0 * PI * tau * v * theta(tau * v, tau, terms)
                + tau * theta_prime(tau * v, tau, terms)),
    );
    push(
        "theta_prime0_S",
        theta_prime_zero(s_tau, terms),
        (1.0 / i) * st * tau * theta_prime_zero(tau, terms),
    );
    push("e2_T", eisenstein2(tau + 1.0, terms), eisenstein2(tau, terms));
    push(
        "e2_S",
        eisenstein2(s_tau, terms),
        tau * tau * eisenstein2(tau, terms) - 6.0 * i * tau / PI,
    );

    let max_deviation = laws.iter().map(|l| l.deviation).fold(0.0, f64::max);
    Ok(TransformationReport {
        tau: (tau.re, tau.im),
        v: (v.re, v.im),
        terms,
        tol,
        tail_estimate: tail,
        pass: max_deviation < tol,
        max_deviation,
        laws,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_pass_at_spec_sample() {
        let tau = Complex64::new(0.25, 1.3);
        let v = Complex64::new(0.31, 0.04);
        let r = check_theta_laws(tau, v, 40, 1e-9).unwrap();
        assert!(r.pass, "max deviation {} at {:?}", r.max_deviation, r.laws);
    }

    #[test]
    fn theta2_tplus1_is_theta3() {
        let tau = Complex64::new(0.25, 1.3);
        let v = Complex64::new(0.31, 0.04);
        let d = (theta2(v, tau + 1.0, 40) - theta3(v, tau, 40)).norm();
        assert!(d < 1e-9, "{d}");
    }

    #[test]
    fn e2_s_law() {
        let tau = Complex64::new(0.1, 1.5);
        let lhs = eisenstein2(-1.0 / tau, 60);
        let rhs = tau * tau * eisenstein2(tau, 60) - 6.0 * Complex64::i() * tau / PI;
        assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn rejects_low_imaginary_part() {
        let r = check_theta_laws(Complex64::new(0.0, 0.1), Complex64::new(0.1, 0.0), 40, 1e-9);
        assert!(r.is_err());
    }

    #[test]
    fn jacobi_identity_numeric() {
        let tau = Complex64::new(0.3, 1.1);
        let lhs = theta_prime_zero(tau, 80);
        let z = Complex64::new(0.0, 0.0);
        let rhs = PI * theta1(z, tau, 80) * theta2(z, tau, 80) * theta3(z, tau, 80);
        assert!((lhs - rhs).norm() < 1e-10);
    }
}
