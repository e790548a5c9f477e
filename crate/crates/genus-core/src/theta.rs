//! q-expansions of the four Jacobi theta functions and the per-root quotient
//! factors used by the genus assembly.
//!
//! All formal theta arguments are expressed through a curvature root `w` (a
//! degree-2 graded element); with `E(t) = exp(t)` on nilpotent elements the
//! conventions are
//!
//! ```text
//! sin(pi v) -> (-i/2)(E(w/2) - E(-w/2))      cos(pi v) -> (E(w/2) + E(-w/2))/2
//! e^{2 pi i v} -> E(w)
//! ```
//!
//! Stray factors of pi and i cancel in every quantity the verifier consumes;
//! the odd theta function is exposed only in its `theta/(-i)` normalization
//! and the derivative at zero as `theta'(0,tau)/pi`, so the formal layer never
//! stores pi or i.  The `q^{1/8}` prefactors live in the Puiseux exponent.

use crate::kernel::{GradedElement, PuiseuxQSeries, Scalar, VariableTable, Q_DENOM};
use std::sync::Arc;

/// The four classical Jacobi theta functions.  `Theta` is the odd one with
/// the sine prefactor; the others follow the paper's numbering.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

/// `(E(w/2) - E(-w/2)) / w` as a direct Taylor series, i.e.
/// `sum_{m even} w^m / (2^m (m+1)!)`.
///
/// Built termwise so no degree-shift is needed: dividing a truncated
/// exponential by `w` would lose the top coefficient.
pub(crate) fn sinh_half_ratio(w: &GradedElement) -> GradedElement {
    let table = w.table().clone();
    let cap = w.degree_cap();
    let w2 = w.ring_mul(w);
    let mut out = GradedElement::one(&table, cap);
    let mut term = GradedElement::one(&table, cap);
    let mut m = 0i64;
    loop {
        m += 2;
        // t_m = t_{m-2} * w^2 / (4 m (m+1))
        term = term.ring_mul(&w2).scale(&Scalar::ratio(1, 4 * m * (m + 1)));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
    }
    out
}

/// `E(w/2) + E(-w/2)` (twice the hyperbolic cosine of `w/2`).
pub(crate) fn cosh_half_sum(w: &GradedElement) -> GradedElement {
    let half = w.scale(&Scalar::ratio(1, 2));
    let e = half.exp_nilpotent().expect("curvature root must be nilpotent");
    let em = half.scale(&Scalar::from_int(-1)).exp_nilpotent().unwrap();
    &e + &em
}

/// `E(w/2) - E(-w/2)`.
pub(crate) fn sinh_half_diff(w: &GradedElement) -> GradedElement {
    let half = w.scale(&Scalar::ratio(1, 2));
    let e = half.exp_nilpotent().expect("curvature root must be nilpotent");
    let em = half.scale(&Scalar::from_int(-1)).exp_nilpotent().unwrap();
    &e - &em
}

fn one_series(table: &Arc<VariableTable>, cap: u16, order: i64) -> PuiseuxQSeries {
    PuiseuxQSeries::one(table, cap, order)
}

/// `1 + sign * g * q^{eighths/8}` as a series.
fn linear_factor(
    g: &GradedElement,
    sign: i64,
    eighths: i64,
    order: i64,
) -> PuiseuxQSeries {
    let mut s = one_series(g.table(), g.degree_cap(), order);
    s.set_coeff(eighths, g.scale(&Scalar::from_int(sign)));
    s
}

/// Euler's function `phi(tau) = prod_{n>=1} (1 - q^n)`, truncated at order N.
pub fn euler_phi(table: &Arc<VariableTable>, degree_cap: u16, n: u32) -> PuiseuxQSeries {
    let order = 8 * n as i64;
    let one = GradedElement::one(table, degree_cap);
    let mut out = one_series(table, degree_cap, order);
    for j in 1..=n as i64 {
        out = out.series_mul(&linear_factor(&one, -1, Q_DENOM * j, order));
    }
    out
}

/// Truncated product expansion of a Jacobi theta function of the curvature
/// root `w` (pure degree 2, or zero).
///
/// `Theta` and `Theta1` carry the `q^{1/8}` prefactor; `Theta` is returned in
/// the `theta/(-i)` normalization so every coefficient is rational in `w`:
///
/// ```text
/// theta /(-i) = q^{1/8}(E(w/2)-E(-w/2)) prod (1-q^n)(1-E(w)q^n)(1-E(-w)q^n)
/// theta1      = q^{1/8}(E(w/2)+E(-w/2)) prod (1-q^n)(1+E(w)q^n)(1+E(-w)q^n)
/// theta2      = prod (1-q^n)(1-E(w)q^{n-1/2})(1-E(-w)q^{n-1/2})
/// theta3      = prod (1-q^n)(1+E(w)q^{n-1/2})(1+E(-w)q^{n-1/2})
/// ```
pub fn theta_expansion(kind: ThetaKind, w: &GradedElement, n: u32) -> PuiseuxQSeries {
    let table = w.table().clone();
    let cap = w.degree_cap();
    let order = 8 * n as i64;
    let one = GradedElement::one(&table, cap);
    let ew = w.exp_nilpotent().expect("curvature root must be nilpotent");
    let emw = w.scale(&Scalar::from_int(-1)).exp_nilpotent().unwrap();

    let (prefactor, sign, half_shift) = match kind {
        ThetaKind::Theta => (Some(sinh_half_diff(w)), -1i64, 0),
        ThetaKind::Theta1 => (Some(cosh_half_sum(w)), 1, 0),
        ThetaKind::Theta2 => (None, -1, 4),
        ThetaKind::Theta3 => (None, 1, 4),
    };

    let mut out = match prefactor {
        Some(p) => {
            PuiseuxQSeries::from_graded(p, order).series_mul(&PuiseuxQSeries::q_power(
                &table, cap, order, 1,
            ))
        }
        None => one_series(&table, cap, order),
    };
    for j in 1..=n as i64 {
        let e = Q_DENOM * j - half_shift;
        out = out.series_mul(&linear_factor(&one, -1, Q_DENOM * j, order));
        out = out.series_mul(&linear_factor(&ew, sign, e, order));
        out = out.series_mul(&linear_factor(&emw, sign, e, order));
    }
    out
}

/// `theta'(0,tau)/pi = 2 q^{1/8} prod (1-q^n)^3`.
pub fn theta_prime_zero_normalized(
    table: &Arc<VariableTable>,
    degree_cap: u16,
    n: u32,
) -> PuiseuxQSeries {
    let order = 8 * n as i64;
    let phi = euler_phi(table, degree_cap, n);
    let phi3 = phi.series_mul(&phi).series_mul(&phi);
    phi3.scale(&Scalar::from_int(2)).series_mul(&PuiseuxQSeries::q_power(table, degree_cap, order, 1))
}

/// The pi-free per-root factor `2 x theta'(0,tau)/theta(x,tau)`:
///
/// ```text
/// 2w/(E(w/2)-E(-w/2)) * prod (1-q^n)^2 / ((1-E(w)q^n)(1-E(-w)q^n))
/// ```
pub fn witten_factor(w: &GradedElement, n: u32) -> PuiseuxQSeries {
    let table = w.table().clone();
    let cap = w.degree_cap();
    let order = 8 * n as i64;
    let one = GradedElement::one(&table, cap);
    let ew = w.exp_nilpotent().expect("curvature root must be nilpotent");
    let emw = w.scale(&Scalar::from_int(-1)).exp_nilpotent().unwrap();

    let head = sinh_half_ratio(w)
        .inverse_unit()
        .expect("sinh ratio is a unit")
        .scale(&Scalar::from_int(2));
    let mut out = PuiseuxQSeries::from_graded(head, order);
    for j in 1..=n as i64 {
        let e = Q_DENOM * j;
        let num = linear_factor(&one, -1, e, order);
        out = out.series_mul(&num).series_mul(&num);
        let den = linear_factor(&ew, -1, e, order).series_mul(&linear_factor(&emw, -1, e, order));
        out = out.series_mul(&den.series_inv().expect("theta denominator is a unit"));
    }
    out
}

/// The quotient `theta_a(x,tau)/theta_a(0,tau)` for `a` in {1,2,3}; the
/// `q^{1/8}` prefactors cancel for a = 1.
pub fn twist_factor(a: u8, w: &GradedElement, n: u32) -> PuiseuxQSeries {
    assert!((1..=3).contains(&a), "twist factor index must be 1, 2 or 3");
    let table = w.table().clone();
    let cap = w.degree_cap();
    let order = 8 * n as i64;
    let one = GradedElement::one(&table, cap);
    let ew = w.exp_nilpotent().expect("curvature root must be nilpotent");
    let emw = w.scale(&Scalar::from_int(-1)).exp_nilpotent().unwrap();

    let (head, sign, half_shift) = match a {
        1 => (cosh_half_sum(w).scale(&Scalar::ratio(1, 2)), 1i64, 0i64),
        2 => (GradedElement::one(&table, cap), -1, 4),
        _ => (GradedElement::one(&table, cap), 1, 4),
    };
    let mut out = PuiseuxQSeries::from_graded(head, order);
    for j in 1..=n as i64 {
        let e = Q_DENOM * j - half_shift;
        let num =
            linear_factor(&ew, sign, e, order).series_mul(&linear_factor(&emw, sign, e, order));
        let den = linear_factor(&one, sign, e, order);
        let den2 = den.series_mul(&den);
        out = out
            .series_mul(&num)
            .series_mul(&den2.series_inv().expect("scalar factor is a unit"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Scalar;

    fn wtable() -> Arc<VariableTable> {
        VariableTable::builder().even("w", 2).build()
    }

    fn sc(table: &Arc<VariableTable>, cap: u16, v: i64) -> GradedElement {
        GradedElement::constant(table, cap, Scalar::from_int(v))
    }

    #[test]
    fn euler_phi_pentagonal_signs() {
        let t = wtable();
        let phi = euler_phi(&t, 4, 8);
        // nonzero exactly at generalized pentagonal numbers 0,1,2,5,7 with
        // signs +,-,-,+,+ up to q^8
        let expect = [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)];
        for n in 0..=8i64 {
            let want = expect.iter().find(|(e, _)| *e == n).map(|(_, s)| *s).unwrap_or(0);
            assert_eq!(phi.coeff_q(n), sc(&t, 4, want), "phi coefficient at q^{n}");
        }
        assert_eq!(phi.coeff_q(0), GradedElement::one(&t, 4));
    }

    #[test]
    fn theta_vanishes_at_zero() {
        let t = wtable();
        let zero = GradedElement::zero(&t, 8);
        assert!(theta_expansion(ThetaKind::Theta, &zero, 4).is_zero());
    }

    #[test]
    fn theta3_null_is_sum_of_square_halves() {
        // theta3(0,tau) = sum_{n in Z} q^{n^2/2}: brute-force sum oracle
        // against the triple product.
        let t = wtable();
        let zero = GradedElement::zero(&t, 4);
        let prod = theta_expansion(ThetaKind::Theta3, &zero, 6);
        let mut sum = PuiseuxQSeries::zero(&t, 4, 48);
        for n in -10i64..=10 {
            let e = 4 * n * n; // q^{n^2/2} in eighths
            if e <= 48 {
                let cur = sum.coeff(e);
                sum.set_coeff(e, cur.add_scaled(&GradedElement::one(&t, 4), &Scalar::one()));
            }
        }
        assert_eq!(prod.truncate_order(48), sum);
    }

    #[test]
    fn theta2_theta3_half_powers_cancel() {
        let t = wtable();
        let zero = GradedElement::zero(&t, 4);
        let t2 = theta_expansion(ThetaKind::Theta2, &zero, 4);
        let t3 = theta_expansion(ThetaKind::Theta3, &zero, 4);
        assert_eq!(t2.coeff(4), sc(&t, 4, -2));
        assert_eq!(t3.coeff(4), sc(&t, 4, 2));
        let s = &t2 + &t3;
        assert!(s.has_only_integer_powers(), "odd half powers must cancel in theta2+theta3");
    }

    #[test]
    fn jacobi_identity_to_q4() {
        // theta'(0)/pi = theta1 theta2 theta3 (0, tau) coefficientwise
        let t = wtable();
        let zero = GradedElement::zero(&t, 4);
        let n = 5;
        let lhs = theta_prime_zero_normalized(&t, 4, n);
        let rhs = theta_expansion(ThetaKind::Theta1, &zero, n)
            .series_mul(&theta_expansion(ThetaKind::Theta2, &zero, n))
            .series_mul(&theta_expansion(ThetaKind::Theta3, &zero, n));
        assert_eq!(lhs.truncate_order(33), rhs.truncate_order(33));
    }

    #[test]
    fn theta_prime_leading_terms() {
        let t = wtable();
        let s = theta_prime_zero_normalized(&t, 4, 4);
        assert_eq!(s.coeff(1), sc(&t, 4, 2)); // 2 q^{1/8}
        assert_eq!(s.coeff(9), sc(&t, 4, -6)); // -6 q^{1+1/8}
    }

    #[test]
    fn theta_parity() {
        let t = wtable();
        let w = GradedElement::variable_by_name(&t, 8, "w");
        let mw = w.scale(&Scalar::from_int(-1));
        for (kind, sign) in [
            (ThetaKind::Theta, -1),
            (ThetaKind::Theta1, 1),
            (ThetaKind::Theta2, 1),
            (ThetaKind::Theta3, 1),
        ] {
            let a = theta_expansion(kind, &w, 3);
            let b = theta_expansion(kind, &mw, 3);
            assert_eq!(a.scale(&Scalar::from_int(sign)), b, "parity of {kind:?}");
        }
    }

    #[test]
    fn witten_factor_at_zero_is_two() {
        let t = wtable();
        let zero = GradedElement::zero(&t, 8);
        let s = witten_factor(&zero, 4);
        assert_eq!(s, PuiseuxQSeries::from_graded(sc(&t, 8, 2), 32));
    }

    #[test]
    fn witten_factor_q0_is_ahat_like_head() {
        let t = wtable();
        let w = GradedElement::variable_by_name(&t, 8, "w");
        let s = witten_factor(&w, 3);
        let expect = sinh_half_ratio(&w).inverse_unit().unwrap().scale(&Scalar::from_int(2));
        assert_eq!(s.coeff_q(0), expect);
        // series division oracle: 2w/(E(w/2)-E(-w/2)) = 2 - w^2/12 + 7w^4/2880
        assert_eq!(expect.degree_part(0), sc(&t, 8, 2));
        assert_eq!(expect.degree_part(4), w.pow(2).scale(&Scalar::ratio(-1, 12)));
        assert_eq!(expect.degree_part(8), w.pow(4).scale(&Scalar::ratio(7, 2880)));
    }

    #[test]
    fn twist_factor_at_zero_is_one() {
        let t = wtable();
        let zero = GradedElement::zero(&t, 8);
        for a in 1..=3u8 {
            assert_eq!(twist_factor(a, &zero, 3), PuiseuxQSeries::one(&t, 8, 24));
        }
    }

    #[test]
    fn twist1_q0_is_cosh_factor() {
        let t = wtable();
        let w = GradedElement::variable_by_name(&t, 8, "w");
        let s = twist_factor(1, &w, 3);
        assert_eq!(s.coeff_q(0), cosh_half_sum(&w).scale(&Scalar::ratio(1, 2)));
    }

    #[test]
    fn witten_times_theta_recovers_theta_prime() {
        // The witten factor is 2w theta'(0)/theta(w) in normalized form, so
        // multiplying back by theta(w)/(-i) must give w times the normalized
        // theta'(0) series (2w q^{1/8} prod (1-q^n)^3).
        let t = wtable();
        let w = GradedElement::variable_by_name(&t, 12, "w");
        let n = 3;
        let lhs = witten_factor(&w, n).series_mul(&theta_expansion(ThetaKind::Theta, &w, n));
        let rhs = theta_prime_zero_normalized(&t, 12, n).scale_graded(&w);
        assert_eq!(lhs, rhs);
    }
}
