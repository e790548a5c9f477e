//! Eisenstein q-expansions, the monomial basis of SL(2,Z) modular forms of a
//! given weight, and solve-then-check decomposition of a candidate form.

use crate::kernel::{GradedElement, PuiseuxQSeries, Scalar, VariableTable, Q_DENOM};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModformsError {
    #[error("eisenstein index must be 2, 4 or 6, got {0}")]
    BadEisensteinIndex(u32),
    #[error("weight must be even and >= 4, got {0}")]
    BadWeight(u32),
    #[error("need at least {need} q-orders to solve a dim-{need} basis, have {have}")]
    TooFewOrders { need: usize, have: usize },
    #[error("candidate series has non-integer q-powers (lowest at {0}/8)")]
    FractionalPowers(i64),
    #[error("singular leading system for weight {weight}: {minor}")]
    SingularSystem { weight: u32, minor: String },
}

/// sigma_k(n): sum of k-th powers of the divisors of n.
fn divisor_sigma(k: u32, n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| d.pow(k)).sum()
}

/// Eisenstein series E2, E4 or E6 to order `q^n`, with the exact rational
/// normalization 1 - (2k/B_k) sum sigma_{k-1}(m) q^m (E2: -24, E4: +240,
/// E6: -504).  Coefficients are scalar graded elements on the given table.
pub fn eisenstein(
    k: u32,
    n: u32,
    table: &Arc<VariableTable>,
    degree_cap: u16,
) -> Result<PuiseuxQSeries, ModformsError> {
    let coef: i64 = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        other => return Err(ModformsError::BadEisensteinIndex(other)),
    };
    let mut s = PuiseuxQSeries::one(table, degree_cap, 8 * n as i64);
    for m in 1..=n as i64 {
        s.set_coeff(
            Q_DENOM * m,
            GradedElement::constant(table, degree_cap, Scalar::from_int(coef * divisor_sigma(k - 1, m))),
        );
    }
    Ok(s)
}

/// The monomial basis E4^a E6^b of weight-`weight` modular forms.
pub struct EisensteinBasis {
    pub weight: u32,
    /// All (a, b) >= 0 with 4a + 6b = weight, in decreasing a.
    pub monomials: Vec<(u32, u32)>,
    pub series: Vec<PuiseuxQSeries>,
}

impl EisensteinBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Scalar q^n coefficient of basis element `i`.
    pub fn coeff(&self, i: usize, n: i64) -> Scalar {
        self.series[i].coeff_q(n).constant_term()
    }

    pub fn monomial_name(&self, i: usize) -> String {
        let (a, b) = self.monomials[i];
        match (a, b) {
            (0, 0) => "1".to_string(),
            (a, 0) if a == 1 => "E4".to_string(),
            (a, 0) => format!("E4^{a}"),
            (0, b) if b == 1 => "E6".to_string(),
            (0, b) => format!("E6^{b}"),
            (1, 1) => "E4*E6".to_string(),
            (a, 1) => format!("E4^{a}*E6"),
            (1, b) => format!("E4*E6^{b}"),
            (a, b) => format!("E4^{a}*E6^{b}"),
        }
    }
}

/// Enumerate the E4^a E6^b products spanning weight-`weight` forms.
pub fn basis(
    weight: u32,
    n: u32,
    table: &Arc<VariableTable>,
    degree_cap: u16,
) -> Result<EisensteinBasis, ModformsError> {
    if weight % 2 != 0 || weight < 4 {
        return Err(ModformsError::BadWeight(weight));
    }
    let e4 = eisenstein(4, n, table, degree_cap)?;
    let e6 = eisenstein(6, n, table, degree_cap)?;
    let mut monomials = Vec::new();
    let mut series = Vec::new();
    let mut a = weight / 4;
    loop {
        let rem = weight - 4 * a;
        if rem % 6 == 0 {
            let b = rem / 6;
            monomials.push((a, b));
            let mut s = PuiseuxQSeries::one(table, degree_cap, 8 * n as i64);
            for _ in 0..a {
                s = s.series_mul(&e4);
            }
            for _ in 0..b {
                s = s.series_mul(&e6);
            }
            series.push(s);
        }
        if a == 0 {
            break;
        }
        a -= 1;
    }
    Ok(EisensteinBasis { weight, monomials, series })
}

/// Result of decomposing a candidate series against a weight basis.
pub struct DecompositionResult {
    pub weight: u32,
    pub lambdas: Vec<GradedElement>,
    pub residual_zero: bool,
    /// Inclusive range of whole q-orders that were checked.
    pub checked_orders: (i64, i64),
    pub residual: PuiseuxQSeries,
    /// Inverse of the leading coefficient matrix, row i giving lambda_i as a
    /// combination of the first dim q-coefficients.
    pub solve_matrix: Vec<Vec<Scalar>>,
}

/// Exact Gauss-Jordan inverse of a small rational matrix.
fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let d = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone().recip();
        for j in 0..d {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..d {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Solve the linear system from the first `dim` integer coefficients of `f`
/// for graded-element-valued lambdas, then subtract and report whether every
/// remaining coefficient up to `q^n` vanishes.
///
/// The system matrix is rational, so the solve distributes coefficientwise
/// over the monomials of the graded coefficients.
pub fn decompose(
    f: &PuiseuxQSeries,
    weight: u32,
    n: u32,
) -> Result<DecompositionResult, ModformsError> {
    if let Some(e) = f.iter().map(|(e, _)| *e).find(|e| e % Q_DENOM != 0) {
        return Err(ModformsError::FractionalPowers(e));
    }
    let b = basis(weight, n, f.table(), f.degree_cap())?;
    let dim = b.dim();
    if (n as usize + 1) < dim {
        return Err(ModformsError::TooFewOrders { need: dim, have: n as usize + 1 });
    }
    let matrix: Vec<Vec<Scalar>> =
        (0..dim).map(|r| (0..dim).map(|i| b.coeff(i, r as i64)).collect()).collect();
    let inv = invert(&matrix).ok_or_else(|| ModformsError::SingularSystem {
        weight,
        minor: format!(
            "leading {dim}x{dim} coefficient matrix of [{}] is singular",
            (0..dim).map(|i| b.monomial_name(i)).collect::<Vec<_>>().join(", ")
        ),
    })?;

    let lambdas: Vec<GradedElement> = (0..dim)
        .map(|i| {
            let mut acc = GradedElement::zero(f.table(), f.degree_cap());
            for (j, c) in inv[i].iter().enumerate() {
                acc = acc.add_scaled(&f.coeff_q(j as i64), c);
            }
            acc
        })
        .collect();

    let mut residual = f.truncate_order(8 * n as i64);
    for (i, lam) in lambdas.iter().enumerate() {
        residual = residual.add_scaled(&b.series[i].scale_graded(lam), &Scalar::from_int(-1));
    }
    Ok(DecompositionResult {
        weight,
        lambdas,
        residual_zero: residual.is_zero(),
        checked_orders: (0, n as i64),
        residual,
        solve_matrix: inv,
    })
}

/// Run `decompose` for every candidate weight, reporting which yield a zero
/// residual.
pub fn infer_weight(f: &PuiseuxQSeries, candidates: &[u32], n: u32) -> Vec<(u32, bool)> {
    candidates
        .iter()
        .map(|&w| (w, decompose(f, w, n).map(|d| d.residual_zero).unwrap_or(false)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<VariableTable> {
        VariableTable::builder().even("w", 2).build()
    }

    fn coeffs(s: &PuiseuxQSeries, up_to: i64) -> Vec<Scalar> {
        (0..=up_to).map(|n| s.coeff_q(n).constant_term()).collect()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn eisenstein_golden_values() {
        let t = table();
        let e2 = eisenstein(2, 3, &t, 4).unwrap();
        assert_eq!(coeffs(&e2, 2), ints(&[1, -24, -72]));
        let e4 = eisenstein(4, 3, &t, 4).unwrap();
        assert_eq!(coeffs(&e4, 3), ints(&[1, 240, 2160, 6720]));
        let e6 = eisenstein(6, 3, &t, 4).unwrap();
        assert_eq!(coeffs(&e6, 3), ints(&[1, -504, -16632, -122976]));
        assert!(eisenstein(8, 3, &t, 4).is_err());
    }

    #[test]
    fn sigma_cross_check() {
        // coefficient of q^n in E4 is 240 sigma_3(n), against brute-force
        // divisor enumeration
        let t = table();
        let e4 = eisenstein(4, 8, &t, 4).unwrap();
        for n in 1..=8i64 {
            let brute: i64 = (1..=n).filter(|d| n % d == 0).map(|d| d * d * d).sum();
            assert_eq!(e4.coeff_q(n).constant_term(), Scalar::from_int(240 * brute));
        }
    }

    #[test]
    fn basis_enumerations() {
        let t = table();
        let b8 = basis(8, 2, &t, 4).unwrap();
        assert_eq!(b8.monomials, vec![(2, 0)]);
        assert_eq!(coeffs(&b8.series[0], 2), ints(&[1, 480, 61920]));
        let b10 = basis(10, 2, &t, 4).unwrap();
        assert_eq!(b10.monomials, vec![(1, 1)]);
        assert_eq!(coeffs(&b10.series[0], 2), ints(&[1, -264, -135432]));
        let b14 = basis(14, 2, &t, 4).unwrap();
        assert_eq!(b14.monomials, vec![(2, 1)]);
        assert_eq!(coeffs(&b14.series[0], 2), ints(&[1, -24, -196632]));
        let b12 = basis(12, 2, &t, 4).unwrap();
        assert_eq!(b12.monomials, vec![(3, 0), (0, 2)]);
        assert_eq!(b12.coeff(0, 1), Scalar::from_int(720));
        assert_eq!(b12.coeff(1, 1), Scalar::from_int(-1008));
        assert_eq!(b12.coeff(0, 2), Scalar::from_int(179280));
        assert_eq!(b12.coeff(1, 2), Scalar::from_int(220752));
        let b16 = basis(16, 1, &t, 4).unwrap();
        assert_eq!(b16.monomials, vec![(4, 0), (1, 2)]);
        assert_eq!(b16.coeff(0, 1), Scalar::from_int(960));
        assert_eq!(b16.coeff(1, 1), Scalar::from_int(-768));
        assert!(basis(7, 2, &t, 4).is_err());
        assert!(basis(2, 2, &t, 4).is_err());
    }

    #[test]
    fn decompose_identity_cases() {
        let t = table();
        let e4 = eisenstein(4, 4, &t, 4).unwrap();
        let e6 = eisenstein(6, 4, &t, 4).unwrap();
        // F = E4^2 at weight 8 -> lambda = 1
        let r = decompose(&e4.series_mul(&e4), 8, 4).unwrap();
        assert!(r.residual_zero);
        assert_eq!(r.lambdas, vec![GradedElement::one(&t, 4)]);
        // F = 3 E4 E6 at weight 10 -> lambda = 3
        let f = e4.series_mul(&e6).scale(&Scalar::from_int(3));
        let r = decompose(&f, 10, 4).unwrap();
        assert!(r.residual_zero);
        assert_eq!(r.lambdas[0].constant_term(), Scalar::from_int(3));
        // F = E4^3 - E6^2 at weight 12 -> (1, -1), residual zero through q^4
        let f = &e4.series_mul(&e4).series_mul(&e4) - &e6.series_mul(&e6);
        let r = decompose(&f, 12, 4).unwrap();
        assert!(r.residual_zero);
        assert_eq!(r.lambdas[0].constant_term(), Scalar::one());
        assert_eq!(r.lambdas[1].constant_term(), Scalar::from_int(-1));
    }

    #[test]
    fn infer_weight_example() {
        let t = table();
        let e4 = eisenstein(4, 4, &t, 4).unwrap();
        let e4sq = e4.series_mul(&e4);
        // E4E6 fit of E4^2 fails at q^1: 480 != -264
        assert_eq!(infer_weight(&e4sq, &[8, 10], 4), vec![(8, true), (10, false)]);
        let e6 = eisenstein(6, 4, &t, 4).unwrap();
        assert_eq!(infer_weight(&e4.series_mul(&e6), &[10], 4), vec![(10, true)]);
    }

    #[test]
    fn rejects_fractional_powers() {
        let t = table();
        let f = PuiseuxQSeries::q_power(&t, 4, 32, 4); // q^{1/2}
        assert!(matches!(decompose(&f, 8, 4), Err(ModformsError::FractionalPowers(4))));
    }

    #[test]
    fn graded_lambdas_solve_per_monomial() {
        // F = w^2 E4^3 + (1 + w^2) E6^2 must come back with those lambdas
        let t = table();
        let w2 = GradedElement::variable_by_name(&t, 4, "w").pow(2);
        let one_w2 = &GradedElement::one(&t, 4) + &w2;
        let b = basis(12, 4, &t, 4).unwrap();
        let f = &b.series[0].scale_graded(&w2) + &b.series[1].scale_graded(&one_w2);
        let r = decompose(&f, 12, 4).unwrap();
        assert!(r.residual_zero);
        assert_eq!(r.lambdas[0], w2);
        assert_eq!(r.lambdas[1], one_w2);
    }
}
