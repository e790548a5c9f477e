//! Truncated Puiseux series in q with exponents in (1/8)Z and graded
//! polynomial coefficients.

use super::{GradedElement, KernelError, Scalar, VariableTable};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Fixed exponent denominator: stored exponents count eighths of a power of q.
pub const Q_DENOM: i64 = 8;

/// A truncated series `sum_n c_n q^{n/8}` with [`GradedElement`] coefficients.
///
/// All stored exponents are `<= order_cap` (in eighths) and every coefficient
/// shares one variable table and degree cap.  Zero coefficients are removed
/// eagerly, so equality is structural.
#[derive(Clone)]
pub struct PuiseuxQSeries {
    table: Arc<VariableTable>,
    degree_cap: u16,
    order_cap: i64,
    coeffs: BTreeMap<i64, GradedElement>,
}

impl PartialEq for PuiseuxQSeries {
    /// Equality of every coefficient up to the smaller order cap.
    fn eq(&self, other: &Self) -> bool {
        if !VariableTable::same_table(&self.table, &other.table)
            || self.degree_cap != other.degree_cap
        {
            return false;
        }
        let cap = self.order_cap.min(other.order_cap);
        let keys: std::collections::BTreeSet<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|e| *e <= cap)
            .collect();
        keys.into_iter().all(|e| self.coeff(e) == other.coeff(e))
    }
}

impl Eq for PuiseuxQSeries {}

impl PuiseuxQSeries {
    pub fn zero(table: &Arc<VariableTable>, degree_cap: u16, order_cap: i64) -> Self {
        PuiseuxQSeries { table: table.clone(), degree_cap, order_cap, coeffs: BTreeMap::new() }
    }

    pub fn one(table: &Arc<VariableTable>, degree_cap: u16, order_cap: i64) -> Self {
        Self::from_graded(GradedElement::one(table, degree_cap), order_cap)
    }

    /// The series whose q^0 coefficient is `g`.
    pub fn from_graded(g: GradedElement, order_cap: i64) -> Self {
        let table = g.table().clone();
        let degree_cap = g.degree_cap();
        let mut coeffs = BTreeMap::new();
        if !g.is_zero() && 0 <= order_cap {
            coeffs.insert(0, g);
        }
        PuiseuxQSeries { table, degree_cap, order_cap, coeffs }
    }

    /// `q^{eighths/8}` as a series.
    pub fn q_power(table: &Arc<VariableTable>, degree_cap: u16, order_cap: i64, eighths: i64) -> Self {
        let mut s = Self::zero(table, degree_cap, order_cap);
        s.set_coeff(eighths, GradedElement::one(table, degree_cap));
        s
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn degree_cap(&self) -> u16 {
        self.degree_cap
    }

    pub fn order_cap(&self) -> i64 {
        self.order_cap
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^{eighths/8}` (zero element if absent).
    pub fn coeff(&self, eighths: i64) -> GradedElement {
        self.coeffs
            .get(&eighths)
            .cloned()
            .unwrap_or_else(|| GradedElement::zero(&self.table, self.degree_cap))
    }

    /// Coefficient of the whole power `q^n`.
    pub fn coeff_q(&self, n: i64) -> GradedElement {
        self.coeff(n * Q_DENOM)
    }

    pub fn set_coeff(&mut self, eighths: i64, g: GradedElement) {
        if g.is_zero() || eighths > self.order_cap {
            self.coeffs.remove(&eighths);
        } else {
            self.coeffs.insert(eighths, g);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &GradedElement)> {
        self.coeffs.iter()
    }

    pub fn lowest_order(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// True when every exponent is a multiple of 8 (an integer q-power).
    pub fn has_only_integer_powers(&self) -> bool {
        self.coeffs.keys().all(|e| e % Q_DENOM == 0)
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            VariableTable::same_table(&self.table, &other.table),
            "series from different variable tables"
        );
        assert_eq!(self.degree_cap, other.degree_cap, "series with different degree caps");
    }

    fn joint_cap(&self, other: &Self) -> i64 {
        self.order_cap.min(other.order_cap)
    }

    pub fn add_scaled(&self, other: &Self, c: &Scalar) -> Self {
        self.assert_compatible(other);
        let cap = self.joint_cap(other);
        let mut out = self.clone();
        out.order_cap = cap;
        out.coeffs.retain(|e, _| *e <= cap);
        for (e, g) in &other.coeffs {
            if *e > cap {
                continue;
            }
            let cur = out.coeff(*e);
            out.set_coeff(*e, cur.add_scaled(g, c));
        }
        out
    }

    /// Cauchy product truncated at the smaller order cap.
    pub fn series_mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let cap = self.joint_cap(other);
        let mut acc: BTreeMap<i64, GradedElement> = BTreeMap::new();
        for (ea, ga) in &self.coeffs {
            if *ea > cap {
                continue;
            }
            for (eb, gb) in &other.coeffs {
                let e = ea + eb;
                if e > cap {
                    break; // coeffs are sorted by exponent
                }
                let prod = ga.ring_mul(gb);
                if prod.is_zero() {
                    continue;
                }
                match acc.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = &*o.get() + &prod;
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
        }
        PuiseuxQSeries { table: self.table.clone(), degree_cap: self.degree_cap, order_cap: cap, coeffs: acc }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.coeffs.clear();
            return out;
        }
        for g in out.coeffs.values_mut() {
            *g = g.scale(c);
        }
        out
    }

    /// Multiply every coefficient by a fixed graded element.
    pub fn scale_graded(&self, g: &GradedElement) -> Self {
        let mut out = Self::zero(&self.table, self.degree_cap, self.order_cap);
        for (e, c) in &self.coeffs {
            out.set_coeff(*e, c.ring_mul(g));
        }
        out
    }

    /// Shift all exponents by `eighths` (negative allowed), dropping anything
    /// over the cap.
    pub fn shift(&self, eighths: i64) -> Self {
        let mut out = Self::zero(&self.table, self.degree_cap, self.order_cap);
        for (e, c) in &self.coeffs {
            out.set_coeff(e + eighths, c.clone());
        }
        out
    }

    /// Drop all exponents above `new_cap` and lower the cap.
    pub fn truncate_order(&self, new_cap: i64) -> Self {
        let mut out = self.clone();
        out.order_cap = new_cap.min(self.order_cap);
        out.coeffs.retain(|e, _| *e <= out.order_cap);
        out
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&GradedElement) -> GradedElement) -> Self {
        let mut out = Self::zero(&self.table, self.degree_cap, self.order_cap);
        for (e, c) in &self.coeffs {
            out.set_coeff(*e, f(c));
        }
        out
    }

    /// Inverse `g` with `self * g = 1` to truncation order.
    ///
    /// The lowest-order coefficient must be a unit (nonzero rational constant
    /// term plus nilpotent part); a leading `q^{e0}` factor is shifted out and
    /// reappears as `q^{-e0}`.
    pub fn series_inv(&self) -> Result<Self, KernelError> {
        let e0 = self.lowest_order().ok_or(KernelError::NonUnitLeading { order: 0 })?;
        let lead = self.coeff(e0);
        let lead_inv =
            lead.inverse_unit().map_err(|_| KernelError::NonUnitLeading { order: e0 })?;
        // self = q^{e0} (lead + rest); (lead+rest)^{-1} = leadinv * 1/(1 + leadinv*rest)
        let shifted = self.shift(-e0);
        let mut m = shifted.scale_graded(&lead_inv);
        m.set_coeff(0, GradedElement::zero(&self.table, self.degree_cap));
        // now shifted*leadinv = 1 + m with m of positive order: geometric series
        let neg_m = m.scale(&Scalar::from_int(-1));
        let mut out = Self::one(&self.table, self.degree_cap, self.order_cap);
        let mut term = Self::one(&self.table, self.degree_cap, self.order_cap);
        loop {
            term = term.series_mul(&neg_m);
            if term.is_zero() {
                break;
            }
            out = out.add_scaled(&term, &Scalar::one());
        }
        Ok(out.scale_graded(&lead_inv).shift(-e0))
    }

    /// exp(self), requiring every coefficient to be nilpotent (no degree-zero
    /// part) and no negative exponents, so each output coefficient is a
    /// finite sum.
    pub fn series_exp(&self) -> Result<Self, KernelError> {
        for (e, c) in &self.coeffs {
            if *e < 0 || !c.is_nilpotent() {
                return Err(KernelError::NonNilpotentExponent { order: *e });
            }
        }
        let mut out = Self::one(&self.table, self.degree_cap, self.order_cap);
        let mut term = Self::one(&self.table, self.degree_cap, self.order_cap);
        let mut k = 1i64;
        loop {
            term = term.series_mul(self).scale(&Scalar::ratio(1, k));
            if term.is_zero() {
                break;
            }
            out = out.add_scaled(&term, &Scalar::one());
            k += 1;
        }
        Ok(out)
    }

    /// Floating evaluation at a point: variables from `assignment`, q from
    /// `q_value` (principal branch for the eighth root).
    pub fn eval_numeric(
        &self,
        assignment: &BTreeMap<String, Complex64>,
        q_value: Complex64,
    ) -> Result<Complex64, KernelError> {
        let q8 = q_value.powf(1.0 / Q_DENOM as f64);
        let mut total = Complex64::new(0.0, 0.0);
        for (e, c) in &self.coeffs {
            total += c.eval_numeric(assignment)? * q8.powi(*e as i32);
        }
        Ok(total)
    }
}

impl Add for &PuiseuxQSeries {
    type Output = PuiseuxQSeries;
    fn add(self, rhs: &PuiseuxQSeries) -> PuiseuxQSeries {
        self.add_scaled(rhs, &Scalar::one())
    }
}

impl Sub for &PuiseuxQSeries {
    type Output = PuiseuxQSeries;
    fn sub(self, rhs: &PuiseuxQSeries) -> PuiseuxQSeries {
        self.add_scaled(rhs, &Scalar::from_int(-1))
    }
}

impl Mul for &PuiseuxQSeries {
    type Output = PuiseuxQSeries;
    fn mul(self, rhs: &PuiseuxQSeries) -> PuiseuxQSeries {
        self.series_mul(rhs)
    }
}

impl Neg for PuiseuxQSeries {
    type Output = PuiseuxQSeries;
    fn neg(self) -> PuiseuxQSeries {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for PuiseuxQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *e == 0 {
                write!(f, "({c})")?;
            } else if e % Q_DENOM == 0 {
                write!(f, "({c})*q^{}", e / Q_DENOM)?;
            } else {
                write!(f, "({c})*q^({e}/8)")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<VariableTable> {
        VariableTable::builder().even("w", 2).build()
    }

    fn scalar_series(table: &Arc<VariableTable>, cap: i64, coeffs: &[(i64, i64)]) -> PuiseuxQSeries {
        let mut s = PuiseuxQSeries::zero(table, 8, cap);
        for &(n, c) in coeffs {
            s.set_coeff(n * Q_DENOM, GradedElement::constant(table, 8, Scalar::from_int(c)));
        }
        s
    }

    #[test]
    fn cauchy_product() {
        let t = table();
        let a = scalar_series(&t, 16, &[(0, 1), (1, 1)]);
        let b = scalar_series(&t, 16, &[(0, 1), (1, -1)]);
        assert_eq!(a.series_mul(&b), scalar_series(&t, 16, &[(0, 1), (2, -1)]));
    }

    #[test]
    fn puiseux_exponents_add() {
        let t = table();
        let a = PuiseuxQSeries::q_power(&t, 8, 16, 1);
        let b = PuiseuxQSeries::q_power(&t, 8, 16, 7);
        assert_eq!(a.series_mul(&b), PuiseuxQSeries::q_power(&t, 8, 16, 8));
    }

    #[test]
    fn geometric_inverse() {
        let t = table();
        let f = scalar_series(&t, 24, &[(0, 1), (1, -1)]);
        let g = f.series_inv().unwrap();
        assert_eq!(g, scalar_series(&t, 24, &[(0, 1), (1, 1), (2, 1), (3, 1)]));
    }

    #[test]
    fn inverse_with_graded_coefficient() {
        // inv(1 - e^w q) has q^1 coefficient e^w
        let t = table();
        let ew = GradedElement::variable_by_name(&t, 8, "w").exp_nilpotent().unwrap();
        let mut f = PuiseuxQSeries::one(&t, 8, 16);
        f.set_coeff(Q_DENOM, ew.scale(&Scalar::from_int(-1)));
        let g = f.series_inv().unwrap();
        assert_eq!(g.coeff_q(1), ew);
    }

    #[test]
    fn inverse_round_trip_with_shift() {
        let t = table();
        // q^{1/8}(1 + q)
        let f = {
            let mut s = PuiseuxQSeries::zero(&t, 8, 24);
            s.set_coeff(1, GradedElement::one(&t, 8));
            s.set_coeff(9, GradedElement::one(&t, 8));
            s
        };
        let g = f.series_inv().unwrap();
        let prod = f.series_mul(&g);
        // product is 1 up to the reachable order
        assert_eq!(prod.coeff(0), GradedElement::one(&t, 8));
        for (e, c) in prod.iter() {
            if *e != 0 {
                panic!("unexpected term at {e}: {c}");
            }
        }
    }

    #[test]
    fn exp_requires_nilpotent() {
        let t = table();
        let f = scalar_series(&t, 16, &[(1, 1)]);
        assert!(f.series_exp().is_err()); // constant coefficient 1 at q^1
        let w = GradedElement::variable_by_name(&t, 8, "w");
        let mut g = PuiseuxQSeries::zero(&t, 8, 16);
        g.set_coeff(Q_DENOM, w.clone());
        let e = g.series_exp().unwrap();
        assert_eq!(e.coeff_q(0), GradedElement::one(&t, 8));
        assert_eq!(e.coeff_q(1), w);
        assert_eq!(e.coeff_q(2), w.pow(2).scale(&Scalar::ratio(1, 2)));
    }

    #[test]
    fn eval_numeric_simple() {
        let t = table();
        let f = scalar_series(&t, 16, &[(0, 1), (1, -1)]);
        let v = f.eval_numeric(&BTreeMap::new(), Complex64::new(0.1, 0.0)).unwrap();
        assert!((v - Complex64::new(0.9, 0.0)).norm() < 1e-12);
    }
}
