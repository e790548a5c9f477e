//! Sparse multivariate polynomials over exact rationals in degree-tagged
//! formal variables, truncated above a degree cap.

use super::{KernelError, Scalar, VariableTable};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Exponent vector with its cached total weighted degree.
///
/// Ordering is by (degree, exponents), so a `BTreeMap` keyed on monomials can
/// serve degree-range queries directly.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Monomial {
    degree: u16,
    exps: Box<[u8]>,
}

impl Monomial {
    fn unit(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0u8; nvars].into_boxed_slice() }
    }

    pub fn degree(&self) -> u16 {
        self.degree
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    fn from_exps(table: &VariableTable, exps: Box<[u8]>) -> Self {
        let degree = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| table.degree(i) as u32 * e as u32)
            .sum::<u32>();
        assert!(degree <= u16::MAX as u32, "monomial degree overflow");
        Monomial { degree: degree as u16, exps }
    }
}

/// A truncated element of the graded polynomial ring.
///
/// Invariants: every stored monomial has total weighted degree `<= degree_cap`,
/// the odd marker exponent is 0 or 1 everywhere, and no stored coefficient is
/// zero (equality is structural equality).
#[derive(Clone)]
pub struct GradedElement {
    table: Arc<VariableTable>,
    degree_cap: u16,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        VariableTable::same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for GradedElement {}

impl GradedElement {
    pub fn zero(table: &Arc<VariableTable>, degree_cap: u16) -> Self {
        GradedElement { table: table.clone(), degree_cap, terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<VariableTable>, degree_cap: u16) -> Self {
        Self::constant(table, degree_cap, Scalar::one())
    }

    pub fn constant(table: &Arc<VariableTable>, degree_cap: u16, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(table.len()), c);
        }
        GradedElement { table: table.clone(), degree_cap, terms }
    }

    /// The variable with index `i`, if its degree fits under the cap.
    pub fn variable(table: &Arc<VariableTable>, degree_cap: u16, i: usize) -> Self {
        let mut exps = vec![0u8; table.len()];
        exps[i] = 1;
        let m = Monomial::from_exps(table, exps.into_boxed_slice());
        let mut terms = BTreeMap::new();
        if m.degree <= degree_cap {
            terms.insert(m, Scalar::one());
        }
        GradedElement { table: table.clone(), degree_cap, terms }
    }

    pub fn variable_by_name(table: &Arc<VariableTable>, degree_cap: u16, name: &str) -> Self {
        let i = table.index_of(name).unwrap_or_else(|| panic!("unknown variable `{name}`"));
        Self::variable(table, degree_cap, i)
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn degree_cap(&self) -> u16 {
        self.degree_cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// The coefficient of the constant (degree-zero) monomial.
    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Monomial::unit(self.table.len())).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest degree with a nonzero monomial, or 0 for the zero element.
    pub fn max_degree(&self) -> u16 {
        self.terms.keys().next_back().map(|m| m.degree).unwrap_or(0)
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            VariableTable::same_table(&self.table, &other.table),
            "graded elements from different variable tables"
        );
        assert_eq!(self.degree_cap, other.degree_cap, "graded elements with different degree caps");
    }

    fn insert_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() || m.degree > self.degree_cap {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table, self.degree_cap);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        GradedElement { table: self.table.clone(), degree_cap: self.degree_cap, terms }
    }

    pub fn add_scaled(&self, other: &Self, c: &Scalar) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.insert_term(m.clone(), v * c);
        }
        out
    }

    /// Exact product with monomials above the cap discarded and the odd
    /// marker squaring to zero.
    pub fn ring_mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(&self.table, self.degree_cap);
        let odd = self.table.odd_index();
        for (ma, ca) in &self.terms {
            if ma.degree > self.degree_cap {
                continue;
            }
            for (mb, cb) in &other.terms {
                let degree = ma.degree as u32 + mb.degree as u32;
                if degree > self.degree_cap as u32 {
                    continue;
                }
                if let Some(oi) = odd {
                    if ma.exps[oi] + mb.exps[oi] >= 2 {
                        continue;
                    }
                }
                let exps: Box<[u8]> = ma
                    .exps
                    .iter()
                    .zip(mb.exps.iter())
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                out.insert_term(Monomial { degree: degree as u16, exps }, ca * cb);
            }
        }
        out
    }

    /// Sum of monomials of total degree exactly `d`.
    pub fn degree_part(&self, d: u16) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        GradedElement { table: self.table.clone(), degree_cap: self.degree_cap, terms }
    }

    /// Sum of monomials of total degree at most `d`.
    pub fn truncate_degree(&self, d: u16) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree <= d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        GradedElement { table: self.table.clone(), degree_cap: self.degree_cap, terms }
    }

    /// True if the element has no degree-zero part (so powers terminate under
    /// the cap).
    pub fn is_nilpotent(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.table, self.degree_cap);
        for _ in 0..n {
            out = out.ring_mul(self);
        }
        out
    }

    /// exp(self) for nilpotent arguments: a finite sum under the degree cap.
    pub fn exp_nilpotent(&self) -> Result<Self, KernelError> {
        if !self.is_nilpotent() {
            return Err(KernelError::NonNilpotentExponent { order: 0 });
        }
        let mut out = Self::one(&self.table, self.degree_cap);
        let mut term = Self::one(&self.table, self.degree_cap);
        let mut k = 1i64;
        loop {
            term = term.ring_mul(self).scale(&Scalar::ratio(1, k));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
            k += 1;
        }
        Ok(out)
    }

    /// Inverse of a unit `c + n` (`c` nonzero rational, `n` nilpotent), via
    /// the geometric series on `n/c`.
    pub fn inverse_unit(&self) -> Result<Self, KernelError> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(KernelError::NonUnitConstant);
        }
        let cinv = c.recip();
        // self/c = 1 + m with m nilpotent; inverse = (1/c) sum (-m)^k
        let mut m = self.scale(&cinv);
        m.terms.remove(&Monomial::unit(self.table.len()));
        let m = -m;
        let mut out = Self::one(&self.table, self.degree_cap);
        let mut term = Self::one(&self.table, self.degree_cap);
        loop {
            term = term.ring_mul(&m);
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out.scale(&cinv))
    }

    /// Floating evaluation under `name -> value`; every variable present in a
    /// monomial must be assigned.
    pub fn eval_numeric(
        &self,
        assignment: &BTreeMap<String, Complex64>,
    ) -> Result<Complex64, KernelError> {
        let values: Vec<Option<Complex64>> =
            (0..self.table.len()).map(|i| assignment.get(self.table.name(i)).copied()).collect();
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex();
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = values[i]
                    .ok_or_else(|| KernelError::MissingAssignment(self.table.name(i).into()))?;
                v *= x.powi(e as i32);
            }
            total += v;
        }
        Ok(total)
    }

    /// Rewrites every power of variable `var` via `var^2 -> replacement`,
    /// leaving a residual exponent of 0 or 1.  `replacement` must be free of
    /// `var` and of the same degree as `var^2`.
    pub fn reduce_square(&self, var: usize, replacement: &Self) -> Self {
        let mut out = Self::zero(&self.table, self.degree_cap);
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e < 2 {
                out.insert_term(m.clone(), c.clone());
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] = e % 2;
            let base = Monomial::from_exps(&self.table, exps);
            let mut piece = Self::zero(&self.table, self.degree_cap);
            piece.insert_term(base, c.clone());
            for _ in 0..(e / 2) {
                piece = piece.ring_mul(replacement);
            }
            out = &out + &piece;
        }
        out
    }

    /// Coefficient of `var^1` with the variable stripped, plus the part not
    /// containing `var` at all, as `(without, linear_coefficient)`.
    /// Errors if any monomial has `var` exponent greater than 1.
    pub fn split_linear(&self, var: usize) -> Option<(Self, Self)> {
        let mut without = Self::zero(&self.table, self.degree_cap);
        let mut linear = Self::zero(&self.table, self.degree_cap);
        for (m, c) in &self.terms {
            match m.exps[var] {
                0 => without.insert_term(m.clone(), c.clone()),
                1 => {
                    let mut exps = m.exps.clone();
                    exps[var] = 0;
                    linear.insert_term(Monomial::from_exps(&self.table, exps), c.clone());
                }
                _ => return None,
            }
        }
        Some((without, linear))
    }

    /// Multiply by `var` (raising each monomial's exponent by one).
    pub fn mul_variable(&self, var: usize) -> Self {
        let v = Self::variable(&self.table, self.degree_cap, var);
        self.ring_mul(&v)
    }
}

impl Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        rhs.add_scaled(self, &Scalar::one())
    }
}

impl Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        self.add_scaled(rhs, &Scalar::from_int(-1))
    }
}

impl Mul for &GradedElement {
    type Output = GradedElement;
    fn mul(self, rhs: &GradedElement) -> GradedElement {
        self.ring_mul(rhs)
    }
}

impl Neg for GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.table.name(i).to_string()
                    } else {
                        format!("{}^{}", self.table.name(i), e)
                    }
                })
                .collect();
            let coeff = c.to_string();
            let body = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono.join("*")
            } else if coeff == "-1" {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", coeff, mono.join("*"))
            };
            if first {
                write!(f, "{body}")?;
                first = false;
            } else if let Some(stripped) = body.strip_prefix('-') {
                write!(f, " - {stripped}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
