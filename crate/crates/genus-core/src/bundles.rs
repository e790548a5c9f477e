//! Chern-root calculus: characteristic forms, Chern characters of virtual
//! bundles, exterior/symmetric power series and the twisted Witten bundles.

use crate::kernel::{GradedElement, PuiseuxQSeries, Scalar, VariableTable, Q_DENOM};
use crate::theta;
use std::sync::Arc;

/// A virtual bundle as a signed multiset of Chern roots plus a rank offset.
///
/// Real-type bundles additionally record their positive root representatives,
/// so the per-pair characteristic forms (A-hat, L-hat, spinor character) are
/// defined; the ± pair structure is guaranteed by construction.
#[derive(Clone)]
pub struct RootBundle {
    table: Arc<VariableTable>,
    degree_cap: u16,
    roots: Vec<(GradedElement, i64)>,
    rank_offset: i64,
    pairs: Option<Vec<GradedElement>>,
}

impl RootBundle {
    /// Trivial bundle of the given rank (no roots).
    pub fn trivial(table: &Arc<VariableTable>, degree_cap: u16, rank: i64) -> Self {
        RootBundle { table: table.clone(), degree_cap, roots: Vec::new(), rank_offset: rank, pairs: None }
    }

    /// A virtual bundle from explicit (root, multiplicity) data.
    pub fn from_roots(
        table: &Arc<VariableTable>,
        degree_cap: u16,
        roots: Vec<(GradedElement, i64)>,
        rank_offset: i64,
    ) -> Self {
        for (r, _) in &roots {
            assert!(
                VariableTable::same_table(r.table(), table),
                "root from a different variable table"
            );
        }
        RootBundle { table: table.clone(), degree_cap, roots, rank_offset, pairs: None }
    }

    /// A real-type bundle with roots `±p` for each positive representative,
    /// plus `zero_roots` zero roots (handled as rank).
    pub fn real_from_pairs(
        table: &Arc<VariableTable>,
        degree_cap: u16,
        pairs: Vec<GradedElement>,
        zero_roots: i64,
    ) -> Self {
        let mut roots = Vec::with_capacity(2 * pairs.len());
        for p in &pairs {
            roots.push((p.clone(), 1));
            roots.push((p.scale(&Scalar::from_int(-1)), 1));
        }
        RootBundle {
            table: table.clone(),
            degree_cap,
            roots,
            rank_offset: zero_roots,
            pairs: Some(pairs),
        }
    }

    /// The complexified tangent bundle of an odd-dimensional manifold:
    /// `(dim-1)/2` pairs of variables `x1..` plus one zero root.
    pub fn tangent(table: &Arc<VariableTable>, degree_cap: u16, dim: u32) -> Self {
        assert!(dim % 2 == 1, "odd-dimensional tangent model");
        let pairs = (1..=(dim - 1) / 2)
            .map(|j| GradedElement::variable_by_name(table, degree_cap, &format!("x{j}")))
            .collect();
        Self::real_from_pairs(table, degree_cap, pairs, 1)
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn degree_cap(&self) -> u16 {
        self.degree_cap
    }

    pub fn rank(&self) -> i64 {
        self.rank_offset + self.roots.iter().map(|(_, m)| m).sum::<i64>()
    }

    pub fn is_real_type(&self) -> bool {
        self.pairs.is_some()
    }

    pub fn pairs(&self) -> Option<&[GradedElement]> {
        self.pairs.as_deref()
    }

    pub fn roots(&self) -> &[(GradedElement, i64)] {
        &self.roots
    }

    /// Tilde reduction: subtract the rank, as a rank-offset adjustment.
    pub fn tilde(&self) -> Self {
        let mut out = self.clone();
        out.rank_offset -= self.rank();
        out.pairs = None;
        out
    }

    /// Formal sum of two virtual bundles.
    pub fn sum(&self, other: &Self) -> Self {
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        RootBundle {
            table: self.table.clone(),
            degree_cap: self.degree_cap,
            roots,
            rank_offset: self.rank_offset + other.rank_offset,
            pairs: None,
        }
    }

    pub fn negate(&self) -> Self {
        let roots = self.roots.iter().map(|(r, m)| (r.clone(), -m)).collect();
        RootBundle {
            table: self.table.clone(),
            degree_cap: self.degree_cap,
            roots,
            rank_offset: -self.rank_offset,
            pairs: None,
        }
    }

    /// Tensor product: root sums with multiplicity products; rank offsets act
    /// as zero roots.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut roots: Vec<(GradedElement, i64)> = Vec::new();
        for (ra, ma) in &self.roots {
            for (rb, mb) in &other.roots {
                roots.push((ra + rb, ma * mb));
            }
            if other.rank_offset != 0 {
                roots.push((ra.clone(), ma * other.rank_offset));
            }
        }
        if self.rank_offset != 0 {
            for (rb, mb) in &other.roots {
                roots.push((rb.clone(), self.rank_offset * mb));
            }
        }
        RootBundle {
            table: self.table.clone(),
            degree_cap: self.degree_cap,
            roots,
            rank_offset: self.rank_offset * other.rank_offset,
            pairs: None,
        }
    }

    /// k-th exterior power of an honest bundle (all multiplicities +1, no
    /// rank offset): roots are sums over k-subsets.
    pub fn exterior_power(&self, k: u32) -> Self {
        assert!(self.rank_offset == 0 && self.roots.iter().all(|(_, m)| *m == 1),
            "exterior_power expects an honest bundle");
        let flat: Vec<&GradedElement> = self.roots.iter().map(|(r, _)| r).collect();
        let mut roots = Vec::new();
        let mut idx: Vec<usize> = (0..k as usize).collect();
        if k as usize > flat.len() {
            return RootBundle {
                table: self.table.clone(),
                degree_cap: self.degree_cap,
                roots,
                rank_offset: 0,
                pairs: None,
            };
        }
        loop {
            let mut s = GradedElement::zero(&self.table, self.degree_cap);
            for &i in &idx {
                s = &s + flat[i];
            }
            roots.push((s, 1));
            // next k-subset in lexicographic order
            let mut i = k as usize;
            loop {
                if i == 0 {
                    return RootBundle {
                        table: self.table.clone(),
                        degree_cap: self.degree_cap,
                        roots,
                        rank_offset: 0,
                        pairs: None,
                    };
                }
                i -= 1;
                if idx[i] != i + flat.len() - k as usize {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..k as usize {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// Second symmetric power of an honest bundle: root sums over unordered
    /// pairs with repetition.
    pub fn sym2(&self) -> Self {
        assert!(self.rank_offset == 0 && self.roots.iter().all(|(_, m)| *m == 1),
            "sym2 expects an honest bundle");
        let flat: Vec<&GradedElement> = self.roots.iter().map(|(r, _)| r).collect();
        let mut roots = Vec::new();
        for i in 0..flat.len() {
            for j in i..flat.len() {
                roots.push((flat[i] + flat[j], 1));
            }
        }
        RootBundle {
            table: self.table.clone(),
            degree_cap: self.degree_cap,
            roots,
            rank_offset: 0,
            pairs: None,
        }
    }
}

/// Chern character: rank offset plus the multiplicity-weighted exponentials
/// of the roots.
pub fn ch(b: &RootBundle) -> GradedElement {
    let mut out =
        GradedElement::constant(&b.table, b.degree_cap, Scalar::from_int(b.rank_offset));
    for (r, m) in &b.roots {
        let e = r.exp_nilpotent().expect("Chern roots are nilpotent");
        out = out.add_scaled(&e, &Scalar::from_int(*m));
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PowerOp {
    /// Total exterior power Λ_t.
    Lambda,
    /// Total symmetric power S_t.
    Symmetric,
}

/// Chern character of `Λ_{±q^t}(b)` or `S_{±q^t}(b)` as a q-series:
///
/// ```text
/// ch(Λ_{s q^t}(b)) = prod (1 + s q^t e^{w_i})^{m_i}
/// ch(S_{s q^t}(b)) = prod (1 - s q^t e^{w_i})^{-m_i}
/// ```
///
/// Negative multiplicities go through series inversion (Λ_t(E-F) =
/// Λ_t(E)/Λ_t(F)); the rank offset contributes `(1 ± s q^t)^{±offset}`.
pub fn power_series(
    op: PowerOp,
    b: &RootBundle,
    t_eighths: i64,
    sign: i64,
    n: u32,
) -> PuiseuxQSeries {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    let order = 8 * n as i64;
    let mut out = PuiseuxQSeries::one(&b.table, b.degree_cap, order);
    let mut apply = |g: &GradedElement, mult: i64| {
        if mult == 0 {
            return;
        }
        let mut f = PuiseuxQSeries::one(&b.table, b.degree_cap, order);
        let c = match op {
            PowerOp::Lambda => Scalar::from_int(sign),
            PowerOp::Symmetric => Scalar::from_int(-sign),
        };
        f.set_coeff(t_eighths, g.scale(&c));
        let exponent = match op {
            PowerOp::Lambda => mult,
            PowerOp::Symmetric => -mult,
        };
        let base = if exponent < 0 {
            f.series_inv().expect("power series factor must be a unit")
        } else {
            f
        };
        for _ in 0..exponent.unsigned_abs() {
            out = out.series_mul(&base);
        }
    };
    for (r, m) in &b.roots {
        let e = r.exp_nilpotent().expect("Chern roots are nilpotent");
        apply(&e, *m);
    }
    let one = GradedElement::one(&b.table, b.degree_cap);
    apply(&one, b.rank_offset);
    out
}

/// The Witten-type infinite tensor products, assembled from truncated
/// power-series factors.
pub enum BundleSeries<'a> {
    /// ⊗ S_{q^n}(T̃) ⊗ Λ_{q^m}(T̃)
    Theta1 { tm: &'a RootBundle },
    /// ⊗ S_{q^n}(T̃) ⊗ Λ_{-q^{m-1/2}}(T̃)
    Theta2 { tm: &'a RootBundle },
    /// ⊗ S_{q^n}(T̃) ⊗ Λ_{q^{m-1/2}}(T̃)
    Theta3 { tm: &'a RootBundle },
    /// Δ(E) ⊗ Λ_{q^n}(Ẽ) ⊗ Λ_{-q^{n-1/2}}(Ẽ) ⊗ Λ_{q^{n-1/2}}(Ẽ)
    QE { e: &'a RootBundle },
    /// ⊗ S_{q^n}(T̃) ⊗ Λ_{q^m}(L̃) ⊗ Λ_{-q^{r-1/2}}(L̃) ⊗ Λ_{q^{s-1/2}}(L̃)
    ThetaSpinC { tm: &'a RootBundle, l: &'a RootBundle },
    /// ⊗ S_{q^n}(T̃) ⊗ Λ_{-q^m}(L̃)
    ThetaSpinCStar { tm: &'a RootBundle, l: &'a RootBundle },
}

/// Chern character q-series of the described infinite tensor product, with
/// factors for q-exponents up to the truncation order.
pub fn bundle_series(desc: &BundleSeries<'_>, n: u32) -> PuiseuxQSeries {
    let (table, cap) = match desc {
        BundleSeries::Theta1 { tm }
        | BundleSeries::Theta2 { tm }
        | BundleSeries::Theta3 { tm } => (tm.table.clone(), tm.degree_cap),
        BundleSeries::QE { e } => (e.table.clone(), e.degree_cap),
        BundleSeries::ThetaSpinC { tm, .. } | BundleSeries::ThetaSpinCStar { tm, .. } => {
            (tm.table.clone(), tm.degree_cap)
        }
    };
    let order = 8 * n as i64;
    let mut out = PuiseuxQSeries::one(&table, cap, order);
    let whole = |j: i64| Q_DENOM * j;
    let half = |j: i64| Q_DENOM * j - 4;
    match desc {
        BundleSeries::Theta1 { tm } => {
            let t = tm.tilde();
            for j in 1..=n as i64 {
                out = out.series_mul(&power_series(PowerOp::Symmetric, &t, whole(j), 1, n));
                out = out.series_mul(&power_series(PowerOp::Lambda, &t, whole(j), 1, n));
            }
        }
        BundleSeries::Theta2 { tm } => {
            let t = tm.tilde();
            for j in 1..=n as i64 {
                out = out.series_mul(&power_series(PowerOp::Symmetric, &t, whole(j), 1, n));
                out = out.series_mul(&power_series(PowerOp::Lambda, &t, half(j), -1, n));
            }
        }
        BundleSeries::Theta3 { tm } => {
            let t = tm.tilde();
            for j in 1..=n as i64 {
                out = out.series_mul(&power_series(PowerOp::Symmetric, &t, whole(j), 1, n));
                out = out.series_mul(&power_series(PowerOp::Lambda, &t, half(j), 1, n));
            }
        }
        BundleSeries::QE { e } => {
            let t = e.tilde();
            out = PuiseuxQSeries::from_graded(spinor_ch(e), order);
            for j in 1..=n as i64 {
                out = out.series_mul(&power_series(PowerOp::Lambda, &t, whole(j), 1, n));
                out = out.series_mul(&power_series(PowerOp::Lambda, &t, half(j), -1, n));
                out = out.series_mul(&power_series(PowerOp::Lambda, &t, half(j), 1, n));
            }
        }
        BundleSeries::ThetaSpinC { tm, l } => {
            let t = tm.tilde();
            let lt = l.tilde();
            for j in 1..=n as i64 {
                out = out.series_mul(&power_series(PowerOp::Symmetric, &t, whole(j), 1, n));
                out = out.series_mul(&power_series(PowerOp::Lambda, &lt, whole(j), 1, n));
                out = out.series_mul(&power_series(PowerOp::Lambda, &lt, half(j), -1, n));
                out = out.series_mul(&power_series(PowerOp::Lambda, &lt, half(j), 1, n));
            }
        }
        BundleSeries::ThetaSpinCStar { tm, l } => {
            let t = tm.tilde();
            let lt = l.tilde();
            for j in 1..=n as i64 {
                out = out.series_mul(&power_series(PowerOp::Symmetric, &t, whole(j), 1, n));
                out = out.series_mul(&power_series(PowerOp::Lambda, &lt, whole(j), -1, n));
            }
        }
    }
    out
}

/// Hirzebruch A-hat form: product over root pairs of `w/(E(w/2)-E(-w/2))`.
pub fn ahat(b: &RootBundle) -> GradedElement {
    let pairs = b.pairs.as_ref().expect("ahat needs a real-type bundle");
    let mut out = GradedElement::one(&b.table, b.degree_cap);
    for p in pairs {
        let f = theta::sinh_half_ratio(p).inverse_unit().expect("sinh ratio is a unit");
        out = out.ring_mul(&f);
    }
    out
}

/// Hirzebruch L-hat form: product over root pairs of
/// `w (E(w/2)+E(-w/2)) / (E(w/2)-E(-w/2))` (= w coth(w/2), constant 2 per
/// pair).
pub fn lhat(b: &RootBundle) -> GradedElement {
    let pairs = b.pairs.as_ref().expect("lhat needs a real-type bundle");
    let mut out = GradedElement::one(&b.table, b.degree_cap);
    for p in pairs {
        let f = theta::sinh_half_ratio(p).inverse_unit().expect("sinh ratio is a unit");
        out = out.ring_mul(&f).ring_mul(&theta::cosh_half_sum(p));
    }
    out
}

/// Spinor bundle character: product over pairs of `E(w/2)+E(-w/2)`; rank
/// 2^{#pairs}.
pub fn spinor_ch(b: &RootBundle) -> GradedElement {
    let pairs = b.pairs.as_ref().expect("spinor_ch needs a real-type bundle");
    let mut out = GradedElement::one(&b.table, b.degree_cap);
    for p in pairs {
        out = out.ring_mul(&theta::cosh_half_sum(p));
    }
    out
}

/// Odd Chern character model: `ch(Δ(E)⊗B, g, d) -> ω·ch(Δ(E))·ch(B)` with ω
/// the odd marker variable.
pub fn odd_model(b: &RootBundle, e: &RootBundle) -> GradedElement {
    let oi = b.table.odd_index().expect("odd_model needs an odd marker variable");
    let omega = GradedElement::variable(&b.table, b.degree_cap, oi);
    omega.ring_mul(&spinor_ch(e)).ring_mul(&ch(b))
}

/// Report from the theta-quotient master oracle.
pub struct CrosscheckReport {
    pub k: u32,
    pub q_order: u32,
    pub degree_cap: u16,
    /// Per twist variant a = 1, 2, 3.
    pub variant_pass: [bool; 3],
    pub first_mismatch: Option<String>,
}

impl CrosscheckReport {
    pub fn pass(&self) -> bool {
        self.variant_pass.iter().all(|&b| b)
    }
}

/// Verifies, coefficientwise, that the bundle-calculus route and the
/// theta-quotient route agree:
///
/// ```text
/// Â ch(Δ(M)) ch(Θ1) = prod_j witten(x_j) twist_1(x_j)
/// 2^{2k-1} Â ch(Θ_a) = prod_j witten(x_j) twist_a(x_j)   (a = 2, 3)
/// ```
///
/// for a tangent model with 2k-1 generic pairs.
pub fn theta_quotient_crosscheck(k: u32, n: u32, degree_cap: u16) -> CrosscheckReport {
    let npairs = 2 * k - 1;
    let mut builder = VariableTable::builder();
    for j in 1..=npairs {
        builder = builder.even(&format!("x{j}"), 2);
    }
    let table = builder.build();
    let tm = RootBundle::tangent(&table, degree_cap, 4 * k - 1);
    let a_hat = ahat(&tm);
    let order = 8 * n as i64;

    let mut variant_pass = [false; 3];
    let mut first_mismatch = None;
    for a in 1..=3u8 {
        let lhs_graded = match a {
            1 => a_hat.ring_mul(&spinor_ch(&tm)),
            _ => a_hat.scale(&Scalar::from_int(1i64 << (2 * k - 1))),
        };
        let series = match a {
            1 => bundle_series(&BundleSeries::Theta1 { tm: &tm }, n),
            2 => bundle_series(&BundleSeries::Theta2 { tm: &tm }, n),
            _ => bundle_series(&BundleSeries::Theta3 { tm: &tm }, n),
        };
        let lhs = series.scale_graded(&lhs_graded);
        let mut rhs = PuiseuxQSeries::one(&table, degree_cap, order);
        for j in 1..=npairs {
            let x = GradedElement::variable_by_name(&table, degree_cap, &format!("x{j}"));
            rhs = rhs.series_mul(&theta::witten_factor(&x, n));
            rhs = rhs.series_mul(&theta::twist_factor(a, &x, n));
        }
        let pass = lhs == rhs;
        variant_pass[a as usize - 1] = pass;
        if !pass && first_mismatch.is_none() {
            let diff = &lhs - &rhs;
            let e = diff.lowest_order().unwrap_or(0);
            first_mismatch = Some(format!(
                "variant {a}: first differing q-power {e}/8, coefficient {}",
                diff.coeff(e)
            ));
        }
    }
    CrosscheckReport { k, q_order: n, degree_cap, variant_pass, first_mismatch }
}

/// Report from the 12-dimensional gravitational-anomaly identity check.
pub struct AgwReport {
    pub pass: bool,
    pub mismatch: Option<String>,
}

/// Degree-12 identity `{L̂}^{(12)} = {8 Â ch(T_C M) - 32 Â}^{(12)}` for a
/// 12-dimensional tangent model with 6 generic pairs.
pub fn agw_check(degree_cap: u16) -> AgwReport {
    let mut builder = VariableTable::builder();
    for j in 1..=6 {
        builder = builder.even(&format!("x{j}"), 2);
    }
    let table = builder.build();
    let pairs =
        (1..=6).map(|j| GradedElement::variable_by_name(&table, degree_cap, &format!("x{j}"))).collect();
    let tm = RootBundle::real_from_pairs(&table, degree_cap, pairs, 0);
    let lhs = lhat(&tm).degree_part(12);
    let a_hat = ahat(&tm);
    let rhs = a_hat
        .ring_mul(&ch(&tm))
        .scale(&Scalar::from_int(8))
        .add_scaled(&a_hat, &Scalar::from_int(-32))
        .degree_part(12);
    let pass = lhs == rhs;
    let mismatch = if pass {
        None
    } else {
        let diff = &lhs - &rhs;
        Some(format!("degree-12 difference: {diff}"))
    };
    AgwReport { pass, mismatch }
}
