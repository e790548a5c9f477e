//! The E8 root system, the adjoint character, and the affine character
//! `phi(tau)^8 ch(V)` built from eight-fold theta products.

use crate::kernel::{GradedElement, PuiseuxQSeries, Scalar};
use crate::theta::{theta_expansion, ThetaKind};

/// The 240 roots of E8, stored in doubled coordinates so everything is an
/// integer: 112 vectors `±2e_k ± 2e_l` and 128 vectors `(±1,...,±1)` with an
/// even number of minus signs (true coordinates are half these).
pub struct E8RootSystem {
    roots: Vec<[i8; 8]>,
}

/// Enumerate the standard realization of the E8 root system.
pub fn e8_roots() -> E8RootSystem {
    let mut roots = Vec::with_capacity(240);
    for k in 0..8 {
        for l in (k + 1)..8 {
            for sk in [2i8, -2] {
                for sl in [2i8, -2] {
                    let mut r = [0i8; 8];
                    r[k] = sk;
                    r[l] = sl;
                    roots.push(r);
                }
            }
        }
    }
    for mask in 0..256u16 {
        if mask.count_ones() % 2 == 0 {
            let mut r = [1i8; 8];
            for (b, v) in r.iter_mut().enumerate() {
                if mask & (1 << b) != 0 {
                    *v = -1;
                }
            }
            roots.push(r);
        }
    }
    E8RootSystem { roots }
}

impl E8RootSystem {
    pub fn count(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[[i8; 8]] {
        &self.roots
    }

    /// Squared length of each root in true coordinates (doubled / 2).
    pub fn norms_squared(&self) -> Vec<i64> {
        self.roots
            .iter()
            .map(|r| r.iter().map(|&a| (a as i64) * (a as i64)).sum::<i64>() / 4)
            .collect()
    }

    /// `sum_alpha alpha_a alpha_b` in true coordinates (= 60 delta_ab).
    pub fn gram_sum(&self) -> [[i64; 8]; 8] {
        let mut g = [[0i64; 8]; 8];
        for r in &self.roots {
            for a in 0..8 {
                for b in 0..8 {
                    g[a][b] += (r[a] as i64) * (r[b] as i64);
                }
            }
        }
        for row in &mut g {
            for v in row.iter_mut() {
                *v /= 4;
            }
        }
        g
    }

    /// Adjoint character `8 + sum_alpha exp(<alpha, w>)` in the curvature
    /// roots `ys` (inactive slots may be the zero element).
    pub fn ch_adjoint(&self, ys: &[GradedElement; 8]) -> GradedElement {
        let table = ys[0].table().clone();
        let cap = ys[0].degree_cap();
        let mut out = GradedElement::constant(&table, cap, Scalar::from_int(8));
        for r in &self.roots {
            let mut pairing = GradedElement::zero(&table, cap);
            for (l, y) in ys.iter().enumerate() {
                if r[l] != 0 && !y.is_zero() {
                    pairing = pairing.add_scaled(y, &Scalar::ratio(r[l] as i64, 2));
                }
            }
            out = &out + &pairing.exp_nilpotent().expect("root pairing is nilpotent");
        }
        out
    }
}

/// `c2(W) = -30 sum_l w_l^2` from the curvature roots.
pub fn c2_from_ys(ys: &[GradedElement]) -> GradedElement {
    let table = ys[0].table().clone();
    let cap = ys[0].degree_cap();
    let mut s = GradedElement::zero(&table, cap);
    for y in ys {
        s = &s + &y.ring_mul(y);
    }
    s.scale(&Scalar::from_int(-30))
}

/// The normalized affine character
/// `phi(tau)^8 ch(V) = (prod theta1(y_l) + prod theta2(y_l) + prod theta3(y_l))/2`.
///
/// Only integer q-powers survive: the eight `q^{1/8}` prefactors of the
/// theta1 product combine to `q`, and the odd half-powers of the theta2 and
/// theta3 products cancel in the sum.
pub fn theta_v(ys: &[GradedElement; 8], n: u32) -> PuiseuxQSeries {
    let table = ys[0].table().clone();
    let cap = ys[0].degree_cap();
    let order = 8 * n as i64;
    let mut total = PuiseuxQSeries::zero(&table, cap, order);
    for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
        let mut prod = PuiseuxQSeries::one(&table, cap, order);
        for y in ys {
            prod = prod.series_mul(&theta_expansion(kind, y, n));
        }
        total = total.add_scaled(&prod, &Scalar::one());
    }
    total.scale(&Scalar::ratio(1, 2))
}

/// The E8×E8 character `phi(tau)^16 ch(V_i) ch(V_j)`.
pub fn theta_v_pair(
    ys_i: &[GradedElement; 8],
    ys_j: &[GradedElement; 8],
    n: u32,
) -> PuiseuxQSeries {
    theta_v(ys_i, n).series_mul(&theta_v(ys_j, n))
}

/// `ch(Wbar)` extracted from the q^2 coefficient of the affine character:
/// `Wbar := (q^2 coefficient) + 8 ch(W) - 20`.
pub fn extract_wbar(series: &PuiseuxQSeries, ch_w: &GradedElement) -> GradedElement {
    let q2 = series.coeff_q(2);
    q2.add_scaled(ch_w, &Scalar::from_int(8)).add_scaled(
        &GradedElement::one(ch_w.table(), ch_w.degree_cap()),
        &Scalar::from_int(-20),
    )
}

/// Character data for one E8 factor: the adjoint character, its second Chern
/// class, and the extracted `Wbar` character.
pub struct E8CharacterData {
    pub ch_w: GradedElement,
    pub c2_w: GradedElement,
    pub ch_wbar: GradedElement,
}

impl E8CharacterData {
    /// Build and validate the invariants: rank 248, no degree-2 part, the
    /// degree-4 part equal to `-c2(W)`, and rank(Wbar) = 4124.
    pub fn new(roots: &E8RootSystem, ys: &[GradedElement; 8], n: u32) -> Self {
        let ch_w = roots.ch_adjoint(ys);
        let c2_w = c2_from_ys(ys);
        let series = theta_v(ys, n.max(2));
        let ch_wbar = extract_wbar(&series, &ch_w);
        let table = ch_w.table();
        let cap = ch_w.degree_cap();
        debug_assert_eq!(ch_w.degree_part(0), GradedElement::constant(table, cap, Scalar::from_int(248)));
        debug_assert!(ch_w.degree_part(2).is_zero());
        debug_assert_eq!(ch_w.degree_part(4), c2_w.scale(&Scalar::from_int(-1)));
        debug_assert_eq!(
            ch_wbar.degree_part(0),
            GradedElement::constant(table, cap, Scalar::from_int(4124))
        );
        E8CharacterData { ch_w, c2_w, ch_wbar }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::VariableTable;
    use crate::modforms;
    use std::sync::Arc;

    fn ytable(active: usize) -> (Arc<VariableTable>, [GradedElement; 8]) {
        let mut b = VariableTable::builder();
        for l in 1..=active {
            b = b.even(&format!("y{l}"), 2);
        }
        let t = b.build();
        let ys: Vec<GradedElement> = (0..8)
            .map(|l| {
                if l < active {
                    GradedElement::variable_by_name(&t, 8, &format!("y{}", l + 1))
                } else {
                    GradedElement::zero(&t, 8)
                }
            })
            .collect();
        (t, ys.try_into().unwrap())
    }

    #[test]
    fn root_count_and_norms() {
        let r = e8_roots();
        assert_eq!(r.count(), 240);
        assert!(r.norms_squared().iter().all(|&n| n == 2));
    }

    #[test]
    fn gram_sum_is_sixty_delta() {
        let g = e8_roots().gram_sum();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(g[a][b], if a == b { 60 } else { 0 });
            }
        }
    }

    #[test]
    fn adjoint_character_structure() {
        let r = e8_roots();
        let (t, ys) = ytable(2);
        let chw = r.ch_adjoint(&ys);
        assert_eq!(chw.degree_part(0), GradedElement::constant(&t, 8, Scalar::from_int(248)));
        assert!(chw.degree_part(2).is_zero());
        // degree-4 part = 30 sum w_l^2 = -c2(W)
        let c2 = c2_from_ys(&ys[..2]);
        assert_eq!(chw.degree_part(4), c2.scale(&Scalar::from_int(-1)));
        // only degrees 0 mod 4 up to the cap
        assert!(chw.degree_part(6).is_zero());
    }

    #[test]
    fn theta_v_at_zero_is_e4() {
        let (t, ys) = ytable(0);
        let v = theta_v(&ys, 3);
        let e4 = modforms::eisenstein(4, 3, &t, 8).unwrap();
        assert_eq!(v, e4);
    }

    #[test]
    fn theta_v_q1_is_adjoint_minus_eight() {
        let r = e8_roots();
        let (t, ys) = ytable(2);
        let v = theta_v(&ys, 2);
        assert!(v.has_only_integer_powers());
        let expect = r.ch_adjoint(&ys).add_scaled(
            &GradedElement::one(&t, 8),
            &Scalar::from_int(-8),
        );
        assert_eq!(v.coeff_q(1), expect);
    }

    #[test]
    fn wbar_rank_bookkeeping() {
        // q^2 coefficient at y=0 is 2160 = 20 - 8*248 + 4124
        let r = e8_roots();
        let (t, ys) = ytable(2);
        let v = theta_v(&ys, 2);
        let data = E8CharacterData::new(&r, &ys, 2);
        assert_eq!(
            data.ch_wbar.degree_part(0),
            GradedElement::constant(&t, 8, Scalar::from_int(4124))
        );
        assert!(data.ch_wbar.degree_part(2).is_zero());
        // reconstruct q^2 = ch(20 - 8W + Wbar)
        let recon = GradedElement::constant(&t, 8, Scalar::from_int(20))
            .add_scaled(&data.ch_w, &Scalar::from_int(-8))
            .add_scaled(&data.ch_wbar, &Scalar::one());
        assert_eq!(v.coeff_q(2), recon);
        assert_eq!(20 - 8 * 248 + 4124, 2160);
    }

    #[test]
    fn pair_q1_is_sum_of_adjoints_minus_sixteen() {
        let r = e8_roots();
        let mut b = VariableTable::builder();
        for l in 1..=2 {
            b = b.even(&format!("y{l}"), 2);
        }
        for l in 1..=2 {
            b = b.even(&format!("z{l}"), 2);
        }
        let t = b.build();
        let mk = |prefix: &str| -> [GradedElement; 8] {
            (0..8)
                .map(|l| {
                    if l < 2 {
                        GradedElement::variable_by_name(&t, 8, &format!("{prefix}{}", l + 1))
                    } else {
                        GradedElement::zero(&t, 8)
                    }
                })
                .collect::<Vec<_>>()
                .try_into()
                .unwrap()
        };
        let ys = mk("y");
        let zs = mk("z");
        let pair = theta_v_pair(&ys, &zs, 2);
        let chwi = r.ch_adjoint(&ys);
        let chwj = r.ch_adjoint(&zs);
        let expect = (&chwi + &chwj).add_scaled(
            &GradedElement::one(&t, 8),
            &Scalar::from_int(-16),
        );
        assert_eq!(pair.coeff_q(1), expect);
        // q^2 coefficient: ch(-16Wi - 16Wj + WiWj + Wbar_i + Wbar_j + 104)
        let di = E8CharacterData::new(&r, &ys, 2);
        let dj = E8CharacterData::new(&r, &zs, 2);
        let q2 = chwi
            .scale(&Scalar::from_int(-16))
            .add_scaled(&chwj, &Scalar::from_int(-16))
            .add_scaled(&chwi.ring_mul(&chwj), &Scalar::one())
            .add_scaled(&di.ch_wbar, &Scalar::one())
            .add_scaled(&dj.ch_wbar, &Scalar::one())
            .add_scaled(&GradedElement::one(&t, 8), &Scalar::from_int(104));
        assert_eq!(pair.coeff_q(2), q2);
    }

    #[test]
    fn pair_at_zero_is_e4_squared() {
        let (t, ys) = ytable(0);
        let pair = theta_v_pair(&ys, &ys, 2);
        let e4 = modforms::eisenstein(4, 2, &t, 8).unwrap();
        assert_eq!(pair, e4.series_mul(&e4));
    }
}
