//! The localized presentation with odd generators `eps_0`, `eps_n`, and
//! the torsion orders of the central units `z_1`, `z_2` in its `H^0`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::dg::{build_dg_generic, DGPresentation};
use crate::error::QuiverError;
use crate::fukaya::FUKAYA_NAMES;
use crate::lattice::{element_order, in_lattice, smith_normal_form};
use crate::poly::{groebner, IdealBasis, LaurentPoly, LaurentRing, Monomial, MultiPoly, PolyRing};
use crate::slope::PlumbingSpec;

/// Vertices `1..=n` of the Fukaya presentation plus `eps_0` at `1` and
/// `eps_n` at `n`, with `d(eps_0) = f_0(z) theta_1`, `d(eps_n) = f_n(z) theta_n`.
pub fn build_localized(spec: &PlumbingSpec) -> Result<DGPresentation<LaurentRing>, QuiverError> {
    let ring = LaurentRing { field: spec.field };
    let f = unit_factors(spec);
    let n = spec.n();
    build_dg_generic(
        n,
        ring,
        &f,
        f[0].clone(),
        f[n].clone(),
        FUKAYA_NAMES,
        ("eps_0", "eps_n"),
    )
}

fn unit_factors(spec: &PlumbingSpec) -> Vec<LaurentPoly> {
    spec.factors().iter().map(LaurentPoly::from_xy).collect()
}

/// `f_0(z_1, z_2) = 0` and `f_n(z_1, z_2) = 0`, i.e. `z_2^{k} ± z_1^{l} = 0`
/// for the two end slopes.
pub fn unit_relations(spec: &PlumbingSpec) -> [LaurentPoly; 2] {
    let f = unit_factors(spec);
    [f[0].clone(), f[spec.n()].clone()]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    NonTorsion,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::NonTorsion => write!(f, "non-torsion"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(k) => s.serialize_u64(*k),
            Order::NonTorsion => s.serialize_str("non-torsion"),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TorsionReport {
    pub relations: [String; 2],
    /// Rows `(l, -k | s)` imposed on `Z^2 ⊕ (sign)`; `s = 1` means `-1`.
    pub lattice_rows: Vec<[i64; 3]>,
    pub invariant_factors: Vec<i64>,
    pub determinant: i64,
    pub z1: Order,
    pub z2: Order,
    /// `-1 = 1` is forced in characteristic other than two, so `H^0 = 0`
    /// and every unit has order one there.
    pub ring_collapsed: bool,
    pub note: &'static str,
}

const ORDER_NOTE: &str =
    "orders are taken in the group generated by z1, z2 and -1 modulo the two end relations";

impl TorsionReport {
    pub fn both_torsion(&self) -> bool {
        self.ring_collapsed || (self.z1.is_finite() && self.z2.is_finite())
    }
}

/// Lattice row for `z_2^k ± z_1^l = 0`, read as `z_1^l z_2^{-k} = ∓1`.
pub fn relation_row(k: u32, l: u32, plus: bool) -> [i64; 3] {
    [l as i64, -(k as i64), i64::from(plus)]
}

pub fn torsion_orders(spec: &PlumbingSpec) -> TorsionReport {
    let s0 = spec.slope(0);
    let sn = spec.slope(spec.n());
    let char2 = spec.field.characteristic() == 2;
    let mut rows = vec![
        relation_row(s0.k, s0.l, s0.sign == crate::slope::Sign::Plus),
        relation_row(sn.k, sn.l, sn.sign == crate::slope::Sign::Plus),
    ];
    rows.push([0, 0, if char2 { 1 } else { 2 }]);
    let matrix: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    let snf = smith_normal_form(&matrix, 3);
    let collapsed = !char2 && in_lattice(&snf, &[0, 0, 1]);
    let order = |x: &[i64]| match element_order(&snf, x) {
        _ if collapsed => Order::Finite(1),
        Some(k) => Order::Finite(k),
        None => Order::NonTorsion,
    };
    let [r0, rn] = unit_relations(spec).map(|p| format!("{p} = 0"));
    TorsionReport {
        relations: [r0, rn],
        determinant: rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        invariant_factors: snf.diagonal.clone(),
        z1: order(&[1, 0, 0]),
        z2: order(&[0, 1, 0]),
        ring_collapsed: collapsed,
        lattice_rows: rows,
        note: ORDER_NOTE,
    }
}

/// `K[z_1, z_2, w]` with `w = (z_1 z_2)^{-1}`.
fn unit_ring_ideal(spec: &PlumbingSpec) -> (std::sync::Arc<PolyRing>, IdealBasis) {
    let ring = PolyRing::new(spec.field, &["z1", "z2", "w"]);
    let z = [MultiPoly::var(&ring, 0), MultiPoly::var(&ring, 1)];
    let w = MultiPoly::var(&ring, 2);
    let xy = PolyRing::xy(spec.field);
    let mut gens = Vec::new();
    for p in unit_relations(spec) {
        let poly = p.to_poly(&xy).expect("nonnegative exponents");
        gens.push(poly.substitute(&z).expect("two variables"));
    }
    gens.push(&(&(&w * &z[0]) * &z[1]) - &MultiPoly::one(&ring));
    let ideal = groebner(&IdealBasis::new(&ring, gens));
    (ring, ideal)
}

/// For each finite order `k` of `z_v`, checks `z_v^k - 1` lies in
/// `(f_0(z), f_n(z), w z_1 z_2 - 1)`.
pub fn ring_consistency(spec: &PlumbingSpec, report: &TorsionReport) -> bool {
    let (ring, ideal) = unit_ring_ideal(spec);
    [(0usize, report.z1), (1, report.z2)]
        .iter()
        .all(|&(v, ord)| match ord {
            Order::Finite(k) => {
                let mut e = vec![0u32; 3];
                e[v] = k as u32;
                let p = &MultiPoly::monomial(&ring, Monomial(e), spec.field.one())
                    - &MultiPoly::one(&ring);
                ideal.contains(&p)
            }
            Order::NonTorsion => true,
        })
}

/// Whether the unit ring `K[z^{±1}]/(f_0, f_n)` is zero.
pub fn unit_ring_is_zero(spec: &PlumbingSpec) -> bool {
    unit_ring_ideal(spec).1.is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::slope::{validate_spec, Sign, SlopeDatum, Truncation};

    fn spec_over(field: Field, s: &[(u32, u32, Sign)]) -> PlumbingSpec {
        let v: Vec<SlopeDatum> = s
            .iter()
            .map(|&(k, l, e)| SlopeDatum::new(k, l, e))
            .collect();
        validate_spec(&v, field, Truncation::default()).unwrap()
    }

    #[test]
    fn relations() {
        let s = spec_over(
            Field::Rational,
            &[(1, 1, Sign::Plus), (0, 1, Sign::Plus), (2, 1, Sign::Plus)],
        );
        let [a, b] = unit_relations(&s);
        assert_eq!(a.to_string(), "z1 + z2");
        assert_eq!(b.to_string(), "z2^2 + z1");
        let s = spec_over(Field::Rational, &[(1, 0, Sign::Plus), (0, 1, Sign::Plus)]);
        let [a, b] = unit_relations(&s);
        assert_eq!(a.to_string(), "z2 + 1");
        assert_eq!(b.to_string(), "z1 + 1");
    }

    #[test]
    fn worked_case() {
        let s = spec_over(Field::Rational, &[(1, 1, Sign::Plus), (2, 1, Sign::Plus)]);
        let r = torsion_orders(&s);
        assert_eq!((r.z1, r.z2), (Order::Finite(2), Order::Finite(1)));
        assert!(!r.ring_collapsed);
        assert!(ring_consistency(&s, &r));
    }

    #[test]
    fn equal_ends_are_not_torsion() {
        let s = spec_over(Field::Rational, &[(1, 1, Sign::Plus), (1, 1, Sign::Plus)]);
        let r = torsion_orders(&s);
        assert!(!r.both_torsion());
    }

    #[test]
    fn opposite_signs_collapse() {
        let s = spec_over(Field::Rational, &[(1, 1, Sign::Plus), (1, 1, Sign::Minus)]);
        let r = torsion_orders(&s);
        assert!(r.ring_collapsed && r.both_torsion());
        assert_eq!((r.z1, r.z2), (Order::Finite(1), Order::Finite(1)));
        assert!(unit_ring_is_zero(&s));
        let s = spec_over(Field::Prime(2), &[(1, 1, Sign::Plus), (1, 1, Sign::Minus)]);
        let r = torsion_orders(&s);
        assert!(!r.ring_collapsed && !r.both_torsion());
    }

    #[test]
    fn localized_differential() {
        let s = spec_over(
            Field::Rational,
            &[(1, 0, Sign::Plus), (0, 1, Sign::Plus), (1, 2, Sign::Plus)],
        );
        let dg = build_localized(&s).unwrap();
        let p = &dg.pres;
        let d = dg.differential(&p.word(&["eps_0"]).unwrap());
        assert_eq!(p.display(&d), "(z2 + 1) theta_1");
        assert!(p.reduce(&p.word(&["eps_0", "eps_0"]).unwrap()).is_zero());
        assert!(dg.differential(&d).is_zero());
    }
}
