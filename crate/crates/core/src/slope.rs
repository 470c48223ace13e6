//! Slope data of a plumbing, the polynomial `f`, the three-manifold cores
//! and the exceptional-curve labels.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::SpecError;
use crate::field::Field;
use crate::poly::{Monomial, MultiPoly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One signed slope `(k, l, ±)`, standing for `f = y^k ± x^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlopeDatum {
    pub k: u32,
    pub l: u32,
    pub sign: Sign,
}

impl SlopeDatum {
    pub fn new(k: u32, l: u32, sign: Sign) -> Self {
        SlopeDatum { k, l, sign }
    }

    pub fn is_admissible(&self) -> bool {
        self.k == 1 || self.l == 1
    }

    /// The vector `(k, ±l)` in the lattice of the torus fibre.
    pub fn vector(&self) -> (i64, i64) {
        (self.k as i64, self.sign.as_i64() * self.l as i64)
    }
}

impl fmt::Display for SlopeDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.l, self.sign)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Truncation {
    pub poly_degree: u32,
    pub winding: u32,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            poly_degree: 6,
            winding: 2,
        }
    }
}

/// Validated slope list `slopes[0..=n]` with `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingSpec {
    slopes: Vec<SlopeDatum>,
    pub field: Field,
    pub truncation: Truncation,
}

impl PlumbingSpec {
    pub fn slopes(&self) -> &[SlopeDatum] {
        &self.slopes
    }

    /// Number of exceptional curves; there are `n + 1` slopes.
    pub fn n(&self) -> usize {
        self.slopes.len() - 1
    }

    pub fn slope(&self, i: usize) -> SlopeDatum {
        self.slopes[i]
    }

    pub fn xy_ring(&self) -> Arc<PolyRing> {
        PolyRing::xy(self.field)
    }

    /// `f_0, ..., f_n` in `K[x, y]`.
    pub fn factors(&self) -> Vec<MultiPoly> {
        let ring = self.xy_ring();
        self.slopes.iter().map(|d| f_component(d, &ring)).collect()
    }
}

pub fn validate_spec(
    slopes: &[SlopeDatum],
    field: Field,
    truncation: Truncation,
) -> Result<PlumbingSpec, SpecError> {
    if slopes.is_empty() {
        return Err(SpecError::Empty);
    }
    if let Some((index, d)) = slopes.iter().enumerate().find(|(_, d)| !d.is_admissible()) {
        return Err(SpecError::SlopeCondition {
            index,
            k: d.k,
            l: d.l,
        });
    }
    if slopes.len() == 1 {
        return Err(SpecError::SingleSlope);
    }
    if truncation.poly_degree == 0 {
        return Err(SpecError::ZeroTruncation);
    }
    Ok(PlumbingSpec {
        slopes: slopes.to_vec(),
        field,
        truncation,
    })
}

/// `y^k ± x^l` in a ring whose variables are `(x, y)`.
pub fn f_component(d: &SlopeDatum, ring: &Arc<PolyRing>) -> MultiPoly {
    assert_eq!(ring.nvars(), 2);
    let field = ring.field;
    let mut p = MultiPoly::monomial(ring, Monomial(vec![0, d.k]), field.one());
    p.add_term(Monomial(vec![d.l, 0]), field.from_i64(d.sign.as_i64()));
    p
}

pub fn f_total(spec: &PlumbingSpec) -> MultiPoly {
    let ring = spec.xy_ring();
    spec.factors()
        .iter()
        .fold(MultiPoly::one(&ring), |acc, f| &acc * f)
}

/// Pairs `i < j` with `f_i = f_j` over the ground field. In characteristic
/// two this catches slopes that differ only in sign.
pub fn coincident_factors(spec: &PlumbingSpec) -> Vec<(usize, usize)> {
    let f = spec.factors();
    let mut out = Vec::new();
    for i in 0..f.len() {
        for j in (i + 1)..f.len() {
            if f[i] == f[j] {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThreeManifoldType {
    Sphere,
    S1xS2,
    Lens { p: u64, q: u64 },
}

impl fmt::Display for ThreeManifoldType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThreeManifoldType::Sphere => write!(f, "S3"),
            ThreeManifoldType::S1xS2 => write!(f, "S1xS2"),
            ThreeManifoldType::Lens { p, q } => write!(f, "L({p},{q})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveType {
    /// Normal bundle `O(-1) + O(-1)`.
    NegNeg,
    /// Normal bundle `O(0) + O(-2)`.
    ZeroNegTwo,
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveType::NegNeg => "(-1,-1)",
            CurveType::ZeroNegTwo => "(0,-2)",
        })
    }
}

pub fn det(s: (i64, i64), t: (i64, i64)) -> i64 {
    s.0 * t.1 - s.1 * t.0
}

/// A vector `t` with `det(s, t) = 1`, from the Bezout identity for `s`.
pub fn unimodular_partner(s: (i64, i64)) -> (i64, i64) {
    let e = s.0.extended_gcd(&s.1);
    assert_eq!(e.gcd.abs(), 1, "slope vector {s:?} is not primitive");
    let (u, v) = (e.x * e.gcd, e.y * e.gcd);
    debug_assert_eq!(s.0 * u + s.1 * v, 1);
    (-v, u)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(p as i64));
    e.x.rem_euclid(p as i64) as u64
}

/// Smallest representative of `{±q^{±1} mod p}`.
pub fn canonical_q(q: u64, p: u64) -> u64 {
    let q = q % p;
    let qi = mod_inverse(q, p);
    [q, p - q, qi, p - qi].into_iter().min().expect("nonempty")
}

/// Genus-one Heegaard splitting glued along slopes `s` and `s'`.
pub fn matching_cycle_type(d: &SlopeDatum, d2: &SlopeDatum) -> ThreeManifoldType {
    matching_cycle_type_with(d, d2, 0)
}

/// Same as [`matching_cycle_type`] with the basis completion `t + m s`.
pub fn matching_cycle_type_with(d: &SlopeDatum, d2: &SlopeDatum, m: i64) -> ThreeManifoldType {
    let s = d.vector();
    let s2 = d2.vector();
    let beta = det(s, s2);
    let p = beta.unsigned_abs();
    match p {
        0 => ThreeManifoldType::S1xS2,
        1 => ThreeManifoldType::Sphere,
        _ => {
            let t0 = unimodular_partner(s);
            let t = (t0.0 + m * s.0, t0.1 + m * s.1);
            let alpha = det(s2, t);
            let q = alpha.rem_euclid(p as i64) as u64;
            ThreeManifoldType::Lens {
                p,
                q: canonical_q(q, p),
            }
        }
    }
}

/// `Q_i` is the matching cycle over the arc joining the critical values
/// labelled by slopes `i - 1` and `i` (indices mod `n + 1`).
pub fn core_types(spec: &PlumbingSpec) -> Vec<ThreeManifoldType> {
    let m = spec.slopes.len();
    (0..m)
        .map(|i| matching_cycle_type(&spec.slopes[(i + m - 1) % m], &spec.slopes[i]))
        .collect()
}

/// Labels of `C_1, ..., C_n`.
pub fn exceptional_curve_types(spec: &PlumbingSpec) -> Vec<CurveType> {
    core_types(spec)
        .into_iter()
        .skip(1)
        .map(|t| {
            if t == ThreeManifoldType::Sphere {
                CurveType::NegNeg
            } else {
                CurveType::ZeroNegTwo
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    #[serde(rename = "A")]
    pub a: bool,
    /// Determinant form: the end slopes are not parallel.
    #[serde(rename = "B")]
    pub b: bool,
    #[serde(rename = "C")]
    pub c: bool,
    /// Literal form: the end slopes differ as signed data `(k, l, ±)`.
    pub b_signed_pairs: bool,
}

pub fn assumptions(spec: &PlumbingSpec) -> Assumptions {
    let a = spec.slopes.iter().all(SlopeDatum::is_admissible);
    let s = &spec.slopes;
    let first = s[0];
    let last = s[s.len() - 1];
    let b = a && det(first.vector(), last.vector()) != 0;
    let mut c = a;
    for i in 0..s.len() {
        for j in (i + 1)..s.len() {
            if det(s[i].vector(), s[j].vector()) == 0 {
                c = false;
            }
        }
    }
    Assumptions {
        a,
        b,
        c,
        b_signed_pairs: a && first != last,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    fn spec(s: &[(u32, u32, Sign)]) -> PlumbingSpec {
        let v: Vec<SlopeDatum> = s
            .iter()
            .map(|&(k, l, e)| SlopeDatum::new(k, l, e))
            .collect();
        validate_spec(&v, Field::Rational, Truncation::default()).unwrap()
    }

    #[test]
    fn validation() {
        let syz = spec(&[(1, 0, Plus), (0, 1, Plus)]);
        assert_eq!(syz.n(), 1);
        let bad = [SlopeDatum::new(1, 0, Plus), SlopeDatum::new(2, 3, Plus)];
        assert_eq!(
            validate_spec(&bad, Field::Rational, Truncation::default()),
            Err(SpecError::SlopeCondition {
                index: 1,
                k: 2,
                l: 3
            })
        );
        let one = [SlopeDatum::new(1, 0, Plus)];
        assert_eq!(
            validate_spec(&one, Field::Rational, Truncation::default())
                .unwrap_err()
                .code(),
            "n-zero"
        );
        spec(&[(1, 5, Minus), (1, 5, Minus)]);
    }

    #[test]
    fn components() {
        let r = PolyRing::xy(Field::Rational);
        assert_eq!(
            f_component(&SlopeDatum::new(1, 0, Plus), &r).to_string(),
            "y + 1"
        );
        assert_eq!(
            f_component(&SlopeDatum::new(0, 1, Plus), &r).to_string(),
            "x + 1"
        );
        assert_eq!(
            f_component(&SlopeDatum::new(1, 3, Minus), &r).to_string(),
            "-x^3 + y"
        );
        assert_eq!(
            f_total(&spec(&[(1, 1, Plus), (1, 1, Minus)])).to_string(),
            "-x^2 + y^2"
        );
        assert_eq!(
            f_total(&spec(&[(1, 0, Plus), (0, 1, Plus)])).to_string(),
            "x*y + x + y + 1"
        );
    }

    #[test]
    fn lens_spaces() {
        let a = SlopeDatum::new(1, 0, Plus);
        for k in 1..6 {
            assert_eq!(
                matching_cycle_type(&a, &SlopeDatum::new(1, k, Plus)),
                if k == 1 {
                    ThreeManifoldType::Sphere
                } else {
                    ThreeManifoldType::Lens { p: k as u64, q: 1 }
                }
            );
        }
        assert_eq!(matching_cycle_type(&a, &a), ThreeManifoldType::S1xS2);
        assert_eq!(
            matching_cycle_type(&SlopeDatum::new(0, 1, Plus), &SlopeDatum::new(1, 4, Plus)),
            ThreeManifoldType::Sphere
        );
        // (1,5) against (5,1): det = -24, alpha = 5.
        assert_eq!(
            matching_cycle_type(&SlopeDatum::new(1, 5, Plus), &SlopeDatum::new(5, 1, Plus)),
            ThreeManifoldType::Lens { p: 24, q: 5 }
        );
    }

    #[test]
    fn double_bubble() {
        let s = spec(&[(1, 0, Plus), (0, 1, Plus), (1, 2, Plus)]);
        assert_eq!(
            core_types(&s),
            vec![
                ThreeManifoldType::Lens { p: 2, q: 1 },
                ThreeManifoldType::Sphere,
                ThreeManifoldType::Sphere
            ]
        );
        assert_eq!(exceptional_curve_types(&s), vec![CurveType::NegNeg; 2]);
        let a = assumptions(&s);
        assert!(a.a && a.b && a.c);
    }

    #[test]
    fn assumption_failures() {
        let a = assumptions(&spec(&[(1, 1, Plus), (0, 1, Plus), (1, 1, Plus)]));
        assert!(a.a && !a.b && !a.c && !a.b_signed_pairs);
        let a = assumptions(&spec(&[(1, 0, Plus), (1, 0, Plus)]));
        assert!(a.a && !a.b && !a.c);
        // Parallel but unequal as signed data.
        let a = assumptions(&spec(&[(1, 0, Plus), (1, 0, Minus)]));
        assert!(!a.b && a.b_signed_pairs);
    }

    #[test]
    fn curve_types() {
        assert_eq!(
            exceptional_curve_types(&spec(&[(1, 0, Plus), (1, 2, Plus)])),
            vec![CurveType::ZeroNegTwo]
        );
        assert_eq!(
            exceptional_curve_types(&spec(&[(1, 1, Plus), (1, 1, Minus)])),
            vec![CurveType::ZeroNegTwo]
        );
        assert_eq!(
            core_types(&spec(&[(1, 1, Plus), (1, 1, Plus)])),
            vec![ThreeManifoldType::S1xS2; 2]
        );
    }
}
