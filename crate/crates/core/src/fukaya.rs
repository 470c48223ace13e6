//! The wrapped-Fukaya presentation over `K[z_1^{±1}, z_2^{±1}]`, its
//! endomorphism-ring identities, and the comparison map `psi` into the
//! completed algebra over `K[[x, y]]`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::QuiverError;
use crate::field::Field;
use crate::poly::{
    groebner, quotient_dimension, series_invert, Dimension, IdealBasis, LaurentPoly, LaurentRing,
    Monomial, MultiPoly, PolyRing, SeriesRing, TruncatedSeries,
};
use crate::quiver::{cyclic_presentation, Element, Naming, Path, Presentation, STANDARD_NAMES};
use crate::ring::CoeffRing;
use crate::slope::PlumbingSpec;

pub const FUKAYA_NAMES: Naming<'static> = Naming {
    forward: "eta",
    backward: "delta",
    idempotent: "theta",
};

#[derive(Clone, Debug)]
pub struct FukayaPresentation {
    pub pres: Presentation<LaurentRing>,
    /// `f_i(z_1, z_2)`.
    pub factors: Vec<LaurentPoly>,
}

impl FukayaPresentation {
    pub fn n(&self) -> usize {
        self.factors.len() - 1
    }

    pub fn field(&self) -> Field {
        self.pres.ring().field
    }

    /// `f(z_1, z_2) = f_0 ⋯ f_n`.
    pub fn f_total(&self) -> LaurentPoly {
        self.factors
            .iter()
            .fold(LaurentPoly::one(self.field()), |acc, f| &acc * f)
    }

    pub fn theta(&self, i: usize) -> Element<LaurentRing> {
        self.pres.idempotent(i)
    }

    pub fn eta(&self, i: usize) -> usize {
        2 * i
    }

    pub fn delta(&self, i: usize) -> usize {
        2 * i + 1
    }

    /// `x_r` at vertex `i`: the `r`-fold forward cycle for `r > 0`, the
    /// `|r|`-fold backward cycle for `r < 0`, and `theta^i` for `r = 0`.
    pub fn winding_element(&self, i: usize, r: i64) -> Element<LaurentRing> {
        winding_path_element(&self.pres, i, r)
    }
}

/// Cycle word at vertex `i` in a cyclic presentation built by
/// `cyclic_presentation` (forward arrow `2k`, backward arrow `2k + 1`).
pub fn winding_path<R: CoeffRing>(p: &Presentation<R>, i: usize, r: i64) -> Path {
    let m = p.quiver().count;
    let mut traversal = Vec::new();
    let mut v = i;
    for _ in 0..(r.unsigned_abs() as usize * m) {
        if r > 0 {
            traversal.push(2 * v);
            v = (v + 1) % m;
        } else {
            let prev = (v + m - 1) % m;
            traversal.push(2 * prev + 1);
            v = prev;
        }
    }
    if traversal.is_empty() {
        return Path::idempotent(i);
    }
    traversal.reverse();
    Path::from_word(p.quiver(), &traversal).expect("cycle is composable")
}

pub fn winding_path_element<R: CoeffRing>(p: &Presentation<R>, i: usize, r: i64) -> Element<R> {
    p.term(winding_path(p, i, r), p.ring().one())
}

pub fn build_fukaya_presentation(spec: &PlumbingSpec) -> Result<FukayaPresentation, QuiverError> {
    let ring = LaurentRing { field: spec.field };
    let factors: Vec<LaurentPoly> = spec.factors().iter().map(LaurentPoly::from_xy).collect();
    let pres = cyclic_presentation(spec.n(), ring, factors.clone(), FUKAYA_NAMES)?;
    Ok(FukayaPresentation { pres, factors })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EndomorphismReport {
    pub vertex: usize,
    pub winding_bound: u32,
    pub identities_checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Checks `x_{-1} x_1 = x_1 x_{-1} = f ϑ^i` and `x_r x_{r'} = x_{r+r'}` for
/// `|r|, |r'| <= w`, `r r' >= 0`, by rewriting.
pub fn endomorphism_ring_check(fp: &FukayaPresentation, i: usize, w: u32) -> EndomorphismReport {
    let p = &fp.pres;
    let mut failures = Vec::new();
    let mut checked = 0;
    let f_theta = p.scale(&fp.f_total(), &fp.theta(i));
    let x1 = fp.winding_element(i, 1);
    let xm1 = fp.winding_element(i, -1);
    for (name, prod) in [
        ("x_-1 x_1", p.multiply(&xm1, &x1)),
        ("x_1 x_-1", p.multiply(&x1, &xm1)),
    ] {
        checked += 1;
        if prod != f_theta {
            failures.push(format!(
                "{name} = {} but f theta = {}",
                p.display(&prod),
                p.display(&f_theta)
            ));
        }
    }
    let w = w as i64;
    for r in -w..=w {
        for s in -w..=w {
            if r * s < 0 {
                continue;
            }
            checked += 1;
            let lhs = p.multiply(&fp.winding_element(i, r), &fp.winding_element(i, s));
            let rhs = fp.winding_element(i, r + s);
            if lhs != rhs {
                failures.push(format!("x_{r} x_{s} != x_{}", r + s));
            }
        }
    }
    for r in [-1i64, 1] {
        checked += 1;
        let path = winding_path(p, i, r);
        if path.winding(p.quiver()) != r || !p.is_normal(&path) {
            failures.push(format!("cycle word for x_{r} has the wrong winding"));
        }
    }
    EndomorphismReport {
        vertex: i,
        winding_bound: w as u32,
        identities_checked: checked,
        passed: failures.is_empty(),
        failures,
    }
}

/// `psi(z_1) = x - 1`, `psi(z_2) = y - 1`, extended to Laurent polynomials
/// with inverses taken as truncated series.
#[derive(Clone, Debug)]
pub struct Psi {
    pub target: Presentation<SeriesRing>,
    series: SeriesRing,
    z_images: [TruncatedSeries; 2],
    z_inverses: [TruncatedSeries; 2],
}

fn psi_coefficient(
    series: &SeriesRing,
    z_images: &[TruncatedSeries; 2],
    z_inverses: &[TruncatedSeries; 2],
    c: &LaurentPoly,
) -> TruncatedSeries {
    let mut out = series.zero();
    for ((e1, e2), k) in c.terms() {
        let mut t = series.from_poly(&MultiPoly::constant(&series.poly, k.clone()));
        for (v, e) in [(0usize, e1), (1, e2)] {
            let base = if e >= 0 { &z_images[v] } else { &z_inverses[v] };
            t = t.mul(&base.pow(e.unsigned_abs()));
        }
        out = out.add(&t);
    }
    out
}

/// `K[z_1, z_2]` with variables named for printing.
fn z_ring(field: Field) -> std::sync::Arc<PolyRing> {
    PolyRing::new(field, &["z1", "z2"])
}

impl Psi {
    /// The target is the cyclic presentation over `K[[x, y]]/(x, y)^N` with
    /// `t_i -> f_i(x - 1, y - 1)`, the base change compatible with `psi`.
    pub fn new(fp: &FukayaPresentation, order: u32) -> Result<Psi, QuiverError> {
        let series = SeriesRing::new(fp.field(), order);
        let one = series.one();
        let z_images = [series.x().sub(&one), series.y().sub(&one)];
        let z_inverses = [
            series_invert(&z_images[0]).expect("constant term -1"),
            series_invert(&z_images[1]).expect("constant term -1"),
        ];
        let coeffs: Vec<TruncatedSeries> = fp
            .factors
            .iter()
            .map(|f| psi_coefficient(&series, &z_images, &z_inverses, f))
            .collect();
        let target = cyclic_presentation(fp.n(), series.clone(), coeffs, STANDARD_NAMES)?;
        let psi = Psi {
            target,
            series,
            z_images,
            z_inverses,
        };
        Ok(psi)
    }

    pub fn series(&self) -> &SeriesRing {
        &self.series
    }

    pub fn coefficient(&self, c: &LaurentPoly) -> TruncatedSeries {
        psi_coefficient(&self.series, &self.z_images, &self.z_inverses, c)
    }

    /// Generator-wise image `theta -> e`, `eta -> a`, `delta -> b`, reduced.
    pub fn apply(&self, fp: &FukayaPresentation, x: &Element<LaurentRing>) -> Element<SeriesRing> {
        fp.pres
            .map_element(&self.target, x, |c| self.coefficient(c))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PsiBlock {
    pub source: usize,
    pub target: usize,
    pub winding: i64,
    pub fukaya_dim: usize,
    pub completed_dim: usize,
    pub paths_match: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PsiReport {
    pub winding_bound: u32,
    pub order: u32,
    pub relations_checked: usize,
    pub relation_failures: Vec<String>,
    /// Whether the relations would also vanish with the unshifted base
    /// change `t_i -> f_i(x, y)`; informational only.
    pub relations_vanish_unshifted: bool,
    pub coefficient_dims: (usize, usize),
    pub coefficient_map_unitriangular: bool,
    pub blocks: Vec<PsiBlock>,
    pub block_failures: usize,
    pub passed: bool,
}

/// `dim K[z_1^{±1}, z_2^{±1}] / (z_1 + 1, z_2 + 1)^N`, computed in `K[z_1, z_2]`
/// (both `z` are units modulo the ideal).
pub fn completed_laurent_dimension(field: Field, order: u32) -> Dimension {
    quotient_dimension(&completion_ideal(field, order))
}

/// `dim K[x, y] / (x, y)^N`.
/// Reduced Gröbner basis of `(z_1 + 1, z_2 + 1)^N`.
pub fn completion_ideal(field: Field, order: u32) -> IdealBasis {
    let r = z_ring(field);
    let u1 = &MultiPoly::var(&r, 0) + &MultiPoly::one(&r);
    let u2 = &MultiPoly::var(&r, 1) + &MultiPoly::one(&r);
    groebner(&IdealBasis::new(
        &r,
        (0..=order)
            .map(|a| &u1.pow(a) * &u2.pow(order - a))
            .collect(),
    ))
}

pub fn completed_series_dimension(field: Field, order: u32) -> Dimension {
    let r = PolyRing::xy(field);
    let gens = (0..=order)
        .map(|a| MultiPoly::monomial(&r, Monomial(vec![a, order - a]), field.one()))
        .collect();
    quotient_dimension(&IdealBasis::new(&r, gens))
}

/// The matrix of `z^α -> psi(z^α)` on monomials of degree `< N` is
/// unitriangular for the componentwise order on exponents.
fn coefficient_map_unitriangular(psi: &Psi, field: Field) -> bool {
    let n = psi.series.order;
    for a in 0..n {
        for b in 0..(n - a) {
            let img = psi.coefficient(&LaurentPoly::monomial(
                field,
                a as i32,
                b as i32,
                field.one(),
            ));
            for (m, c) in img.poly().terms() {
                let (ca, cb) = (m.0[0], m.0[1]);
                if (ca, cb) == (a, b) {
                    if !c.is_one() {
                        return false;
                    }
                } else if ca > a || cb > b {
                    return false;
                }
            }
            if img.poly().coefficient(&Monomial(vec![a, b])).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn verify_psi_iso(
    fp: &FukayaPresentation,
    w: u32,
    order: u32,
) -> Result<PsiReport, QuiverError> {
    let psi = Psi::new(fp, order)?;
    let field = fp.field();
    let mut relation_failures = Vec::new();
    let mut checked = 0;
    let lr = fp.pres.ring();
    // Quiver relations.
    for rule in fp.pres.rules() {
        checked += 1;
        let word = fp
            .pres
            .term(Path::from_word(fp.pres.quiver(), &rule.lhs)?, lr.one());
        let rhs = fp.pres.scale(&rule.coeff, &fp.theta(rule.vertex));
        let rel = fp.pres.sub(&word, &rhs);
        let image = psi.apply(fp, &rel);
        if !image.is_zero() {
            relation_failures.push(format!(
                "psi({} - ({}) theta_{}) = {}",
                fp.pres.display(&word),
                rule.coeff,
                rule.vertex,
                psi.target.display(&image)
            ));
        }
    }
    // Units and centrality.
    for v in 0..2 {
        checked += 1;
        let z = if v == 0 {
            LaurentPoly::z1(field)
        } else {
            LaurentPoly::z2(field)
        };
        let zinv = z.pow(-1).expect("monomial");
        if psi.coefficient(&z).mul(&psi.coefficient(&zinv)) != psi.series.one() {
            relation_failures.push(format!("psi(z{} z{}^-1) != 1", v + 1, v + 1));
        }
    }
    for arrow in 0..fp.pres.quiver().arrows.len() {
        for v in 0..2 {
            checked += 1;
            let z = if v == 0 {
                LaurentPoly::z1(field)
            } else {
                LaurentPoly::z2(field)
            };
            let a = fp
                .pres
                .term(Path::from_word(fp.pres.quiver(), &[arrow])?, lr.one());
            let src = Path::idempotent(fp.pres.quiver().arrows[arrow].source);
            let tgt = Path::idempotent(fp.pres.quiver().arrows[arrow].target);
            let za = fp.pres.multiply(&fp.pres.term(tgt, z.clone()), &a);
            let az = fp.pres.multiply(&a, &fp.pres.term(src, z));
            if psi.apply(fp, &fp.pres.sub(&za, &az)) != Element::zero() {
                relation_failures.push(format!("z{} does not commute with arrow {arrow}", v + 1));
            }
        }
    }
    let unshifted_ring = PolyRing::xy(field);
    let unshifted_series = SeriesRing::new(field, order);
    let x = MultiPoly::var(&unshifted_ring, 0);
    let y = MultiPoly::var(&unshifted_ring, 1);
    let mut relations_vanish_unshifted = true;
    for f in &fp.factors {
        // b a - f(x, y) e versus psi(f(z)) e: the difference is the defect.
        let unshifted = f
            .to_poly(&z_ring(field))
            .expect("factors are polynomials")
            .substitute(&[x.clone(), y.clone()])
            .expect("two variables");
        if unshifted_series.from_poly(&unshifted) != psi.coefficient(f) {
            relations_vanish_unshifted = false;
        }
    }

    let src_dim = completed_laurent_dimension(field, order)
        .finite()
        .unwrap_or(0);
    let tgt_dim = completed_series_dimension(field, order)
        .finite()
        .unwrap_or(0);
    let unitriangular = coefficient_map_unitriangular(&psi, field);
    let mut blocks = Vec::new();
    let m = fp.pres.quiver().count;
    for i in 0..m {
        for j in 0..m {
            let src = fp.pres.basis(i, j, w);
            let tgt = psi.target.basis(i, j, w);
            for r in -(w as i64)..=(w as i64) {
                let sp: BTreeSet<&Path> = src.iter().filter(|e| e.1 == r).map(|e| &e.0).collect();
                let tp: BTreeSet<&Path> = tgt.iter().filter(|e| e.1 == r).map(|e| &e.0).collect();
                if sp.is_empty() && tp.is_empty() {
                    continue;
                }
                blocks.push(PsiBlock {
                    source: j,
                    target: i,
                    winding: r,
                    fukaya_dim: sp.len() * src_dim,
                    completed_dim: tp.len() * tgt_dim,
                    // Arrow indices agree under eta -> a, delta -> b.
                    paths_match: sp == tp,
                });
            }
        }
    }
    let block_failures = blocks
        .iter()
        .filter(|b| b.fukaya_dim != b.completed_dim || !b.paths_match)
        .count();
    let passed =
        relation_failures.is_empty() && block_failures == 0 && unitriangular && src_dim == tgt_dim;
    Ok(PsiReport {
        winding_bound: w,
        order,
        relations_checked: checked,
        relation_failures,
        relations_vanish_unshifted,
        coefficient_dims: (src_dim, tgt_dim),
        coefficient_map_unitriangular: unitriangular,
        blocks,
        block_failures,
        passed,
    })
}

/// Random element: a few random walks with random Laurent monomial
/// coefficients.
pub fn random_element(
    fp: &FukayaPresentation,
    rng: &mut ChaCha8Rng,
    max_terms: usize,
    max_len: usize,
) -> Element<LaurentRing> {
    let p = &fp.pres;
    let field = fp.field();
    let q = p.quiver();
    let mut out = Element::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let start = rng.gen_range(0..q.count);
        let len = rng.gen_range(0..=max_len);
        let mut traversal = Vec::new();
        let mut v = start;
        for _ in 0..len {
            let choices: Vec<usize> = (0..q.arrows.len())
                .filter(|&a| q.arrows[a].source == v)
                .collect();
            let a = choices[rng.gen_range(0..choices.len())];
            traversal.push(a);
            v = q.arrows[a].target;
        }
        let path = if traversal.is_empty() {
            Path::idempotent(start)
        } else {
            traversal.reverse();
            Path::from_word(q, &traversal).expect("walk")
        };
        let c = LaurentPoly::monomial(
            field,
            rng.gen_range(-2..=2),
            rng.gen_range(-2..=2),
            field.from_i64(rng.gen_range(-3..=3)),
        );
        out = p.add(&out, &p.term(path, c));
    }
    p.reduce(&out)
}

/// Number of sampled pairs with `psi(uv) != psi(u) psi(v)`.
pub fn psi_multiplicativity_failures(
    fp: &FukayaPresentation,
    order: u32,
    pairs: usize,
    seed: u64,
) -> Result<usize, QuiverError> {
    let psi = Psi::new(fp, order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..pairs {
        let u = random_element(fp, &mut rng, 3, 2 * fp.pres.quiver().count);
        let v = random_element(fp, &mut rng, 3, 2 * fp.pres.quiver().count);
        let lhs = psi.apply(fp, &fp.pres.multiply(&u, &v));
        let rhs = psi.target.multiply(&psi.apply(fp, &u), &psi.apply(fp, &v));
        if lhs != rhs {
            bad += 1;
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slope::{validate_spec, Sign, SlopeDatum, Truncation};

    fn spec(s: &[(u32, u32, Sign)]) -> PlumbingSpec {
        let v: Vec<SlopeDatum> = s
            .iter()
            .map(|&(k, l, e)| SlopeDatum::new(k, l, e))
            .collect();
        validate_spec(&v, Field::Rational, Truncation::default()).unwrap()
    }

    #[test]
    fn fukaya_relations() {
        let fp =
            build_fukaya_presentation(&spec(&[(1, 0, Sign::Plus), (0, 1, Sign::Plus)])).unwrap();
        let p = &fp.pres;
        let de = p.reduce(&p.word(&["delta_0", "eta_0"]).unwrap());
        assert_eq!(p.display(&de), "(z2 + 1) theta_0");
        let ed = p.reduce(&p.word(&["eta_0", "delta_0"]).unwrap());
        assert_eq!(p.display(&ed), "(z2 + 1) theta_1");
        assert_eq!(p.multiply(&fp.theta(1), &fp.theta(1)), fp.theta(1));
    }

    #[test]
    fn endomorphisms_of_atiyah_case() {
        let fp =
            build_fukaya_presentation(&spec(&[(1, 1, Sign::Plus), (1, 1, Sign::Minus)])).unwrap();
        let p = &fp.pres;
        let prod = p.multiply(&fp.winding_element(0, -1), &fp.winding_element(0, 1));
        assert_eq!(p.display(&prod), "(-z1^2 + z2^2) theta_0");
        for i in 0..2 {
            let r = endomorphism_ring_check(&fp, i, 3);
            assert!(r.passed, "{:?}", r.failures);
        }
    }

    #[test]
    fn psi_on_units() {
        let fp =
            build_fukaya_presentation(&spec(&[(1, 0, Sign::Plus), (0, 1, Sign::Plus)])).unwrap();
        let psi = Psi::new(&fp, 4).unwrap();
        let z1 = LaurentPoly::z1(Field::Rational);
        assert_eq!(psi.coefficient(&z1).poly().to_string(), "x - 1");
        assert_eq!(
            psi.coefficient(&z1.pow(-1).unwrap()).poly().to_string(),
            "-x^3 - x^2 - x - 1"
        );
        assert_eq!(
            psi.coefficient(&(&z1 * &z1.pow(-1).unwrap())),
            psi.series().one()
        );
    }

    #[test]
    fn psi_small_cases() {
        let fp =
            build_fukaya_presentation(&spec(&[(1, 0, Sign::Plus), (0, 1, Sign::Plus)])).unwrap();
        let r = verify_psi_iso(&fp, 2, 4).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(!r.relations_vanish_unshifted);
        let r = verify_psi_iso(&fp, 0, 1).unwrap();
        assert!(r.passed);
        assert_eq!(r.coefficient_dims, (1, 1));
        let fp = build_fukaya_presentation(&spec(&[
            (1, 0, Sign::Plus),
            (0, 1, Sign::Plus),
            (1, 2, Sign::Plus),
        ]))
        .unwrap();
        assert!(verify_psi_iso(&fp, 1, 5).unwrap().passed);
        assert_eq!(psi_multiplicativity_failures(&fp, 4, 30, 7).unwrap(), 0);
    }

    #[test]
    fn completion_dimensions() {
        for n in 1..6 {
            let expect = Dimension::Finite((n * (n + 1) / 2) as usize);
            assert_eq!(completed_laurent_dimension(Field::Rational, n), expect);
            assert_eq!(completed_series_dimension(Field::Prime(3), n), expect);
        }
    }
}
