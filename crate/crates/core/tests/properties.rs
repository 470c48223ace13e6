use plumbing_core::braid::{inverse_word, BraidLetter, BraidSystem, FreeGroupWord};
use plumbing_core::dg::build_dg;
use plumbing_core::field::Field;
use plumbing_core::fukaya::{build_fukaya_presentation, psi_multiplicativity_failures};
use plumbing_core::poly::{
    groebner, series_invert, IdealBasis, LaurentPoly, MultiPoly, PolyRing, SeriesRing,
};
use plumbing_core::quiver::{build_cyclic_presentation, Element, Path, ReductionStrategy};
use plumbing_core::ring::CoeffRing;
use plumbing_core::slope::{
    assumptions, f_total, matching_cycle_type, matching_cycle_type_with, validate_spec, Sign,
    SlopeDatum, ThreeManifoldType, Truncation,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Prime(2)),
        Just(Field::Prime(7)),
        Just(Field::Prime(65_521))
    ]
}

fn slope() -> impl Strategy<Value = SlopeDatum> {
    (0u32..6, any::<bool>(), any::<bool>()).prop_map(|(m, k_is_one, plus)| {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        if k_is_one {
            SlopeDatum::new(1, m, sign)
        } else {
            SlopeDatum::new(m, 1, sign)
        }
    })
}

fn slopes(max_n: usize) -> impl Strategy<Value = Vec<SlopeDatum>> {
    prop::collection::vec(slope(), 2..=max_n + 1)
}

fn small_poly(ring: &std::sync::Arc<PolyRing>, terms: &[(u32, u32, i64)]) -> MultiPoly {
    let t: Vec<(Vec<u32>, i64)> = terms.iter().map(|&(a, b, c)| (vec![a, b], c)).collect();
    MultiPoly::from_int_terms(ring, &t)
}

fn poly_terms() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..4, 0u32..4, -4i64..=4), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(f in fields(), a in -50i64..50, b in -50i64..50, c in -50i64..50, d in 1i64..50) {
        let (x, y, z) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!(x.clone() - x.clone(), f.zero());
        prop_assert_eq!(x.clone() + (-x.clone()), f.zero());
        if let Some(q) = f.from_ratio(a, d) {
            prop_assert_eq!(q * f.from_i64(d), x.clone());
        }
        if let Some(inv) = x.inv() {
            prop_assert_eq!(inv * x, f.one());
        } else {
            prop_assert!(f.from_i64(a).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_ring_axioms(f in fields(), a in poly_terms(), b in poly_terms(), c in poly_terms()) {
        let r = PolyRing::xy(f);
        let (a, b, c) = (small_poly(&r, &a), small_poly(&r, &b), small_poly(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn groebner_basis_is_canonical(f in fields(), a in poly_terms(), b in poly_terms(), h in poly_terms()) {
        let r = PolyRing::xy(f);
        let (a, b, h) = (small_poly(&r, &a), small_poly(&r, &b), small_poly(&r, &h));
        let g1 = groebner(&IdealBasis::new(&r, vec![a.clone(), b.clone()]));
        let g2 = groebner(&IdealBasis::new(&r, vec![b.clone(), a.clone()]));
        let extra = &(&a * &h) + &b;
        let g3 = groebner(&IdealBasis::new(&r, vec![a.clone(), extra, b.clone()]));
        prop_assert_eq!(g1.generators(), g2.generators());
        prop_assert_eq!(g1.generators(), g3.generators());
        prop_assert!(g1.contains(&a) && g1.contains(&b));
    }

    #[test]
    fn series_inverse(f in fields(), c in 1i64..20, t in poly_terms(), order in 1u32..7) {
        let s = SeriesRing::new(f, order);
        let r = s.poly.clone();
        let mut p = small_poly(&r, &t);
        let c0 = p.coefficient(&plumbing_core::poly::Monomial(vec![0, 0]));
        p = &p - &MultiPoly::constant(&r, c0);
        p = &p + &MultiPoly::constant(&r, f.from_i64(c));
        let x = s.from_poly(&p);
        match series_invert(&x) {
            Ok(inv) => prop_assert_eq!(x.mul(&inv), s.one()),
            Err(_) => prop_assert!(f.from_i64(c).is_zero()),
        }
    }

    #[test]
    fn matching_type_is_symmetric_and_partner_free(d in slope(), d2 in slope(), m in -6i64..6) {
        let t = matching_cycle_type(&d, &d2);
        prop_assert_eq!(t, matching_cycle_type(&d2, &d));
        prop_assert_eq!(t, matching_cycle_type_with(&d, &d2, m));
    }

    #[test]
    fn assumption_c_means_no_s1xs2(s in slopes(4)) {
        let spec = validate_spec(&s, Field::Rational, Truncation::default()).unwrap();
        let mut any = false;
        for i in 0..s.len() {
            for j in (i + 1)..s.len() {
                any |= matching_cycle_type(&s[i], &s[j]) == ThreeManifoldType::S1xS2;
            }
        }
        prop_assert_eq!(assumptions(&spec).c, !any);
    }
}

fn random_walk_element<R: CoeffRing>(
    p: &plumbing_core::quiver::Presentation<R>,
    rng: &mut ChaCha8Rng,
    max_len: usize,
) -> Element<R> {
    let q = p.quiver();
    let mut out = Element::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let start = q.first + rng.gen_range(0..q.count);
        let mut traversal = Vec::new();
        let mut v = start;
        for _ in 0..rng.gen_range(0..=max_len) {
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
            Path::from_word(q, &traversal).unwrap()
        };
        out = p.add(
            &out,
            &p.term(path, p.ring().from_i64(rng.gen_range(-2..=2))),
        );
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduction_strategies_agree(n in 1usize..=4, seed in any::<u64>()) {
        let p = build_cyclic_presentation(n, Field::Rational).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_walk_element(&p, &mut rng, 3 * (n + 1));
        let l = p.reduce_with(&x, ReductionStrategy::Leftmost);
        prop_assert_eq!(&l, &p.reduce_with(&x, ReductionStrategy::Rightmost));
        prop_assert_eq!(&l, &p.reduce_with(&x, ReductionStrategy::Random(seed)));
        prop_assert!(l.terms().all(|(path, _)| p.is_normal(path)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn multiplication_is_associative(s in slopes(3), seed in any::<u64>()) {
        let spec = validate_spec(&s, Field::Rational, Truncation::default()).unwrap();
        let fp = build_fukaya_presentation(&spec).unwrap();
        let p = &fp.pres;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = 2 * p.quiver().count;
        let [a, b, c] = [(); 3].map(|_| p.reduce(&random_walk_element(p, &mut rng, m)));
        prop_assert_eq!(p.multiply(&p.multiply(&a, &b), &c), p.multiply(&a, &p.multiply(&b, &c)));
    }

    #[test]
    fn d_squared_vanishes(s in slopes(4), seed in any::<u64>()) {
        let spec = validate_spec(&s, Field::Rational, Truncation::default()).unwrap();
        let dg = build_dg(&spec).unwrap();
        prop_assert_eq!(dg.d_squared_failures(1, 10, seed), 0);
    }

    #[test]
    fn braid_word_times_inverse(n in 1usize..=3, seed in any::<u64>()) {
        let sys = BraidSystem::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w: Vec<BraidLetter> = (0..rng.gen_range(0..4))
            .map(|_| {
                let l = if rng.gen_bool(0.2) { BraidLetter::rho() } else { BraidLetter::sigma(rng.gen_range(0..=n)) };
                if rng.gen_bool(0.5) { l.inv() } else { l }
            })
            .collect();
        let mut ww = w.clone();
        ww.extend(inverse_word(&w));
        let x = FreeGroupWord::from_letters(
            &(0..6).map(|_| rng.gen_range(1..=(n as i32 + 2)) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect::<Vec<_>>(),
        );
        prop_assert_eq!(sys.apply(&ww, &x).unwrap(), x.clone());
        let mut ww = inverse_word(&w);
        ww.extend(&w);
        prop_assert_eq!(sys.apply(&ww, &x).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn psi_is_multiplicative(s in slopes(3), seed in any::<u64>()) {
        let spec = validate_spec(&s, Field::Rational, Truncation::default()).unwrap();
        let fp = build_fukaya_presentation(&spec).unwrap();
        prop_assert_eq!(psi_multiplicativity_failures(&fp, 4, 1, seed).unwrap(), 0);
    }

    #[test]
    fn full_cycles_multiply_to_f_total(s in slopes(4), r in 0i64..3, r2 in 0i64..3) {
        let spec = validate_spec(&s, Field::Rational, Truncation::default()).unwrap();
        let fp = build_fukaya_presentation(&spec).unwrap();
        let p = &fp.pres;
        let f = LaurentPoly::from_xy(&f_total(&spec));
        for i in 0..p.quiver().count {
            let prod = p.multiply(&fp.winding_element(i, -1), &fp.winding_element(i, 1));
            prop_assert_eq!(prod, p.scale(&f, &fp.theta(i)));
            let lhs = p.multiply(&fp.winding_element(i, r), &fp.winding_element(i, r2));
            prop_assert_eq!(lhs, fp.winding_element(i, r + r2));
            let lhs = p.multiply(&fp.winding_element(i, -r), &fp.winding_element(i, -r2));
            prop_assert_eq!(lhs, fp.winding_element(i, -r - r2));
        }
    }

    #[test]
    fn total_winding_cycle_is_central(s in slopes(4)) {
        let spec = validate_spec(&s, Field::Rational, Truncation::default()).unwrap();
        let fp = build_fukaya_presentation(&spec).unwrap();
        let p = &fp.pres;
        let m = p.quiver().count;
        for r in [-1i64, 1] {
            let x = (0..m).fold(Element::zero(), |acc, i| p.add(&acc, &fp.winding_element(i, r)));
            for a in 0..p.quiver().arrows.len() {
                let arrow = p.term(Path::from_word(p.quiver(), &[a]).unwrap(), p.ring().one());
                prop_assert_eq!(p.multiply(&x, &arrow), p.multiply(&arrow, &x));
            }
        }
    }

    #[test]
    fn basis_counts_by_winding(s in slopes(4), w in 0u32..3) {
        let spec = validate_spec(&s, Field::Rational, Truncation::default()).unwrap();
        let fp = build_fukaya_presentation(&spec).unwrap();
        let p = &fp.pres;
        let m = p.quiver().count;
        for i in 0..m {
            for j in 0..m {
                let b = p.basis(i, j, w);
                // One cycle per winding at a vertex; between distinct
                // vertices a forward and a backward path per winding class.
                let expected = if i == j { 2 * w as usize + 1 } else { 2 * w as usize + 2 };
                prop_assert_eq!(b.len(), expected, "({}, {})", i, j);
                prop_assert!(b.iter().all(|(path, _)| p.is_normal(path)));
            }
        }
    }
}
