//! The dg algebra on the linear quiver with odd loops at both ends, and its
//! zeroth cohomology after base change (the contraction algebra).

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::QuiverError;
use crate::field::Field;
use crate::poly::{groebner, Dimension, IdealBasis, MultiPoly, PolyRing};
use crate::quiver::{
    linear_presentation, Arrow, Element, Naming, Path, Presentation, STANDARD_NAMES,
};
use crate::ring::CoeffRing;
use crate::slope::PlumbingSpec;

/// Linear quiver on `1..=n` with loops `alpha` at `1` and `beta` at `n`
/// of degree `-1`, `alpha^2 = beta^2 = 0`, and `d(alpha) = d_alpha e_1`,
/// `d(beta) = d_beta e_n`, `d = 0` on the degree-zero arrows.
#[derive(Clone, Debug)]
pub struct DGPresentation<R: CoeffRing> {
    pub pres: Presentation<R>,
    pub n: usize,
    pub alpha: usize,
    pub beta: usize,
    pub d_alpha: R::Elem,
    pub d_beta: R::Elem,
}

/// `coeffs[i]` (for `1 <= i < n`) is the right side of `a_i b_i` and `b_i a_i`.
pub fn build_dg_generic<R: CoeffRing>(
    n: usize,
    ring: R,
    coeffs: &[R::Elem],
    d_alpha: R::Elem,
    d_beta: R::Elem,
    names: Naming<'_>,
    loop_names: (&str, &str),
) -> Result<DGPresentation<R>, QuiverError> {
    let zero = ring.zero();
    let odd_loop = |name: &str, v: usize| Arrow {
        name: name.to_string(),
        source: v,
        target: v,
        degree: -1,
        step: 0,
    };
    let extra = vec![
        (odd_loop(loop_names.0, 1), Some(zero.clone())),
        (odd_loop(loop_names.1, n), Some(zero)),
    ];
    let pres = linear_presentation(n, ring, coeffs, names, extra)?;
    let alpha = pres.arrow(loop_names.0).expect("alpha");
    let beta = pres.arrow(loop_names.1).expect("beta");
    Ok(DGPresentation {
        pres,
        n,
        alpha,
        beta,
        d_alpha,
        d_beta,
    })
}

/// Formal version over `K[t_0, ..., t_n]` with `d(alpha) = t_0 e_1`, `d(beta) = t_n e_n`.
pub fn build_dg_formal(
    n: usize,
    field: Field,
) -> Result<DGPresentation<Arc<PolyRing>>, QuiverError> {
    let ring = PolyRing::t_vars(field, n);
    let ts: Vec<MultiPoly> = (0..=n).map(|i| MultiPoly::var(&ring, i)).collect();
    build_dg_generic(
        n,
        ring,
        &ts,
        ts[0].clone(),
        ts[n].clone(),
        STANDARD_NAMES,
        ("alpha", "beta"),
    )
}

/// Base-changed version over `K[x, y]`: `t_i -> f_i(x, y)`.
pub fn build_dg(spec: &PlumbingSpec) -> Result<DGPresentation<Arc<PolyRing>>, QuiverError> {
    let ring = spec.xy_ring();
    let f = spec.factors();
    let n = spec.n();
    build_dg_generic(
        n,
        ring,
        &f,
        f[0].clone(),
        f[n].clone(),
        STANDARD_NAMES,
        ("alpha", "beta"),
    )
}

impl<R: CoeffRing> DGPresentation<R> {
    pub fn degree(&self, p: &Path) -> i32 {
        p.degree(self.pres.quiver())
    }

    /// Leibniz extension with sign `(-1)^(odd letters to the left)` in
    /// written order; the result is reduced.
    pub fn differential(&self, x: &Element<R>) -> Element<R> {
        let ring = self.pres.ring();
        let mut out = Element::zero();
        for (p, c) in x.terms() {
            let mut odd_seen = 0;
            for (k, &a) in p.arrows.iter().enumerate() {
                let dval = if a == self.alpha {
                    &self.d_alpha
                } else if a == self.beta {
                    &self.d_beta
                } else {
                    continue;
                };
                let mut coeff = ring.mul(c, dval);
                if odd_seen % 2 == 1 {
                    coeff = ring.neg(&coeff);
                }
                odd_seen += 1;
                let mut rest = p.arrows.clone();
                rest.remove(k);
                let path = if rest.is_empty() {
                    Path::idempotent(self.pres.quiver().arrows[a].source)
                } else {
                    Path::from_word(self.pres.quiver(), &rest).expect("removing a loop")
                };
                out = self.pres.add(&out, &self.pres.term(path, coeff));
            }
        }
        self.pres.reduce(&out)
    }

    /// Reduced random walk of at most `max_len` arrows with coefficient one.
    pub fn random_word(&self, rng: &mut ChaCha8Rng, max_len: usize) -> Element<R> {
        let q = self.pres.quiver();
        let start = q.first + rng.gen_range(0..q.count);
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
        self.pres
            .reduce(&self.pres.term(path, self.pres.ring().one()))
    }

    /// Number of sampled words `w` with `d(d(w)) != 0`.
    pub fn d_squared_failures(&self, samples: usize, max_len: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .filter(|_| {
                let w = self.random_word(&mut rng, max_len);
                !self.differential(&self.differential(&w)).is_zero()
            })
            .count()
    }
}

/// `e_i Λ e_j` is free of rank one over `K[x, y]` on the monotone path.
pub fn monotone_path(n: usize, i: usize, j: usize) -> Path {
    assert!((1..=n).contains(&i) && (1..=n).contains(&j));
    // Arrow indices in the linear presentation: a_k = 2(k-1), b_k = 2(k-1)+1.
    let mut traversal = Vec::new();
    if j < i {
        for k in j..i {
            traversal.push(2 * (k - 1));
        }
    } else {
        for k in (i..j).rev() {
            traversal.push(2 * (k - 1) + 1);
        }
    }
    if traversal.is_empty() {
        return Path::idempotent(i);
    }
    let arrows = traversal.iter().rev().copied().collect();
    Path {
        source: j,
        target: i,
        arrows,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Component {
    pub target: usize,
    pub source: usize,
    pub path: String,
    pub ideal: String,
    pub dimension: String,
    /// Standard monomials times the path, when finite.
    pub basis: Option<Vec<String>>,
}

/// `H^0` as components `e_i H^0 e_j = K[x, y] / J_ij · p_ij`.
#[derive(Clone, Debug)]
pub struct ContractionAlgebra {
    pub n: usize,
    pub field: Field,
    pub ring: Arc<PolyRing>,
    /// Indexed `[i - 1][j - 1]`.
    pub ideals: Vec<Vec<IdealBasis>>,
    /// `p_ij · p_jk = c_ijk · p_ik` in the degree-zero algebra.
    transport: BTreeMap<(usize, usize, usize), MultiPoly>,
    paths: Vec<Vec<String>>,
    pub transport_passes: usize,
}

/// An element of `e_i H^0 e_j`, stored as a reduced polynomial coefficient
/// of the monotone path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Elem {
    pub target: usize,
    pub source: usize,
    pub coeff: MultiPoly,
}

impl ContractionAlgebra {
    pub fn ideal(&self, i: usize, j: usize) -> &IdealBasis {
        &self.ideals[i - 1][j - 1]
    }

    pub fn dimension(&self, i: usize, j: usize) -> Dimension {
        match self.ideal(i, j).standard_monomials() {
            Some(m) => Dimension::Finite(m.len()),
            None => Dimension::Infinite,
        }
    }

    pub fn dim_vector(&self) -> Vec<Vec<Dimension>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.dimension(i, j)).collect())
            .collect()
    }

    pub fn total_dimension(&self) -> Dimension {
        let mut total = 0;
        for row in self.dim_vector() {
            for d in row {
                match d {
                    Dimension::Finite(k) => total += k,
                    Dimension::Infinite => return Dimension::Infinite,
                }
            }
        }
        Dimension::Finite(total)
    }

    pub fn element(&self, i: usize, j: usize, p: &MultiPoly) -> H0Elem {
        H0Elem {
            target: i,
            source: j,
            coeff: self.ideal(i, j).reduce(p),
        }
    }

    /// Basis elements of every finite component, in `(i, j, monomial)` order.
    pub fn basis(&self) -> Vec<H0Elem> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if let Some(ms) = self.ideal(i, j).standard_monomials() {
                    for m in ms {
                        let p = MultiPoly::monomial(&self.ring, m, self.field.one());
                        out.push(H0Elem {
                            target: i,
                            source: j,
                            coeff: p,
                        });
                    }
                }
            }
        }
        out
    }

    /// `None` when the middle vertices differ (the product is zero).
    pub fn multiply(&self, x: &H0Elem, y: &H0Elem) -> Option<H0Elem> {
        if x.source != y.target {
            return None;
        }
        let c = &self.transport[&(x.target, x.source, y.source)];
        let prod = &(&x.coeff * &y.coeff) * c;
        Some(self.element(x.target, y.source, &prod))
    }

    pub fn components(&self) -> Vec<Component> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let ideal = self.ideal(i, j);
                let path = &self.paths[i - 1][j - 1];
                let basis = ideal.standard_monomials().map(|ms| {
                    ms.iter()
                        .map(|m| {
                            let mono = m.format(&self.ring.vars);
                            if mono == "1" {
                                path.clone()
                            } else {
                                format!("{mono} {path}")
                            }
                        })
                        .collect()
                });
                out.push(Component {
                    target: i,
                    source: j,
                    path: path.clone(),
                    ideal: ideal.to_string(),
                    dimension: self.dimension(i, j).to_string(),
                    basis,
                });
            }
        }
        out
    }

    /// Every product of basis elements reduces into the span of the basis.
    pub fn closure_failures(&self) -> usize {
        let basis = self.basis();
        let mut bad = 0;
        for x in &basis {
            for y in &basis {
                if let Some(z) = self.multiply(x, y) {
                    let Some(std) = self.ideal(z.target, z.source).standard_monomials() else {
                        continue;
                    };
                    if z.coeff.terms().any(|(m, _)| !std.contains(m)) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Associativity on basis triples: exhaustive when the total dimension
    /// is at most `exhaustive_limit`, else `samples` random triples.
    pub fn associativity_failures(
        &self,
        exhaustive_limit: usize,
        samples: usize,
        seed: u64,
    ) -> (usize, usize) {
        let basis = self.basis();
        if basis.is_empty() {
            return (0, 0);
        }
        let check = |a: &H0Elem, b: &H0Elem, c: &H0Elem| -> bool {
            let left = self.multiply(a, b).and_then(|ab| self.multiply(&ab, c));
            let right = self.multiply(b, c).and_then(|bc| self.multiply(a, &bc));
            left == right
        };
        let mut bad = 0;
        let mut checked = 0;
        if basis.len() <= exhaustive_limit {
            for a in &basis {
                for b in &basis {
                    for c in &basis {
                        checked += 1;
                        if !check(a, b, c) {
                            bad += 1;
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let pick = |r: &mut ChaCha8Rng| &basis[r.gen_range(0..basis.len())];
                let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                checked += 1;
                if !check(a, b, c) {
                    bad += 1;
                }
            }
        }
        (checked, bad)
    }
}

fn single_coefficient(e: &Element<Arc<PolyRing>>, expected: &Path) -> MultiPoly {
    assert!(e.len() <= 1, "component is cyclic on one path");
    match e.terms().next() {
        Some((p, c)) => {
            assert_eq!(p, expected, "product lands on the monotone path");
            c.clone()
        }
        None => panic!("products of monotone paths never vanish"),
    }
}

/// Zeroth cohomology of the base-changed dg algebra: the degree-zero part
/// modulo the two-sided ideal generated by `d(alpha)`, `d(beta)`.
pub fn h0(spec: &PlumbingSpec) -> Result<ContractionAlgebra, QuiverError> {
    let dg = build_dg(spec)?;
    Ok(h0_of(&dg, spec.field))
}

pub fn h0_of(dg: &DGPresentation<Arc<PolyRing>>, field: Field) -> ContractionAlgebra {
    let n = dg.n;
    let pres = &dg.pres;
    let ring = pres.ring().clone();
    let one = MultiPoly::one(&ring);
    let path = |i, j| monotone_path(n, i, j);
    let mut transport = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let prod = pres.multiply(
                    &pres.term(path(i, j), one.clone()),
                    &pres.term(path(j, k), one.clone()),
                );
                transport.insert((i, j, k), single_coefficient(&prod, &path(i, k)));
            }
        }
    }
    // Generators of each J_ij, closed under moving along one arrow on
    // either side.
    let mut gens: Vec<Vec<Vec<MultiPoly>>> = vec![vec![Vec::new(); n]; n];
    gens[0][0].push(dg.d_alpha.clone());
    gens[n - 1][n - 1].push(dg.d_beta.clone());
    let mut ideals: Vec<Vec<IdealBasis>> = gens
        .iter()
        .map(|row| {
            row.iter()
                .map(|g| groebner(&IdealBasis::new(&ring, g.clone())))
                .collect()
        })
        .collect();
    let mut passes = 0;
    loop {
        passes += 1;
        let mut next = gens.clone();
        for i in 1..=n {
            for j in 1..=n {
                for g in ideals[i - 1][j - 1].generators() {
                    // Left multiplication moves the target to a neighbour,
                    // right multiplication moves the source.
                    for i2 in [i.wrapping_sub(1), i + 1] {
                        if (1..=n).contains(&i2) {
                            next[i2 - 1][j - 1].push(g * &transport[&(i2, i, j)]);
                        }
                    }
                    for j2 in [j.wrapping_sub(1), j + 1] {
                        if (1..=n).contains(&j2) {
                            next[i - 1][j2 - 1].push(g * &transport[&(i, j, j2)]);
                        }
                    }
                }
            }
        }
        let new_ideals: Vec<Vec<IdealBasis>> = next
            .iter()
            .map(|row| {
                row.iter()
                    .map(|g| groebner(&IdealBasis::new(&ring, g.clone())))
                    .collect()
            })
            .collect();
        let stable = new_ideals == ideals;
        ideals = new_ideals;
        gens = ideals
            .iter()
            .map(|row| row.iter().map(|b| b.generators().to_vec()).collect())
            .collect();
        if stable {
            break;
        }
    }
    let paths = (1..=n)
        .map(|i| (1..=n).map(|j| path(i, j).display(pres.quiver())).collect())
        .collect();
    ContractionAlgebra {
        n,
        field,
        ring,
        ideals,
        transport,
        paths,
        transport_passes: passes,
    }
}

pub fn dim_vector(spec: &PlumbingSpec) -> Result<Vec<Vec<Dimension>>, QuiverError> {
    Ok(h0(spec)?.dim_vector())
}
