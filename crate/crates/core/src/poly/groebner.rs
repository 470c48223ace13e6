use std::fmt;
use std::sync::Arc;

use super::monomial::Monomial;
use super::multipoly::{MultiPoly, PolyRing};

/// Generators of an ideal in a polynomial ring; after `groebner` these form
/// the reduced, monic basis sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ring: Arc<PolyRing>,
    generators: Vec<MultiPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(d) => Some(d),
            Dimension::Infinite => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => write!(f, "infinite"),
        }
    }
}

impl IdealBasis {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<MultiPoly>) -> Self {
        for g in &generators {
            g.check_ring(&MultiPoly::zero(ring))
                .expect("generator ring");
        }
        IdealBasis {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.leading_monomial().is_some_and(|m| m.degree() == 0))
    }

    /// Remainder of `p` on division by the generators.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        reduce_full(p, &self.generators)
    }

    /// Ideal membership; meaningful once the basis is a Gröbner basis.
    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Standard monomials of a zero-dimensional ideal in ascending order;
    /// `None` when the staircase is unbounded.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let nv = self.ring.nvars();
        let leads: Vec<&Monomial> = self
            .generators
            .iter()
            .filter_map(MultiPoly::leading_monomial)
            .collect();
        let mut bound = vec![None; nv];
        for m in &leads {
            if m.degree() == 0 {
                return Some(Vec::new());
            }
            if let Some((v, e)) = m.pure_power() {
                bound[v] = Some(bound[v].map_or(e, |b: u32| b.min(e)));
            }
        }
        let bound: Vec<u32> = bound.into_iter().collect::<Option<_>>()?;
        let mut out = Vec::new();
        let mut cur = vec![0u32; nv];
        'outer: loop {
            let m = Monomial(cur.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            for v in 0..nv {
                cur[v] += 1;
                if cur[v] < bound[v] {
                    continue 'outer;
                }
                cur[v] = 0;
            }
            break;
        }
        out.sort();
        Some(out)
    }
}

impl fmt::Display for IdealBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "{{0}}");
        }
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn reduce_full(p: &MultiPoly, divisors: &[MultiPoly]) -> MultiPoly {
    let mut rem = MultiPoly::zero(p.ring());
    let mut work = p.clone();
    'next: while let Some((m, c)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        for g in divisors {
            let (gm, gc) = g.leading_term().expect("nonzero divisor");
            if gm.divides(&m) {
                let factor = &c * &gc.inv().expect("field");
                let q = gm.quotient_of(&m);
                work = &work - &g.mul_monomial(&q, &factor);
                continue 'next;
            }
        }
        rem.add_term(m.clone(), c.clone());
        work = &work - &MultiPoly::monomial(p.ring(), m, c);
    }
    rem
}

fn s_poly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_monomial(&fm.quotient_of(&l), &fc.inv().expect("field"));
    let b = g.mul_monomial(&gm.quotient_of(&l), &gc.inv().expect("field"));
    &a - &b
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| *x == 0 || *y == 0)
}

/// Reduced Gröbner basis under graded-lex order (Buchberger's algorithm
/// with the coprime-leading-monomial criterion).
pub fn groebner(ideal: &IdealBasis) -> IdealBasis {
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in &ideal.generators {
        let r = reduce_full(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (mi, mj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if coprime(mi, mj) {
            continue;
        }
        let r = reduce_full(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }
    // Minimize: drop elements whose leading monomial is divisible by another's.
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let gm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(jdx, h)| {
            let hm = h.leading_monomial().unwrap();
            jdx != idx && hm.divides(gm) && (hm != gm || jdx < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    // Interreduce tails; leading terms survive since no leading monomial
    // divides another in a minimal basis.
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(reduce_full(&minimal[idx], &others).monic());
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    IdealBasis {
        ring: ideal.ring.clone(),
        generators: reduced,
    }
}

/// `dim_K K[vars]/I`, `Infinite` when some variable has no pure power among
/// the leading monomials of the reduced basis.
pub fn quotient_dimension(ideal: &IdealBasis) -> Dimension {
    let gb = groebner(ideal);
    match gb.standard_monomials() {
        Some(ms) => Dimension::Finite(ms.len()),
        None => Dimension::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn setup() -> (Arc<PolyRing>, MultiPoly, MultiPoly) {
        let r = PolyRing::xy(Field::Rational);
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        (r, x, y)
    }

    #[test]
    fn linear_pair() {
        let (r, x, y) = setup();
        let gb = groebner(&IdealBasis::new(&r, vec![&y + &x, &y - &x]));
        assert_eq!(gb.generators(), &[y.clone(), x.clone()]);
        assert_eq!(quotient_dimension(&gb), Dimension::Finite(1));
    }

    #[test]
    fn zero_ideal() {
        let (r, _, _) = setup();
        let gb = groebner(&IdealBasis::new(&r, vec![MultiPoly::zero(&r)]));
        assert_eq!(gb.to_string(), "{0}");
        assert_eq!(quotient_dimension(&gb), Dimension::Infinite);
    }

    #[test]
    fn cubic_pair() {
        let (r, x, y) = setup();
        let x3 = x.pow(3);
        let gb = groebner(&IdealBasis::new(&r, vec![&y + &x3, &y - &x3]));
        assert_eq!(gb.generators(), &[y.clone(), x3.clone()]);
        assert_eq!(quotient_dimension(&gb), Dimension::Finite(3));
    }

    #[test]
    fn staircases() {
        let (r, x, y) = setup();
        assert_eq!(
            quotient_dimension(&IdealBasis::new(&r, vec![x.clone(), y.clone()])),
            Dimension::Finite(1)
        );
        assert_eq!(
            quotient_dimension(&IdealBasis::new(&r, vec![x.pow(2), y.pow(3)])),
            Dimension::Finite(6)
        );
        assert_eq!(
            quotient_dimension(&IdealBasis::new(&r, vec![&y + &x])),
            Dimension::Infinite
        );
        assert_eq!(
            quotient_dimension(&IdealBasis::new(&r, vec![MultiPoly::one(&r)])),
            Dimension::Finite(0)
        );
    }
}
