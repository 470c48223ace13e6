use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::PolyError;
use crate::field::{Field, FieldElem};
use crate::ring::CoeffRing;

use super::monomial::Monomial;

/// A polynomial ring `K[v_0, ..., v_{m-1}]` with named variables.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S]) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    /// `K[x, y]`.
    pub fn xy(field: Field) -> Arc<PolyRing> {
        Self::new(field, &["x", "y"])
    }

    /// `K[t_0, ..., t_n]`.
    pub fn t_vars(field: Field, n: usize) -> Arc<PolyRing> {
        let names: Vec<String> = (0..=n).map(|i| format!("t_{i}")).collect();
        Self::new(field, &names)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

impl CoeffRing for Arc<PolyRing> {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self)
    }
    fn one(&self) -> MultiPoly {
        MultiPoly::one(self)
    }
    fn from_i64(&self, v: i64) -> MultiPoly {
        MultiPoly::constant(self, self.field.from_i64(v))
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a.clone()
    }
}

/// Sparse polynomial with exact coefficients; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

/// Checked ring operation; fails when the operands live in different rings.
pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly, PolyError> {
    a.check_ring(b)?;
    Ok(match op {
        PolyOp::Add => a.add_unchecked(b),
        PolyOp::Mul => a.mul_unchecked(b, None),
    })
}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), ring.field.one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: FieldElem) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from `(exponents, integer coefficient)` pairs.
    pub fn from_int_terms(ring: &Arc<PolyRing>, terms: &[(Vec<u32>, i64)]) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(Monomial(e.clone()), ring.field.from_i64(*c));
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn check_ring(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch {
                left: format!("{}; {}", self.ring.field, self.ring.vars.join(",")),
                right: format!("{}; {}", other.ring.field, other.ring.vars.join(",")),
            })
        }
    }

    fn add_unchecked(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Product, dropping every term of total degree `>= bound` when given.
    fn mul_unchecked(&self, other: &MultiPoly, bound: Option<u32>) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(b) = bound {
                    if ma.degree() + mb.degree() >= b {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_truncated(&self, other: &MultiPoly, bound: u32) -> MultiPoly {
        self.check_ring(other).expect("ring mismatch");
        self.mul_unchecked(other, Some(bound))
    }

    /// Drop all terms of total degree `>= bound`.
    pub fn truncate(&self, bound: u32) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &FieldElem) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.ring.nvars() {
            return Err(PolyError::Arity {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                // Constant polynomial in zero variables.
                return Ok(self.clone());
            }
        };
        for img in images {
            img.check_ring(&images[0])?;
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|img| vec![MultiPoly::one(&target), img.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                while powers[v].len() <= e as usize {
                    let next = &powers[v][powers[v].len() - 1] * &images[v];
                    powers[v].push(next);
                }
                term = &term * &powers[v][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Move the polynomial into another ring with the same variable count.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> MultiPoly {
        assert_eq!(ring.nvars(), self.ring.nvars());
        assert_eq!(ring.field, self.ring.field);
        MultiPoly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        poly_arith(self, rhs, PolyOp::Add).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        poly_arith(self, rhs, PolyOp::Mul).expect("ring mismatch")
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a FieldElem)>,
{
    let mut first = true;
    for (mono, c) in terms {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        let body = if mono == "1" {
            abs.to_string()
        } else if abs.is_one() {
            mono
        } else {
            format!("{abs}*{mono}")
        };
        match (first, neg) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    /// Descending monomial order, e.g. `x*y + x + y + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| (m.format(&self.ring.vars), c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(field: Field) -> (Arc<PolyRing>, MultiPoly, MultiPoly) {
        let r = PolyRing::xy(field);
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        (r, x, y)
    }

    #[test]
    fn distributivity_example() {
        let (r, x, y) = xy(Field::Rational);
        let one = MultiPoly::one(&r);
        let p = &(&y + &one) * &(&one + &x);
        let expected = MultiPoly::from_int_terms(
            &r,
            &[
                (vec![0, 0], 1),
                (vec![1, 0], 1),
                (vec![0, 1], 1),
                (vec![1, 1], 1),
            ],
        );
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "x*y + x + y + 1");
    }

    #[test]
    fn cancellation_example() {
        let (r, x, y) = xy(Field::Rational);
        let x2 = x.pow(2);
        let s = &(&y + &x2) + &(&y - &x2);
        assert_eq!(s, MultiPoly::from_int_terms(&r, &[(vec![0, 1], 2)]));
        let (_, x, y) = xy(Field::Prime(2));
        let x2 = x.pow(2);
        assert!((&(&y + &x2) + &(&y - &x2)).is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let (_, x, _) = xy(Field::Rational);
        let t = MultiPoly::var(&PolyRing::t_vars(Field::Rational, 1), 0);
        assert!(matches!(
            poly_arith(&x, &t, PolyOp::Add),
            Err(PolyError::RingMismatch { .. })
        ));
        let (_, xp, _) = xy(Field::Prime(5));
        assert!(poly_arith(&x, &xp, PolyOp::Mul).is_err());
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let t = PolyRing::t_vars(Field::Rational, 1);
        let (_, x, y) = xy(Field::Rational);
        let t0 = MultiPoly::var(&t, 0);
        let t1 = MultiPoly::var(&t, 1);
        let p = &t0 * &t1;
        let f0 = &y + &x;
        let f1 = &y - &x;
        let img = p.substitute(&[f0.clone(), f1.clone()]).unwrap();
        assert_eq!(img, &f0 * &f1);
        assert_eq!(img.to_string(), "-x^2 + y^2");
        assert!(p.substitute(&[f0]).is_err());
    }

    #[test]
    fn truncated_product() {
        let (r, x, y) = xy(Field::Rational);
        let one = MultiPoly::one(&r);
        let a = &one + &x;
        let b = &one + &y;
        assert_eq!(a.mul_truncated(&b, 2), &(&one + &x) + &y);
    }
}
