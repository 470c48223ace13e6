use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Field, FieldElem};
use crate::ring::CoeffRing;

use super::monomial::Monomial;
use super::multipoly::{write_terms, MultiPoly, PolyRing};

/// `K[z_1^{±1}, z_2^{±1}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LaurentRing {
    pub field: Field,
}

impl CoeffRing for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(self.field)
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one(self.field)
    }
    fn from_i64(&self, v: i64) -> LaurentPoly {
        LaurentPoly::monomial(self.field, 0, 0, self.field.from_i64(v))
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a.clone()
    }
}

/// Exponent pair `(e_1, e_2)` of `z_1^{e_1} z_2^{e_2}`, ordered like a
/// graded-lex monomial so printing matches `MultiPoly`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Exp(i32, i32);

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0 + self.1, self.0, self.1).cmp(&(other.0 + other.1, other.0, other.1))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Field,
    terms: BTreeMap<Exp, FieldElem>,
}

impl LaurentPoly {
    pub fn zero(field: Field) -> Self {
        LaurentPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field, 0, 0, field.one())
    }

    pub fn monomial(field: Field, e1: i32, e2: i32, c: FieldElem) -> Self {
        let mut p = Self::zero(field);
        p.add_term(e1, e2, c);
        p
    }

    pub fn z1(field: Field) -> Self {
        Self::monomial(field, 1, 0, field.one())
    }

    pub fn z2(field: Field) -> Self {
        Self::monomial(field, 0, 1, field.one())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `((e_1, e_2), coefficient)` in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((i32, i32), &FieldElem)> {
        self.terms.iter().map(|(e, c)| ((e.0, e.1), c))
    }

    pub fn coefficient(&self, e1: i32, e2: i32) -> FieldElem {
        self.terms
            .get(&Exp(e1, e2))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, e1: i32, e2: i32, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let key = Exp(e1, e2);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Integer power; negative exponents are allowed only for monomials.
    pub fn pow(&self, e: i32) -> Option<LaurentPoly> {
        if e >= 0 {
            let mut acc = LaurentPoly::one(self.field);
            for _ in 0..e {
                acc = &acc * self;
            }
            return Some(acc);
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (exp, c) = self.terms.iter().next()?;
        let inv = c.inv()?;
        LaurentPoly::monomial(self.field, -exp.0, -exp.1, inv).pow(-e)
    }

    /// Read a polynomial in `x, y` as a Laurent polynomial via `x -> z_1`, `y -> z_2`.
    pub fn from_xy(p: &MultiPoly) -> LaurentPoly {
        assert_eq!(p.ring().nvars(), 2);
        let mut out = LaurentPoly::zero(p.field());
        for (m, c) in p.terms() {
            out.add_term(m.0[0] as i32, m.0[1] as i32, c.clone());
        }
        out
    }

    /// Multiply by a monomial so that all exponents are nonnegative and at
    /// least one exponent of each variable is zero; returns the shift used.
    pub fn clear_denominators(&self) -> (MultiPoly, (i32, i32)) {
        let ring = PolyRing::new(self.field, &["z1", "z2"]);
        let m1 = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let m2 = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        let mut p = MultiPoly::zero(&ring);
        for (e, c) in &self.terms {
            p.add_term(
                Monomial(vec![(e.0 - m1) as u32, (e.1 - m2) as u32]),
                c.clone(),
            );
        }
        (p, (-m1, -m2))
    }

    /// Nonnegative-exponent part as a polynomial over `ring` (two variables).
    pub fn to_poly(&self, ring: &std::sync::Arc<PolyRing>) -> Option<MultiPoly> {
        let mut p = MultiPoly::zero(ring);
        for (e, c) in &self.terms {
            if e.0 < 0 || e.1 < 0 {
                return None;
            }
            p.add_term(Monomial(vec![e.0 as u32, e.1 as u32]), c.clone());
        }
        Some(p)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.0, e.1, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = LaurentPoly::zero(self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.0 + b.0, a.1 + b.1, ca * cb);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

fn format_exp(e: Exp) -> String {
    let mut parts = Vec::new();
    for (name, k) in [("z1", e.0), ("z2", e.1)] {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(e, c)| (format_exp(*e), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_invert() {
        let q = Field::Rational;
        let z1 = LaurentPoly::z1(q);
        let inv = z1.pow(-1).unwrap();
        assert_eq!(&z1 * &inv, LaurentPoly::one(q));
        assert!((&z1 + &LaurentPoly::one(q)).pow(-1).is_none());
    }

    #[test]
    fn display_orders_terms() {
        let q = Field::Rational;
        let z1 = LaurentPoly::z1(q);
        let z2 = LaurentPoly::z2(q);
        let p = &(&z2 * &z2) - &(&z1 * &z1);
        assert_eq!(p.to_string(), "-z1^2 + z2^2");
        assert_eq!(z1.pow(-2).unwrap().to_string(), "z1^-2");
    }
}
