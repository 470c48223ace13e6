use std::fmt;
use std::sync::Arc;

use crate::error::PolyError;
use crate::field::{Field, FieldElem};
use crate::ring::CoeffRing;

use super::monomial::Monomial;
use super::multipoly::{MultiPoly, PolyRing};

/// `K[[x, y]]` modulo `(x, y)^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRing {
    pub poly: Arc<PolyRing>,
    pub order: u32,
}

impl SeriesRing {
    pub fn new(field: Field, order: u32) -> Self {
        SeriesRing {
            poly: PolyRing::xy(field),
            order,
        }
    }

    pub fn field(&self) -> Field {
        self.poly.field
    }

    pub fn from_poly(&self, p: &MultiPoly) -> TruncatedSeries {
        TruncatedSeries {
            poly: p.with_ring(&self.poly).truncate(self.order),
            order: self.order,
        }
    }

    pub fn x(&self) -> TruncatedSeries {
        self.from_poly(&MultiPoly::var(&self.poly, 0))
    }

    pub fn y(&self) -> TruncatedSeries {
        self.from_poly(&MultiPoly::var(&self.poly, 1))
    }

    /// Number of monomials of total degree below the order.
    pub fn dimension(&self) -> usize {
        let n = self.order as usize;
        n * (n + 1) / 2
    }
}

impl CoeffRing for SeriesRing {
    type Elem = TruncatedSeries;

    fn zero(&self) -> TruncatedSeries {
        self.from_poly(&MultiPoly::zero(&self.poly))
    }
    fn one(&self) -> TruncatedSeries {
        self.from_poly(&MultiPoly::one(&self.poly))
    }
    fn from_i64(&self, v: i64) -> TruncatedSeries {
        self.from_poly(&MultiPoly::constant(
            &self.poly,
            self.poly.field.from_i64(v),
        ))
    }
    fn is_zero(&self, a: &TruncatedSeries) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        a.add(b)
    }
    fn mul(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        a.mul(b)
    }
    fn neg(&self, a: &TruncatedSeries) -> TruncatedSeries {
        a.neg()
    }
}

/// A power series in `x, y` known up to total degree `order - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: MultiPoly,
    order: u32,
}

impl TruncatedSeries {
    pub fn new(poly: &MultiPoly, order: u32) -> Self {
        TruncatedSeries {
            poly: poly.truncate(order),
            order,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn constant_term(&self) -> FieldElem {
        self.poly
            .coefficient(&Monomial::one(self.poly.ring().nvars()))
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(other.order);
        TruncatedSeries::new(&(&self.poly + &other.poly), order)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(other.order);
        TruncatedSeries {
            poly: self.poly.mul_truncated(&other.poly, order),
            order,
        }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            poly: -self.poly.clone(),
            order: self.order,
        }
    }

    pub fn pow(&self, e: u32) -> TruncatedSeries {
        let mut acc = TruncatedSeries::new(&MultiPoly::one(self.poly.ring()), self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Inverse of a series with nonzero constant term, via the geometric series
/// `c^{-1} (1 - u + u^2 - ...)` with `u = s/c - 1` of order at least one.
pub fn series_invert(s: &TruncatedSeries) -> Result<TruncatedSeries, PolyError> {
    let c = s.constant_term();
    let cinv = c.inv().ok_or(PolyError::NotInvertible)?;
    let ring = s.poly.ring();
    let one = TruncatedSeries::new(&MultiPoly::one(ring), s.order);
    let u = TruncatedSeries::new(&s.poly.scale(&cinv), s.order).sub(&one);
    let neg_u = u.neg();
    let mut acc = one.clone();
    let mut power = one;
    // u has no constant term, so u^k vanishes once k >= order.
    for _ in 1..s.order {
        power = power.mul(&neg_u);
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
    }
    Ok(TruncatedSeries {
        poly: acc.poly.scale(&cinv),
        order: s.order,
    })
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.poly, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_x_minus_one() {
        let r = SeriesRing::new(Field::Rational, 4);
        let s = r.x().sub(&r.one());
        let inv = series_invert(&s).unwrap();
        assert_eq!(inv.poly().to_string(), "-x^3 - x^2 - x - 1");
        assert_eq!(inv.mul(&s), r.one());
    }

    #[test]
    fn invert_y_minus_one_order_three() {
        let r = SeriesRing::new(Field::Rational, 3);
        let inv = series_invert(&r.y().sub(&r.one())).unwrap();
        assert_eq!(inv.poly().to_string(), "-y^2 - y - 1");
    }

    #[test]
    fn zero_constant_term_is_rejected() {
        let r = SeriesRing::new(Field::Prime(7), 5);
        assert_eq!(series_invert(&r.x()), Err(PolyError::NotInvertible));
        assert_eq!(series_invert(&r.one()).unwrap(), r.one());
    }
}
