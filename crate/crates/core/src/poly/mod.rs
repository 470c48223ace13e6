//! Sparse multivariate polynomials, Laurent polynomials, truncated power
//! series and a small Gröbner kernel.
//!
//! Monomials are ordered graded-lexicographically with the first variable
//! largest (`x > y`, `t_0 > t_1 > ...`). Every container keeps its terms in
//! that order so iteration and printing are deterministic.

mod groebner;
mod laurent;
mod monomial;
mod multipoly;
mod series;

pub use groebner::{groebner, quotient_dimension, Dimension, IdealBasis};
pub use laurent::{LaurentPoly, LaurentRing};
pub use monomial::Monomial;
pub use multipoly::{poly_arith, MultiPoly, PolyOp, PolyRing};
pub use series::{series_invert, SeriesRing, TruncatedSeries};
