//! Quivers, path algebras with two-letter relations, and normal forms.
//!
//! Paths are written function-style: the word `a_i b_i` traverses `b_i`
//! first and then `a_i`. A word `[w_0, ..., w_k]` is composable when the
//! source of `w_j` equals the target of `w_{j+1}`.

mod rewrite;

use std::fmt;
use std::sync::Arc;

use crate::error::QuiverError;
use crate::field::Field;
use crate::poly::{MultiPoly, PolyRing};
use crate::ring::CoeffRing;

pub use rewrite::{Element, Presentation, ReductionStrategy, Rule};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    /// Cohomological degree (`0` or `-1` here).
    pub degree: i32,
    /// Displacement around the cycle: `+1` forward, `-1` backward, `0` loops.
    pub step: i32,
}

/// Vertices are the labels `first, first + 1, ..., first + count - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub first: usize,
    pub count: usize,
    pub arrows: Vec<Arrow>,
    /// Prefix for printing idempotents, e.g. `e` prints `e_1`.
    pub idempotent_name: String,
    /// Cycle length used to turn displacement into winding; `None` for
    /// quivers without a cyclic structure.
    pub period: Option<usize>,
}

impl Quiver {
    pub fn new(
        first: usize,
        count: usize,
        arrows: Vec<Arrow>,
        idempotent_name: &str,
        period: Option<usize>,
    ) -> Result<Quiver, QuiverError> {
        let range = first..first + count;
        for (idx, a) in arrows.iter().enumerate() {
            if !range.contains(&a.source) || !range.contains(&a.target) {
                return Err(QuiverError::BadArrow(a.name.clone()));
            }
            if arrows[..idx].iter().any(|b| b.name == a.name) {
                return Err(QuiverError::DuplicateArrow(a.name.clone()));
            }
        }
        Ok(Quiver {
            first,
            count,
            arrows,
            idempotent_name: idempotent_name.to_string(),
            period,
        })
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        self.first..self.first + self.count
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A composable word of arrow indices together with its endpoints, so the
/// empty word at `v` is the idempotent `e_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn idempotent(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Build from arrow indices in written order.
    pub fn from_word(q: &Quiver, word: &[usize]) -> Result<Path, QuiverError> {
        let (Some(&first), Some(&last)) = (word.first(), word.last()) else {
            return Err(QuiverError::NotComposable);
        };
        for w in word.windows(2) {
            if q.arrows[w[0]].source != q.arrows[w[1]].target {
                return Err(QuiverError::NotComposable);
            }
        }
        Ok(Path {
            source: q.arrows[last].source,
            target: q.arrows[first].target,
            arrows: word.to_vec(),
        })
    }

    /// Written concatenation `self · other`: `other` is traversed first.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: other.source,
            target: self.target,
            arrows,
        })
    }

    pub fn degree(&self, q: &Quiver) -> i32 {
        self.arrows.iter().map(|&a| q.arrows[a].degree).sum()
    }

    pub fn displacement(&self, q: &Quiver) -> i64 {
        self.arrows.iter().map(|&a| q.arrows[a].step as i64).sum()
    }

    /// Number of full turns around the cycle, rounded toward zero.
    pub fn winding(&self, q: &Quiver) -> i64 {
        match q.period {
            Some(p) => self.displacement(q) / p as i64,
            None => 0,
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("{}_{}", q.idempotent_name, self.source)
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{:?}", self.source, self.target, self.arrows)
    }
}

/// Arrow names and idempotent prefix for a cyclic or linear doubled quiver.
#[derive(Clone, Copy, Debug)]
pub struct Naming<'a> {
    pub forward: &'a str,
    pub backward: &'a str,
    pub idempotent: &'a str,
}

pub const STANDARD_NAMES: Naming<'static> = Naming {
    forward: "a",
    backward: "b",
    idempotent: "e",
};

/// Cyclic doubled quiver on `0..=n` with `a_i: i -> i+1`, `b_i: i+1 -> i`
/// and rules `a_i b_i -> c_i e_{i+1}`, `b_i a_i -> c_i e_i`.
pub fn cyclic_presentation<R: CoeffRing>(
    n: usize,
    ring: R,
    coeffs: Vec<R::Elem>,
    names: Naming<'_>,
) -> Result<Presentation<R>, QuiverError> {
    let m = n + 1;
    if coeffs.len() != m {
        return Err(QuiverError::Arity {
            expected: m,
            got: coeffs.len(),
        });
    }
    let mut arrows = Vec::with_capacity(2 * m);
    for i in 0..m {
        arrows.push(Arrow {
            name: format!("{}_{i}", names.forward),
            source: i,
            target: (i + 1) % m,
            degree: 0,
            step: 1,
        });
        arrows.push(Arrow {
            name: format!("{}_{i}", names.backward),
            source: (i + 1) % m,
            target: i,
            degree: 0,
            step: -1,
        });
    }
    let quiver = Quiver::new(0, m, arrows, names.idempotent, Some(m))?;
    let mut rules = Vec::new();
    for (i, c) in coeffs.into_iter().enumerate() {
        let (a, b) = (2 * i, 2 * i + 1);
        rules.push(Rule::new(&quiver, [a, b], c.clone())?);
        rules.push(Rule::new(&quiver, [b, a], c)?);
    }
    Presentation::new(quiver, ring, rules)
}

/// Linear doubled quiver on `1..=n` with pairs `a_i, b_i` for `i = 1..n-1`,
/// plus extra arrows appended by the caller.
pub fn linear_presentation<R: CoeffRing>(
    n: usize,
    ring: R,
    coeffs: &[R::Elem],
    names: Naming<'_>,
    extra: Vec<(Arrow, Option<R::Elem>)>,
) -> Result<Presentation<R>, QuiverError> {
    // coeffs[i] is the coefficient for the pair (a_i, b_i); index 0 unused.
    if coeffs.len() != n + 1 {
        return Err(QuiverError::Arity {
            expected: n + 1,
            got: coeffs.len(),
        });
    }
    let mut arrows = Vec::new();
    for i in 1..n {
        arrows.push(Arrow {
            name: format!("{}_{i}", names.forward),
            source: i,
            target: i + 1,
            degree: 0,
            step: 1,
        });
        arrows.push(Arrow {
            name: format!("{}_{i}", names.backward),
            source: i + 1,
            target: i,
            degree: 0,
            step: -1,
        });
    }
    let pair_count = arrows.len();
    let extra_rules: Vec<Option<R::Elem>> = extra.iter().map(|(_, r)| r.clone()).collect();
    arrows.extend(extra.into_iter().map(|(a, _)| a));
    let quiver = Quiver::new(1, n, arrows, names.idempotent, None)?;
    let mut rules = Vec::new();
    for (i, c) in coeffs.iter().enumerate().take(n).skip(1) {
        let (a, b) = (2 * (i - 1), 2 * (i - 1) + 1);
        rules.push(Rule::new(&quiver, [a, b], c.clone())?);
        rules.push(Rule::new(&quiver, [b, a], c.clone())?);
    }
    // An extra arrow with a rule entry squares to that coefficient (zero for
    // the odd loops).
    for (k, r) in extra_rules.into_iter().enumerate() {
        if let Some(c) = r {
            let idx = pair_count + k;
            rules.push(Rule::new(&quiver, [idx, idx], c)?);
        }
    }
    Presentation::new(quiver, ring, rules)
}

/// The cyclic presentation over `K[t_0, ..., t_n]`.
pub fn build_cyclic_presentation(
    n: usize,
    field: Field,
) -> Result<Presentation<Arc<PolyRing>>, QuiverError> {
    let ring = PolyRing::t_vars(field, n);
    let ts = (0..=n).map(|i| MultiPoly::var(&ring, i)).collect();
    cyclic_presentation(n, ring, ts, STANDARD_NAMES)
}

/// The cyclic presentation with vertex 0 and its arrows removed.
pub fn build_linear_presentation(
    n: usize,
    field: Field,
) -> Result<Presentation<Arc<PolyRing>>, QuiverError> {
    let ring = PolyRing::t_vars(field, n);
    let ts: Vec<MultiPoly> = (0..=n).map(|i| MultiPoly::var(&ring, i)).collect();
    linear_presentation(n, ring, &ts, STANDARD_NAMES, Vec::new())
}

/// Replace each `t_i` by `images[i]` (e.g. `f_i(x, y)`).
pub fn base_change(
    p: &Presentation<Arc<PolyRing>>,
    images: &[MultiPoly],
) -> Result<Presentation<Arc<PolyRing>>, QuiverError> {
    let nvars = p.ring().nvars();
    if images.len() != nvars {
        return Err(QuiverError::Arity {
            expected: nvars,
            got: images.len(),
        });
    }
    let target = images[0].ring().clone();
    p.map_coefficients(target, |c| {
        c.substitute(images).expect("arity checked above")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_sizes() {
        let p = build_cyclic_presentation(1, Field::Rational).unwrap();
        assert_eq!(p.quiver().count, 2);
        assert_eq!(p.quiver().arrows.len(), 4);
        assert_eq!(p.rules().len(), 4);
    }

    #[test]
    fn linear_sizes() {
        let p = build_linear_presentation(1, Field::Rational).unwrap();
        assert_eq!(p.quiver().count, 1);
        assert!(p.quiver().arrows.is_empty());
        let p = build_linear_presentation(2, Field::Rational).unwrap();
        assert_eq!(p.quiver().vertices(), 1..3);
        let names: Vec<&str> = p.quiver().arrows.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["a_1", "b_1"]);
        let e = p.reduce(&p.word(&["b_1", "a_1"]).unwrap());
        assert_eq!(p.display(&e), "(t_1) e_1");
        let e = p.reduce(&p.word(&["a_1", "b_1"]).unwrap());
        assert_eq!(p.display(&e), "(t_1) e_2");
    }

    #[test]
    fn cyclic_rules_reduce() {
        let p = build_cyclic_presentation(2, Field::Rational).unwrap();
        assert_eq!(
            p.display(&p.reduce(&p.word(&["a_0", "b_0"]).unwrap())),
            "(t_0) e_1"
        );
        assert_eq!(
            p.display(&p.reduce(&p.word(&["b_1", "a_1"]).unwrap())),
            "(t_1) e_1"
        );
        assert_eq!(
            p.display(&p.reduce(&p.word(&["a_0", "b_0", "a_0"]).unwrap())),
            "(t_0) a_0"
        );
    }

    #[test]
    fn bad_arrows_rejected() {
        let a = Arrow {
            name: "a".into(),
            source: 0,
            target: 3,
            degree: 0,
            step: 0,
        };
        assert!(matches!(
            Quiver::new(0, 2, vec![a.clone()], "e", None),
            Err(QuiverError::BadArrow(_))
        ));
        let mut b = a.clone();
        b.target = 1;
        assert!(matches!(
            Quiver::new(0, 2, vec![b.clone(), b], "e", None),
            Err(QuiverError::DuplicateArrow(_))
        ));
    }
}
