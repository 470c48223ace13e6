use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::QuiverError;
use crate::ring::CoeffRing;

use super::{Path, Quiver};

/// `lhs[0] lhs[1] -> coeff · e_v`, where `v` is the vertex the two-letter
/// loop sits at. A zero coefficient makes the word vanish.
#[derive(Clone, Debug)]
pub struct Rule<E> {
    pub lhs: [usize; 2],
    pub coeff: E,
    pub vertex: usize,
}

impl<E> Rule<E> {
    pub fn new(q: &Quiver, lhs: [usize; 2], coeff: E) -> Result<Self, QuiverError> {
        let path = Path::from_word(q, &lhs)?;
        if path.source != path.target {
            return Err(QuiverError::NotComposable);
        }
        Ok(Rule {
            lhs,
            coeff,
            vertex: path.source,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStrategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// Finite linear combination of paths with coefficients in `R`.
#[derive(Debug)]
pub struct Element<R: CoeffRing> {
    terms: BTreeMap<Path, R::Elem>,
}

impl<R: CoeffRing> Clone for Element<R> {
    fn clone(&self) -> Self {
        Element {
            terms: self.terms.clone(),
        }
    }
}

impl<R: CoeffRing> PartialEq for Element<R> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<R: CoeffRing> Element<R> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&R::Elem> {
        self.terms.get(p)
    }

    fn add_term(&mut self, ring: &R, p: Path, c: R::Elem) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(existing) => {
                let s = ring.add(existing, &c);
                if ring.is_zero(&s) {
                    self.terms.remove(&p);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }
}

/// A quiver with a terminating, confluent rewrite system of two-letter
/// rules whose right sides are central coefficients times idempotents.
#[derive(Debug)]
pub struct Presentation<R: CoeffRing> {
    quiver: Quiver,
    ring: R,
    rules: Vec<Rule<R::Elem>>,
    lookup: HashMap<(usize, usize), usize>,
}

impl<R: CoeffRing> Clone for Presentation<R> {
    fn clone(&self) -> Self {
        Presentation {
            quiver: self.quiver.clone(),
            ring: self.ring.clone(),
            rules: self.rules.clone(),
            lookup: self.lookup.clone(),
        }
    }
}

impl<R: CoeffRing> Presentation<R> {
    /// Fails unless every overlap `u v w` of two left sides resolves.
    pub fn new(quiver: Quiver, ring: R, rules: Vec<Rule<R::Elem>>) -> Result<Self, QuiverError> {
        let mut lookup = HashMap::new();
        for (idx, r) in rules.iter().enumerate() {
            if lookup.insert((r.lhs[0], r.lhs[1]), idx).is_some() {
                return Err(QuiverError::NotConfluent(format!(
                    "two rules share the left side {}",
                    Path::from_word(&quiver, &r.lhs)?.display(&quiver)
                )));
            }
        }
        let p = Presentation {
            quiver,
            ring,
            rules,
            lookup,
        };
        p.check_confluence()?;
        Ok(p)
    }

    fn check_confluence(&self) -> Result<(), QuiverError> {
        for r1 in &self.rules {
            for r2 in &self.rules {
                if r1.lhs[1] != r2.lhs[0] {
                    continue;
                }
                let word = [r1.lhs[0], r1.lhs[1], r2.lhs[1]];
                // Left redex leaves the last letter, right redex the first.
                let left =
                    self.reduce_term(r1.coeff.clone(), &[word[2]], ReductionStrategy::Leftmost);
                let right =
                    self.reduce_term(r2.coeff.clone(), &[word[0]], ReductionStrategy::Leftmost);
                if left != right {
                    let path = Path::from_word(&self.quiver, &word)?;
                    return Err(QuiverError::NotConfluent(path.display(&self.quiver)));
                }
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rules(&self) -> &[Rule<R::Elem>] {
        &self.rules
    }

    pub fn rule_for(&self, u: usize, v: usize) -> Option<&Rule<R::Elem>> {
        self.lookup.get(&(u, v)).map(|&i| &self.rules[i])
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.quiver.arrow_index(name)
    }

    pub fn idempotent(&self, v: usize) -> Element<R> {
        self.term(Path::idempotent(v), self.ring.one())
    }

    /// The sum of all vertex idempotents.
    pub fn unit(&self) -> Element<R> {
        let mut out = Element::zero();
        for v in self.quiver.vertices() {
            out.add_term(&self.ring, Path::idempotent(v), self.ring.one());
        }
        out
    }

    pub fn term(&self, p: Path, c: R::Elem) -> Element<R> {
        let mut e = Element::zero();
        e.add_term(&self.ring, p, c);
        e
    }

    /// The (unreduced) word with the given arrow names in written order.
    pub fn word(&self, names: &[&str]) -> Result<Element<R>, QuiverError> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| {
                self.arrow(n)
                    .ok_or_else(|| QuiverError::BadArrow(n.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(self.term(Path::from_word(&self.quiver, &idx)?, self.ring.one()))
    }

    pub fn add(&self, a: &Element<R>, b: &Element<R>) -> Element<R> {
        let mut out = a.clone();
        for (p, c) in &b.terms {
            out.add_term(&self.ring, p.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, a: &Element<R>) -> Element<R> {
        Element {
            terms: a
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Element<R>, b: &Element<R>) -> Element<R> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &R::Elem, a: &Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (p, x) in &a.terms {
            out.add_term(&self.ring, p.clone(), self.ring.mul(c, x));
        }
        out
    }

    pub fn is_normal(&self, p: &Path) -> bool {
        p.arrows
            .windows(2)
            .all(|w| !self.lookup.contains_key(&(w[0], w[1])))
    }

    fn redexes(&self, word: &[usize]) -> Vec<usize> {
        (0..word.len().saturating_sub(1))
            .filter(|&j| self.lookup.contains_key(&(word[j], word[j + 1])))
            .collect()
    }

    /// Normal form of `c · word`, or `None` when it vanishes. An empty
    /// result word is reported as the idempotent at the loop's vertex.
    fn reduce_word(
        &self,
        mut c: R::Elem,
        word: &[usize],
        strategy: ReductionStrategy,
    ) -> Option<(R::Elem, Path)> {
        let endpoint = if word.is_empty() {
            None
        } else {
            Some(Path::from_word(&self.quiver, word).expect("composable word"))
        };
        let mut w = word.to_vec();
        let mut rng = match strategy {
            ReductionStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut vertex = None;
        loop {
            let red = self.redexes(&w);
            if red.is_empty() {
                break;
            }
            let j = match strategy {
                ReductionStrategy::Leftmost => red[0],
                ReductionStrategy::Rightmost => red[red.len() - 1],
                ReductionStrategy::Random(_) => {
                    red[rng.as_mut().expect("seeded").gen_range(0..red.len())]
                }
            };
            let rule = &self.rules[self.lookup[&(w[j], w[j + 1])]];
            c = self.ring.mul(&c, &rule.coeff);
            if self.ring.is_zero(&c) {
                return None;
            }
            vertex = Some(rule.vertex);
            w.drain(j..j + 2);
        }
        let path = if w.is_empty() {
            let v = vertex
                .or_else(|| endpoint.as_ref().map(|p| p.source))
                .expect("empty word has a vertex");
            Path::idempotent(v)
        } else {
            Path::from_word(&self.quiver, &w).expect("reduction keeps composability")
        };
        if let Some(e) = &endpoint {
            debug_assert_eq!((e.source, e.target), (path.source, path.target));
        }
        Some((c, path))
    }

    fn reduce_term(&self, c: R::Elem, word: &[usize], strategy: ReductionStrategy) -> Element<R> {
        let mut out = Element::zero();
        if let Some((c, p)) = self.reduce_word(c, word, strategy) {
            out.add_term(&self.ring, p, c);
        }
        out
    }

    pub fn reduce(&self, x: &Element<R>) -> Element<R> {
        self.reduce_with(x, ReductionStrategy::Leftmost)
    }

    pub fn reduce_with(&self, x: &Element<R>, strategy: ReductionStrategy) -> Element<R> {
        let mut out = Element::zero();
        for (k, (p, c)) in x.terms.iter().enumerate() {
            let s = match strategy {
                ReductionStrategy::Random(seed) => {
                    ReductionStrategy::Random(seed.wrapping_add(k as u64))
                }
                other => other,
            };
            let reduced = if p.arrows.is_empty() {
                Some((c.clone(), p.clone()))
            } else {
                self.reduce_word(c.clone(), &p.arrows, s)
            };
            if let Some((c, p)) = reduced {
                out.add_term(&self.ring, p, c);
            }
        }
        out
    }

    /// Reduced product; terms whose endpoints do not match contribute zero.
    pub fn multiply(&self, x: &Element<R>, y: &Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (p, c) in &x.terms {
            for (q, d) in &y.terms {
                let Some(pq) = p.compose(q) else { continue };
                let c = self.ring.mul(c, d);
                if pq.arrows.is_empty() {
                    out.add_term(&self.ring, pq, c);
                } else if let Some((c, r)) =
                    self.reduce_word(c, &pq.arrows, ReductionStrategy::Leftmost)
                {
                    out.add_term(&self.ring, r, c);
                }
            }
        }
        out
    }

    /// All normal paths from `source` to `target` with at most `max_len`
    /// arrows, in ascending path order.
    pub fn normal_paths(&self, source: usize, target: usize, max_len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = Vec::new();
        if source == target {
            out.push(Path::idempotent(source));
        }
        for (idx, a) in self.quiver.arrows.iter().enumerate() {
            if a.source == source && max_len > 0 {
                stack.push(vec![idx]);
            }
        }
        while let Some(w) = stack.pop() {
            // w is stored in traversal order; w.last() is the latest arrow.
            let last = *w.last().expect("nonempty");
            let here = self.quiver.arrows[last].target;
            if here == target {
                let written: Vec<usize> = w.iter().rev().copied().collect();
                out.push(Path::from_word(&self.quiver, &written).expect("walk"));
            }
            if w.len() == max_len {
                continue;
            }
            for (idx, a) in self.quiver.arrows.iter().enumerate() {
                if a.source == here && !self.lookup.contains_key(&(idx, last)) {
                    let mut next = w.clone();
                    next.push(idx);
                    stack.push(next);
                }
            }
        }
        out.sort();
        out
    }

    /// Normal paths `j -> i` with `|winding| <= w`, paired with their winding.
    /// Requires a cyclic quiver, or any quiver when `w = 0` bounds length by
    /// the vertex count.
    pub fn basis(&self, i: usize, j: usize, w: u32) -> Vec<(Path, i64)> {
        let period = self.quiver.period.unwrap_or(self.quiver.count.max(1));
        let max_len = period * (w as usize + 1);
        let mut out: Vec<(Path, i64)> = self
            .normal_paths(j, i, max_len)
            .into_iter()
            .map(|p| {
                let r = p.winding(&self.quiver);
                (p, r)
            })
            .filter(|(_, r)| r.unsigned_abs() <= w as u64)
            .collect();
        out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        out
    }

    /// Same quiver and rules with every coefficient sent through `f`.
    pub fn map_coefficients<S: CoeffRing>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Result<Presentation<S>, QuiverError> {
        let rules = self
            .rules
            .iter()
            .map(|r| Rule {
                lhs: r.lhs,
                coeff: f(&r.coeff),
                vertex: r.vertex,
            })
            .collect();
        Presentation::new(self.quiver.clone(), ring, rules)
    }

    /// Send an element through a coefficient map into a presentation over
    /// the same quiver.
    pub fn map_element<S: CoeffRing>(
        &self,
        target: &Presentation<S>,
        x: &Element<R>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Element<S> {
        let mut out = Element::zero();
        for (p, c) in &x.terms {
            out.add_term(&target.ring, p.clone(), f(c));
        }
        target.reduce(&out)
    }

    pub fn display(&self, x: &Element<R>) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let one = self.ring.one();
        x.terms
            .iter()
            .map(|(p, c)| {
                if *c == one {
                    p.display(&self.quiver)
                } else {
                    format!("({c}) {}", p.display(&self.quiver))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<R: CoeffRing> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("({c}) {p}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
