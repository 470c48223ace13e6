//! Affine braid generators as automorphisms of the free group of the
//! punctured annulus, with exact relation checks and a faithfulness proxy.
//!
//! Free generator `0` is the loop `h` around the hole; generator `i + 1` is
//! the loop `g_i` around puncture `c_i`. A word is a list of nonzero
//! integers, `+(k + 1)` for generator `k` and `-(k + 1)` for its inverse.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::BraidError;
use crate::field::Field;
use crate::poly::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeGroupWord(pub Vec<i32>);

impl FreeGroupWord {
    pub fn identity() -> Self {
        FreeGroupWord(Vec::new())
    }

    pub fn generator(k: usize) -> Self {
        FreeGroupWord(vec![k as i32 + 1])
    }

    pub fn from_letters(letters: &[i32]) -> Self {
        FreeGroupWord(Vec::new()).times(&FreeGroupWord(letters.to_vec()))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeGroupWord(self.0.iter().rev().map(|x| -x).collect())
    }

    /// Freely reduced product.
    pub fn times(&self, other: &FreeGroupWord) -> FreeGroupWord {
        let mut out = self.0.clone();
        for &x in &other.0 {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        FreeGroupWord(out)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|x| x.unsigned_abs() as usize - 1).max()
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&x| {
                let k = x.unsigned_abs() as usize - 1;
                let name = if k == 0 {
                    "h".to_string()
                } else {
                    format!("g{}", k - 1)
                };
                if x < 0 {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An endomorphism of `F_rank` given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinAutomorphism {
    pub images: Vec<FreeGroupWord>,
}

impl ArtinAutomorphism {
    pub fn identity(rank: usize) -> Self {
        ArtinAutomorphism {
            images: (0..rank).map(FreeGroupWord::generator).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, w: &FreeGroupWord) -> Result<FreeGroupWord, BraidError> {
        let mut out = FreeGroupWord::identity();
        for &x in &w.0 {
            let k = x.unsigned_abs() as usize - 1;
            let img = self
                .images
                .get(k)
                .ok_or(BraidError::FreeGeneratorOutOfRange {
                    gen: k,
                    rank: self.rank(),
                })?;
            out = if x > 0 {
                out.times(img)
            } else {
                out.times(&img.inverse())
            };
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ArtinAutomorphism) -> ArtinAutomorphism {
        ArtinAutomorphism {
            images: other
                .images
                .iter()
                .map(|w| self.apply(w).expect("same rank"))
                .collect(),
        }
    }

    /// Elementary braid swapping positions `j` and `j + 1`:
    /// `x_j -> x_j x_{j+1} x_j^{-1}`, `x_{j+1} -> x_j`.
    pub fn artin(j: usize, rank: usize) -> Self {
        let mut a = Self::identity(rank);
        let (p, q) = (j as i32 + 1, j as i32 + 2);
        a.images[j] = FreeGroupWord(vec![p, q, -p]);
        a.images[j + 1] = FreeGroupWord(vec![p]);
        a
    }

    pub fn artin_inverse(j: usize, rank: usize) -> Self {
        let mut a = Self::identity(rank);
        let (p, q) = (j as i32 + 1, j as i32 + 2);
        a.images[j] = FreeGroupWord(vec![q]);
        a.images[j + 1] = FreeGroupWord(vec![-q, p, q]);
        a
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BraidGen {
    Sigma(usize),
    Rho,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter {
    pub gen: BraidGen,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn sigma(i: usize) -> Self {
        BraidLetter {
            gen: BraidGen::Sigma(i),
            inverse: false,
        }
    }

    pub fn rho() -> Self {
        BraidLetter {
            gen: BraidGen::Rho,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        BraidLetter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen {
            BraidGen::Sigma(i) => write!(f, "s{i}")?,
            BraidGen::Rho => write!(f, "rho")?,
        }
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

pub type BraidWord = Vec<BraidLetter>;

pub fn inverse_word(w: &[BraidLetter]) -> BraidWord {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// Elementary Artin letters `(position, inverse)`.
type ArtinWord = Vec<(usize, bool)>;

fn invert_artin(w: &ArtinWord) -> ArtinWord {
    w.iter().rev().map(|&(j, e)| (j, !e)).collect()
}

/// `sigma_i` for `i = 1..n` is the half twist exchanging `c_{i-1}` and
/// `c_i`; `rho` moves every puncture one step around the core and
/// `sigma_0 = rho^{-1} sigma_1 rho`.
#[derive(Clone, Debug)]
pub struct BraidSystem {
    pub n: usize,
    pub rank: usize,
    sigma: Vec<ArtinAutomorphism>,
    sigma_inv: Vec<ArtinAutomorphism>,
    rho: ArtinAutomorphism,
    rho_inv: ArtinAutomorphism,
    sigma_artin: Vec<ArtinWord>,
    rho_artin: ArtinWord,
}

fn artin_word_auto(w: &ArtinWord, rank: usize) -> ArtinAutomorphism {
    w.iter()
        .fold(ArtinAutomorphism::identity(rank), |acc, &(j, inv)| {
            let s = if inv {
                ArtinAutomorphism::artin_inverse(j, rank)
            } else {
                ArtinAutomorphism::artin(j, rank)
            };
            acc.compose(&s)
        })
}

impl BraidSystem {
    pub fn new(n: usize) -> Result<BraidSystem, BraidError> {
        if n == 0 {
            return Err(BraidError::TooSmall);
        }
        let rank = n + 2;
        let mut rho_artin: ArtinWord = vec![(0, false), (0, false)];
        rho_artin.extend((1..=n).map(|j| (j, false)));
        let mut sigma_artin: Vec<ArtinWord> = Vec::with_capacity(n + 1);
        let mut s0 = invert_artin(&rho_artin);
        s0.push((1, false));
        s0.extend(rho_artin.iter().copied());
        sigma_artin.push(s0);
        for i in 1..=n {
            sigma_artin.push(vec![(i, false)]);
        }
        let sigma: Vec<ArtinAutomorphism> = sigma_artin
            .iter()
            .map(|w| artin_word_auto(w, rank))
            .collect();
        let sigma_inv = sigma_artin
            .iter()
            .map(|w| artin_word_auto(&invert_artin(w), rank))
            .collect();
        let sys = BraidSystem {
            n,
            rank,
            sigma,
            sigma_inv,
            rho: artin_word_auto(&rho_artin, rank),
            rho_inv: artin_word_auto(&invert_artin(&rho_artin), rank),
            sigma_artin,
            rho_artin,
        };
        for i in 0..=n {
            if !sys.conjugation_holds(i) {
                return Err(BraidError::RhoLiftFailed(i));
            }
        }
        Ok(sys)
    }

    pub fn sigma_auto(&self, i: usize) -> Result<&ArtinAutomorphism, BraidError> {
        self.sigma.get(i).ok_or(BraidError::IndexOutOfRange {
            index: i,
            n: self.n,
        })
    }

    pub fn rho_auto(&self) -> &ArtinAutomorphism {
        &self.rho
    }

    fn letter_auto(&self, l: BraidLetter) -> Result<&ArtinAutomorphism, BraidError> {
        match (l.gen, l.inverse) {
            (BraidGen::Sigma(i), false) => self.sigma_auto(i),
            (BraidGen::Sigma(i), true) => {
                self.sigma_inv.get(i).ok_or(BraidError::IndexOutOfRange {
                    index: i,
                    n: self.n,
                })
            }
            (BraidGen::Rho, false) => Ok(&self.rho),
            (BraidGen::Rho, true) => Ok(&self.rho_inv),
        }
    }

    /// The automorphism `w_1 ∘ w_2 ∘ ... ∘ w_k`.
    pub fn word_auto(&self, w: &[BraidLetter]) -> Result<ArtinAutomorphism, BraidError> {
        let mut acc = ArtinAutomorphism::identity(self.rank);
        for &l in w {
            acc = acc.compose(self.letter_auto(l)?);
        }
        Ok(acc)
    }

    /// `apply(w_1 w_2, x) = apply(w_1, apply(w_2, x))`.
    pub fn apply(&self, w: &[BraidLetter], x: &FreeGroupWord) -> Result<FreeGroupWord, BraidError> {
        if let Some(k) = x.max_generator() {
            if k >= self.rank {
                return Err(BraidError::FreeGeneratorOutOfRange {
                    gen: k,
                    rank: self.rank,
                });
            }
        }
        let mut out = x.clone();
        for &l in w.iter().rev() {
            out = self.letter_auto(l)?.apply(&out)?;
        }
        Ok(out)
    }

    fn next(&self, i: usize) -> usize {
        (i + 1) % (self.n + 1)
    }

    /// `rho sigma_i rho^{-1} = sigma_{i+1}` (indices mod `n + 1`).
    pub fn conjugation_holds(&self, i: usize) -> bool {
        self.rho.compose(&self.sigma[i]).compose(&self.rho_inv) == self.sigma[self.next(i)]
    }

    pub fn braid_relation_holds(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.sigma[i], &self.sigma[j]);
        a.compose(b).compose(a) == b.compose(a).compose(b)
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.sigma[i], &self.sigma[j]);
        a.compose(b) == b.compose(a)
    }

    /// `h g_0 g_1 ⋯ g_n`, the outer boundary loop.
    pub fn boundary_word(&self) -> FreeGroupWord {
        FreeGroupWord((1..=self.rank as i32).collect())
    }

    /// `g_0 ⋯ g_n`.
    pub fn puncture_product(&self) -> FreeGroupWord {
        FreeGroupWord((2..=self.rank as i32).collect())
    }

    fn artin_word(&self, w: &[BraidLetter]) -> ArtinWord {
        let mut out = Vec::new();
        for l in w {
            let base = match l.gen {
                BraidGen::Sigma(i) => self.sigma_artin[i].clone(),
                BraidGen::Rho => self.rho_artin.clone(),
            };
            out.extend(if l.inverse { invert_artin(&base) } else { base });
        }
        out
    }

    /// Unreduced Burau matrix of the word in `Z[t^{±1}]`, independent of
    /// the free-group action.
    pub fn burau(&self, w: &[BraidLetter]) -> Vec<Vec<LaurentPoly>> {
        let q = Field::Rational;
        let m = self.rank;
        let zero = LaurentPoly::zero(q);
        let one = LaurentPoly::one(q);
        let t = LaurentPoly::z1(q);
        let tinv = t.pow(-1).expect("monomial");
        let mut acc: Vec<Vec<LaurentPoly>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        for (j, inv) in self.artin_word(w) {
            let block = if inv {
                [[zero.clone(), one.clone()], [tinv.clone(), &one - &tinv]]
            } else {
                [[&one - &t, t.clone()], [one.clone(), zero.clone()]]
            };
            // acc = acc · (I with the block at rows/cols j, j+1).
            for row in acc.iter_mut() {
                let (a, b) = (row[j].clone(), row[j + 1].clone());
                row[j] = &(&a * &block[0][0]) + &(&b * &block[1][0]);
                row[j + 1] = &(&a * &block[0][1]) + &(&b * &block[1][1]);
            }
        }
        acc
    }

    pub fn burau_is_identity(&self, w: &[BraidLetter]) -> bool {
        let m = self.burau(w);
        let q = Field::Rational;
        m.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, e)| {
                *e == if i == j {
                    LaurentPoly::one(q)
                } else {
                    LaurentPoly::zero(q)
                }
            })
        })
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BraidReport {
    pub n: usize,
    pub free_rank: usize,
    pub conjugation: RelationCount,
    /// `None` when `n = 1`: the cyclic index set has only two elements and
    /// no braid relation is asserted there.
    pub braid: Option<RelationCount>,
    pub commutation: RelationCount,
    pub inverses_ok: bool,
    pub rho_power_central: bool,
    /// `h g_0 ⋯ g_n` is fixed exactly by every generator and inverse.
    pub boundary_fixed: bool,
    /// Whether each generator sends `g_0 ⋯ g_n` to a conjugate; only the
    /// generators supported away from the hole do.
    pub puncture_product_conjugate: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq, Default)]
pub struct RelationCount {
    pub checked: usize,
    pub failed: usize,
}

impl RelationCount {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }
}

/// If `w` is a conjugate of `target` in the free group, return the
/// conjugating word `c` with `w = c target c^{-1}`.
pub fn conjugator(w: &FreeGroupWord, target: &FreeGroupWord) -> Option<FreeGroupWord> {
    // Strip the cyclic-reduction prefix of w, then compare rotations.
    let mut core = w.0.clone();
    let mut prefix = Vec::new();
    while core.len() >= 2 && core[0] == -core[core.len() - 1] {
        prefix.push(core[0]);
        core = core[1..core.len() - 1].to_vec();
    }
    if core.len() != target.0.len() {
        return None;
    }
    let len = core.len();
    for r in 0..len.max(1) {
        let rotated: Vec<i32> = core[r..].iter().chain(&core[..r]).copied().collect();
        if rotated == target.0 {
            // core = u v, rotated = v u = u^{-1} core u, so core = u rotated u^{-1}.
            let u = FreeGroupWord(core[..r].to_vec());
            return Some(FreeGroupWord(prefix.clone()).times(&u));
        }
    }
    None
}

pub fn verify_presentation(n: usize) -> Result<BraidReport, BraidError> {
    let sys = BraidSystem::new(n)?;
    let m = n + 1;
    let mut conjugation = RelationCount::default();
    let mut braid = RelationCount::default();
    let mut commutation = RelationCount::default();
    for i in 0..m {
        conjugation.record(sys.conjugation_holds(i));
        if n >= 2 {
            braid.record(sys.braid_relation_holds(i, (i + 1) % m));
        }
        for j in (i + 1)..m {
            let dist = (j - i).min(m - (j - i));
            if dist >= 2 {
                commutation.record(sys.commute(i, j));
            }
        }
    }
    let id = ArtinAutomorphism::identity(sys.rank);
    let mut inverses_ok =
        sys.rho.compose(&sys.rho_inv) == id && sys.rho_inv.compose(&sys.rho) == id;
    for i in 0..m {
        inverses_ok &= sys.sigma[i].compose(&sys.sigma_inv[i]) == id;
        inverses_ok &= sys.sigma_inv[i].compose(&sys.sigma[i]) == id;
    }
    let rho_power = sys.word_auto(&vec![BraidLetter::rho(); m])?;
    let rho_power_central = sys
        .sigma
        .iter()
        .all(|s| rho_power.compose(s) == s.compose(&rho_power));
    let boundary = sys.boundary_word();
    let mut autos: Vec<&ArtinAutomorphism> = sys.sigma.iter().collect();
    autos.extend(sys.sigma_inv.iter());
    autos.push(&sys.rho);
    autos.push(&sys.rho_inv);
    let boundary_fixed = autos
        .iter()
        .all(|a| a.apply(&boundary).expect("rank") == boundary);
    let product = sys.puncture_product();
    let named: Vec<(String, &ArtinAutomorphism)> = (0..m)
        .map(|i| (format!("s{i}"), &sys.sigma[i]))
        .chain(std::iter::once(("rho".to_string(), &sys.rho)))
        .collect();
    let puncture_product_conjugate = named
        .iter()
        .map(|(name, a)| {
            let img = a.apply(&product).expect("rank");
            match conjugator(&img, &product) {
                Some(c) => format!("{name}: conjugate by {c}"),
                None => format!("{name}: not conjugate"),
            }
        })
        .collect();
    let passed = conjugation.failed == 0
        && braid.failed == 0
        && commutation.failed == 0
        && inverses_ok
        && rho_power_central
        && boundary_fixed;
    Ok(BraidReport {
        n,
        free_rank: sys.rank,
        conjugation,
        braid: (n >= 2).then_some(braid),
        commutation,
        inverses_ok,
        rho_power_central,
        boundary_fixed,
        puncture_product_conjugate,
        passed,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SampleReport {
    pub n: usize,
    pub max_length: usize,
    pub trials: usize,
    pub seed: u64,
    /// Words whose Burau matrix differs from the identity.
    pub certified_nontrivial: usize,
    pub skipped_uncertified: usize,
    pub acting_nontrivially: usize,
    pub fraction: f64,
}

/// Random freely reduced words in the pure generators `sigma_i^{±2}` of
/// length `1..=max_len`; among those certified nontrivial by Burau, the
/// fraction whose automorphism is not the identity.
pub fn nontriviality_sample(
    n: usize,
    max_len: usize,
    trials: usize,
    seed: u64,
) -> Result<SampleReport, BraidError> {
    let sys = BraidSystem::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = ArtinAutomorphism::identity(sys.rank);
    let mut certified = 0;
    let mut skipped = 0;
    let mut acting = 0;
    for _ in 0..trials {
        let len = rng.gen_range(1..=max_len.max(1));
        let mut pure: Vec<(usize, bool)> = Vec::with_capacity(len);
        while pure.len() < len {
            let g = (rng.gen_range(0..=n), rng.gen_bool(0.5));
            if pure.last() == Some(&(g.0, !g.1)) {
                continue;
            }
            pure.push(g);
        }
        let word: BraidWord = pure
            .iter()
            .flat_map(|&(i, inv)| {
                let l = if inv {
                    BraidLetter::sigma(i).inv()
                } else {
                    BraidLetter::sigma(i)
                };
                [l, l]
            })
            .collect();
        if sys.burau_is_identity(&word) {
            skipped += 1;
            continue;
        }
        certified += 1;
        if sys.word_auto(&word)? != id {
            acting += 1;
        }
    }
    Ok(SampleReport {
        n,
        max_length: max_len,
        trials,
        seed,
        certified_nontrivial: certified,
        skipped_uncertified: skipped,
        acting_nontrivially: acting,
        fraction: if certified == 0 {
            1.0
        } else {
            acting as f64 / certified as f64
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold() {
        for n in 1..=4 {
            let r = verify_presentation(n).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert!(verify_presentation(1).unwrap().braid.is_none());
    }

    #[test]
    fn sigma_one_moves_g0() {
        let sys = BraidSystem::new(1).unwrap();
        let s1 = sys.sigma_auto(1).unwrap();
        let g0 = FreeGroupWord::generator(1);
        let g1 = FreeGroupWord::generator(2);
        assert_eq!(s1.apply(&g1).unwrap(), g0);
        assert_eq!(s1.apply(&g0).unwrap().to_string(), "g0 g1 g0^-1");
        assert!(sys.sigma_auto(2).is_err());
    }

    #[test]
    fn empty_word_is_identity() {
        let sys = BraidSystem::new(2).unwrap();
        let x = FreeGroupWord::from_letters(&[1, 2, -3]);
        assert_eq!(sys.apply(&[], &x).unwrap(), x);
        assert!(sys.apply(&[], &FreeGroupWord::generator(9)).is_err());
    }

    #[test]
    fn conjugators() {
        let t = FreeGroupWord(vec![2, 3]);
        let w = FreeGroupWord(vec![1, 3, 2, -1]);
        let c = conjugator(&w, &t).unwrap();
        assert_eq!(c.times(&t).times(&c.inverse()), w);
        assert!(conjugator(&FreeGroupWord(vec![2]), &t).is_none());
    }

    #[test]
    fn burau_detects_generators() {
        let sys = BraidSystem::new(2).unwrap();
        assert!(!sys.burau_is_identity(&[BraidLetter::sigma(0)]));
        let w = [BraidLetter::rho(), BraidLetter::rho().inv()];
        assert!(sys.burau_is_identity(&w));
    }
}
