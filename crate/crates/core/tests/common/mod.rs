//! Independent oracles shared by the integration tests. None of these go
//! through Gröbner bases, Smith normal form or the rewriting engine.

#![allow(dead_code)]

use plumbing_core::field::{Field, FieldElem};
use plumbing_core::slope::{validate_spec, PlumbingSpec, Sign, SlopeDatum, Truncation};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Bivariate polynomial with integer coefficients: `((deg_x, deg_y), c)`.
pub type IntPoly = Vec<((u32, u32), i64)>;

pub fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out: std::collections::BTreeMap<(u32, u32), i64> = Default::default();
    for &((a1, a2), c) in a {
        for &((b1, b2), d) in b {
            *out.entry((a1 + b1, a2 + b2)).or_default() += c * d;
        }
    }
    out.into_iter().filter(|e| e.1 != 0).collect()
}

pub fn int_product(fs: &[IntPoly]) -> IntPoly {
    fs.iter().fold(vec![((0, 0), 1)], |acc, f| int_mul(&acc, f))
}

/// `y^k ± x^l`, written directly.
pub fn component(d: &SlopeDatum) -> IntPoly {
    let s = if d.sign == Sign::Plus { 1 } else { -1 };
    let mut p = vec![((0, d.k), 1), ((d.l, 0), s)];
    if (0, d.k) == (d.l, 0) {
        p = vec![((0, 0), 1 + s)];
    }
    p.into_iter().filter(|e| e.1 != 0).collect()
}

fn degree(p: &IntPoly) -> u32 {
    p.iter().map(|((a, b), _)| a + b).max().unwrap_or(0)
}

/// Row echelon form processing columns left to right; returns the pivot
/// columns. A row pivoting at column `c` vanishes on every earlier column.
fn pivot_columns(mut rows: Vec<Vec<FieldElem>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero");
        let pivot: Vec<FieldElem> = rows[r].iter().map(|x| x.clone() * inv.clone()).collect();
        rows[r] = pivot.clone();
        for row in rows.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = row[c].clone();
                for j in c..cols {
                    if !pivot[j].is_zero() {
                        row[j] = row[j].clone() - f.clone() * pivot[j].clone();
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// `dim K[x, y]_{<= d} / (M_D ∩ K[x, y]_{<= d})` where `M_D` is the span of
/// `m g` with `deg(m g) <= D`. Columns run from high degree to low, so the
/// echelon rows with low-degree pivots span the intersection.
pub fn macaulay_count(field: Field, gens: &[IntPoly], d: u32, big_d: u32) -> usize {
    let monos: Vec<(u32, u32)> = (0..=big_d)
        .rev()
        .flat_map(|t| (0..=t).map(move |a| (a, t - a)))
        .collect();
    let index = |m: (u32, u32)| monos.iter().position(|&x| x == m).expect("in range");
    let mut rows = Vec::new();
    for g in gens {
        let dg = degree(g);
        if g.is_empty() || dg > big_d {
            continue;
        }
        for &(a, b) in monos.iter().filter(|&&(a, b)| a + b + dg <= big_d) {
            let mut row = vec![field.zero(); monos.len()];
            for &((e1, e2), c) in g {
                let j = index((e1 + a, e2 + b));
                row[j] = row[j].clone() + field.from_i64(c);
            }
            rows.push(row);
        }
    }
    let low = monos.iter().filter(|&&(a, b)| a + b <= d).count();
    let in_low = pivot_columns(rows, monos.len())
        .into_iter()
        .filter(|&c| monos[c].0 + monos[c].1 <= d)
        .count();
    low - in_low
}

/// Quotient dimension by stabilization of the Macaulay count; `None` for
/// an infinite quotient.
pub fn brute_quotient_dim(field: Field, gens: &[IntPoly]) -> Option<usize> {
    let gens: Vec<IntPoly> = gens
        .iter()
        .map(|g| {
            g.iter()
                .filter(|(_, c)| !field.from_i64(*c).is_zero())
                .copied()
                .collect()
        })
        .collect();
    let total: u32 = gens.iter().map(degree).sum();
    let base = total + 1;
    let counts: Vec<usize> = (base..base + 3)
        .map(|d| macaulay_count(field, &gens, d, d + total + 2))
        .collect();
    if counts.windows(2).all(|w| w[0] == w[1]) {
        Some(counts[0])
    } else {
        None
    }
}

/// Closed form for the `(i, j)` component ideal of `H^0`:
/// `(f_0 f_1 ⋯ f_{min-1}, f_n f_{n-1} ⋯ f_{max})`.
pub fn closed_form_component(spec: &PlumbingSpec, i: usize, j: usize) -> [IntPoly; 2] {
    let n = spec.n();
    let f: Vec<IntPoly> = spec.slopes().iter().map(component).collect();
    let (lo, hi) = (i.min(j), i.max(j));
    [int_product(&f[0..lo]), int_product(&f[hi..=n])]
}

/// Order of `z_1` (`v = 0`) or `z_2` (`v = 1`) by direct search for integer
/// combinations of the end relations, with the sign tracked mod 2.
/// `Some(1)` whenever `-1 = 1` is forced in odd characteristic.
pub fn brute_order(spec: &PlumbingSpec, v: usize, bound: i64) -> Option<i64> {
    let char2 = spec.field.characteristic() == 2;
    let rows: Vec<(i64, i64, i64)> = [spec.slope(0), spec.slope(spec.n())]
        .iter()
        .map(|d| (d.l as i64, -(d.k as i64), i64::from(d.sign == Sign::Plus)))
        .collect();
    let hits = |target: (i64, i64), sign_odd: bool| -> bool {
        for a in -bound..=bound {
            for b in -bound..=bound {
                let x = a * rows[0].0 + b * rows[1].0;
                let y = a * rows[0].1 + b * rows[1].1;
                let s = (a * rows[0].2 + b * rows[1].2).rem_euclid(2) == 1;
                if (x, y) == target && (char2 || s == sign_odd) {
                    return true;
                }
            }
        }
        false
    };
    if !char2 && hits((0, 0), true) {
        return Some(1);
    }
    (1..=bound).find(|&m| {
        let t = if v == 0 { (m, 0) } else { (0, m) };
        hits(t, false)
    })
}

pub fn random_slope(rng: &mut ChaCha8Rng, max: u32) -> SlopeDatum {
    let other = rng.gen_range(0..=max);
    let sign = if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    if rng.gen_bool(0.5) {
        SlopeDatum::new(1, other, sign)
    } else {
        SlopeDatum::new(other, 1, sign)
    }
}

pub fn random_spec(rng: &mut ChaCha8Rng, field: Field, n_max: usize, max: u32) -> PlumbingSpec {
    let n = rng.gen_range(1..=n_max);
    let slopes: Vec<SlopeDatum> = (0..=n).map(|_| random_slope(rng, max)).collect();
    validate_spec(&slopes, field, Truncation::default()).expect("admissible by construction")
}

pub fn spec(field: Field, s: &[(u32, u32, Sign)]) -> PlumbingSpec {
    let v: Vec<SlopeDatum> = s
        .iter()
        .map(|&(k, l, e)| SlopeDatum::new(k, l, e))
        .collect();
    validate_spec(&v, field, Truncation::default()).expect("valid")
}

/// Lens space `L(p, q)` from first principles: `p = |det|`, and `q` is
/// found by brute force over the partner vectors, normalized to the
/// smallest of `±q^{±1} mod p`.
pub fn brute_lens(s: (i64, i64), s2: (i64, i64)) -> (u64, u64) {
    let p = (s.0 * s2.1 - s.1 * s2.0).unsigned_abs();
    if p <= 1 {
        return (p, if p == 0 { 1 } else { 0 });
    }
    let mut q = None;
    'outer: for a in -20i64..=20 {
        for b in -20i64..=20 {
            if s.0 * b - s.1 * a == 1 {
                let alpha = a * s2.1 - b * s2.0;
                q = Some(alpha.rem_euclid(p as i64) as u64);
                break 'outer;
            }
        }
    }
    let q = q.expect("partner exists");
    let inv = (1..p).find(|x| (x * q) % p == 1).expect("coprime");
    let best = [q, p - q, inv, p - inv]
        .into_iter()
        .min()
        .expect("nonempty");
    (p, best)
}
