//! Smith normal form of small integer matrices and orders of elements in
//! the quotient of `Z^k` by a row lattice.

use num_integer::Integer;

/// `U A V = D` with `D` diagonal, nonnegative, and each diagonal entry
/// dividing the next. Only `D` and `V` are kept; `U` is never needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub diagonal: Vec<i64>,
    pub v: Vec<Vec<i64>>,
    pub cols: usize,
}

pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Smith {
    let rows = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let swap_cols = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, c1: usize, c2: usize| {
        for row in m.iter_mut() {
            row.swap(c1, c2);
        }
        for row in v.iter_mut() {
            row.swap(c1, c2);
        }
    };
    // col[c2] -= q * col[c1]
    let col_op = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, c1: usize, c2: usize, q: i64| {
        for row in m.iter_mut() {
            row[c2] -= q * row[c1];
        }
        for row in v.iter_mut() {
            row[c2] -= q * row[c1];
        }
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        swap_cols(&mut m, &mut v, t, pj);
        let mut done = false;
        while !done {
            done = true;
            for i in (t + 1)..rows {
                let q = Integer::div_floor(&m[i][t], &m[t][t]);
                if q != 0 {
                    let pivot_row = m[t].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= q * p;
                    }
                }
                if m[i][t] != 0 {
                    m.swap(t, i);
                    done = false;
                }
            }
            for j in (t + 1)..cols {
                let q = Integer::div_floor(&m[t][j], &m[t][t]);
                if q != 0 {
                    col_op(&mut m, &mut v, t, j, q);
                }
                if m[t][j] != 0 {
                    swap_cols(&mut m, &mut v, t, j);
                    done = false;
                }
            }
            if done {
                // Enforce divisibility of the trailing block by the pivot.
                'scan: for i in (t + 1)..rows {
                    for j in (t + 1)..cols {
                        if m[i][j] % m[t][t] != 0 {
                            let row_i = m[i].clone();
                            for (x, r) in m[t].iter_mut().zip(&row_i) {
                                *x += r;
                            }
                            done = false;
                            break 'scan;
                        }
                    }
                }
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let diagonal = (0..cols)
        .map(|i| if i < rows { m[i][i] } else { 0 })
        .collect();
    Smith { diagonal, v, cols }
}

/// Order of `x` in `Z^cols / (row lattice)`, `None` if infinite.
pub fn element_order(s: &Smith, x: &[i64]) -> Option<u64> {
    let mut order: u64 = 1;
    for j in 0..s.cols {
        let coord: i64 = (0..s.cols).map(|i| x[i] * s.v[i][j]).sum();
        let d = s.diagonal[j];
        if d == 0 {
            if coord != 0 {
                return None;
            }
            continue;
        }
        let k = (d / d.gcd(&coord)).unsigned_abs();
        order = order.lcm(&k);
    }
    Some(order)
}

/// Membership of `x` in the row lattice.
pub fn in_lattice(s: &Smith, x: &[i64]) -> bool {
    element_order(s, x) == Some(1)
}
