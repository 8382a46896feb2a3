use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseMatrix;

type Dense = Vec<Vec<BigInt>>;

/// Smith normal form `A = U · D · V` of an `m × n` integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries of `D`, positive, each dividing the next.
    pub factors: Vec<BigInt>,
    /// `(U, V)`, unimodular, when requested.
    pub transforms: Option<(Dense, Dense)>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The diagonal matrix `D`.
    pub fn diagonal(&self) -> Dense {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (k, f) in self.factors.iter().enumerate() {
            d[k][k] = f.clone();
        }
        d
    }
}

/// Smith normal form of a dense matrix, optionally with the unimodular transforms.
pub fn smith_normal_form(a: &[Vec<i64>], cols: usize, with_transforms: bool) -> SmithForm {
    let dense = a.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
    smith_dense(dense, a.len(), cols, with_transforms)
}

struct Work {
    a: Dense,
    u: Option<Dense>,
    v: Option<Dense>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            for row in u.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            v.swap(i, j);
        }
    }

    /// row `dst` += c · row `src`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        let (s, d) = if src < dst {
            let (lo, hi) = self.a.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = self.a.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
        if let Some(u) = &mut self.u {
            for row in u.iter_mut() {
                let t = c * &row[dst];
                row[src] -= t;
            }
        }
    }

    /// column `dst` += c · column `src`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for row in self.a.iter_mut() {
            if !row[src].is_zero() {
                let t = c * &row[src];
                row[dst] += t;
            }
        }
        if let Some(v) = &mut self.v {
            let t: Vec<BigInt> = v[dst].iter().map(|x| c * x).collect();
            for (x, y) in v[src].iter_mut().zip(t) {
                *x -= y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -core::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for row in u.iter_mut() {
                row[i] = -core::mem::take(&mut row[i]);
            }
        }
    }
}

fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn smith_dense(a: Dense, m: usize, n: usize, track: bool) -> SmithForm {
    let mut w = Work {
        a,
        u: track.then(|| identity(m)),
        v: track.then(|| identity(n)),
    };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &w.a[i][j];
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else { break };
        w.swap_rows(t, i);
        w.swap_cols(t, j);
        loop {
            let pivot = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&pivot);
                    w.add_row(i, t, &-q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&pivot);
                    w.add_col(j, t, &-q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                // a remainder smaller than the pivot appeared; move it to the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let bad = (t + 1..m).find_map(|i| {
                (t + 1..n).find(|&j| !w.a[i][j].is_zero() && !(&w.a[i][j] % &pivot).is_zero()).map(|_| i)
            });
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].sign() == Sign::Minus {
            w.negate_row(t);
        }
        factors.push(w.a[t][t].clone());
        t += 1;
    }
    SmithForm { rows: m, cols: n, factors, transforms: w.u.zip(w.v) }
}

/// Nonzero invariant factors of a sparse integer matrix.
///
/// Unit pivots are eliminated sparsely first (short columns and short rows
/// preferred, to limit fill); the remaining block goes through the dense
/// big-integer Smith form.
pub fn invariant_factors(mat: &SparseMatrix) -> Vec<BigUint> {
    let rows = mat.rows();
    let ncols = mat.cols();
    let mut cols: Vec<Vec<(usize, i64)>> = mat.columns().to_vec();
    let mut col_alive = vec![true; ncols];
    let mut row_alive = vec![true; rows];
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); rows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, _) in col {
            row_cols[i].push(j);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        cols.iter().enumerate().filter(|(_, c)| !c.is_empty()).map(|(j, c)| Reverse((c.len(), j))).collect();
    let mut units = 0usize;
    'outer: while let Some(Reverse((len, c))) = heap.pop() {
        if !col_alive[c] || cols[c].is_empty() {
            continue;
        }
        if cols[c].len() != len {
            heap.push(Reverse((cols[c].len(), c)));
            continue;
        }
        let Some(&(r, pv)) = cols[c].iter().filter(|e| e.1.abs() == 1).min_by_key(|e| row_cols[e.0].len()) else {
            continue;
        };
        let mut targets = core::mem::take(&mut row_cols[r]);
        targets.sort_unstable();
        targets.dedup();
        let pivot_col = cols[c].clone();
        for (k, &c2) in targets.iter().enumerate() {
            if c2 == c || !col_alive[c2] {
                continue;
            }
            let Ok(pos) = cols[c2].binary_search_by_key(&r, |e| e.0) else { continue };
            let factor = cols[c2][pos].1 * pv;
            let Some(merged) = axpy(&cols[c2], &pivot_col, factor) else {
                // overflow: hand the current (equivalent) matrix to the dense phase
                row_cols[r] = targets[k..].to_vec();
                row_cols[r].push(c);
                break 'outer;
            };
            for &(i, _) in &merged {
                if cols[c2].binary_search_by_key(&i, |e| e.0).is_err() {
                    row_cols[i].push(c2);
                }
            }
            cols[c2] = merged;
            if !cols[c2].is_empty() {
                heap.push(Reverse((cols[c2].len(), c2)));
            }
        }
        col_alive[c] = false;
        row_alive[r] = false;
        units += 1;
    }
    let rest_cols: Vec<usize> = (0..ncols).filter(|&j| col_alive[j] && !cols[j].is_empty()).collect();
    let mut rest_rows: Vec<usize> =
        rest_cols.iter().flat_map(|&j| cols[j].iter().map(|e| e.0)).filter(|&i| row_alive[i]).collect();
    rest_rows.sort_unstable();
    rest_rows.dedup();
    let mut out: Vec<BigUint> = (0..units).map(|_| BigUint::one()).collect();
    if !rest_cols.is_empty() {
        let mut row_pos = vec![usize::MAX; rows];
        for (k, &i) in rest_rows.iter().enumerate() {
            row_pos[i] = k;
        }
        let mut dense = vec![vec![BigInt::zero(); rest_cols.len()]; rest_rows.len()];
        for (k, &j) in rest_cols.iter().enumerate() {
            for &(i, v) in &cols[j] {
                if row_alive[i] {
                    dense[row_pos[i]][k] = BigInt::from(v);
                }
            }
        }
        let snf = smith_dense(dense, rest_rows.len(), rest_cols.len(), false);
        out.extend(snf.factors.into_iter().map(|f| f.magnitude().clone()));
    }
    out
}

/// `a - factor * b` on sorted sparse columns, `None` on overflow.
fn axpy(a: &[(usize, i64)], b: &[(usize, i64)], factor: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, factor.checked_mul(b[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(factor.checked_mul(b[j].1)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Rank of a dense matrix over `Z/p`, `p` prime.
pub fn rank_mod_prime(a: &[Vec<i64>], p: u64) -> usize {
    let p = p as i64;
    let mut m: Vec<Vec<i64>> = a.iter().map(|row| row.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |x: i64| {
        // Fermat: x^(p-2)
        let (mut base, mut e, mut acc) = (x as i128, p - 2, 1i128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as i128;
            }
            base = base * base % p as i128;
            e >>= 1;
        }
        acc as i64
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let iv = inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = ((*x as i128 * iv as i128) % p as i128) as i64;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x as i128 - f as i128 * y as i128).rem_euclid(p as i128) as i64;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
