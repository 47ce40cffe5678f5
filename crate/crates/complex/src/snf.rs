//! Smith normal form over arbitrary-precision integers.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::presentation::{generator_of, Presentation};

/// Nonzero diagonal entries of the Smith normal form, each positive and
/// dividing the next.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&a, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_sub(&mut a, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut() {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // move the smallest remainder of the pivot row or column onto the pivot
                let col = (t..m).filter(|&i| !a[i][t].is_zero()).map(|i| (i, t));
                let row = (t..n).filter(|&j| !a[t][j].is_zero()).map(|j| (t, j));
                let (i, j) = col.chain(row).min_by(|x, y| a[x.0][x.1].abs().cmp(&a[y.0][y.1].abs())).expect("pivot");
                a.swap(t, i);
                swap_cols(&mut a, t, j);
                continue;
            }
            let pivot = a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(src) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

fn row_sub(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    let (lo, hi) = a.split_at_mut(target.max(src));
    let (t, s) = if target > src { (&mut hi[0], &lo[src]) } else { (&mut lo[target], &hi[0]) };
    for (x, y) in t.iter_mut().zip(s) {
        *x -= q * y;
    }
}

/// Relation matrix of the abelianization: one row per relator, one column
/// per generator, entries the exponent sums.
pub fn abelianized_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); p.generators];
            for &l in r {
                row[generator_of(l)] += if l > 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

/// Invariant factors of the first homology: torsion orders greater than one,
/// then a zero for each free summand. Empty exactly when it is trivial.
///
/// Unit pivots are eliminated on a sparse copy of the relation matrix first;
/// only what is left goes through the dense normal form.
pub fn homology_invariants(p: &Presentation) -> Vec<BigInt> {
    let (rest, live_cols) = match eliminate_units(p) {
        Some(x) => x,
        None => (abelianized_matrix(p), p.generators),
    };
    let diag = if rest.is_empty() { Vec::new() } else { smith_diagonal(rest) };
    let rank = diag.len();
    let mut out: Vec<BigInt> = diag.into_iter().filter(|d| *d > BigInt::from(1)).collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), live_cols - rank));
    out
}

type SparseRow = Vec<(u32, i64)>;

fn exponent_row(r: &[crate::presentation::Letter]) -> SparseRow {
    let mut row: SparseRow = r.iter().map(|&l| (generator_of(l) as u32, if l > 0 { 1 } else { -1 })).collect();
    row.sort_unstable_by_key(|&(c, _)| c);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

/// `a - k·b` on sorted sparse rows; `None` on overflow.
fn axpy(a: &[(u32, i64)], k: i64, b: &[(u32, i64)]) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, k.checked_mul(b[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(k.checked_mul(b[j].1)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Repeatedly pivot on entries `±1`, each removing one row and one column
/// without changing the cokernel. Returns the remaining rows as a dense
/// matrix over the columns still in use, and the number of live columns.
fn eliminate_units(p: &Presentation) -> Option<(Vec<Vec<BigInt>>, usize)> {
    let mut rows: Vec<SparseRow> = p.relators.iter().map(|r| exponent_row(r)).collect();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); p.generators];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c as usize].push(i as u32);
        }
    }
    let mut row_alive = vec![true; rows.len()];
    let mut col_alive = vec![true; p.generators];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i as u32))).collect();
    while let Some(Reverse((len, r))) = heap.pop() {
        let ri = r as usize;
        if !row_alive[ri] || rows[ri].len() != len || len == 0 {
            continue;
        }
        let Some(&(c, s)) =
            rows[ri].iter().filter(|&&(_, v)| v.abs() == 1).min_by_key(|&&(c, _)| col_rows[c as usize].len())
        else {
            continue;
        };
        let pivot = std::mem::take(&mut rows[ri]);
        row_alive[ri] = false;
        col_alive[c as usize] = false;
        let mut users = std::mem::take(&mut col_rows[c as usize]);
        users.sort_unstable();
        users.dedup();
        for o in users {
            let oi = o as usize;
            if o == r || !row_alive[oi] {
                continue;
            }
            let Ok(pos) = rows[oi].binary_search_by_key(&c, |&(cc, _)| cc) else {
                continue;
            };
            let k = rows[oi][pos].1 * s;
            let new = axpy(&rows[oi], k, &pivot)?;
            for &(nc, _) in &new {
                if nc != c && rows[oi].binary_search_by_key(&nc, |&(cc, _)| cc).is_err() {
                    col_rows[nc as usize].push(o);
                }
            }
            rows[oi] = new;
            if rows[oi].is_empty() {
                row_alive[oi] = false;
            } else {
                heap.push(Reverse((rows[oi].len(), o)));
            }
        }
    }
    let live_cols = col_alive.iter().filter(|&&a| a).count();
    let mut index = vec![u32::MAX; p.generators];
    let mut used = 0;
    let rest: Vec<&SparseRow> =
        rows.iter().zip(&row_alive).filter(|(r, &a)| a && !r.is_empty()).map(|(r, _)| r).collect();
    for r in &rest {
        for &(c, _) in r.iter() {
            if index[c as usize] == u32::MAX {
                index[c as usize] = used;
                used += 1;
            }
        }
    }
    let dense = rest
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); used as usize];
            for &(c, v) in r.iter() {
                row[index[c as usize] as usize] = BigInt::from(v);
            }
            row
        })
        .collect();
    Some((dense, live_cols))
}
