//! Dense Smith normal form and fraction-free rational rank over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank and the non-unit invariant factors (a divisibility chain).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub rank: usize,
    pub divisors: Vec<BigInt>,
}

/// Smith normal form of a dense row-major matrix. Pivots prefer `±1`, then
/// the smallest absolute value.
pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> SnfResult {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = choose_pivot(&a, t) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a[t..].iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // a smaller remainder exists in row or column t; move it to the pivot
            let (mut best, mut at) = (a[t][t].abs(), (t, t));
            for (i, row) in a.iter().enumerate().skip(t + 1) {
                if !row[t].is_zero() && row[t].abs() < best {
                    best = row[t].abs();
                    at = (i, t);
                }
            }
            for (j, entry) in a[t].iter().enumerate().skip(t + 1) {
                if !entry.is_zero() && entry.abs() < best {
                    best = entry.abs();
                    at = (t, j);
                }
            }
            if at.0 != t {
                a.swap(t, at.0);
            }
            if at.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, at.1);
                }
            }
        }
        diag.push(a[t][t].abs());
    }
    let rank = diag.len();
    // diagonal to divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = &diag[i] / &g * &diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    SnfResult {
        rank,
        divisors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

fn choose_pivot(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if x.abs().is_one() {
                return Some((i, j));
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Rank over the rationals by Bareiss fraction-free elimination.
pub fn rational_rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}
