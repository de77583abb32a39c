//! Sparse column reduction over the integers.
//!
//! Columns are reduced so that their lowest nonzero rows are distinct, using
//! only unimodular column operations. Coefficients are `i64` with overflow
//! checks; on overflow the caller reruns with `BigInt`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::snf::smith_normal_form;

pub(crate) trait Coef: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn add(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// `Some(other / self)` when `self` divides `other`.
    fn divides(&self, other: &Self) -> Option<Self>;
    /// `(g, s, t, a/g, b/g)` with `g = s·a + t·b`.
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self, Self, Self)>;
    fn to_big(&self) -> BigInt;
}

impl Coef for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn divides(&self, other: &Self) -> Option<Self> {
        if *other % *self == 0 {
            other.checked_div(*self)
        } else {
            None
        }
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self, Self, Self)> {
        let e = (*a as i128).extended_gcd(&(*b as i128));
        let conv = |x: i128| i64::try_from(x).ok();
        Some((
            conv(e.gcd)?,
            conv(e.x)?,
            conv(e.y)?,
            conv(*a as i128 / e.gcd)?,
            conv(*b as i128 / e.gcd)?,
        ))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn divides(&self, other: &Self) -> Option<Self> {
        let (q, r) = other.div_rem(self);
        Zero::is_zero(&r).then_some(q)
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self, Self, Self)> {
        let e = a.extended_gcd(b);
        let (aa, bb) = (a / &e.gcd, b / &e.gcd);
        Some((e.gcd, e.x, e.y, aa, bb))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) type Col<C> = Vec<(u32, C)>;

#[derive(Debug)]
pub(crate) struct Overflow;

/// `a·x + b·y`, both sorted by row.
fn combine<C: Coef>(x: &Col<C>, a: &C, y: &Col<C>, b: &C) -> Result<Col<C>, Overflow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (row, v) = if take_x {
            i += 1;
            (x[i - 1].0, x[i - 1].1.mul(a).ok_or(Overflow)?)
        } else if take_y {
            j += 1;
            (y[j - 1].0, y[j - 1].1.mul(b).ok_or(Overflow)?)
        } else {
            let l = x[i].1.mul(a).ok_or(Overflow)?;
            let r = y[j].1.mul(b).ok_or(Overflow)?;
            i += 1;
            j += 1;
            (x[i - 1].0, l.add(&r).ok_or(Overflow)?)
        };
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    Ok(out)
}

/// Outcome of reducing one boundary matrix.
#[derive(Debug, Default)]
pub(crate) struct Reduction {
    pub rank: usize,
    /// Rows owned by a column with a `±1` pivot. Used to clear columns of
    /// the next boundary map down.
    pub unit_pivot_rows: Vec<u32>,
    /// Invariant factors greater than one.
    pub divisors: Vec<BigInt>,
}

/// Reduce the columns `column(j)` for `j` in `0..ncols` with `skip[j]`
/// false. `nrows` bounds the row indices.
pub(crate) fn reduce<C: Coef>(
    nrows: usize,
    ncols: usize,
    skip: &[bool],
    column: &dyn Fn(usize) -> Col<i64>,
) -> Result<Reduction, Overflow> {
    let mut owner: Vec<u32> = vec![u32::MAX; nrows];
    let mut cols: Vec<Col<C>> = Vec::new();
    for j in 0..ncols {
        if skip.get(j).copied().unwrap_or(false) {
            continue;
        }
        let mut col: Col<C> = column(j)
            .into_iter()
            .map(|(r, v)| (r, C::from_i64(v)))
            .collect();
        loop {
            let Some((low, a)) = col.last().cloned() else {
                break;
            };
            let k = owner[low as usize];
            if k == u32::MAX {
                owner[low as usize] = cols.len() as u32;
                cols.push(col);
                break;
            }
            let k = k as usize;
            let b = cols[k].last().unwrap().1.clone();
            if let Some(q) = b.divides(&a) {
                col = combine(&col, &C::from_i64(1), &cols[k], &q.neg().ok_or(Overflow)?)?;
            } else {
                // unimodular 2x2 step: the owner keeps gcd(a, b) as pivot
                let (_, s, t, a_g, b_g) = C::ext_gcd(&a, &b).ok_or(Overflow)?;
                let new_owner = combine(&col, &s, &cols[k], &t)?;
                col = combine(&col, &b_g, &cols[k], &a_g.neg().ok_or(Overflow)?)?;
                cols[k] = new_owner;
            }
        }
    }
    let rank = cols.len();
    let unit_pivot_rows: Vec<u32> = cols
        .iter()
        .filter(|c| c.last().unwrap().1.is_unit())
        .map(|c| c.last().unwrap().0)
        .collect();
    let divisors = if unit_pivot_rows.len() == rank {
        Vec::new()
    } else {
        residual_divisors(nrows, &cols)
    };
    Ok(Reduction {
        rank,
        unit_pivot_rows,
        divisors,
    })
}

/// Invariant factors of a reduced matrix with some non-unit pivots.
///
/// Quotienting by the unit-pivot columns identifies the row space with the
/// non-pivot rows; the remaining columns are rewritten modulo those columns
/// and handed to the dense Smith form.
fn residual_divisors<C: Coef>(nrows: usize, cols: &[Col<C>]) -> Vec<BigInt> {
    let mut unit_owner: Vec<Option<usize>> = vec![None; nrows];
    for (i, c) in cols.iter().enumerate() {
        let (low, v) = c.last().unwrap();
        if v.is_unit() {
            unit_owner[*low as usize] = Some(i);
        }
    }
    let mut residual: Vec<BTreeMap<u32, BigInt>> = Vec::new();
    for c in cols.iter().filter(|c| !c.last().unwrap().1.is_unit()) {
        let mut acc: BTreeMap<u32, BigInt> = c.iter().map(|(r, v)| (*r, v.to_big())).collect();
        let mut out = BTreeMap::new();
        while let Some((r, x)) = acc.pop_last() {
            if Zero::is_zero(&x) {
                continue;
            }
            match unit_owner[r as usize] {
                Some(u) => {
                    let pivot = cols[u].last().unwrap().1.to_big();
                    let factor = &x * &pivot; // x / pivot, pivot being ±1
                    for (rr, y) in &cols[u][..cols[u].len() - 1] {
                        *acc.entry(*rr).or_default() -= &factor * y.to_big();
                    }
                }
                None => {
                    out.insert(r, x);
                }
            }
        }
        residual.push(out);
    }
    let rows: Vec<u32> = {
        let mut rs: Vec<u32> = residual.iter().flat_map(|c| c.keys().copied()).collect();
        rs.sort_unstable();
        rs.dedup();
        rs
    };
    let dense: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            residual
                .iter()
                .map(|c| c.get(r).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    smith_normal_form(&dense).divisors
}
