//! Exact reduced simplicial homology over the integers.
//!
//! Faces are generated from the facets, sorted lexicographically in each
//! dimension, and the augmented boundary maps are reduced from the top
//! dimension down. A column whose face already appeared as a `±1` pivot row
//! one dimension up is skipped (it is a unimodular combination of the
//! others). Everything stays in sparse `i64` columns unless a coefficient
//! overflows or a non-unit pivot survives.

mod reduce;
mod snf;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

pub use snf::{rational_rank, smith_normal_form, SnfResult};

use crate::betti::BettiVector;
use crate::complex::SimplicialComplex;
use crate::graph::Vertex;
use crate::vset::VSet;
use reduce::{reduce, Col, Reduction};

/// Default refusal threshold for the total number of faces.
pub const DEFAULT_MAX_FACES: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("complex has more than {limit} faces; raise --max-faces to proceed")]
    TooManyFaces { limit: usize },
}

/// Full output of a homology run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub betti: BettiVector,
    /// Non-unit invariant factors of reduced `H_d`, by degree.
    pub torsion: BTreeMap<i64, Vec<BigUint>>,
    /// `f_{-1}, f_0, …`
    pub f_vector: Vec<u64>,
}

trait FaceKey: Clone + Eq + Hash + Send + Sync {
    fn without(&self, i: usize) -> Self;
    fn elements(&self) -> Vec<usize>;
    fn size(&self) -> usize;
    fn lex(&self, other: &Self) -> Ordering;
}

impl FaceKey for u128 {
    fn without(&self, i: usize) -> Self {
        self & !(1u128 << i)
    }
    fn elements(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count_ones() as usize);
        let mut w = *self;
        while w != 0 {
            out.push(w.trailing_zeros() as usize);
            w &= w - 1;
        }
        out
    }
    fn size(&self) -> usize {
        self.count_ones() as usize
    }
    fn lex(&self, other: &Self) -> Ordering {
        let x = self ^ other;
        if x == 0 {
            return Ordering::Equal;
        }
        let i = x.trailing_zeros();
        let above = |w: u128| (w >> i) >> 1 != 0;
        if self >> i & 1 == 1 {
            if above(*other) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if above(*self) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl FaceKey for VSet {
    fn without(&self, i: usize) -> Self {
        VSet::without(self, i)
    }
    fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }
    fn size(&self) -> usize {
        self.len()
    }
    fn lex(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Faces grouped by size (`layers[0]` is the empty face), each layer sorted.
struct FaceTable<K> {
    layers: Vec<Vec<K>>,
}

impl<K: FaceKey> FaceTable<K> {
    fn build(facets: Vec<K>, limit: usize) -> Result<Self, HomologyError> {
        let top = facets.iter().map(|f| f.size()).max().unwrap_or(0);
        let mut seen: FxHashSet<K> = FxHashSet::default();
        let mut stack = Vec::new();
        for f in facets {
            if seen.contains(&f) {
                continue;
            }
            stack.push(f);
            while let Some(s) = stack.pop() {
                if !seen.insert(s.clone()) {
                    continue;
                }
                if seen.len() > limit {
                    return Err(HomologyError::TooManyFaces { limit });
                }
                for i in s.elements() {
                    let t = s.without(i);
                    if !seen.contains(&t) {
                        stack.push(t);
                    }
                }
            }
        }
        let mut layers: Vec<Vec<K>> = vec![Vec::new(); top + 1];
        for s in seen {
            layers[s.size()].push(s);
        }
        for l in &mut layers {
            l.sort_unstable_by(|a, b| a.lex(b));
        }
        Ok(FaceTable { layers })
    }

    fn index(&self, size: usize, face: &K) -> u32 {
        self.layers[size]
            .binary_search_by(|probe| probe.lex(face))
            .expect("boundary face present") as u32
    }

    /// Column `j` of `∂_d` where `d + 1` is the size of the faces in the
    /// domain: removing the `i`-th smallest vertex has sign `(-1)^i`.
    fn column(&self, size: usize, j: usize) -> Col<i64> {
        let face = &self.layers[size][j];
        let mut col: Col<i64> = face
            .elements()
            .into_iter()
            .enumerate()
            .map(|(pos, v)| {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                (self.index(size - 1, &face.without(v)), sign)
            })
            .collect();
        col.sort_unstable_by_key(|e| e.0);
        col
    }

    fn homology(&self) -> HomologyReport {
        let f_vector: Vec<u64> = self.layers.iter().map(|l| l.len() as u64).collect();
        let top = self.layers.len() - 1;
        // ranks[s] is the rank of the map out of the faces with s vertices
        let mut ranks = vec![0usize; top + 2];
        let mut torsion: BTreeMap<i64, Vec<BigUint>> = BTreeMap::new();
        let mut cleared: Vec<bool> = Vec::new();
        for size in (1..=top).rev() {
            let ncols = self.layers[size].len();
            let nrows = self.layers[size - 1].len();
            let column = |j: usize| self.column(size, j);
            let red: Reduction = match reduce::<i64>(nrows, ncols, &cleared, &column) {
                Ok(r) => r,
                Err(_) => reduce::<BigInt>(nrows, ncols, &cleared, &column)
                    .unwrap_or_else(|_| unreachable!("BigInt arithmetic does not overflow")),
            };
            ranks[size] = red.rank;
            if !red.divisors.is_empty() {
                // ∂ from size-faces has image in degree size - 2
                torsion.insert(
                    size as i64 - 2,
                    red.divisors.iter().map(|d| d.magnitude().clone()).collect(),
                );
            }
            cleared = vec![false; nrows];
            for r in red.unit_pivot_rows {
                cleared[r as usize] = true;
            }
        }
        let mut betti = BettiVector::zero();
        for size in 0..=top {
            let b = f_vector[size] as usize - ranks[size] - ranks[size + 1];
            betti.add_at(size as i64 - 1, &BigUint::from(b));
        }
        betti.torsion = !torsion.is_empty();
        HomologyReport {
            betti,
            torsion,
            f_vector,
        }
    }
}

/// Reduced integral homology of `k`, refusing complexes with more than
/// `max_faces` faces.
pub fn reduced_homology_report(
    k: &SimplicialComplex,
    max_faces: usize,
) -> Result<HomologyReport, HomologyError> {
    if k.vertex_count() <= 128 {
        let facets = k
            .facet_sets()
            .iter()
            .map(|f| f.to_u128().unwrap())
            .collect();
        Ok(FaceTable::<u128>::build(facets, max_faces)?.homology())
    } else {
        Ok(FaceTable::<VSet>::build(k.facet_sets().to_vec(), max_faces)?.homology())
    }
}

/// Reduced Betti vector of `k` under the default face cap.
pub fn reduced_homology(k: &SimplicialComplex) -> Result<BettiVector, HomologyError> {
    reduced_homology_with_limit(k, DEFAULT_MAX_FACES)
}

pub fn reduced_homology_with_limit(
    k: &SimplicialComplex,
    max_faces: usize,
) -> Result<BettiVector, HomologyError> {
    Ok(reduced_homology_report(k, max_faces)?.betti)
}

/// A sparse integer matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::from(0); self.ncols]; self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i][j] = BigInt::from(v);
            }
        }
        out
    }

    /// `self · other`.
    pub fn compose(&self, other: &SparseMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.ncols, other.nrows);
        let mut out = vec![vec![0i64; other.ncols]; self.nrows];
        for (j, col) in other.columns.iter().enumerate() {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    out[i][j] += a * b;
                }
            }
        }
        out
    }
}

/// Faces and augmented boundary maps of a complex.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    /// `faces[s]` holds the faces with `s` vertices (dimension `s - 1`),
    /// sorted lexicographically.
    pub faces: Vec<Vec<Vec<Vertex>>>,
    /// `boundaries[d]` maps `d`-faces to `(d-1)`-faces; `boundaries[0]` is
    /// the augmentation.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplexData {
    /// Whether every composite `∂_{d-1} ∘ ∂_d` vanishes.
    pub fn boundary_squares_vanish(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            let (outer, inner) = (&w[0], &w[1]);
            let mut acc: FxHashMap<usize, i64> = FxHashMap::default();
            inner.columns.iter().all(|col| {
                acc.clear();
                for &(k, b) in col {
                    for &(i, a) in &outer.columns[k] {
                        *acc.entry(i).or_default() += a * b;
                    }
                }
                acc.values().all(|&x| x == 0)
            })
        })
    }
}

pub fn boundary_matrices(
    k: &SimplicialComplex,
    max_faces: usize,
) -> Result<ChainComplexData, HomologyError> {
    let table = FaceTable::<VSet>::build(k.facet_sets().to_vec(), max_faces)?;
    let faces = table
        .layers
        .iter()
        .map(|l| {
            l.iter()
                .map(|s| s.iter().map(|i| k.vertices()[i]).collect())
                .collect()
        })
        .collect();
    let boundaries = (1..table.layers.len())
        .map(|size| SparseMatrix {
            nrows: table.layers[size - 1].len(),
            ncols: table.layers[size].len(),
            columns: (0..table.layers[size].len())
                .map(|j| {
                    table
                        .column(size, j)
                        .into_iter()
                        .map(|(r, v)| (r as usize, v))
                        .collect()
                })
                .collect(),
        })
        .collect();
    let data = ChainComplexData { faces, boundaries };
    debug_assert!(
        data.faces.iter().map(Vec::len).sum::<usize>() > 2000 || data.boundary_squares_vanish()
    );
    Ok(data)
}

/// Reduced homology through dense Smith forms of every boundary map. Slow;
/// kept as a reference implementation for cross-checks.
pub fn reduced_homology_dense(k: &SimplicialComplex) -> HomologyReport {
    let data = boundary_matrices(k, DEFAULT_MAX_FACES).expect("small complex");
    let f_vector: Vec<u64> = data.faces.iter().map(|l| l.len() as u64).collect();
    let snfs: Vec<SnfResult> = data
        .boundaries
        .iter()
        .map(|m| smith_normal_form(&m.to_dense()))
        .collect();
    let rank = |s: usize| {
        if s >= 1 && s <= snfs.len() {
            snfs[s - 1].rank
        } else {
            0
        }
    };
    let mut betti = BettiVector::zero();
    let mut torsion = BTreeMap::new();
    for s in 0..f_vector.len() {
        let b = f_vector[s] as usize - rank(s) - rank(s + 1);
        betti.add_at(s as i64 - 1, &BigUint::from(b));
        if s >= 1 && !snfs[s - 1].divisors.is_empty() {
            torsion.insert(
                s as i64 - 2,
                snfs[s - 1]
                    .divisors
                    .iter()
                    .map(|d| d.magnitude().clone())
                    .collect(),
            );
        }
    }
    betti.torsion = !torsion.is_empty();
    HomologyReport {
        betti,
        torsion,
        f_vector,
    }
}
