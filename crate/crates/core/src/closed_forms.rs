//! Closed-form answers: the polyhedral join over the independence complex
//! of a path, the sphere counts of `I(L_m[H])`, and the independence
//! complexes of cycles.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::betti::BettiVector;
use crate::format::{biguint_from_json, biguint_to_json, ParseError};
use crate::homotopy::{JoinTerm, NormalForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("path length must be at least 1")]
    EmptyPath,
    #[error("cycle length must be at least 3, got {0}")]
    ShortCycle(u64),
}

/// `C(p, q)`, zero when `q < 0` or `q > p`.
pub fn binom(p: i64, q: i64) -> BigUint {
    if q < 0 || p < q {
        return BigUint::zero();
    }
    let q = q.min(p - q);
    let mut acc = BigUint::one();
    for i in 0..q {
        acc = acc * BigUint::from((p - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// Multiplicity of `Σ^r X^{*k}` in the polyhedral join over `I(L_n)`:
/// `C(k+1, n-2k-3r+1) · C(k+r, r)`.
pub fn path_join_multiplicity(n: u64, k: u64, r: u64) -> BigUint {
    let (n, k, r) = (n as i64, k as i64, r as i64);
    binom(k + 1, n - 2 * k - 3 * r + 1) * binom(k + r, r)
}

/// `Z*_{I(L_n)}(X, ∅)` over the single atom `X`.
pub fn polyjoin_ln(n: u64) -> Result<NormalForm, ClosedFormError> {
    let x = |r: u32, k: u32| JoinTerm::new(r, [("X".to_string(), k)]);
    let one = BigUint::one;
    Ok(match n {
        0 => return Err(ClosedFormError::EmptyPath),
        1 => NormalForm::from_term(x(0, 1)),
        2 => NormalForm::from_terms([(x(0, 1), BigUint::from(2u32))], one()),
        3 => NormalForm::from_terms([(x(0, 2), one()), (x(0, 1), one())], one()),
        _ => {
            let mut terms = Vec::new();
            for r in 0..=(n + 1) / 3 {
                // rest may be -1 at the top of the r range
                let rest = n as i64 - 3 * r as i64;
                let k_lo = (rest.max(0) as u64).div_ceil(3);
                let k_hi = ((rest + 1) / 2) as u64;
                for k in k_lo..=k_hi {
                    let m = path_join_multiplicity(n, k, r);
                    if !m.is_zero() {
                        terms.push((x(r as u32, k as u32), m));
                    }
                }
            }
            NormalForm::from_terms(terms, BigUint::zero())
        }
    })
}

/// Number of `S^d` wedge summands by degree, plus extra path components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SphereCountTable {
    pub spheres: BTreeMap<u64, BigUint>,
    pub extra_components: BigUint,
}

impl SphereCountTable {
    fn add(&mut self, d: u64, n: BigUint) {
        if !n.is_zero() {
            *self.spheres.entry(d).or_default() += n;
        }
    }

    pub fn betti(&self) -> BettiVector {
        let mut b = BettiVector::zero();
        for (&d, n) in &self.spheres {
            b.add_at(d as i64, n);
        }
        b.add_at(0, &self.extra_components);
        b
    }

    pub fn to_json(&self) -> Value {
        let spheres: Map<String, Value> = self
            .spheres
            .iter()
            .map(|(d, n)| (d.to_string(), biguint_to_json(n)))
            .collect();
        json!({"spheres": spheres, "extra_components": biguint_to_json(&self.extra_components)})
    }

    pub fn from_json(v: &Value) -> Result<Self, ParseError> {
        let bad = |m: String| ParseError::new(1, 1, m);
        let obj = v
            .get("spheres")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing \"spheres\"".into()))?;
        let mut t = SphereCountTable::default();
        for (k, n) in obj {
            let d: u64 = k.parse().map_err(|_| bad(format!("bad degree {k:?}")))?;
            t.add(
                d,
                biguint_from_json(n).ok_or_else(|| bad(format!("bad count at {d}")))?,
            );
        }
        if let Some(c) = v.get("extra_components") {
            t.extra_components =
                biguint_from_json(c).ok_or_else(|| bad("bad \"extra_components\"".into()))?;
        }
        Ok(t)
    }
}

/// Sphere counts of `I(L_m[H])` when `|I(H)| ≃ ⋁_n S^k`.
pub fn lex_lm_spheres(m: u64, n: u64, k: u64) -> Result<SphereCountTable, ClosedFormError> {
    let mut t = SphereCountTable::default();
    let nn = BigUint::from(n);
    match m {
        0 => return Err(ClosedFormError::EmptyPath),
        1 => t.add(k, nn),
        2 => {
            t.add(k, nn * 2u32);
            t.extra_components = BigUint::one();
        }
        3 => {
            t.add(2 * k + 1, nn.pow(2));
            t.add(k, nn);
            t.extra_components = BigUint::one();
        }
        _ => {
            // S^d with t = d - pk + 1 collects n^p C(p+1, 3t-m) C(t, p); the
            // first factor needs 0 ≤ 3t - m ≤ p + 1 and the second t ≥ p
            for p in 0..=m.div_ceil(2) {
                let t_lo = m.div_ceil(3).max(p);
                let t_hi = (m + p + 1) / 3;
                for tt in t_lo..=t_hi {
                    let c = nn.pow(p as u32)
                        * binom(p as i64 + 1, 3 * tt as i64 - m as i64)
                        * binom(tt as i64, p as i64);
                    let d = tt + p * k - 1;
                    t.add(d, c);
                }
            }
        }
    }
    Ok(t)
}

/// `I(C_n)`: two `S^{k-1}` for `n = 3k`, one `S^{k-1}` for `n = 3k+1`, one
/// `S^k` for `n = 3k+2`.
pub fn kozlov_cycle(n: u64) -> Result<SphereCountTable, ClosedFormError> {
    if n < 3 {
        return Err(ClosedFormError::ShortCycle(n));
    }
    let k = n / 3;
    let mut t = SphereCountTable::default();
    match n % 3 {
        0 => t.add(k - 1, BigUint::from(2u32)),
        1 => t.add(k - 1, BigUint::one()),
        _ => t.add(k, BigUint::one()),
    }
    Ok(t)
}
