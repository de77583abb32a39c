//! Reduced Betti vectors, the common currency of the engine, the closed
//! forms and the homology oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::format::{biguint_from_json, biguint_to_json, ParseError};

/// Reduced Betti numbers by degree (`d ≥ -1`), zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiVector {
    entries: BTreeMap<i64, BigUint>,
    pub torsion: bool,
}

impl BettiVector {
    pub fn zero() -> Self {
        BettiVector::default()
    }

    /// The empty space: rank 1 in degree -1. This is the join unit.
    pub fn empty_space() -> Self {
        BettiVector::from_pairs([(-1, 1u32)])
    }

    /// `⋁_n S^k`: `n` in degree `k`.
    pub fn sphere_wedge(n: impl Into<BigUint>, k: i64) -> Self {
        let mut b = BettiVector::zero();
        b.add_at(k, &n.into());
        b
    }

    pub fn from_pairs<N: Into<BigUint>>(pairs: impl IntoIterator<Item = (i64, N)>) -> Self {
        let mut b = BettiVector::zero();
        for (d, n) in pairs {
            b.add_at(d, &n.into());
        }
        b
    }

    pub fn get(&self, d: i64) -> BigUint {
        self.entries.get(&d).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, d: i64, n: &BigUint) {
        assert!(d >= -1, "degree {d} below -1");
        if n.is_zero() {
            return;
        }
        *self.entries.entry(d).or_default() += n;
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> {
        self.entries.iter().map(|(&d, n)| (d, n))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, n) in other.iter() {
            out.add_at(d, n);
        }
        out.torsion |= other.torsion;
        out
    }

    pub fn scale(&self, k: &BigUint) -> Self {
        let mut out = BettiVector::zero();
        for (d, n) in self.iter() {
            out.add_at(d, &(n * k));
        }
        out.torsion = self.torsion;
        out
    }

    /// Join: degree `d` gets `Σ_{p+q=d-1} b_p c_q`.
    pub fn join(&self, other: &Self) -> Self {
        let mut out = BettiVector::zero();
        for (p, a) in self.iter() {
            for (q, b) in other.iter() {
                out.add_at(p + q + 1, &(a * b));
            }
        }
        out.torsion = self.torsion || other.torsion;
        out
    }

    /// `Σ_d (-1)^d b_d`.
    pub fn euler_characteristic(&self) -> BigInt {
        self.iter().fold(BigInt::zero(), |acc, (d, n)| {
            let n = BigInt::from(n.clone());
            if d.rem_euclid(2) == 0 {
                acc + n
            } else {
                acc - n
            }
        })
    }

    /// Total rank across degrees.
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (d, n) in self.iter() {
            m.insert(d.to_string(), biguint_to_json(n));
        }
        json!({"betti": m, "torsion": self.torsion})
    }

    pub fn from_json(v: &Value) -> Result<Self, ParseError> {
        let bad = |msg: &str| ParseError::new(1, 1, msg.to_string());
        let obj = v
            .get("betti")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing \"betti\" object"))?;
        let mut b = BettiVector::zero();
        for (k, n) in obj {
            let d: i64 = k.parse().map_err(|_| bad(&format!("bad degree {k:?}")))?;
            if d < -1 {
                return Err(bad(&format!("degree {d} below -1")));
            }
            let n = biguint_from_json(n).ok_or_else(|| bad(&format!("bad count at degree {d}")))?;
            b.add_at(d, &n);
        }
        b.torsion = v.get("torsion").and_then(Value::as_bool).unwrap_or(false);
        Ok(b)
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        }
        let parts: Vec<String> = self.iter().map(|(d, n)| format!("b{d}={n}")).collect();
        write!(f, "{}", parts.join(" "))?;
        if self.torsion {
            write!(f, " (torsion)")?;
        }
        Ok(())
    }
}

impl One for BettiVector {
    fn one() -> Self {
        BettiVector::empty_space()
    }
}

impl std::ops::Mul for BettiVector {
    type Output = BettiVector;
    fn mul(self, rhs: Self) -> Self {
        self.join(&rhs)
    }
}
