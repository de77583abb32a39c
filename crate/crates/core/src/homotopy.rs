//! Homotopy-type expressions built from atoms, spheres, joins, wedges,
//! suspensions and disjoint unions, and their normal form: a wedge of
//! suspended joins of atoms plus a count of extra path components.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

pub use crate::betti::BettiVector;
use crate::format::{biguint_from_json, biguint_to_json, ParseError};

pub type AtomId = String;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomotopyExpr {
    Empty,
    Sphere(u32),
    Atom(AtomId),
    Join(Vec<HomotopyExpr>),
    Wedge(Vec<HomotopyExpr>),
    Disjoint(Vec<HomotopyExpr>),
    /// `Σ^r e = e * S^{r-1}`, `r ≥ 1`.
    Susp(Box<HomotopyExpr>, u32),
}

impl HomotopyExpr {
    pub fn atom(id: impl Into<AtomId>) -> Self {
        HomotopyExpr::Atom(id.into())
    }

    /// `S^d`; `d = -1` gives the empty space.
    pub fn sphere(d: i64) -> Self {
        assert!(d >= -1);
        if d == -1 {
            HomotopyExpr::Empty
        } else {
            HomotopyExpr::Sphere(d as u32)
        }
    }

    /// A contractible point, the empty wedge.
    pub fn point() -> Self {
        HomotopyExpr::Wedge(Vec::new())
    }
}

pub fn suspend_iter(e: HomotopyExpr, r: u32) -> HomotopyExpr {
    if r == 0 {
        e
    } else {
        HomotopyExpr::Susp(Box::new(e), r)
    }
}

pub fn join2(a: HomotopyExpr, b: HomotopyExpr) -> HomotopyExpr {
    HomotopyExpr::Join(vec![a, b])
}

pub fn wedge_all(list: Vec<HomotopyExpr>) -> HomotopyExpr {
    HomotopyExpr::Wedge(list)
}

pub fn disjoint_all(list: Vec<HomotopyExpr>) -> HomotopyExpr {
    HomotopyExpr::Disjoint(list)
}

impl fmt::Display for HomotopyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, xs: &[HomotopyExpr], sep: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {sep} ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        };
        match self {
            HomotopyExpr::Empty => write!(f, "∅"),
            HomotopyExpr::Sphere(d) => write!(f, "S^{d}"),
            HomotopyExpr::Atom(a) => write!(f, "{a}"),
            HomotopyExpr::Join(xs) => list(f, xs, "*"),
            HomotopyExpr::Wedge(xs) if xs.is_empty() => write!(f, "pt"),
            HomotopyExpr::Wedge(xs) => list(f, xs, "∨"),
            HomotopyExpr::Disjoint(xs) => list(f, xs, "⊔"),
            HomotopyExpr::Susp(x, 1) => write!(f, "Σ{x}"),
            HomotopyExpr::Susp(x, r) => write!(f, "Σ^{r}{x}"),
        }
    }
}

/// `Σ^r` applied to a join of atom powers. `r = 0` with no atoms is the
/// empty space; `r ≥ 1` with no atoms is `S^{r-1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JoinTerm {
    pub r: u32,
    powers: BTreeMap<AtomId, u32>,
}

impl JoinTerm {
    pub fn new(r: u32, powers: impl IntoIterator<Item = (AtomId, u32)>) -> Self {
        let powers = powers.into_iter().filter(|(_, k)| *k > 0).collect();
        JoinTerm { r, powers }
    }

    pub fn empty() -> Self {
        JoinTerm::default()
    }

    pub fn atom(id: impl Into<AtomId>) -> Self {
        JoinTerm::new(0, [(id.into(), 1)])
    }

    pub fn sphere(d: u32) -> Self {
        JoinTerm::new(d + 1, [])
    }

    pub fn powers(&self) -> &BTreeMap<AtomId, u32> {
        &self.powers
    }

    pub fn power(&self, atom: &str) -> u32 {
        self.powers.get(atom).copied().unwrap_or(0)
    }

    pub fn is_empty_space(&self) -> bool {
        self.r == 0 && self.powers.is_empty()
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut powers = self.powers.clone();
        for (a, k) in &other.powers {
            *powers.entry(a.clone()).or_default() += k;
        }
        JoinTerm {
            r: self.r + other.r,
            powers,
        }
    }

    pub fn suspend(&self, r: u32) -> Self {
        JoinTerm {
            r: self.r + r,
            powers: self.powers.clone(),
        }
    }

    pub fn to_expr(&self) -> HomotopyExpr {
        let mut parts = Vec::new();
        for (a, &k) in &self.powers {
            parts.extend(std::iter::repeat_n(
                HomotopyExpr::atom(a.clone()),
                k as usize,
            ));
        }
        let core = match parts.len() {
            0 => HomotopyExpr::Empty,
            1 => parts.pop().unwrap(),
            _ => HomotopyExpr::Join(parts),
        };
        match (self.r, &core) {
            (0, _) => core,
            (r, HomotopyExpr::Empty) => HomotopyExpr::Sphere(r - 1),
            (r, _) => suspend_iter(core, r),
        }
    }

    pub fn betti(&self, atoms: &AtomAssignment) -> Result<BettiVector, HomotopyError> {
        let mut acc = if self.r == 0 {
            BettiVector::empty_space()
        } else {
            BettiVector::sphere_wedge(1u32, self.r as i64 - 1)
        };
        for (a, &k) in &self.powers {
            let b = atom_vector(atoms, a)?;
            for _ in 0..k {
                acc = acc.join(b);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for JoinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return if self.r == 0 {
                write!(f, "∅")
            } else {
                write!(f, "S^{}", self.r - 1)
            };
        }
        match self.r {
            0 => {}
            1 => write!(f, "Σ")?,
            r => write!(f, "Σ^{r} ")?,
        }
        let parts: Vec<String> = self
            .powers
            .iter()
            .map(|(a, &k)| {
                if k == 1 {
                    a.clone()
                } else {
                    format!("{a}^*{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("atom {0:?} has no assigned Betti vector")]
    MissingAtom(AtomId),
    #[error("atom {0:?} carries torsion, which the evaluation cannot model")]
    TorsionAtom(AtomId),
    #[error("atom {0:?} is assigned the empty space")]
    EmptyAtom(AtomId),
}

pub type AtomAssignment = BTreeMap<AtomId, BettiVector>;

fn atom_vector<'a>(atoms: &'a AtomAssignment, a: &str) -> Result<&'a BettiVector, HomotopyError> {
    let b = atoms
        .get(a)
        .ok_or_else(|| HomotopyError::MissingAtom(a.to_string()))?;
    if b.torsion {
        return Err(HomotopyError::TorsionAtom(a.to_string()));
    }
    if !b.get(-1).is_zero() {
        return Err(HomotopyError::EmptyAtom(a.to_string()));
    }
    Ok(b)
}

/// `⋁_n S^k` as a reduced Betti vector.
pub fn sphere_wedge_assignment(n: impl Into<BigUint>, k: u32) -> BettiVector {
    BettiVector::sphere_wedge(n, k as i64)
}

/// A wedge of join terms (with multiplicity) together with a number of
/// additional path components. The empty space is the single term `∅`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    summands: BTreeMap<JoinTerm, BigUint>,
    pub extra_components: BigUint,
}

impl NormalForm {
    pub fn empty_space() -> Self {
        NormalForm::from_term(JoinTerm::empty())
    }

    /// The contractible point (empty wedge).
    pub fn point() -> Self {
        NormalForm::default()
    }

    pub fn from_term(t: JoinTerm) -> Self {
        NormalForm::from_terms([(t, BigUint::one())], BigUint::zero())
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (JoinTerm, BigUint)>,
        extra_components: BigUint,
    ) -> Self {
        let mut nf = NormalForm {
            summands: BTreeMap::new(),
            extra_components,
        };
        for (t, m) in terms {
            nf.add_term(t, &m);
        }
        nf
    }

    fn add_term(&mut self, t: JoinTerm, m: &BigUint) {
        if !m.is_zero() {
            *self.summands.entry(t).or_default() += m;
        }
    }

    pub fn summands(&self) -> &BTreeMap<JoinTerm, BigUint> {
        &self.summands
    }

    pub fn is_empty_space(&self) -> bool {
        self.extra_components.is_zero()
            && self.summands.len() == 1
            && self
                .summands
                .iter()
                .all(|(t, m)| t.is_empty_space() && m.is_one())
    }

    /// Number of summands counted with multiplicity.
    pub fn summand_count(&self) -> BigUint {
        self.summands.values().sum()
    }

    pub fn wedge(parts: &[NormalForm]) -> Self {
        let mut out = NormalForm::point();
        for p in parts.iter().filter(|p| !p.is_empty_space()) {
            for (t, m) in &p.summands {
                out.add_term(t.clone(), m);
            }
            out.extra_components += &p.extra_components;
        }
        out
    }

    pub fn disjoint(parts: &[NormalForm]) -> Self {
        let live: Vec<&NormalForm> = parts.iter().filter(|p| !p.is_empty_space()).collect();
        if live.is_empty() {
            return NormalForm::empty_space();
        }
        let mut out = NormalForm::point();
        for p in &live {
            for (t, m) in &p.summands {
                out.add_term(t.clone(), m);
            }
            out.extra_components += &p.extra_components;
        }
        out.extra_components += BigUint::from(live.len() - 1);
        out
    }

    pub fn suspend(&self, r: u32) -> Self {
        if r == 0 {
            return self.clone();
        }
        self.join(&NormalForm::from_term(JoinTerm::new(r, [])))
    }

    /// Join. With `A = (⋁ s) ⊔ c₁ points` and `B = (⋁ t) ⊔ c₂ points`:
    /// `A * B ≃ ⋁ s*t ∨ c₂·⋁ Σs ∨ c₁·⋁ Σt ∨ c₁c₂·S¹`.
    pub fn join(&self, other: &Self) -> Self {
        if self.is_empty_space() {
            return other.clone();
        }
        if other.is_empty_space() {
            return self.clone();
        }
        let (c1, c2) = (&self.extra_components, &other.extra_components);
        let mut out = NormalForm::point();
        for (s, m) in &self.summands {
            for (t, n) in &other.summands {
                out.add_term(s.join(t), &(m * n));
            }
            out.add_term(s.suspend(1), &(m * c2));
        }
        for (t, n) in &other.summands {
            out.add_term(t.suspend(1), &(n * c1));
        }
        out.add_term(JoinTerm::sphere(1), &(c1 * c2));
        out
    }

    /// An expression that normalizes back to `self`.
    pub fn embed(&self) -> HomotopyExpr {
        if self.is_empty_space() {
            return HomotopyExpr::Empty;
        }
        let mut terms = Vec::new();
        for (t, m) in &self.summands {
            let m = m.to_usize().expect("multiplicity fits in memory");
            terms.extend(std::iter::repeat_n(t.to_expr(), m));
        }
        let wedge = HomotopyExpr::Wedge(terms);
        if self.extra_components.is_zero() {
            return wedge;
        }
        let c = self
            .extra_components
            .to_usize()
            .expect("component count fits in memory");
        let mut parts = vec![wedge];
        parts.extend(std::iter::repeat_n(HomotopyExpr::point(), c));
        HomotopyExpr::Disjoint(parts)
    }

    pub fn betti(&self, atoms: &AtomAssignment) -> Result<BettiVector, HomotopyError> {
        let mut out = BettiVector::zero();
        for (t, m) in &self.summands {
            out = out.add(&t.betti(atoms)?.scale(m));
        }
        out.add_at(0, &self.extra_components);
        Ok(out)
    }

    /// For a form over the single atom `atom`: multiplicity of each
    /// `(r, power)` pair.
    pub fn single_atom_profile(&self, atom: &str) -> BTreeMap<(u32, u32), BigUint> {
        let mut out: BTreeMap<(u32, u32), BigUint> = BTreeMap::new();
        for (t, m) in &self.summands {
            assert!(
                t.powers.keys().all(|a| a == atom),
                "form mentions atoms other than {atom}"
            );
            *out.entry((t.r, t.power(atom))).or_default() += m;
        }
        out
    }

    /// `{"wedge":[{"susp":r,"atoms":{…}},…],"extra_components":c}` with one
    /// entry per summand copy.
    pub fn to_json(&self) -> Value {
        let mut wedge = Vec::new();
        for (t, m) in &self.summands {
            let atoms: serde_json::Map<String, Value> = t
                .powers
                .iter()
                .map(|(a, k)| (a.clone(), Value::from(*k)))
                .collect();
            let entry = json!({"susp": t.r, "atoms": atoms});
            let m = m.to_usize().expect("multiplicity fits in memory");
            wedge.extend(std::iter::repeat_n(entry, m));
        }
        json!({"wedge": wedge, "extra_components": biguint_to_json(&self.extra_components)})
    }

    /// Accepts the output of [`to_json`](Self::to_json); entries may carry
    /// an optional `"mult"` count.
    pub fn from_json(v: &Value) -> Result<Self, ParseError> {
        let bad = |msg: String| ParseError::new(1, 1, msg);
        let wedge = v
            .get("wedge")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"wedge\" array".into()))?;
        let mut nf = NormalForm::point();
        for (i, e) in wedge.iter().enumerate() {
            let r = e
                .get("susp")
                .and_then(Value::as_u64)
                .and_then(|r| u32::try_from(r).ok())
                .ok_or_else(|| bad(format!("wedge entry {i}: bad \"susp\"")))?;
            let atoms = e
                .get("atoms")
                .and_then(Value::as_object)
                .ok_or_else(|| bad(format!("wedge entry {i}: missing \"atoms\"")))?;
            let mut powers = Vec::new();
            for (a, k) in atoms {
                let k = k
                    .as_u64()
                    .and_then(|k| u32::try_from(k).ok())
                    .ok_or_else(|| bad(format!("wedge entry {i}: bad power for {a:?}")))?;
                powers.push((a.clone(), k));
            }
            let mult = match e.get("mult") {
                None => BigUint::one(),
                Some(m) => biguint_from_json(m)
                    .ok_or_else(|| bad(format!("wedge entry {i}: bad \"mult\"")))?,
            };
            nf.add_term(JoinTerm::new(r, powers), &mult);
        }
        nf.extra_components = match v.get("extra_components") {
            None => BigUint::zero(),
            Some(c) => {
                biguint_from_json(c).ok_or_else(|| bad("bad \"extra_components\"".into()))?
            }
        };
        Ok(nf)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(t, m)| {
                if m.is_one() {
                    t.to_string()
                } else {
                    format!("⋁_{m} {t}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "pt")?;
        } else {
            write!(f, "{}", parts.join(" ∨ "))?;
        }
        if !self.extra_components.is_zero() {
            write!(f, " ⊔ {} pt", self.extra_components)?;
        }
        Ok(())
    }
}

pub fn normalize(e: &HomotopyExpr) -> NormalForm {
    match e {
        HomotopyExpr::Empty => NormalForm::empty_space(),
        HomotopyExpr::Sphere(d) => NormalForm::from_term(JoinTerm::sphere(*d)),
        HomotopyExpr::Atom(a) => NormalForm::from_term(JoinTerm::atom(a.clone())),
        HomotopyExpr::Join(xs) => xs
            .iter()
            .fold(NormalForm::empty_space(), |acc, x| acc.join(&normalize(x))),
        HomotopyExpr::Wedge(xs) => NormalForm::wedge(&xs.iter().map(normalize).collect::<Vec<_>>()),
        HomotopyExpr::Disjoint(xs) => {
            NormalForm::disjoint(&xs.iter().map(normalize).collect::<Vec<_>>())
        }
        HomotopyExpr::Susp(x, r) => normalize(x).suspend(*r),
    }
}

/// Betti vector of an expression evaluated node by node, without
/// normalizing.
pub fn betti_expr(e: &HomotopyExpr, atoms: &AtomAssignment) -> Result<BettiVector, HomotopyError> {
    let empty = BettiVector::empty_space();
    Ok(match e {
        HomotopyExpr::Empty => empty,
        HomotopyExpr::Sphere(d) => BettiVector::sphere_wedge(1u32, *d as i64),
        HomotopyExpr::Atom(a) => atom_vector(atoms, a)?.clone(),
        HomotopyExpr::Join(xs) => {
            let mut acc = empty;
            for x in xs {
                acc = acc.join(&betti_expr(x, atoms)?);
            }
            acc
        }
        HomotopyExpr::Wedge(xs) | HomotopyExpr::Disjoint(xs) => {
            let mut acc = BettiVector::zero();
            let mut live = 0u32;
            for x in xs {
                let b = betti_expr(x, atoms)?;
                if b != empty {
                    acc = acc.add(&b);
                    live += 1;
                }
            }
            match e {
                HomotopyExpr::Disjoint(_) if live == 0 => empty,
                HomotopyExpr::Disjoint(_) => {
                    acc.add_at(0, &BigUint::from(live - 1));
                    acc
                }
                _ => acc,
            }
        }
        HomotopyExpr::Susp(x, r) => {
            betti_expr(x, atoms)?.join(&BettiVector::sphere_wedge(1u32, *r as i64 - 1))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> HomotopyExpr {
        HomotopyExpr::atom("X")
    }

    fn x_pow(r: u32, k: u32) -> JoinTerm {
        JoinTerm::new(r, [("X".to_string(), k)])
    }

    fn nf(terms: &[(JoinTerm, u32)], extra: u32) -> NormalForm {
        NormalForm::from_terms(
            terms.iter().map(|(t, m)| (t.clone(), BigUint::from(*m))),
            BigUint::from(extra),
        )
    }

    #[test]
    fn disjoint_join_rule() {
        let e = join2(disjoint_all(vec![x(), x()]), x());
        assert_eq!(normalize(&e), nf(&[(x_pow(0, 2), 2), (x_pow(1, 1), 1)], 0));
    }

    #[test]
    fn suspension_of_disjoint_union() {
        let e = suspend_iter(disjoint_all(vec![join2(x(), x()), x()]), 1);
        assert_eq!(
            normalize(&e),
            nf(
                &[(x_pow(1, 2), 1), (x_pow(1, 1), 1), (JoinTerm::sphere(1), 1)],
                0
            )
        );
    }

    #[test]
    fn constructors() {
        assert_eq!(normalize(&HomotopyExpr::Empty), NormalForm::empty_space());
        assert_eq!(
            normalize(&suspend_iter(HomotopyExpr::Empty, 3)),
            NormalForm::from_term(JoinTerm::sphere(2))
        );
        assert_eq!(suspend_iter(x(), 0), x());
        assert_eq!(
            normalize(&join2(HomotopyExpr::Sphere(2), HomotopyExpr::Sphere(4))),
            NormalForm::from_term(JoinTerm::sphere(7))
        );
        assert_eq!(normalize(&wedge_all(vec![])), NormalForm::point());
        assert_eq!(normalize(&join2(HomotopyExpr::Empty, x())), normalize(&x()));
    }

    #[test]
    fn betti_examples() {
        let mut atoms = AtomAssignment::new();
        atoms.insert("X".into(), sphere_wedge_assignment(3u32, 2));
        assert_eq!(
            NormalForm::from_term(x_pow(0, 1)).betti(&atoms).unwrap(),
            BettiVector::sphere_wedge(3u32, 2)
        );
        // n^p at p(k+1) - 1 + r
        assert_eq!(
            NormalForm::from_term(x_pow(2, 3)).betti(&atoms).unwrap(),
            BettiVector::sphere_wedge(27u32, 3 * 3 - 1 + 2)
        );
        atoms.insert("X".into(), sphere_wedge_assignment(1u32, 0));
        let l3 = disjoint_all(vec![join2(x(), x()), x()]);
        assert_eq!(
            normalize(&l3).betti(&atoms).unwrap(),
            BettiVector::from_pairs([(0, 2u32), (1, 1)])
        );
        assert_eq!(sphere_wedge_assignment(0u32, 4), BettiVector::zero());
        assert_eq!(
            sphere_wedge_assignment(2u32, 0),
            BettiVector::from_pairs([(0, 2u32)])
        );
        assert_eq!(
            NormalForm::from_term(x_pow(0, 1)).betti(&AtomAssignment::new()),
            Err(HomotopyError::MissingAtom("X".into()))
        );
        let mut torsion = sphere_wedge_assignment(1u32, 1);
        torsion.torsion = true;
        atoms.insert("X".into(), torsion);
        assert_eq!(
            NormalForm::from_term(x_pow(0, 1)).betti(&atoms),
            Err(HomotopyError::TorsionAtom("X".into()))
        );
    }

    #[test]
    fn json_round_trip() {
        let f = nf(&[(x_pow(0, 2), 3), (x_pow(1, 1), 2)], 0);
        let v = f.to_json();
        assert_eq!(v["wedge"].as_array().unwrap().len(), 5);
        assert_eq!(NormalForm::from_json(&v).unwrap(), f);
        let compact = serde_json::json!({
            "wedge": [{"susp": 0, "atoms": {"X": 2}, "mult": 3}, {"susp": 1, "atoms": {"X": 1}, "mult": 2}],
            "extra_components": 0
        });
        assert_eq!(NormalForm::from_json(&compact).unwrap(), f);
        assert_eq!(f.to_string(), "⋁_3 X^*2 ∨ ⋁_2 ΣX");
    }

    fn arb_expr() -> impl Strategy<Value = HomotopyExpr> {
        let leaf = prop_oneof![
            Just(HomotopyExpr::Empty),
            (0u32..3).prop_map(HomotopyExpr::Sphere),
            prop_oneof![Just("X"), Just("Y")].prop_map(HomotopyExpr::atom),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 0..3).prop_map(HomotopyExpr::Join),
                proptest::collection::vec(inner.clone(), 0..3).prop_map(HomotopyExpr::Wedge),
                proptest::collection::vec(inner.clone(), 0..3).prop_map(HomotopyExpr::Disjoint),
                (inner, 1u32..3).prop_map(|(e, r)| suspend_iter(e, r)),
            ]
        })
    }

    fn arb_atom_vector() -> impl Strategy<Value = BettiVector> {
        proptest::collection::btree_map(0i64..3, 0u32..4, 0..3).prop_map(BettiVector::from_pairs)
    }

    proptest! {
        #[test]
        fn normalization_preserves_betti(
            e in arb_expr(), bx in arb_atom_vector(), by in arb_atom_vector()
        ) {
            let atoms: AtomAssignment = [("X".to_string(), bx), ("Y".to_string(), by)].into();
            let direct = betti_expr(&e, &atoms).unwrap();
            let normal = normalize(&e).betti(&atoms).unwrap();
            prop_assert_eq!(direct, normal);
        }

        #[test]
        fn normalization_is_idempotent(e in arb_expr()) {
            let once = normalize(&e);
            prop_assert_eq!(normalize(&once.embed()), once);
        }

        #[test]
        fn join_of_forms_is_commutative_and_associative(
            a in arb_expr(), b in arb_expr(), c in arb_expr()
        ) {
            let (a, b, c) = (normalize(&a), normalize(&b), normalize(&c));
            prop_assert_eq!(a.join(&b), b.join(&a));
            prop_assert_eq!(a.join(&b).join(&c), a.join(&b.join(&c)));
            prop_assert_eq!(a.join(&NormalForm::empty_space()), a);
        }

        #[test]
        fn json_round_trips(e in arb_expr()) {
            let f = normalize(&e);
            prop_assert_eq!(NormalForm::from_json(&f.to_json()).unwrap(), f);
        }
    }
}
