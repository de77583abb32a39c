//! Cross-checks of the engine against the homology oracle and, for paths,
//! the closed form.

use std::collections::HashMap;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::betti::BettiVector;
use crate::closed_forms::lex_lm_spheres;
use crate::complex::{constant_assignment, independence_complex, polyhedral_join_realize};
use crate::engine::decompose_forest_lex_with_atom;
use crate::format::ParseError;
use crate::graph::{complete_graph, cycle_graph, graph_to_json, parse_graph, path_graph, Graph};
use crate::homology::{reduced_homology_with_limit, DEFAULT_MAX_FACES};

/// A named choice of the second factor `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HSpec {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    File(PathBuf),
}

impl HSpec {
    /// `cycle:N`, `path:N`, `complete:N` or `file:PATH`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let (kind, arg) = text
            .split_once(':')
            .ok_or_else(|| format!("expected KIND:ARG, got {text:?}"))?;
        let num = || {
            arg.parse::<usize>()
                .map_err(|_| format!("bad size {arg:?} in {text:?}"))
        };
        match kind {
            "cycle" => Ok(HSpec::Cycle(num()?)),
            "path" => Ok(HSpec::Path(num()?)),
            "complete" => Ok(HSpec::Complete(num()?)),
            "file" => Ok(HSpec::File(PathBuf::from(arg))),
            _ => Err(format!(
                "unknown graph kind {kind:?} (cycle, path, complete, file)"
            )),
        }
    }

    pub fn name(&self) -> String {
        match self {
            HSpec::Cycle(n) => format!("cycle:{n}"),
            HSpec::Path(n) => format!("path:{n}"),
            HSpec::Complete(n) => format!("complete:{n}"),
            HSpec::File(p) => format!("file:{}", p.display()),
        }
    }

    pub fn build(&self) -> Result<Graph, String> {
        match self {
            HSpec::Cycle(n) => cycle_graph(*n).map_err(|e| e.to_string()),
            HSpec::Path(n) => path_graph(*n).map_err(|e| e.to_string()),
            HSpec::Complete(n) => Ok(complete_graph(*n)),
            HSpec::File(p) => {
                let text =
                    std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                parse_graph(&text).map_err(|e: ParseError| format!("{}:{e}", p.display()))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_faces: usize,
    pub timings: bool,
    /// Reuse the oracle result across forests with the same isomorphism
    /// type (sweeps only).
    pub oracle_cache: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_faces: DEFAULT_MAX_FACES,
            timings: true,
            oracle_cache: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub index: usize,
    pub g: Graph,
    pub h: String,
    pub engine: Result<BettiVector, String>,
    pub oracle: Result<BettiVector, String>,
    pub closed_form: Option<BettiVector>,
    pub agree: bool,
    pub ms: Option<u64>,
}

impl InstanceReport {
    pub fn torsion(&self) -> bool {
        matches!(&self.engine, Ok(b) if b.torsion) || matches!(&self.oracle, Ok(b) if b.torsion)
    }

    pub fn to_json(&self) -> Value {
        let side = |r: &Result<BettiVector, String>| match r {
            Ok(b) => b.to_json(),
            Err(e) => json!({"error": e}),
        };
        json!({
            "index": self.index,
            "g": graph_to_json(&self.g),
            "h": self.h,
            "engine": side(&self.engine),
            "oracle": side(&self.oracle),
            "closed_form": self.closed_form.as_ref().map(BettiVector::to_json),
            "agree": self.agree,
            "ms": self.ms,
        })
    }
}

/// Prepared second factor: its name and the reduced Betti vector of `I(H)`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub name: String,
    pub graph: Graph,
    pub betti: Result<BettiVector, String>,
}

impl Factor {
    pub fn new(name: String, graph: Graph, max_faces: usize) -> Self {
        let betti = reduced_homology_with_limit(&independence_complex(&graph), max_faces)
            .map_err(|e| e.to_string());
        Factor { name, graph, betti }
    }

    pub fn from_spec(spec: &HSpec, max_faces: usize) -> Result<Self, String> {
        Ok(Factor::new(spec.name(), spec.build()?, max_faces))
    }
}

/// Oracle Betti vector of `I(G[H])` realized as a polyhedral join.
pub fn oracle_betti(g: &Graph, h: &Graph, max_faces: usize) -> Result<BettiVector, String> {
    let k = independence_complex(g);
    let z = polyhedral_join_realize(&k, &constant_assignment(&k, &independence_complex(h)))
        .map_err(|e| e.to_string())?;
    reduced_homology_with_limit(&z, max_faces).map_err(|e| e.to_string())
}

/// Closed form when `G` is a path and `I(H)` has the homology of `⋁_n S^k`.
pub fn closed_form_betti(g: &Graph, atom: &BettiVector) -> Option<BettiVector> {
    if !g.is_path_like() || atom.torsion {
        return None;
    }
    let (n, k) = match atom.iter().collect::<Vec<_>>().as_slice() {
        [] => (0u64, 0u64),
        [(d, n)] if *d >= 0 => (u64::try_from(*n).ok()?, *d as u64),
        _ => return None,
    };
    Some(lex_lm_spheres(g.vertex_count() as u64, n, k).ok()?.betti())
}

fn finish(
    index: usize,
    g: &Graph,
    h: &Factor,
    oracle: Result<BettiVector, String>,
    started: Instant,
    opts: &VerifyOptions,
) -> InstanceReport {
    let (engine, closed_form) = match &h.betti {
        Ok(atom) => (
            decompose_forest_lex_with_atom(g, atom)
                .map(|d| d.betti)
                .map_err(|e| e.to_string()),
            closed_form_betti(g, atom),
        ),
        Err(e) => (Err(e.clone()), None),
    };
    let agree = match (&engine, &oracle) {
        (Ok(e), Ok(o)) => {
            e == o && !e.torsion && !o.torsion && closed_form.as_ref().is_none_or(|c| c == e)
        }
        _ => false,
    };
    InstanceReport {
        index,
        g: g.clone(),
        h: h.name.clone(),
        engine,
        oracle,
        closed_form,
        agree,
        ms: opts.timings.then(|| started.elapsed().as_millis() as u64),
    }
}

/// Engine, oracle and (for paths) closed form for one `(G, H)` pair.
pub fn verify_instance(g: &Graph, h: &Factor, opts: &VerifyOptions) -> InstanceReport {
    let started = Instant::now();
    let oracle = oracle_betti(g, &h.graph, opts.max_faces);
    finish(0, g, h, oracle, started, opts)
}

/// Verify every pair, in parallel on the current rayon pool. Reports come
/// back in input order.
pub fn verify_sweep(
    instances: &[(Graph, usize)],
    factors: &[Factor],
    opts: &VerifyOptions,
) -> Vec<InstanceReport> {
    let mut cache: HashMap<(String, usize), Result<BettiVector, String>> = HashMap::new();
    if opts.oracle_cache {
        // one representative per (forest type, factor)
        let mut reps: HashMap<(String, usize), &Graph> = HashMap::new();
        let mut order = Vec::new();
        for (g, f) in instances {
            if let Ok(key) = g.forest_canonical_form() {
                reps.entry((key.clone(), *f)).or_insert_with(|| {
                    order.push((key, *f));
                    g
                });
            }
        }
        let computed: Vec<_> = order
            .par_iter()
            .map(|key| {
                let g = reps[key];
                (
                    key.clone(),
                    oracle_betti(g, &factors[key.1].graph, opts.max_faces),
                )
            })
            .collect();
        cache.extend(computed);
    }
    instances
        .par_iter()
        .enumerate()
        .map(|(index, (g, f))| {
            let started = Instant::now();
            let h = &factors[*f];
            let cached = g
                .forest_canonical_form()
                .ok()
                .and_then(|key| cache.get(&(key, *f)).cloned());
            let oracle = cached.unwrap_or_else(|| oracle_betti(g, &h.graph, opts.max_faces));
            finish(index, g, h, oracle, started, opts)
        })
        .collect()
}
