//! The `polyjoin` command line.

use std::ffi::OsString;
use std::io::{Read as _, Write as _};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::closed_forms::{kozlov_cycle, lex_lm_spheres, polyjoin_ln, SphereCountTable};
use crate::complex::{
    complex_from_json, complex_to_json, independence_complex, parse_complex, write_complex,
    SimplicialComplex,
};
use crate::decomposability::{forest_certificate, is_s_vertex_decomposable, SheddingCertificate};
use crate::engine::{decompose_with_trace, per_vertex_atoms, single_atom};
use crate::format::ParseError;
use crate::graph::{
    cycle_graph, graph_from_json, graph_to_json, lexicographic_product, parse_graph, path_graph,
    random_tree, star_graph, write_graph, Graph,
};
use crate::homology::{reduced_homology_with_limit, DEFAULT_MAX_FACES};
use crate::homotopy::NormalForm;
use crate::verify::{verify_sweep, Factor, HSpec, InstanceReport, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_CERTIFICATE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "polyjoin",
    version,
    about = "Polyhedral joins of independence complexes: certificates, wedge decompositions, closed forms and a homology oracle"
)]
pub struct Cli {
    /// Output format; defaults to text for files (`gen`, `indep`) and JSON otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for `verify` (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Refuse homology computations on complexes with more faces than this.
    #[arg(long, global = true)]
    pub max_faces: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph file.
    Gen {
        #[command(subcommand)]
        spec: GenSpec,
    },
    /// Independence complex of a graph.
    Indep { graph: PathBuf },
    /// Find an s-shedding certificate (exit 3 when there is none).
    Certificate {
        /// Complex file, or a graph file with `--forest`.
        input: PathBuf,
        /// Read a forest and emit its leaf certificate for `I(G)`.
        #[arg(long)]
        forest: bool,
    },
    /// Decompose `Z*_K(X, ∅)` along a certificate.
    Decompose {
        complex: PathBuf,
        certificate: PathBuf,
        /// `per-vertex` (atom `X<v>` at vertex `v`) or `single[:NAME]`.
        #[arg(long, default_value = "per-vertex")]
        atoms: String,
        /// Emit the full report (certificate, expression, trace).
        #[arg(long)]
        report: bool,
    },
    /// Closed-form tables.
    Formula {
        #[command(subcommand)]
        which: FormulaSpec,
    },
    /// Reduced integral homology of a complex.
    Homology { complex: PathBuf },
    /// Compare engine, oracle and closed form over a family of `G[H]`.
    Verify {
        /// Paths `L_A` through `L_B`, both included.
        #[arg(long, value_name = "A..B", required_unless_present = "all_trees")]
        lm_range: Option<String>,
        /// Every labeled tree on 1 to N vertices.
        #[arg(long, value_name = "N", conflicts_with = "lm_range")]
        all_trees: Option<usize>,
        /// Second factor: cycle:N, path:N, complete:N or file:PATH.
        #[arg(long = "h", value_name = "SPEC", required = true)]
        h: Vec<String>,
        /// Print null instead of elapsed milliseconds.
        #[arg(long)]
        no_timings: bool,
        /// Compute the oracle once per instance instead of once per tree shape.
        #[arg(long)]
        no_oracle_cache: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenSpec {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// Random labeled tree from a Prüfer sequence; SEED defaults to `--seed`.
    Tree {
        n: usize,
        #[arg(value_name = "SEED")]
        tree_seed: Option<u64>,
    },
    /// Lexicographic product of two graph files.
    Lex {
        a: PathBuf,
        b: PathBuf,
    },
    /// `K_{1,N}`.
    Star {
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormulaSpec {
    /// Normal form of the polyhedral join over `I(L_N)`.
    Ln { n: u64 },
    /// Sphere counts of `I(L_M[H])` for `|I(H)| ≃ ⋁_N S^K`.
    Lex { m: u64, n: u64, k: u64 },
    /// Sphere counts of `I(C_N)`.
    Cycle { n: u64 },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    NoCertificate(String),
    Mismatch(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::NoCertificate(_) => EXIT_NO_CERTIFICATE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m)
            | CliError::NoCertificate(m)
            | CliError::Mismatch(m)
            | CliError::Failure(m) => m,
        }
    }
}

fn input_err(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: ParseError) -> CliError {
    CliError::Input(format!("{}:{e}", path.display()))
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_input(path)?;
    let parsed = if is_json(&text) {
        graph_from_json(&text)
    } else {
        parse_graph(&text)
    };
    parsed.map_err(|e| located(path, e))
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    let text = read_input(path)?;
    let parsed = if is_json(&text) {
        complex_from_json(&text)
    } else {
        parse_complex(&text)
    };
    parsed.map_err(|e| located(path, e))
}

pub fn load_certificate(path: &Path) -> Result<SheddingCertificate, CliError> {
    let text = read_input(path)?;
    SheddingCertificate::from_json(&text).map_err(|e| located(path, e))
}

/// `A..B`, both ends included.
pub fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {text:?}"))?;
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad bound {s:?} in {text:?}"))
    };
    let (a, b) = (num(a)?, num(b)?);
    if a == 0 || a > b {
        return Err(format!("empty or invalid range {text:?}"));
    }
    Ok((a, b))
}

fn certificate_text(cert: &SheddingCertificate, depth: usize, out: &mut String) {
    match cert {
        SheddingCertificate::Leaf(l) => out.push_str(&format!(
            "{}\n",
            serde_json::to_value(l).unwrap().as_str().unwrap()
        )),
        SheddingCertificate::Node { v, w, del, lk } => {
            let pad = "  ".repeat(depth + 1);
            out.push_str(&format!("shed {v} via {w}\n{pad}del: "));
            certificate_text(del, depth + 1, out);
            out.push_str(&format!("{pad}lk: "));
            certificate_text(lk, depth + 1, out);
        }
    }
}

fn table_text(t: &SphereCountTable) -> String {
    let mut s = String::new();
    for (d, n) in &t.spheres {
        s.push_str(&format!("S^{d}: {n}\n"));
    }
    s.push_str(&format!("extra components: {}\n", t.extra_components));
    s
}

fn report_line(r: &InstanceReport) -> String {
    let side = |x: &Result<_, String>| match x {
        Ok(b) => format!("{b}"),
        Err(e) => format!("error: {e}"),
    };
    let edges: Vec<String> =
        r.g.normalized()
            .edges()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
    let closed = r
        .closed_form
        .as_ref()
        .map_or("-".to_string(), |b| b.to_string());
    let ms = r.ms.map_or("-".to_string(), |m| format!("{m}ms"));
    format!(
        "{} n={} [{}] h={} engine: {} | oracle: {} | closed form: {} | {} {}",
        r.index,
        r.g.vertex_count(),
        edges.join(" "),
        r.h,
        side(&r.engine),
        side(&r.oracle),
        closed,
        if r.agree { "agree" } else { "MISMATCH" },
        ms
    )
}

/// Rendered output: JSON value plus its text rendering.
struct Output {
    json: Value,
    text: String,
}

fn json_line(v: &Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn gen_graph(spec: &GenSpec, default_seed: u64) -> Result<Graph, CliError> {
    Ok(match spec {
        GenSpec::Path { n } => path_graph(*n).map_err(input_err)?,
        GenSpec::Cycle { n } => cycle_graph(*n).map_err(input_err)?,
        GenSpec::Tree { n, tree_seed } => {
            if *n == 0 {
                return Err(CliError::Input("a tree needs at least one vertex".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(tree_seed.unwrap_or(default_seed));
            random_tree(*n, &mut rng)
        }
        GenSpec::Lex { a, b } => lexicographic_product(&load_graph(a)?, &load_graph(b)?),
        GenSpec::Star { n } => star_graph(*n),
    })
}

fn atom_map(
    k: &SimplicialComplex,
    spec: &str,
) -> Result<std::collections::BTreeMap<crate::graph::Vertex, String>, CliError> {
    match spec.split_once(':') {
        None if spec == "per-vertex" => Ok(per_vertex_atoms(k)),
        None if spec == "single" => Ok(single_atom(k, "X")),
        Some(("single", name)) if !name.is_empty() => Ok(single_atom(k, name)),
        _ => Err(CliError::Input(format!(
            "bad atom spec {spec:?} (per-vertex, single or single:NAME)"
        ))),
    }
}

fn run_verify(
    cli: &Cli,
    instances: Vec<Graph>,
    specs: &[String],
    opts: VerifyOptions,
) -> Result<(String, bool), CliError> {
    let max_faces = opts.max_faces;
    let factors = specs
        .iter()
        .map(|s| {
            let spec = HSpec::parse(s).map_err(CliError::Input)?;
            Factor::from_spec(&spec, max_faces).map_err(CliError::Input)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pairs: Vec<(Graph, usize)> = instances
        .into_iter()
        .flat_map(|g| (0..factors.len()).map(move |f| (g.clone(), f)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Failure(e.to_string()))?;
    let reports = pool.install(|| verify_sweep(&pairs, &factors, &opts));
    let agreeing = reports.iter().filter(|r| r.agree).count();
    let torsion = reports.iter().filter(|r| r.torsion()).count();
    let json_mode = cli.format != Some(Format::Text);
    let mut out = String::new();
    for r in &reports {
        if json_mode {
            out.push_str(&r.to_json().to_string());
        } else {
            out.push_str(&report_line(r));
        }
        out.push('\n');
    }
    if json_mode {
        let summary =
            json!({"summary": {"instances": reports.len(), "agree": agreeing, "torsion": torsion}});
        out.push_str(&summary.to_string());
    } else {
        out.push_str(&format!(
            "{} instances, {agreeing} agree, {torsion} with torsion",
            reports.len()
        ));
    }
    out.push('\n');
    Ok((out, agreeing == reports.len()))
}

fn execute(cli: &Cli) -> Result<(String, Option<CliError>), CliError> {
    let max_faces = cli.max_faces.unwrap_or(DEFAULT_MAX_FACES);
    let single = |o: Output, default: Format| match cli.format.unwrap_or(default) {
        Format::Json => json_line(&o.json),
        Format::Text => o.text,
    };
    let out = match &cli.command {
        Command::Gen { spec } => {
            let g = gen_graph(spec, cli.seed)?;
            single(
                Output {
                    json: graph_to_json(&g),
                    text: write_graph(&g),
                },
                Format::Text,
            )
        }
        Command::Indep { graph } => {
            let k = independence_complex(&load_graph(graph)?);
            single(
                Output {
                    json: complex_to_json(&k),
                    text: write_complex(&k),
                },
                Format::Text,
            )
        }
        Command::Certificate { input, forest } => {
            let cert = if *forest {
                forest_certificate(&load_graph(input)?).map_err(input_err)?
            } else {
                let k = load_complex(input)?;
                is_s_vertex_decomposable(&k).ok_or_else(|| {
                    CliError::NoCertificate(format!(
                        "{}: not s-vertex-decomposable",
                        input.display()
                    ))
                })?
            };
            let mut text = String::new();
            certificate_text(&cert, 0, &mut text);
            single(
                Output {
                    json: cert.to_json(),
                    text,
                },
                Format::Json,
            )
        }
        Command::Decompose {
            complex,
            certificate,
            atoms,
            report,
        } => {
            let k = load_complex(complex)?;
            let cert = load_certificate(certificate)?;
            let atoms = atom_map(&k, atoms)?;
            let r = decompose_with_trace(&k, &cert, &atoms).map_err(input_err)?;
            let json = if *report {
                r.to_json()
            } else {
                r.normal_form.to_json()
            };
            let text = if *report {
                format!("{}\n{}\n", r.expression, r.normal_form)
            } else {
                format!("{}\n", r.normal_form)
            };
            single(Output { json, text }, Format::Json)
        }
        Command::Formula { which } => {
            let o = match which {
                FormulaSpec::Ln { n } => {
                    let nf: NormalForm = polyjoin_ln(*n).map_err(input_err)?;
                    Output {
                        json: nf.to_json(),
                        text: format!("{nf}\n"),
                    }
                }
                FormulaSpec::Lex { m, n, k } => {
                    let t = lex_lm_spheres(*m, *n, *k).map_err(input_err)?;
                    Output {
                        json: t.to_json(),
                        text: table_text(&t),
                    }
                }
                FormulaSpec::Cycle { n } => {
                    let t = kozlov_cycle(*n).map_err(input_err)?;
                    Output {
                        json: t.to_json(),
                        text: table_text(&t),
                    }
                }
            };
            single(o, Format::Json)
        }
        Command::Homology { complex } => {
            let k = load_complex(complex)?;
            let b = reduced_homology_with_limit(&k, max_faces).map_err(input_err)?;
            single(
                Output {
                    json: b.to_json(),
                    text: format!("{b}\n"),
                },
                Format::Json,
            )
        }
        Command::Verify {
            lm_range,
            all_trees,
            h,
            no_timings,
            no_oracle_cache,
        } => {
            let instances: Vec<Graph> = match (lm_range, all_trees) {
                (Some(r), _) => {
                    let (a, b) = parse_range(r).map_err(CliError::Input)?;
                    (a..=b).map(|m| path_graph(m).unwrap()).collect()
                }
                (None, Some(n)) => (1..=*n).flat_map(crate::graph::enumerate_trees).collect(),
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let opts = VerifyOptions {
                max_faces,
                timings: !no_timings,
                oracle_cache: !no_oracle_cache,
            };
            let (out, all_agree) = run_verify(cli, instances, h, opts)?;
            let status = (!all_agree)
                .then(|| CliError::Mismatch("engine and oracle disagree on some instance".into()));
            return Ok((out, status));
        }
    };
    Ok((out, None))
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Failure(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Failure(e.to_string()))
        }
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = execute(&cli).and_then(|(text, status)| {
        emit(&cli, &text)?;
        status.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("polyjoin: {}", e.message());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..12"), Ok((4, 12)));
        assert_eq!(parse_range("3..3"), Ok((3, 3)));
        assert!(parse_range("5..4").is_err());
        assert!(parse_range("0..4").is_err());
        assert!(parse_range("4").is_err());
    }

    #[test]
    fn certificate_rendering() {
        let cert = SheddingCertificate::from_json(r#"{"v":1,"w":4,"del":"SIMPLEX","lk":"EMPTY"}"#)
            .unwrap();
        let mut s = String::new();
        certificate_text(&cert, 0, &mut s);
        assert_eq!(s, "shed 1 via 4\n  del: SIMPLEX\n  lk: EMPTY\n");
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
