//! Cross-module invariants: exhaustive where the space is small, sampled
//! otherwise.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyjoin_core::betti::BettiVector;
use polyjoin_core::complex::{
    face_set, independence_complex, join2, polyhedral_join_realize, SimplicialComplex,
};
use polyjoin_core::decomposability::{
    check_shedding_pair, forest_certificate, is_s_vertex_decomposable, shedding_pair_consequences,
    validate_certificate, Leaf, SheddingCertificate,
};
use polyjoin_core::engine::{decompose, per_vertex_atoms};
use polyjoin_core::graph::{
    cycle_graph, enumerate_trees, lexicographic_product, random_tree, Graph, Vertex,
};
use polyjoin_core::homotopy::{normalize, AtomAssignment};
use polyjoin_core::verify::{verify_sweep, Factor, VerifyOptions};

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs: Vec<(Vertex, Vertex)> = (1..=n as Vertex)
        .flat_map(|a| (a + 1..=n as Vertex).map(move |b| (a, b)))
        .collect();
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| *e);
    Graph::new(1..=n as Vertex, edges).unwrap()
}

fn acyclic_by_union_find(n: usize, edges: &[(Vertex, Vertex)]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

#[test]
fn is_forest_matches_union_find() {
    for n in 1..=7 {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            let edges: Vec<_> = g.edges().collect();
            assert_eq!(
                g.is_forest(),
                acyclic_by_union_find(n, &edges),
                "n={n} mask={mask:b}"
            );
        }
    }
    // eight vertices: every edge set of size at most eight, which holds every
    // forest and every graph with exactly one more edge than a spanning tree
    let n = 8;
    let mut stack: Vec<(u64, u32, usize)> = vec![(0, 0, 0)];
    let mut seen = 0u64;
    while let Some((mask, size, next)) = stack.pop() {
        let g = graph_from_mask(n, mask);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(g.is_forest(), acyclic_by_union_find(n, &edges));
        seen += 1;
        if size < 8 {
            for e in next..28 {
                stack.push((mask | 1 << e, size + 1, e + 1));
            }
        }
    }
    assert_eq!(seen, 4_791_323);
}

#[test]
fn forest_certificates_validate_on_all_small_trees() {
    for n in 1..=8 {
        for t in enumerate_trees(n) {
            let c = forest_certificate(&t).unwrap();
            assert!(
                validate_certificate(&independence_complex(&t), &c),
                "{:?}",
                t.edges().collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn master_property_with_four_cycle() {
    let factors = vec![Factor::new(
        "C4".into(),
        cycle_graph(4).unwrap(),
        usize::MAX,
    )];
    let pairs: Vec<(Graph, usize)> = (1..=7).flat_map(enumerate_trees).map(|g| (g, 0)).collect();
    let opts = VerifyOptions {
        timings: false,
        ..VerifyOptions::default()
    };
    let reports = verify_sweep(&pairs, &factors, &opts);
    assert!(reports.iter().all(|r| r.agree && !r.torsion()));
}

fn arb_graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        (Just(n), 0..1u64 << m).prop_map(|(n, mask)| graph_from_mask(n, mask))
    })
}

fn arb_tree(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max, any::<u64>())
        .prop_map(|(n, seed)| random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn arb_complex(n: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(1..1u32 << n, 1..7).prop_map(move |masks| {
        let facets: Vec<Vec<Vertex>> = masks
            .iter()
            .map(|m| {
                (0..n as u32)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| i + 1)
                    .collect()
            })
            .collect();
        let vertices: BTreeSet<Vertex> = facets.iter().flatten().copied().collect();
        SimplicialComplex::from_facets(vertices, facets).unwrap()
    })
}

fn arb_betti() -> impl Strategy<Value = BettiVector> {
    (0..3u32, 0..3i64).prop_map(|(n, k)| BettiVector::sphere_wedge(n, k))
}

/// Block offsets used by the realization: vertex `i` of `k`, in order, gets
/// labels after the blocks of the earlier vertices.
fn decode(
    realized: &SimplicialComplex,
    k: &SimplicialComplex,
    assignment: &BTreeMap<Vertex, SimplicialComplex>,
) -> BTreeSet<BTreeSet<(Vertex, Vertex)>> {
    let mut owner = BTreeMap::new();
    let mut next = 1;
    for v in k.vertices() {
        for &x in assignment[v].vertices() {
            owner.insert(next, (*v, x));
            next += 1;
        }
    }
    face_set(realized)
        .into_iter()
        .map(|f| f.iter().map(|l| owner[l]).collect())
        .collect()
}

fn restrict(
    assignment: &BTreeMap<Vertex, SimplicialComplex>,
    k: &SimplicialComplex,
) -> BTreeMap<Vertex, SimplicialComplex> {
    k.vertices()
        .iter()
        .map(|v| (*v, assignment[v].clone()))
        .collect()
}

fn compose_join_certificate(
    k: &SheddingCertificate,
    l: &SheddingCertificate,
) -> SheddingCertificate {
    fn empty_to_simplex(c: &SheddingCertificate) -> SheddingCertificate {
        match c {
            SheddingCertificate::Leaf(_) => SheddingCertificate::Leaf(Leaf::Simplex),
            SheddingCertificate::Node { v, w, del, lk } => {
                SheddingCertificate::node(*v, *w, empty_to_simplex(del), empty_to_simplex(lk))
            }
        }
    }
    match k {
        SheddingCertificate::Leaf(Leaf::Empty) => l.clone(),
        SheddingCertificate::Leaf(Leaf::Simplex) => empty_to_simplex(l),
        SheddingCertificate::Node { v, w, del, lk } => SheddingCertificate::node(
            *v,
            *w,
            compose_join_certificate(del, l),
            compose_join_certificate(lk, l),
        ),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lexicographic_product_matches_definition(g in arb_graph(4), h in arb_graph(4)) {
        let p = lexicographic_product(&g, &h);
        let (gv, hv) = (g.vertices().to_vec(), h.vertices().to_vec());
        prop_assert_eq!(p.vertex_count(), gv.len() * hv.len());
        let label = |i: usize, j: usize| (i * hv.len() + j + 1) as Vertex;
        for (i1, &u1) in gv.iter().enumerate() {
            for (j1, &v1) in hv.iter().enumerate() {
                for (i2, &u2) in gv.iter().enumerate() {
                    for (j2, &v2) in hv.iter().enumerate() {
                        if (i1, j1) == (i2, j2) {
                            continue;
                        }
                        let want = g.has_edge(u1, u2) || (u1 == u2 && h.has_edge(v1, v2));
                        prop_assert_eq!(p.has_edge(label(i1, j1), label(i2, j2)), want);
                    }
                }
            }
        }
    }

    #[test]
    fn lexicographic_product_is_associative(
        a in arb_graph(3), b in arb_graph(3), c in arb_graph(3)
    ) {
        // with pairs ranked lexicographically both sides get identical labels
        let left = lexicographic_product(&lexicographic_product(&a, &b), &c);
        let right = lexicographic_product(&a, &lexicographic_product(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_is_link_joined_with_vertex(k in arb_complex(8)) {
        for &v in k.vertices() {
            let st = k.star(v).unwrap();
            let lk = k.link(v).unwrap();
            let cone: BTreeSet<Vec<Vertex>> = face_set(&lk)
                .into_iter()
                .flat_map(|f| {
                    let mut g = f.clone();
                    g.push(v);
                    g.sort_unstable();
                    [f, g]
                })
                .collect();
            prop_assert_eq!(face_set(&st), cone);
        }
    }

    #[test]
    fn realization_respects_unions_and_intersections(
        l1 in arb_complex(5), l2 in arb_complex(5), sizes in prop::collection::vec(1..4u32, 5)
    ) {
        let k = l1.union(&l2);
        let assignment: BTreeMap<Vertex, SimplicialComplex> = (1..=5)
            .map(|v| {
                let s = sizes[v as usize - 1];
                let pts: Vec<Vec<Vertex>> = (1..=s).map(|x| vec![x]).collect();
                (v, SimplicialComplex::from_facets(1..=s, pts).unwrap())
            })
            .collect();
        let realize = |c: &SimplicialComplex| {
            let a = restrict(&assignment, c);
            decode(&polyhedral_join_realize(c, &a).unwrap(), c, &a)
        };
        let whole = realize(&k);
        let (z1, z2) = (realize(&l1), realize(&l2));
        prop_assert_eq!(&whole, &z1.union(&z2).cloned().collect());
        let meet = l1.intersection(&l2);
        prop_assert_eq!(realize(&meet), z1.intersection(&z2).cloned().collect());
    }

    #[test]
    fn realized_independence_complex_is_lex_product(g in arb_graph(4), h in arb_graph(3)) {
        let ig = independence_complex(&g);
        let assignment = polyjoin_core::complex::constant_assignment(&ig, &independence_complex(&h));
        prop_assert_eq!(
            polyhedral_join_realize(&ig, &assignment).unwrap(),
            independence_complex(&lexicographic_product(&g, &h))
        );
    }

    #[test]
    fn shedding_pairs_on_seven_vertices(k in arb_complex(7), g in arb_graph(7)) {
        for k in [k, independence_complex(&g)] {
            for &v in k.vertices() {
                for &w in k.vertices() {
                    if v != w && check_shedding_pair(&k, v, w).unwrap() {
                        prop_assert_eq!(shedding_pair_consequences(&k, v, w).unwrap(), [true; 3]);
                    }
                }
            }
        }
    }

    #[test]
    fn certificates_agree_at_homology_level(
        t in arb_tree(8), values in prop::collection::vec(arb_betti(), 8)
    ) {
        let k = independence_complex(&t);
        let searched = is_s_vertex_decomposable(&k).unwrap();
        let forest = forest_certificate(&t).unwrap();
        let atoms = per_vertex_atoms(&k);
        let assignment: AtomAssignment =
            atoms.values().cloned().zip(values.iter().cloned()).collect();
        let a = normalize(&decompose(&k, &searched, &atoms).unwrap()).betti(&assignment).unwrap();
        let b = normalize(&decompose(&k, &forest, &atoms).unwrap()).betti(&assignment).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn decomposition_of_a_join_is_the_join_of_decompositions(
        s in arb_tree(4), t in arb_tree(4), values in prop::collection::vec(arb_betti(), 8)
    ) {
        let (k, l) = (independence_complex(&s), independence_complex(&t));
        let n = k.vertex_count() as Vertex;
        let kl = join2(&k, &l);
        let ck = forest_certificate(&s).unwrap();
        let cl = forest_certificate(&t).unwrap().relabel(&|v| v + n);
        let cert = compose_join_certificate(&ck, &cl);
        prop_assert!(validate_certificate(&kl, &cert));

        let value = |v: Vertex| values[v as usize - 1].clone();
        let atoms = per_vertex_atoms(&kl);
        let whole: AtomAssignment = atoms.iter().map(|(v, a)| (a.clone(), value(*v))).collect();
        let lhs = normalize(&decompose(&kl, &cert, &atoms).unwrap()).betti(&whole).unwrap();

        let part = |c: &SimplicialComplex, cert: &SheddingCertificate, shift: Vertex| {
            let atoms = per_vertex_atoms(c);
            let vals: AtomAssignment =
                atoms.iter().map(|(v, a)| (a.clone(), value(v + shift))).collect();
            normalize(&decompose(c, cert, &atoms).unwrap()).betti(&vals).unwrap()
        };
        let rhs = part(&k, &ck, 0).join(&part(&l, &forest_certificate(&t).unwrap(), n));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn random_complexes_seeded() {
    // a fixed-seed sweep of denser complexes on seven vertices
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pairs = 0;
    for _ in 0..3000 {
        let facets: Vec<Vec<Vertex>> = (0..rng.gen_range(1..5))
            .map(|_| {
                let m: u32 = rng.gen_range(1..128);
                (0..7).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()
            })
            .collect();
        let vertices: BTreeSet<Vertex> = facets.iter().flatten().copied().collect();
        let k = SimplicialComplex::from_facets(vertices, facets).unwrap();
        for &v in k.vertices() {
            for &w in k.vertices() {
                if v != w && check_shedding_pair(&k, v, w).unwrap() {
                    pairs += 1;
                    assert_eq!(shedding_pair_consequences(&k, v, w).unwrap(), [true; 3]);
                }
            }
        }
    }
    assert!(pairs > 100, "only {pairs} pairs exercised");
}
