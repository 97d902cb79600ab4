//! Seeded random instances and a fixed corpus of graphs of finite groups.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::groups::{FiniteGroup, GraphOfGroups, PermutationAction};
use crate::scalar::Scalar;
use crate::semigraph::{Edge, SemiGraph};
use crate::skeleton::{CuspType, CurveParams, EdgeDecor, Length, Skeleton, VertexDecor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected semi-graph: a random tree on `vertices` vertices, `extra`
/// further closed edges (loops allowed) and `open` open edges.
pub fn random_semigraph<R: Rng>(rng: &mut R, vertices: usize, extra: usize, open: usize) -> SemiGraph {
    assert!(vertices > 0);
    let ids: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let closed = |edges: &mut Vec<Edge>, a: usize, b: usize| {
        let id = format!("e{}", edges.len());
        edges.push(Edge::closed(&id, (&format!("{id}.0"), &ids[a]), (&format!("{id}.1"), &ids[b])));
    };
    for v in 1..vertices {
        let u = rng.gen_range(0..v);
        closed(&mut edges, u, v);
    }
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..vertices), rng.gen_range(0..vertices));
        closed(&mut edges, a, b);
    }
    for k in 0..open {
        let id = format!("o{k}");
        edges.push(Edge::open(&id, &format!("{id}.0"), &ids[rng.gen_range(0..vertices)]));
    }
    SemiGraph::new(ids, edges).expect("generated graph is valid")
}

/// A random semi-graph of modest size.
pub fn random_small_semigraph<R: Rng>(rng: &mut R, min_open: usize) -> SemiGraph {
    let v = rng.gen_range(1..=6);
    let extra = rng.gen_range(0..=3);
    let open = rng.gen_range(min_open..=min_open + 3);
    random_semigraph(rng, v, extra, open)
}

/// Random decorated skeleton. Closed edges are subdivided by extra
/// genus-0 valence-2 vertices so that minimization has work to do.
/// Every vertex of valence at most one has positive genus or lies on the
/// boundary.
pub fn random_skeleton<S: Scalar, R: Rng>(rng: &mut R) -> Skeleton<S> {
    let base = random_small_semigraph(rng, 0);
    let mut vertices: Vec<String> = base.vertices().to_vec();
    let mut decors: Vec<VertexDecor> = vertices
        .iter()
        .map(|_| {
            let genus = if rng.gen_bool(0.15) { rng.gen_range(1..=2) } else { 0 };
            let missing = if rng.gen_bool(0.15) { rng.gen_range(1..=2) } else { 0 };
            VertexDecor { genus, missing_branches: missing, ..VertexDecor::default() }
        })
        .collect();
    let mut edges = Vec::new();
    let mut edecors = Vec::new();
    for (e, edge) in base.edges().iter().enumerate() {
        if edge.is_open() {
            let cusp = *[CuspType::PuncturedDisc, CuspType::CoronalFinite, CuspType::Other].choose(rng).expect("nonempty");
            let length = match cusp {
                CuspType::PuncturedDisc => Length::Infinite,
                _ => Length::Finite(S::from_ratio(rng.gen_range(1..=5), rng.gen_range(1..=3))),
            };
            edges.push(edge.clone());
            edecors.push(EdgeDecor { length, cusp: Some(cusp) });
            continue;
        }
        let (a, b) = (&base.vertices()[base.ends(e)[0]], &base.vertices()[base.ends(e)[1]]);
        let cuts = rng.gen_range(0..=2);
        let mut chain = vec![a.clone()];
        for k in 0..cuts {
            let id = format!("{}~{k}", edge.id);
            vertices.push(id.clone());
            decors.push(VertexDecor::default());
            chain.push(id);
        }
        chain.push(b.clone());
        for (k, pair) in chain.windows(2).enumerate() {
            let id = format!("{}#{k}", edge.id);
            edges.push(Edge::closed(&id, (&format!("{id}.0"), &pair[0]), (&format!("{id}.1"), &pair[1])));
            edecors.push(EdgeDecor { length: Length::Finite(S::from_ratio(rng.gen_range(1..=4), rng.gen_range(1..=3))), cusp: None });
        }
    }
    // genus-0 leaves off the boundary retract away; give them a missing branch
    for v in 0..base.vertex_count() {
        if base.valence(v) <= 1 && decors[v].genus == 0 {
            decors[v].missing_branches = decors[v].missing_branches.max(1);
        }
    }
    let graph = SemiGraph::new(vertices, edges).expect("subdivision is valid");
    let params = CurveParams::new(*[2u64, 3, 5].choose(rng).expect("nonempty"), rng.gen_bool(0.5));
    Skeleton::new(graph, decors, edecors, params).expect("generated skeleton is valid")
}

/// Random transitive action of degree `degree` on a graph of groups whose
/// groups are all trivial: one random permutation per non-tree edge.
/// Retries until transitive; `None` if the base has no letters and
/// `degree > 1`.
pub fn random_trivial_action<R: Rng>(rng: &mut R, gog: &GraphOfGroups, degree: usize) -> Option<PermutationAction> {
    assert!(gog.all_trivial());
    let g = gog.graph();
    let letters: Vec<usize> = g.closed_edges().filter(|&e| !gog.is_tree_edge(e)).collect();
    if letters.is_empty() && degree > 1 {
        return None;
    }
    loop {
        let perms: BTreeMap<usize, Vec<usize>> = letters
            .iter()
            .map(|&e| {
                let mut p: Vec<usize> = (0..degree).collect();
                p.shuffle(rng);
                (e, p)
            })
            .collect();
        let act = PermutationAction::from_generators(gog, degree, &BTreeMap::new(), &perms).expect("letters are permutations");
        if act.is_transitive() {
            return Some(act);
        }
    }
}

fn vs(ids: &[&str]) -> Vec<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

fn segment(m: &FiniteGroup, n: &FiniteGroup, e: &FiniteGroup, alpha: Vec<usize>, omega: Vec<usize>) -> GraphOfGroups {
    let g = SemiGraph::new(vs(&["a", "b"]), vec![Edge::closed("e", ("e.a", "a"), ("e.b", "b"))]).expect("segment");
    GraphOfGroups::new(g, vec![m.clone(), n.clone()], vec![e.clone()], vec![vec![alpha, omega]], None).expect("valid segment")
}

fn single_loop(v: &FiniteGroup, e: &FiniteGroup, alpha: Vec<usize>, omega: Vec<usize>) -> GraphOfGroups {
    let g = SemiGraph::new(vs(&["v"]), vec![Edge::closed("t", ("t.0", "v"), ("t.1", "v"))]).expect("loop");
    GraphOfGroups::new(g, vec![v.clone()], vec![e.clone()], vec![vec![alpha, omega]], None).expect("valid loop")
}

fn theta(v: [&FiniteGroup; 2]) -> GraphOfGroups {
    let g = SemiGraph::new(
        vs(&["x", "y"]),
        (1..=3).map(|i| Edge::closed(&format!("e{i}"), (&format!("e{i}.x"), "x"), (&format!("e{i}.y"), "y"))).collect(),
    )
    .expect("theta");
    let t = FiniteGroup::trivial();
    let emb = vec![vec![vec![v[0].identity()], vec![v[1].identity()]]; 3];
    GraphOfGroups::new(g, vec![v[0].clone(), v[1].clone()], vec![t; 3], emb, None).expect("valid theta")
}

/// Index set of the subgroup of `g` generated by `gens`, in element order.
fn embed(g: &FiniteGroup, gens: &[&str]) -> Vec<usize> {
    let idx: Vec<usize> = gens.iter().map(|id| g.index_of(id).expect("known element")).collect();
    let set: BTreeSet<usize> = g.generated(&idx);
    set.into_iter().collect()
}

/// Named graphs of finite groups with group orders at most 12, pairwise
/// non-isomorphic as labeled graphs.
pub fn gog_corpus() -> Vec<(&'static str, GraphOfGroups)> {
    let c = |n| FiniteGroup::cyclic(n).expect("positive order");
    let t = FiniteGroup::trivial();
    let d3 = FiniteGroup::dihedral(3).expect("D3");
    let z2z2 = FiniteGroup::product(&c(2), &c(2));
    let circle2 = {
        let g = SemiGraph::new(
            vs(&["a", "b"]),
            vec![Edge::closed("e", ("e.a", "a"), ("e.b", "b")), Edge::closed("f", ("f.a", "a"), ("f.b", "b"))],
        )
        .expect("2-cycle");
        GraphOfGroups::new(g, vec![c(2), c(3)], vec![t.clone(), t.clone()], vec![vec![vec![0], vec![0]]; 2], None)
            .expect("valid 2-cycle")
    };
    let with_cusp = {
        let g = SemiGraph::new(
            vs(&["a", "b"]),
            vec![Edge::closed("e", ("e.a", "a"), ("e.b", "b")), Edge::open("c", "c.b", "b")],
        )
        .expect("segment with cusp");
        GraphOfGroups::new(g, vec![c(6), c(2)], vec![c(2), c(2)], vec![vec![vec![0, 3], vec![0, 1]], vec![vec![0, 1]]], None)
            .expect("valid cusp")
    };
    vec![
        ("segment_z2_z3", segment(&c(2), &c(3), &t, vec![0], vec![0])),
        ("amalgam_z4_z2_z4", segment(&c(4), &c(4), &c(2), vec![0, 2], vec![0, 2])),
        ("amalgam_d3_z2_z4", segment(&d3, &c(4), &c(2), embed(&d3, &["s0"]), vec![0, 2])),
        ("amalgam_z6_z3_z12", segment(&c(6), &c(12), &c(3), vec![0, 2, 4], vec![0, 4, 8])),
        ("circle_trivial", single_loop(&t, &t, vec![0], vec![0])),
        ("loop_z3_trivial_edge", single_loop(&c(3), &t, vec![0], vec![0])),
        ("loop_z2_in_z4", single_loop(&c(4), &c(2), vec![0, 2], vec![0, 2])),
        ("loop_z2_in_d3_twisted", single_loop(&d3, &c(2), embed(&d3, &["s0"]), embed(&d3, &["s1"]))),
        ("segment_z2z2_z2_z2", segment(&z2z2, &c(2), &c(2), embed(&z2z2, &["(1,0)"]), vec![0, 1])),
        ("theta_z2_z2", theta([&c(2), &c(2)])),
        ("theta_z2_z3", theta([&c(2), &c(3)])),
        ("two_cycle_z2_z3", circle2),
        ("segment_z6_z2_with_cusp", with_cusp),
    ]
}
