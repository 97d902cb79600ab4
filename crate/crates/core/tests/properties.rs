use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use proptest::prelude::*;
use rand::Rng;
use skeletonkit::corpus::{self, random_semigraph, random_skeleton, random_small_semigraph, random_trivial_action};
use skeletonkit::drinfeld::{bt_ball, bt_ball_vertices, embed_vertex, recover_invariants, BTVertex, DigitCenterSpace, LocalFieldParams};
use skeletonkit::groups::{
    audit_ball, bass_serre_ball, cover_from_action, reconstruct_quotient, screen_mochizuki, GraphOfGroups, LabeledGraph,
    SymbolicVertex,
};
use skeletonkit::semigraph::{cover_from_class, harm_basis, prescribed_cochain, Edge, SemiGraph};
use skeletonkit::skeleton::{
    classify_curve, generalized_valence, is_hyperbolic_node, is_node, mark_points, minimize_triangulation_by, node_set,
    CurveSkeleton, EdgeDecor, Length, Marking, Skeleton,
};
use skeletonkit::ultrametric::{metric_d, point_eq, DiscPoint};
use skeletonkit::wild::{fiber_count, fiber_count_oracle, kummer_cover, pushforward_step, split_annulus_layout};
use skeletonkit::{BigRational, Rational, Scalar, WideRational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..8).prop_map(|(n, d)| q(n, d))
}

fn digits() -> impl Strategy<Value = BTreeMap<i64, u64>> {
    proptest::collection::btree_map(-3i64..4, 1u64..3, 0..4)
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
}

proptest! {
    #[test]
    fn metric_is_symmetric_and_triangular(
        a in digits(), b in digits(), c in digits(),
        ra in rational(), rb in rational(), rc in rational(),
    ) {
        let space = DigitCenterSpace { f: 1 };
        let (x, y, z) = (DiscPoint::type_two(a, ra), DiscPoint::type_two(b, rb), DiscPoint::type_two(c, rc));
        let dxy = metric_d(&space, &x, &y).unwrap();
        prop_assert_eq!(dxy, metric_d(&space, &y, &x).unwrap());
        prop_assert!(dxy >= q(0, 1));
        let dxz = metric_d(&space, &x, &z).unwrap();
        let dzy = metric_d(&space, &z, &y).unwrap();
        prop_assert!(dxy <= dxz + dzy);
        prop_assert_eq!(point_eq(&space, &x, &y).unwrap(), dxy == q(0, 1));
    }

    #[test]
    fn fiber_count_matches_oracle_and_is_monotone(
        p in prime(), h in 0u32..4, t in rational(), gap1 in 1i64..80, gap2 in 0i64..80, d in 1i64..7,
    ) {
        let s1 = t - q(gap1, d);
        let s2 = s1 - q(gap2, d);
        let c1 = fiber_count(&t, &s1, p, h).unwrap();
        let c2 = fiber_count(&t, &s2, p, h).unwrap();
        prop_assert_eq!(c1, fiber_count_oracle(&t, &s1, p, h).unwrap());
        prop_assert!(c1 <= c2);
        prop_assert!((0..=h).any(|i| c1 == p.pow(i)));
    }

    #[test]
    fn fiber_count_is_scalar_generic(p in prime(), h in 0u32..4, t in rational(), gap in 1i64..80, d in 1i64..7) {
        let s = t - q(gap, d);
        let narrow = fiber_count(&t, &s, p, h).unwrap();
        let wide = fiber_count(
            &WideRational::new((*t.numer()).into(), (*t.denom()).into()),
            &WideRational::new((*s.numer()).into(), (*s.denom()).into()),
            p,
            h,
        ).unwrap();
        let big = fiber_count(
            &BigRational::parse_ratio(&t.to_ratio_string()).unwrap(),
            &BigRational::parse_ratio(&s.to_ratio_string()).unwrap(),
            p,
            h,
        ).unwrap();
        prop_assert_eq!(narrow, wide);
        prop_assert_eq!(narrow, big);
    }

    #[test]
    fn pushforward_is_continuous_and_increasing(p in prime(), t in rational(), gap in 1i64..40, d in 1i64..7) {
        let pp = q(p as i64, 1);
        let edge = t - q(1, p as i64 - 1);
        // both branches agree at the switch
        let (tt, at_edge) = pushforward_step(&t, &edge, p).unwrap();
        prop_assert_eq!(tt, pp * t);
        prop_assert_eq!(at_edge, pp * edge);
        let lower = edge - q(gap, d);
        let (_, below) = pushforward_step(&t, &lower, p).unwrap();
        prop_assert!(below < at_edge);
        prop_assert_eq!(at_edge - below, q(gap, d));
    }

    #[test]
    fn kummer_gcd_laws(ell in 2u64..40, c in 0u64..40, n in 1i64..50, d in 1i64..6) {
        let c = c % ell;
        let k = kummer_cover(&Length::Finite(q(n, d)), ell, c).unwrap();
        prop_assert_eq!(k.components, c.gcd(&ell));
        prop_assert_eq!(k.components * k.component_degree, ell);
        prop_assert_eq!(k.component_length, Length::Finite(q(n, d) / q(k.component_degree as i64, 1)));
    }

    #[test]
    fn layout_counts_follow_breakpoints(p in prime(), h in 1u32..4, e_num in 1i64..20, extra in 1i64..20, seed in any::<u64>()) {
        let threshold = q(p as i64, p as i64 - 1);
        let epsilon = threshold * q(e_num, 21);
        let length = epsilon + q(h as i64 - 1, 1) + q(extra, 7);
        let layout = split_annulus_layout(&length, &epsilon, p, h).unwrap();
        let expected: Vec<u64> = (0..=h).map(|i| p.pow(i)).collect();
        prop_assert_eq!(&layout.counts, &expected);
        let mut rng = corpus::rng(seed);
        for seg in &layout.segments {
            let frac = q(rng.gen_range(1..100), 100);
            let delta = seg.start + (seg.end - seg.start) * frac;
            let s = epsilon - threshold - delta;
            prop_assert_eq!(fiber_count_oracle(&q(0, 1), &s, p, h).unwrap(), seg.count);
        }
    }

    #[test]
    fn harmonic_rank_formula(seed in any::<u64>(), ell in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]) {
        let g = random_small_semigraph(&mut corpus::rng(seed), 0);
        let closed = g.closed_edges().count();
        let open = g.open_edges().count();
        let expected = closed + 1 + open.saturating_sub(1) - g.vertex_count();
        prop_assert_eq!(harm_basis(&g, ell).unwrap().rank, Some(expected));
    }

    #[test]
    fn prescribed_cochains_validate(seed in any::<u64>(), a in 0u64..11, b in 0u64..11) {
        let g = random_small_semigraph(&mut corpus::rng(seed), 3);
        let opens: Vec<String> = g.open_edges().map(|e| g.edges()[e].id.clone()).collect();
        let c = prescribed_cochain(&g, 11, [&opens[0], &opens[1], &opens[2]], a, b).unwrap();
        prop_assert!(c.check(&g).is_ok());
        prop_assert_eq!(c.value_by_id(&g, &opens[0]), Some(a));
        prop_assert_eq!(c.value_by_id(&g, &opens[1]), Some(b));
        prop_assert_eq!(c.value_by_id(&g, &opens[2]), Some((22 - a - b) % 11));
        for other in &opens[3..] {
            prop_assert_eq!(c.value_by_id(&g, other), Some(0));
        }
    }

    #[test]
    fn class_covers_split_by_gcd(seed in any::<u64>(), ell in 2u64..9) {
        let mut rng = corpus::rng(seed);
        let (v, x, o) = (rng.gen_range(1..5), rng.gen_range(0..4), rng.gen_range(0..3));
        let g = random_semigraph(&mut rng, v, x, o);
        let tree = g.spanning_tree();
        let class: BTreeMap<String, u64> = g
            .closed_edges()
            .filter(|e| !tree.contains(e))
            .map(|e| (g.edges()[e].id.clone(), rng.gen_range(0..ell)))
            .collect();
        let cover = cover_from_class(&g, ell, &class).unwrap();
        let gcd = class.values().fold(ell, |acc, &c| acc.gcd(&c));
        prop_assert_eq!(cover.components as u64, gcd);
        prop_assert_eq!(cover.total.vertex_count() as u64, ell * g.vertex_count() as u64);
        prop_assert_eq!(cover.total.edge_count() as u64, ell * g.edge_count() as u64);
    }

    #[test]
    fn minimization_is_confluent(seed in any::<u64>(), order_seed in any::<u64>()) {
        let sk: Skeleton<Rational> = random_skeleton(&mut corpus::rng(seed));
        let all: BTreeSet<usize> = (0..sk.graph().vertex_count()).collect();
        let first = minimize_triangulation_by(&sk, &all, |_| 0).unwrap();
        let mut rng = corpus::rng(order_seed);
        let other = minimize_triangulation_by(&sk, &all, |c| rng.gen_range(0..c.len())).unwrap();
        let last = minimize_triangulation_by(&sk, &all, |c| c.len() - 1).unwrap();
        let nodes = node_set(&sk);
        if nodes.is_empty() {
            prop_assert_eq!(first.len(), other.len());
            prop_assert_eq!(first.len(), last.len());
        } else {
            prop_assert_eq!(&first, &nodes);
            prop_assert_eq!(&other, &nodes);
            prop_assert_eq!(&last, &nodes);
        }
    }

    #[test]
    fn subdivision_preserves_hyperbolicity(seed in any::<u64>(), pick in any::<usize>()) {
        let sk: Skeleton<Rational> = random_skeleton(&mut corpus::rng(seed));
        let closed: Vec<usize> = sk.graph().closed_edges().collect();
        prop_assume!(!closed.is_empty());
        let finer = subdivide(&sk, closed[pick % closed.len()]);
        let mid = finer.graph().vertex_count() - 1;
        prop_assert!(!is_node(&finer, mid));
        prop_assert_eq!(node_set(&sk).len(), node_set(&finer).len());
        prop_assert_eq!(
            classify_curve(&CurveSkeleton::Graph(sk)).hyperbolic,
            classify_curve(&CurveSkeleton::Graph(finer)).hyperbolic
        );
    }

    #[test]
    fn marking_only_helps(seed in any::<u64>(), pick in any::<usize>()) {
        let sk: Skeleton<Rational> = random_skeleton(&mut corpus::rng(seed));
        let v = pick % sk.graph().vertex_count();
        let id = sk.vertex_id(v).to_string();
        let before = classify_curve(&CurveSkeleton::Graph(sk.clone()));
        let marked = mark_points(&CurveSkeleton::Graph(sk.clone()), &[Marking::at_vertex("m", &id)]).unwrap();
        let w = marked.vertex(&id).unwrap();
        prop_assert_eq!(generalized_valence(&marked, w), generalized_valence(&sk, v) + 1);
        if is_node(&sk, v) && is_hyperbolic_node(&sk, v).unwrap() {
            prop_assert!(is_hyperbolic_node(&marked, w).unwrap());
        }
        if before.hyperbolic {
            prop_assert!(classify_curve(&CurveSkeleton::Graph(marked)).hyperbolic);
        }
    }

    #[test]
    fn type_three_nodes_are_never_hyperbolic(missing in 0u64..3, cusps in 0usize..3) {
        // a type-3 point with up to two branches in total
        prop_assume!(missing as usize + cusps <= 2 && missing as usize + cusps >= 1);
        let edges = (0..cusps).map(|k| Edge::open(&format!("c{k}"), &format!("c{k}.0"), "v")).collect();
        let g = SemiGraph::new(vec!["v".into()], edges).unwrap();
        let decor = skeletonkit::skeleton::VertexDecor { point_type: 3, missing_branches: missing, ..Default::default() };
        let ed = vec![EdgeDecor { length: Length::Infinite, cusp: None }; cusps];
        let sk = Skeleton::<Rational>::new(g, vec![decor], ed, skeletonkit::skeleton::CurveParams::new(3, true)).unwrap();
        if is_node(&sk, 0) {
            prop_assert!(!is_hyperbolic_node(&sk, 0).unwrap());
        }
    }

    #[test]
    fn screen_passes_on_hyperbolic_skeletons(seed in any::<u64>()) {
        let sk: Skeleton<Rational> = random_skeleton(&mut corpus::rng(seed));
        let g = sk.graph();
        let data: BTreeMap<String, SymbolicVertex> = (0..g.vertex_count())
            .map(|v| (sk.vertex_id(v).to_string(), SymbolicVertex { g: sk.vertex_decor(v).genus, n: generalized_valence(&sk, v) }))
            .collect();
        let report = screen_mochizuki(g, &data).unwrap();
        let all_hyperbolic = (0..g.vertex_count()).all(|v| is_node(&sk, v) && is_hyperbolic_node(&sk, v).unwrap());
        if all_hyperbolic {
            prop_assert!(report.pass);
        }
        prop_assert_eq!(report.pass, (0..g.vertex_count()).all(|v| 2 * sk.vertex_decor(v).genus + generalized_valence(&sk, v) > 2));
    }

    #[test]
    fn euler_characteristic_multiplies(seed in any::<u64>(), degree in 1usize..7) {
        let mut rng = corpus::rng(seed);
        let (v, x, o) = (rng.gen_range(1..5), rng.gen_range(1..4), rng.gen_range(0..2));
        let g = random_semigraph(&mut rng, v, x, o);
        let gog = GraphOfGroups::trivial(g.clone()).unwrap();
        let act = random_trivial_action(&mut rng, &gog, degree).unwrap();
        let cover = cover_from_action(&gog, &act).unwrap();
        let cg = cover.cover.graph();
        let chi = |v: usize, e: usize| v as i64 - e as i64;
        prop_assert_eq!(
            chi(cg.vertex_count(), cg.closed_edges().count()),
            degree as i64 * chi(g.vertex_count(), g.closed_edges().count())
        );
        prop_assert!(cg.is_connected());
        // closed edges stay closed, open edges stay open
        for (e, base) in cover.edge_projection.iter().enumerate() {
            let b = g.edge_index(base).unwrap();
            prop_assert_eq!(cg.is_open(e), g.is_open(b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bass_serre_balls_audit_and_reconstruct(index in 0usize..12, radius in 0usize..4) {
        let corpus = corpus::gog_corpus();
        let (_, gog) = &corpus[index % corpus.len()];
        let ball = bass_serre_ball(gog, radius);
        let audit = audit_ball(gog, &ball);
        prop_assert!(audit.ok(), "{:?}", audit);
        if let Ok(rec) = reconstruct_quotient(&ball) {
            prop_assert!(skeletonkit::groups::labeled_isomorphic(&rec.labeled(), &LabeledGraph::from_gog(&gog.truncate())));
        }
    }

    #[test]
    fn drinfeld_recovery_and_embedding(pf in prop_oneof![Just((2u64, 1u32)), Just((3, 1)), Just((2, 2)), Just((5, 1)), Just((7, 1)), Just((2, 3)), Just((3, 2))], radius in 1usize..3) {
        let params = LocalFieldParams::new(pf.0, pf.1, 1).unwrap();
        let sk: Skeleton<Rational> = bt_ball(&params, radius).unwrap();
        prop_assert_eq!(recover_invariants(&sk).unwrap(), (params.q(), pf.0, pf.1));
        prop_assert_eq!(sk.graph().edge_count() + 1, sk.graph().vertex_count());
        let space = DigitCenterSpace { f: pf.1 };
        let vertices: Vec<BTVertex> = bt_ball_vertices(params.q(), radius).into_iter().map(|(v, _, _)| v).collect();
        for a in vertices.iter().take(12) {
            for b in &vertices {
                let d = metric_d(&space, &embed_vertex::<Rational>(a, &params).unwrap(), &embed_vertex(b, &params).unwrap()).unwrap();
                prop_assert_eq!(d, q(pf.1 as i64 * a.distance(b) as i64, 1));
            }
        }
    }
}

/// Splits closed edge `e` at its midpoint with a new genus-0 vertex.
fn subdivide(sk: &Skeleton<Rational>, e: usize) -> Skeleton<Rational> {
    let g = sk.graph();
    let mut vertices = g.vertices().to_vec();
    let mut vdec = sk.vertex_decors().to_vec();
    let mid = "mid".to_string();
    vertices.push(mid.clone());
    vdec.push(Default::default());
    let mut edges = Vec::new();
    let mut edec = Vec::new();
    for (k, edge) in g.edges().iter().enumerate() {
        if k != e {
            edges.push(edge.clone());
            edec.push(sk.edge_decor(k).clone());
            continue;
        }
        let half = match &sk.edge_decor(k).length {
            Length::Finite(l) => Length::Finite(*l / q(2, 1)),
            Length::Infinite => unreachable!("closed edges are finite"),
        };
        let (a, b) = (&edge.branches[0], &edge.branches[1]);
        edges.push(Edge::closed("half.0", (&a.id, &a.vertex), ("half.0.m", &mid)));
        edges.push(Edge::closed("half.1", ("half.1.m", &mid), (&b.id, &b.vertex)));
        edec.push(EdgeDecor { length: half.clone(), cusp: None });
        edec.push(EdgeDecor { length: half, cusp: None });
    }
    Skeleton::new(SemiGraph::new(vertices, edges).unwrap(), vdec, edec, sk.params).unwrap()
}
