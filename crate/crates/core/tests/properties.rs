use proptest::prelude::*;

use bookem::bounds::{
    arboricity_partition, is_forest, mad, max_density_brute, max_density_flow, nash_williams_arboricity,
    DensityObjective, Rational,
};
use bookem::construct::{star_forests_from_forests, union_embedding_from_star_forests};
use bookem::embedding::{crosses, parse_embedding, serialize_embedding, SpineOrder};
use bookem::graph::{parse_graph, random_graph, serialize_graph};
use bookem::solver::{oracle_all, solve, solve_fixed_spine, Budget, Parameter, SolveRequest};
use bookem::{verify, Edge, Graph};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |keep| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, all.zip(keep).filter(|&(_, k)| k).map(|(p, _)| p)).unwrap()
        })
    })
}

fn spine_strategy(n: usize) -> impl Strategy<Value = SpineOrder> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|o| SpineOrder::new(o).unwrap())
}

fn exact(g: &Graph, p: Parameter) -> usize {
    solve(&SolveRequest::new(g.clone(), p)).unwrap().value().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crossing_is_symmetric_and_spine_invariant(
        (spine, a, b, c, d) in (4usize..9).prop_flat_map(|n| (spine_strategy(n), 0..n, 0..n, 0..n, 0..n)),
        k in 0usize..9,
    ) {
        prop_assume!(a != b && c != d);
        let (e, f) = (Edge::new(a, b), Edge::new(c, d));
        let x = crosses(e, f, &spine);
        prop_assert_eq!(x, crosses(f, e, &spine));
        prop_assert_eq!(x, crosses(e, f, &spine.rotated(k % spine.len())));
        prop_assert_eq!(x, crosses(e, f, &spine.reversed()));
        if e.has_endpoint(c) || e.has_endpoint(d) {
            prop_assert!(!x);
        }
    }

    #[test]
    fn graph_and_embedding_files_round_trip((g, spine, labels) in graph_strategy(9).prop_flat_map(|g| {
        let (n, m) = (g.n(), g.m());
        (Just(g), spine_strategy(n), proptest::collection::vec(0usize..4, m))
    })) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_graph(&back), text);
        let emb = bookem::LinearEmbedding::new(g.clone(), spine, bookem::PagePartition::normalized(&labels)).unwrap();
        let again = parse_embedding(&serialize_embedding(&emb), &g).unwrap();
        prop_assert_eq!(again, emb);
    }

    #[test]
    fn fixed_spine_values_bound_the_oracle((g, spine) in graph_strategy(5).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), spine_strategy(n))
    })) {
        let o = oracle_all(&g).unwrap();
        for p in Parameter::ALL {
            let r = solve_fixed_spine(&g, &spine, p, Budget::default()).unwrap();
            let v = r.value().unwrap();
            prop_assert!(v >= o.get(p));
            let cert = r.certificate.unwrap();
            prop_assert_eq!(p.value_of(&cert), Some(v));
        }
    }

    #[test]
    fn chain_and_edge_monotonicity(g in graph_strategy(6), pick in any::<prop::sample::Index>()) {
        let vals: Vec<usize> = Parameter::ALL.iter().map(|&p| exact(&g, p)).collect();
        let (pn, pnl, pnu) = (vals[0], vals[1], vals[2]);
        prop_assert!(pnl <= pnu && pnu <= pn);
        prop_assert!(Rational::from_integer(pnl as i64) >= mad(&g).unwrap().value / 4);
        if g.m() > 0 {
            let drop = pick.index(g.m());
            let h = g.edge_subgraph((0..g.m()).filter(|&i| i != drop));
            for (&p, &v) in Parameter::ALL.iter().zip(&vals) {
                prop_assert!(exact(&h, p) <= v);
            }
        }
    }

    #[test]
    fn star_pipeline_respects_arboricity(g in graph_strategy(14)) {
        let fp = arboricity_partition(&g);
        let sfp = star_forests_from_forests(&fp, &g);
        prop_assert!(sfp.validate(&g));
        prop_assert!(sfp.star_forests.len() <= 2 * fp.arboricity());
        let r = verify(&union_embedding_from_star_forests(&sfp, &g).unwrap());
        prop_assert!(r.is_union);
    }
}

/// 500 seeded graphs: the flow route agrees with subset enumeration on every
/// objective, and its witness attains the value.
#[test]
fn density_flow_matches_brute_force() {
    let objectives = [
        DensityObjective::HALF_AVERAGE_DEGREE,
        DensityObjective::OUTERPLANAR,
        DensityObjective::FOREST,
        DensityObjective { edge_weight: 3, vertex_offset: 5 },
    ];
    for seed in 0..500u64 {
        let n = 2 + (seed as usize % 13);
        let g = random_graph(n, 1 + seed % 7, 8, seed);
        for obj in objectives {
            let brute = max_density_brute(&g, obj);
            let flow = max_density_flow(&g, obj);
            match (brute, flow) {
                (Ok(b), Ok(f)) => {
                    assert_eq!(b.value, f.value, "seed {seed} {obj:?}");
                    let h = &f.witness;
                    let denom = obj.edge_weight * h.len() as i64 - obj.vertex_offset;
                    if g.m() > 0 {
                        assert_eq!(Rational::new(g.induced_edge_count(h) as i64, denom), f.value, "seed {seed}");
                    }
                }
                (Err(b), Err(f)) => assert_eq!(b, f),
                (b, f) => panic!("seed {seed} {obj:?}: brute {b:?}, flow {f:?}"),
            }
        }
    }
}

#[test]
fn forest_partitions_are_optimal() {
    for seed in 0..200u64 {
        let n = 2 + (seed as usize % 19);
        let g = random_graph(n, 1 + seed % 5, 6, seed);
        let fp = arboricity_partition(&g);
        let mut count = vec![0; g.m()];
        for f in &fp.forests {
            assert!(is_forest(n, f));
            for e in f {
                count[g.edge_id(e.u, e.v).unwrap()] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 1), "seed {seed}");
        assert_eq!(fp.arboricity(), nash_williams_arboricity(&g).unwrap(), "seed {seed}");
    }
}
