use graphfuse::emitter::push_gen;
use graphfuse::generate::randomize_tags;
use graphfuse::measure::{measure_x, measure_y, measure_z};
use graphfuse::rules::fuse_success;
use graphfuse::{
    lc_equivalent, measure_pauli, oracle_fuse, Branch, FusionType, GraphState, LocalClifford, Pauli, StabilizerTableau,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize) -> impl Strategy<Value = GraphState> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = GraphState::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.toggle_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn tagged(max_n: usize) -> impl Strategy<Value = GraphState> {
    (graph(max_n), any::<u64>(), any::<bool>()).prop_map(|(mut g, seed, tag)| {
        if tag {
            let all: Vec<usize> = (0..g.n()).collect();
            randomize_tags(&mut g, &all, &mut ChaCha8Rng::seed_from_u64(seed));
        }
        g
    })
}

fn fusion_type() -> impl Strategy<Value = FusionType> {
    prop::sample::select(FusionType::ALL.to_vec())
}

fn state(g: &GraphState) -> StabilizerTableau {
    StabilizerTableau::from_graph(g)
}

fn same(g: &GraphState, h: &GraphState) -> bool {
    state(g).groups_equal_mod_signs(&state(h)).unwrap()
}

fn relabel(g: &GraphState, perm: &[usize]) -> GraphState {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    GraphState::from_edges(g.n(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fusion_matches_oracle(g in tagged(9), ty in fusion_type(), fail in any::<bool>(), seed in any::<u64>()) {
        let branch = if fail { Branch::Failure } else { Branch::Success };
        let r = graphfuse::fuse(&g, 0, 1, ty, branch).unwrap().graph;
        let mut t = state(&g);
        oracle_fuse(&mut t, 0, 1, ty, branch, [None, None], &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(state(&r).groups_equal_mod_signs(&t).unwrap());
    }

    #[test]
    fn symmetric_types_ignore_label_order(g in tagged(9), ty in prop::sample::select(vec![FusionType::Xxzz, FusionType::Xyyx, FusionType::Xzzx, FusionType::Yzzy])) {
        let ab = fuse_success(&g, 0, 1, ty).unwrap().graph;
        let ba = fuse_success(&g, 1, 0, ty).unwrap().graph;
        prop_assert!(same(&ab, &ba));
    }

    #[test]
    fn detached_xzzx_leaves_outsiders_alone(mut g in graph(10)) {
        if g.has_edge(0, 1) {
            g.toggle_edge(0, 1).unwrap();
        }
        let r = fuse_success(&g, 0, 1, FusionType::Xzzx).unwrap();
        prop_assert!(r.subcase == "xzzx.detached" || r.subcase == "isolated_pair");
        for d in 2..g.n() {
            if !g.has_edge(d, 0) && !g.has_edge(d, 1) {
                prop_assert_eq!(r.graph.neighbors(d), g.neighbors(d));
            }
        }
    }

    #[test]
    fn xzzx_on_a_leaf_is_an_x_measurement(mut g in graph(10)) {
        for v in 2..g.n() {
            if g.has_edge(1, v) {
                g.toggle_edge(1, v).unwrap();
            }
        }
        if !g.has_edge(0, 1) {
            g.toggle_edge(0, 1).unwrap();
        }
        let fused = fuse_success(&g, 0, 1, FusionType::Xzzx).unwrap().graph;
        let mut h = g.clone();
        measure_z(&mut h, 1).unwrap();
        measure_x(&mut h, 0).unwrap();
        prop_assert!(same(&fused, &h));
    }

    #[test]
    fn y_measurement_is_lc_then_z(mut g in tagged(10), v in 0usize..3) {
        g.set_clifford(v, LocalClifford::IDENTITY).unwrap();
        let mut y = g.clone();
        measure_y(&mut y, v).unwrap();
        let mut lz = g.clone();
        lz.local_complement_state(v).unwrap();
        let report = measure_pauli(&mut lz, v, Pauli::Y).unwrap();
        prop_assert_eq!(report.basis, Pauli::Z);
        prop_assert_eq!(y.edges(), lz.edges());
        prop_assert!(same(&y, &lz));
    }

    #[test]
    fn lc_as_a_state_operation_preserves_the_state(g in tagged(10), v in 0usize..3) {
        let mut h = g.clone();
        h.local_complement_state(v).unwrap();
        prop_assert!(same(&g, &h));
    }

    #[test]
    fn push_gen_hands_the_neighbourhood_to_the_photon(g in graph(9), e in 0usize..3) {
        let mut h = g.clone();
        let p = push_gen(&mut h, e).unwrap();
        let mut want: Vec<usize> = g.neighbors(e).to_vec();
        want.push(e);
        want.sort_unstable();
        prop_assert_eq!(h.neighbors(p), want.as_slice());
        prop_assert_eq!(h.neighbors(e), &[p]);
        for (u, v) in g.edges().into_iter().filter(|&(u, v)| u != e && v != e) {
            prop_assert!(h.has_edge(u, v));
        }
    }

    #[test]
    fn lc_equivalence_is_an_equivalence(g in graph(6), h in graph(6), k in graph(6), v in 0usize..3, seed in any::<u64>()) {
        prop_assert!(lc_equivalent(&g, &g).unwrap());
        prop_assert_eq!(lc_equivalent(&g, &h).unwrap(), lc_equivalent(&h, &g).unwrap());
        if lc_equivalent(&g, &h).unwrap() && lc_equivalent(&h, &k).unwrap() {
            prop_assert!(lc_equivalent(&g, &k).unwrap());
        }
        let mut moved = g.clone();
        moved.local_complement(v).unwrap();
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(lc_equivalent(&g, &relabel(&moved, &perm)).unwrap());
    }
}
