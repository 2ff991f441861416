use graphfuse::fusion::{classify_parity_pair, Parity};
use graphfuse::generate::{gnp, randomize_tags};
use graphfuse::oracle::oracle_measure;
use graphfuse::{
    fuse, lc_equivalent, measure_pauli, oracle_fuse, rotated_fusion_of, Branch, FusionType, GraphState, LocalClifford,
    Pauli, SignedPauli, StabilizerTableau,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use Pauli::{X, Y, Z};

fn gate(x: Pauli, z: Pauli) -> LocalClifford {
    LocalClifford::from_images(SignedPauli::plus(x), SignedPauli::plus(z)).unwrap()
}

fn unsigned_eq(a: LocalClifford, b: LocalClifford) -> bool {
    a.image_x().pauli == b.image_x().pauli && a.image_z().pauli == b.image_z().pauli
}

struct Column {
    a: LocalClifford,
    b: LocalClifford,
    success: [Parity; 2],
    failure: Parity,
    ty: Option<FusionType>,
}

/// Pre-fusion gates with the parities they turn the standard fusion into.
fn table() -> Vec<Column> {
    let one = gate(X, Z);
    let h = gate(Z, X);
    let r = gate(Y, Z);
    let q = gate(X, Y);
    let k = gate(Z, Y);
    let k_dag = gate(Y, X);
    vec![
        Column { a: one, b: one, success: [(X, X), (Z, Z)], failure: (Z, Z), ty: Some(FusionType::Xxzz) },
        Column { a: one, b: h, success: [(X, Z), (Z, X)], failure: (Z, X), ty: Some(FusionType::Xzzx) },
        Column { a: q, b: k, success: [(X, Y), (Y, X)], failure: (Y, X), ty: Some(FusionType::Xyyx) },
        Column { a: r, b: k_dag, success: [(Y, Z), (Z, Y)], failure: (Z, Y), ty: Some(FusionType::Yzzy) },
        Column { a: q, b: r, success: [(X, Y), (Y, Z)], failure: (Y, Z), ty: Some(FusionType::Xyyz) },
        Column { a: q, b: q, success: [(X, X), (Y, Y)], failure: (Y, Y), ty: None },
        Column { a: h, b: h, success: [(Z, Z), (X, X)], failure: (X, X), ty: None },
    ]
}

#[test]
fn gate_constants_permute_paulis_as_tabulated() {
    assert!(unsigned_eq(LocalClifford::H, gate(Z, X)));
    assert!(unsigned_eq(LocalClifford::R, gate(Y, Z)));
    assert!(unsigned_eq(LocalClifford::Q, gate(X, Y)));
    assert!(unsigned_eq(LocalClifford::K, gate(Z, Y)));
    assert!(unsigned_eq(LocalClifford::K_DAG, gate(Y, X)));
    assert!(unsigned_eq(LocalClifford::K, LocalClifford::R.mul(LocalClifford::H)));
}

#[test]
fn pre_gates_give_the_tabulated_parities() {
    for col in table() {
        let pull = |p: Parity| (col.a.pullback(p.0), col.b.pullback(p.1));
        assert_eq!([pull((X, X)), pull((Z, Z))], col.success);
        assert_eq!(pull((Z, Z)), col.failure);
        let class = classify_parity_pair(col.success[0], col.success[1]).unwrap();
        assert_eq!(rotated_fusion_of(col.a, col.b, FusionType::Xxzz), class);
        if let Some(ty) = col.ty {
            assert_eq!(class.0, ty);
            let rot = ty.pre_rotation();
            assert!(unsigned_eq(rot.a, col.a) && unsigned_eq(rot.b, col.b));
            assert_eq!(rot.failure_bases(), col.failure);
        } else {
            assert_eq!(class.0, FusionType::Xxzz);
        }
    }
}

fn random_instance(rng: &mut ChaCha8Rng) -> GraphState {
    let n = rng.gen_range(3..=9);
    let mut g = gnp(n, [0.2, 0.5, 0.8][rng.gen_range(0..3)], rng);
    if rng.gen_bool(0.5) {
        let all: Vec<usize> = (0..n).collect();
        randomize_tags(&mut g, &all, rng);
    }
    g
}

fn same(g: &GraphState, t: &StabilizerTableau) -> bool {
    StabilizerTableau::from_graph(g).groups_equal_mod_signs(t).unwrap()
}

#[test]
fn rules_agree_with_explicit_pre_gates() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let g = random_instance(&mut rng);
        for col in table() {
            let mut t = StabilizerTableau::from_graph(&g);
            t.apply_clifford(0, col.a);
            t.apply_clifford(1, col.b);
            let mut ts = t.clone();
            oracle_fuse(&mut ts, 0, 1, FusionType::Xxzz, Branch::Success, [None, None], &mut rng).unwrap();
            let mut tf = t;
            oracle_measure(&mut tf, 0, Z, None, &mut rng).unwrap();
            oracle_measure(&mut tf, 1, Z, None, &mut rng).unwrap();

            let ty = col.ty.unwrap_or(FusionType::Xxzz);
            assert!(same(&fuse(&g, 0, 1, ty, Branch::Success).unwrap().graph, &ts));
            let failed = match col.ty {
                Some(ty) => fuse(&g, 0, 1, ty, Branch::Failure).unwrap().graph,
                None => {
                    let mut h = g.clone();
                    measure_pauli(&mut h, 0, col.failure.0).unwrap();
                    measure_pauli(&mut h, 1, col.failure.1).unwrap();
                    h
                }
            };
            assert!(same(&failed, &tf), "failure mode {:?} on {}", col.failure, g.to_json_string());
        }
    }
}

/// Adjacency rows as bitmasks.
fn rows(g: &GraphState) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect()
}

/// The six binary symplectic 2x2 matrices (a b; c d) with ad + bc = 1.
const LOCAL: [[u32; 4]; 6] = [[1, 0, 0, 1], [0, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 0]];

/// Whether local Cliffords map |G> onto |G'> (same labels): some choice of
/// per-qubit symplectic blocks makes A G' + G B G' + C + G D vanish over GF(2).
fn lc_maps_onto(g: &[u32], h: &[u32]) -> bool {
    let n = g.len();
    let mut choice = vec![0usize; n];
    loop {
        let ok = (0..n).all(|i| {
            let mut row = 0;
            let [a, _, c, _] = LOCAL[choice[i]];
            if a == 1 {
                row ^= h[i];
            }
            for k in 0..n {
                if g[i] >> k & 1 == 1 && LOCAL[choice[k]][1] == 1 {
                    row ^= h[k];
                }
                if g[i] >> k & 1 == 1 && LOCAL[choice[k]][3] == 1 {
                    row ^= 1 << k;
                }
            }
            if c == 1 {
                row ^= 1 << i;
            }
            row == 0
        });
        if ok {
            return true;
        }
        let mut i = 0;
        while i < n && choice[i] == 5 {
            choice[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
        choice[i] += 1;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn brute_force_equivalent(g: &GraphState, h: &GraphState) -> bool {
    let gr = rows(g);
    permutations(h.n()).into_iter().any(|perm| {
        let edges: Vec<(usize, usize)> = h.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        lc_maps_onto(&gr, &rows(&GraphState::from_edges(h.n(), &edges).unwrap()))
    })
}

#[test]
fn symplectic_oracle_sanity() {
    let p3 = rows(&GraphState::path(3));
    assert!(lc_maps_onto(&p3, &p3));
    assert!(lc_maps_onto(&p3, &rows(&GraphState::cycle(3))));
    assert!(!lc_maps_onto(&rows(&GraphState::new(2)), &rows(&GraphState::path(2))));
}

#[test]
fn small_orbit_claims() {
    let k5 =
        GraphState::from_edges(5, &(0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect::<Vec<_>>()).unwrap();
    let cases = [
        (GraphState::path(3), GraphState::cycle(3), true),
        (GraphState::path(4), GraphState::cycle(4), true),
        (GraphState::path(4), GraphState::star(4), false),
        (GraphState::star(5), k5, true),
        (GraphState::cycle(5), GraphState::path(5), false),
    ];
    for (g, h, want) in cases {
        assert_eq!(brute_force_equivalent(&g, &h), want, "{} vs {}", g.to_json_string(), h.to_json_string());
        assert_eq!(lc_equivalent(&g, &h).unwrap(), want);
    }
}

#[test]
fn orbit_search_matches_symplectic_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..150 {
        let n = rng.gen_range(3..=5);
        let g = gnp(n, 0.5, &mut rng);
        let h = if rng.gen_bool(0.5) {
            gnp(n, 0.5, &mut rng)
        } else {
            let mut h = g.clone();
            for _ in 0..rng.gen_range(1..4) {
                h.local_complement(rng.gen_range(0..n)).unwrap();
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let edges: Vec<(usize, usize)> = h.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
            GraphState::from_edges(n, &edges).unwrap()
        };
        assert_eq!(
            lc_equivalent(&g, &h).unwrap(),
            brute_force_equivalent(&g, &h),
            "{} vs {}",
            g.to_json_string(),
            h.to_json_string()
        );
    }
}
