use graphfuse::emitter::{build_resource, parse_script, EmitterOp};
use graphfuse::oracle::oracle_measure;
use graphfuse::{GraphState, LocalClifford, Pauli, PauliString, StabilizerTableau};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Physical circuit: each emission is a fresh |+> photon entangled with the
/// emitter by CZ taken in the emitter's current frame. Local complementation re-expresses the state and applies no gate.
struct Circuit {
    rows: Vec<(u64, u64)>,
    adj: Vec<u64>,
}

impl Circuit {
    fn new() -> Self {
        Circuit { rows: vec![(1, 0)], adj: vec![0] }
    }

    fn cz(&mut self, a: usize, b: usize) {
        for (x, z) in &mut self.rows {
            *z ^= (*x >> a & 1) << b;
            *z ^= (*x >> b & 1) << a;
        }
        self.adj[a] ^= 1 << b;
        self.adj[b] ^= 1 << a;
    }

    fn gen(&mut self, tag: LocalClifford) {
        let p = self.adj.len();
        self.rows.push((1 << p, 0));
        self.adj.push(0);
        self.local(0, |q| tag.pullback(q));
        self.cz(0, p);
        self.local(0, |q| tag.apply(q).pauli);
    }

    fn local(&mut self, q: usize, f: impl Fn(Pauli) -> Pauli) {
        for (x, z) in &mut self.rows {
            let (nx, nz) = f(Pauli::from_bits(*x >> q & 1 == 1, *z >> q & 1 == 1)).bits();
            *x = *x & !(1 << q) | (nx as u64) << q;
            *z = *z & !(1 << q) | (nz as u64) << q;
        }
    }

    fn tableau(&self) -> StabilizerTableau {
        let n = self.adj.len();
        let rows = self
            .rows
            .iter()
            .map(|&(x, z)| {
                let ops: Vec<(usize, Pauli)> = (0..n)
                    .map(|q| (q, Pauli::from_bits(x >> q & 1 == 1, z >> q & 1 == 1)))
                    .filter(|&(_, p)| p != Pauli::I)
                    .collect();
                PauliString::from_sparse(n, &ops)
            })
            .collect();
        StabilizerTableau::new(rows).unwrap()
    }
}

fn replay(script: &[EmitterOp]) {
    let mut c = Circuit::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut measured: Vec<(usize, Pauli)> = Vec::new();
    for (i, op) in script.iter().enumerate() {
        match *op {
            EmitterOp::Gen | EmitterOp::PGen => c.gen(build_resource(&script[..i]).unwrap().clifford(0)),
            EmitterOp::Lc { .. } => {}
            EmitterOp::MeasureZ { v } => {
                let before = build_resource(&script[..i]).unwrap();
                measured.push((v, before.clifford(v).apply(Pauli::Z).pauli));
                continue;
            }
        }
        let g = build_resource(&script[..=i]).unwrap();
        assert!(StabilizerTableau::from_graph(&g).groups_equal_mod_signs(&c.tableau()).unwrap(), "step {i}");
    }
    let mut t = c.tableau();
    for (v, basis) in measured {
        oracle_measure(&mut t, v, basis, None, &mut rng).unwrap();
    }
    let g = build_resource(script).unwrap();
    assert!(StabilizerTableau::from_graph(&g).groups_equal_mod_signs(&t).unwrap());
}

#[test]
fn shipped_cube_script_matches_a_clifford_circuit() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/cube_resource.json");
    let script = parse_script(&std::fs::read_to_string(path).unwrap()).unwrap();
    replay(&script);
    let g = build_resource(&script).unwrap();
    assert_eq!(g.alive_count(), 14);
    assert!(!g.is_alive(0));
}

#[test]
fn chain_scripts_match_a_clifford_circuit() {
    for len in 1..8 {
        let mut script = vec![EmitterOp::Gen];
        script.extend(std::iter::repeat_n(EmitterOp::PGen, len));
        script.push(EmitterOp::MeasureZ { v: 0 });
        replay(&script);
        let g = build_resource(&script).unwrap();
        assert_eq!(g.bare(), chain(len + 1));
    }
}

fn chain(k: usize) -> GraphState {
    let edges: Vec<(usize, usize)> = (1..k).map(|i| (i, i + 1)).collect();
    let mut g = GraphState::from_edges(k + 1, &edges).unwrap();
    g.delete_vertex(0).unwrap();
    g
}
