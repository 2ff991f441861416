//! Random graph families for tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::clifford::LocalClifford;
use crate::error::{Error, Result};
use crate::graph::GraphState;

/// Erdős–Rényi G(n, p).
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> GraphState {
    let mut g = GraphState::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.toggle_edge(u, v).expect("fresh vertices");
            }
        }
    }
    g
}

/// Random `d`-regular graph: a circulant start randomised by degree-preserving
/// double-edge swaps.
pub fn random_regular<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<GraphState> {
    if d >= n || n * d % 2 == 1 {
        return Err(Error::Spec(format!("no {d}-regular graph on {n} vertices")));
    }
    let mut g = GraphState::new(n);
    for u in 0..n {
        for k in 1..=d / 2 {
            g.toggle_edge(u, (u + k) % n)?;
        }
        if d % 2 == 1 && u < n / 2 {
            g.toggle_edge(u, u + n / 2)?;
        }
    }
    let mut edges = g.edges();
    let swaps = 10 * edges.len();
    for _ in 0..swaps {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        let ((a, b), (mut c, mut e)) = (edges[i], edges[j]);
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut e);
        }
        // a-b, c-e  ->  a-c, b-e
        if a == c || a == e || b == c || b == e || g.has_edge(a, c) || g.has_edge(b, e) {
            continue;
        }
        g.toggle_edge(a, b)?;
        g.toggle_edge(c, e)?;
        g.toggle_edge(a, c)?;
        g.toggle_edge(b, e)?;
        edges[i] = (a.min(c), a.max(c));
        edges[j] = (b.min(e), b.max(e));
    }
    Ok(g)
}

/// Uniformly random tag on each listed vertex.
pub fn randomize_tags<R: Rng + ?Sized>(g: &mut GraphState, vertices: &[usize], rng: &mut R) {
    for &v in vertices {
        let c = *LocalClifford::all().choose(rng).expect("nonempty");
        g.set_clifford(v, c).expect("alive vertex");
    }
}
