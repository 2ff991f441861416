//! Graph states: a simple undirected graph plus a local Clifford tag per vertex.
//!
//! The represented state is `(⊗_v C_v) |G⟩`. Removed vertices keep their id
//! (tombstoned) so that schedules can refer to absolute qubit ids.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::clifford::{LocalClifford, Pauli, SignedPauli};
use crate::error::{Error, Result};
use crate::set;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphState {
    adj: Vec<Vec<usize>>,
    clifford: Vec<LocalClifford>,
    alive: Vec<bool>,
}

impl GraphState {
    /// `n` isolated vertices with identity tags.
    pub fn new(n: usize) -> Self {
        GraphState { adj: vec![Vec::new(); n], clifford: vec![LocalClifford::IDENTITY; n], alive: vec![true; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !set::insert(&mut g.adj[u], v) {
                return Err(Error::Parse(format!("duplicate edge {u}-{v}")));
            }
            set::insert(&mut g.adj[v], u);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Self::from_edges(n, &edges).unwrap()
    }

    /// Star with centre 0.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    /// Hypercube on `2^dim` vertices.
    pub fn hypercube(dim: usize) -> Self {
        let n = 1 << dim;
        let edges: Vec<_> =
            (0..n).flat_map(|u| (0..dim).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    /// Total number of ids, removed ones included.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| self.alive[v])
    }

    pub fn is_alive(&self, v: usize) -> bool {
        v < self.n() && self.alive[v]
    }

    pub fn check(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::OutOfRange(v))
        } else if !self.alive[v] {
            Err(Error::DeadVertex(v))
        } else {
            Ok(())
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check(v)?;
        Ok(self.adj[v].clone())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        set::contains(&self.adj[u], v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn clifford(&self, v: usize) -> LocalClifford {
        self.clifford[v]
    }

    pub fn set_clifford(&mut self, v: usize, c: LocalClifford) -> Result<()> {
        self.check(v)?;
        self.clifford[v] = c;
        Ok(())
    }

    /// `clifford(v) <- c ∘ clifford(v)`: `c` acts after the existing tag.
    pub fn compose_clifford(&mut self, v: usize, c: LocalClifford) -> Result<()> {
        self.check(v)?;
        self.clifford[v] = c.mul(self.clifford[v]);
        Ok(())
    }

    /// Records that the underlying graph state was rotated by `c` on `v`:
    /// the tag absorbs `c` before its existing gates.
    pub(crate) fn absorb_byproduct(&mut self, v: usize, c: LocalClifford) {
        self.clifford[v] = self.clifford[v].mul(c);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !set::remove(&mut self.adj[u], v) {
            set::insert(&mut self.adj[u], v);
            set::insert(&mut self.adj[v], u);
        } else {
            set::remove(&mut self.adj[v], u);
        }
        Ok(())
    }

    pub fn delete_vertex(&mut self, v: usize) -> Result<()> {
        self.check(v)?;
        for u in std::mem::take(&mut self.adj[v]) {
            set::remove(&mut self.adj[u], v);
        }
        self.alive[v] = false;
        self.clifford[v] = LocalClifford::IDENTITY;
        Ok(())
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.clifford.push(LocalClifford::IDENTITY);
        self.alive.push(true);
        self.adj.len() - 1
    }

    /// Complements the induced subgraph on N(v); tags untouched.
    pub fn local_complement(&mut self, v: usize) -> Result<()> {
        self.check(v)?;
        let nv = self.adj[v].clone();
        for &u in &nv {
            let others = set::without(&nv, u);
            self.adj[u] = set::sym_diff(&self.adj[u], &others);
        }
        Ok(())
    }

    /// Local complementation as an operation on the state: the edge edit is
    /// compensated by `exp(iπ/4 X_v)` and `exp(-iπ/4 Z_w)` on the neighbours,
    /// absorbed into the tags so the represented state is unchanged.
    pub fn local_complement_state(&mut self, v: usize) -> Result<()> {
        self.local_complement(v)?;
        self.absorb_byproduct(v, lc_centre_gate());
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            self.absorb_byproduct(w, lc_neighbor_gate());
        }
        Ok(())
    }

    /// Connected components of the alive vertices, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.alive_vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &w in &self.adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn check_invariants(&self) -> Result<()> {
        for v in 0..self.n() {
            if !self.alive[v] && !self.adj[v].is_empty() {
                return Err(Error::DeadVertex(v));
            }
            if self.adj[v].windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!("adjacency of {v} not sorted")));
            }
            for &u in &self.adj[v] {
                if u == v {
                    return Err(Error::SelfLoop(v));
                }
                if u >= self.n() || !self.alive[u] || !set::contains(&self.adj[u], v) {
                    return Err(Error::Parse(format!("asymmetric edge {v}-{u}")));
                }
            }
        }
        Ok(())
    }

    /// Copy with every tag reset to the identity.
    pub fn bare(&self) -> GraphState {
        let mut g = self.clone();
        g.clifford.iter_mut().for_each(|c| *c = LocalClifford::IDENTITY);
        g
    }

    /// Replaces the adjacency of a set of vertices in one pass. `new_adj`
    /// must describe a symmetric change: every edge added or removed between
    /// two listed vertices appears on both sides.
    pub(crate) fn rewrite_neighborhoods(&mut self, new_adj: Vec<(usize, Vec<usize>)>) {
        let mut listed: Vec<usize> = new_adj.iter().map(|(v, _)| *v).collect();
        listed.sort_unstable();
        let mut toggles: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, nn) in &new_adj {
            for w in set::sym_diff(&self.adj[*v], nn) {
                if !set::contains(&listed, w) {
                    toggles.entry(w).or_default().push(*v);
                } else {
                    debug_assert!(
                        new_adj.iter().any(|(x, s)| *x == w && set::contains(s, *v) != set::contains(&self.adj[w], *v)),
                        "asymmetric rewrite between {v} and {w}"
                    );
                }
            }
        }
        for (v, nn) in new_adj {
            self.adj[v] = nn;
        }
        for (w, mut t) in toggles {
            t.sort_unstable();
            self.adj[w] = set::sym_diff(&self.adj[w], &t);
        }
    }

    pub fn to_json(&self) -> GraphJson {
        let cliffords = self
            .alive_vertices()
            .filter(|&v| !self.clifford[v].is_identity())
            .map(|v| (v, self.clifford[v].word().to_string()))
            .collect();
        let removed = (0..self.n()).filter(|&v| !self.alive[v]).collect();
        GraphJson { n: self.n(), edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(), cliffords, removed }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = Self::from_edges(j.n, &edges)?;
        for (&v, w) in &j.cliffords {
            g.set_clifford(v, LocalClifford::from_word(w)?)?;
        }
        for &v in &j.removed {
            if !g.adj.get(v).is_some_and(|a| a.is_empty()) {
                return Err(Error::Parse(format!("removed vertex {v} has edges or is out of range")));
            }
            g.alive[v] = false;
            g.clifford[v] = LocalClifford::IDENTITY;
        }
        Ok(g)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph json")
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in self.alive_vertices() {
            let c = self.clifford[v];
            if c.is_identity() {
                let _ = writeln!(s, "  {v};");
            } else {
                let _ = writeln!(s, "  {v} [label=\"{v}:{}\"];", c.word());
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }
}

/// Gate absorbed on the LC centre: the inverse of `exp(-iπ/4 X)`.
fn lc_centre_gate() -> LocalClifford {
    LocalClifford::from_images(SignedPauli::plus(Pauli::X), SignedPauli::plus(Pauli::Y)).unwrap()
}

/// Gate absorbed on each neighbour of the LC centre: the inverse of `exp(iπ/4 Z)`.
fn lc_neighbor_gate() -> LocalClifford {
    LocalClifford::R
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub cliffords: BTreeMap<usize, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph(max_n: usize) -> impl Strategy<Value = GraphState> {
        (2..max_n).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                GraphState::from_edges(n, &edges).unwrap()
            })
        })
    }

    #[test]
    fn lc_examples() {
        let mut g = GraphState::path(3);
        g.local_complement(1).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        g.local_complement(0).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn toggle_and_delete() {
        let mut g = GraphState::new(2);
        g.toggle_edge(0, 1).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        g.toggle_edge(0, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.toggle_edge(1, 1), Err(Error::SelfLoop(1)));
        let mut p = GraphState::path(3);
        p.delete_vertex(1).unwrap();
        assert_eq!(p.edge_count(), 0);
        assert_eq!(p.delete_vertex(1), Err(Error::DeadVertex(1)));
        assert_eq!(p.local_complement(1), Err(Error::DeadVertex(1)));
        assert_eq!(p.local_complement(7), Err(Error::OutOfRange(7)));
    }

    #[test]
    fn compose_examples() {
        let mut g = GraphState::new(1);
        g.compose_clifford(0, LocalClifford::H).unwrap();
        g.compose_clifford(0, LocalClifford::H).unwrap();
        assert!(g.clifford(0).is_identity());
        for _ in 0..4 {
            g.compose_clifford(0, LocalClifford::R).unwrap();
        }
        assert!(g.clifford(0).is_identity());
        g.compose_clifford(0, LocalClifford::H).unwrap();
        g.compose_clifford(0, LocalClifford::R).unwrap();
        assert_eq!(g.clifford(0).word(), "RH");
    }

    #[test]
    fn json_round_trip() {
        let mut g = GraphState::path(4);
        g.compose_clifford(2, LocalClifford::K).unwrap();
        g.delete_vertex(0).unwrap();
        let s = g.to_json_string();
        assert_eq!(GraphState::parse_json(&s).unwrap(), g);
        assert_eq!(s, r#"{"n":4,"edges":[[1,2],[2,3]],"cliffords":{"2":"RH"},"removed":[0]}"#);
    }

    proptest! {
        #[test]
        fn lc_properties(g in arb_graph(14), pick in any::<prop::sample::Index>()) {
            let v = pick.index(g.n());
            let mut h = g.clone();
            h.local_complement(v).unwrap();
            prop_assert!(h.check_invariants().is_ok());
            for u in 0..g.n() {
                if u != v && !g.has_edge(u, v) {
                    prop_assert_eq!(h.neighbors(u), g.neighbors(u));
                }
            }
            let nv = g.neighbors(v);
            for &x in nv {
                for &y in nv {
                    if x < y {
                        prop_assert_eq!(h.has_edge(x, y), !g.has_edge(x, y));
                    }
                }
            }
            h.local_complement(v).unwrap();
            prop_assert_eq!(h, g);
        }
    }
}
