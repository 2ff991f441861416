//! Neighbourhood rewrites expressed as symmetric differences of old
//! neighbourhoods, evaluated against the pre-measurement graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::clifford::LocalClifford;
use crate::graph::GraphState;
use crate::set;

/// One operand of a neighbourhood formula. Sets refer to the graph before
/// the rewrite; measured vertices are dropped from every result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    /// N(v)
    N(usize),
    /// N(v) \ {w}
    NLess(usize, usize),
    /// a named set
    Set(usize),
    /// a named set without one vertex
    SetLess(usize, usize),
    /// {v}, joined by union rather than symmetric difference
    Pin(usize),
    /// removes v from the symmetric difference (before pins are added)
    Drop(usize),
}

/// Formula record of a rewrite, kept for `explain` output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub rows: Vec<(usize, Vec<Term>)>,
    pub set_names: Vec<&'static str>,
    /// display names of distinguished vertices (fusion qubits, measured vertex)
    pub roles: Vec<(usize, &'static str)>,
}

impl Trace {
    fn vertex_name(&self, v: usize) -> String {
        match self.roles.iter().find(|(r, _)| *r == v) {
            Some((_, name)) => name.to_string(),
            None => v.to_string(),
        }
    }

    pub fn render_terms(&self, terms: &[Term]) -> String {
        let mut pins = Vec::new();
        let mut drops = Vec::new();
        let mut parts = Vec::new();
        for t in terms {
            match *t {
                Term::N(v) => parts.push(format!("N({})", self.vertex_name(v))),
                Term::NLess(v, w) => parts.push(format!("(N({})\\{})", self.vertex_name(v), self.vertex_name(w))),
                Term::Set(s) => parts.push(self.set_names[s].to_string()),
                Term::SetLess(s, w) => parts.push(format!("({}\\{})", self.set_names[s], self.vertex_name(w))),
                Term::Pin(v) => pins.push(self.vertex_name(v)),
                Term::Drop(v) => drops.push(self.vertex_name(v)),
            }
        }
        let mut out = String::new();
        if !pins.is_empty() {
            let _ = write!(out, "{{{}}} ∪ ", pins.join(","));
        }
        if parts.is_empty() {
            out.push('∅');
        } else {
            out.push_str(&parts.join(" Δ "));
        }
        if !drops.is_empty() {
            let _ = write!(out, " \\ {{{}}}", drops.join(","));
        }
        out
    }

    pub fn render(&self) -> Vec<String> {
        self.rows.iter().map(|(v, terms)| format!("N'({v}) = {}", self.render_terms(terms))).collect()
    }
}

pub(crate) struct Plan<'g> {
    g: &'g GraphState,
    removed: Vec<usize>,
    sets: Vec<Vec<usize>>,
    trace: Trace,
    gates: Vec<(usize, LocalClifford)>,
}

pub(crate) struct Prepared {
    removed: Vec<usize>,
    new_adj: Vec<(usize, Vec<usize>)>,
    gates: Vec<(usize, LocalClifford)>,
    pub trace: Trace,
}

impl<'g> Plan<'g> {
    pub fn new(g: &'g GraphState, removed: &[usize], roles: &[(usize, &'static str)]) -> Self {
        Plan {
            g,
            removed: removed.to_vec(),
            sets: Vec::new(),
            trace: Trace { roles: roles.to_vec(), ..Trace::default() },
            gates: Vec::new(),
        }
    }

    pub fn set(&mut self, name: &'static str, s: Vec<usize>) -> usize {
        self.sets.push(s);
        self.trace.set_names.push(name);
        self.sets.len() - 1
    }

    pub fn row(&mut self, v: usize, terms: Vec<Term>) {
        self.trace.rows.push((v, terms));
    }

    pub fn gate(&mut self, v: usize, c: LocalClifford) {
        self.gates.push((v, c));
    }

    fn eval(&self, v: usize, terms: &[Term]) -> Vec<usize> {
        let g = self.g;
        let mut acc: Vec<usize> = Vec::new();
        let mut pins = Vec::new();
        let mut drops = Vec::new();
        for t in terms {
            acc = match *t {
                Term::N(u) => set::sym_diff(&acc, g.neighbors(u)),
                Term::NLess(u, w) => set::sym_diff(&acc, &set::without(g.neighbors(u), w)),
                Term::Set(s) => set::sym_diff(&acc, &self.sets[s]),
                Term::SetLess(s, w) => set::sym_diff(&acc, &set::without(&self.sets[s], w)),
                Term::Pin(u) => {
                    pins.push(u);
                    continue;
                }
                Term::Drop(u) => {
                    drops.push(u);
                    continue;
                }
            };
        }
        for d in drops {
            set::remove(&mut acc, d);
        }
        for p in pins {
            set::insert(&mut acc, p);
        }
        acc.retain(|x| !self.removed.contains(x));
        debug_assert!(!set::contains(&acc, v), "rewrite of {v} produced a self-loop");
        set::remove(&mut acc, v);
        acc
    }

    pub fn finish(self) -> Prepared {
        let new_adj = self.trace.rows.iter().map(|(v, terms)| (*v, self.eval(*v, terms))).collect();
        Prepared { removed: self.removed, new_adj, gates: self.gates, trace: self.trace }
    }
}

impl Prepared {
    /// Applies the rewrite; returns the byproduct gates per vertex.
    pub fn apply(self, g: &mut GraphState) -> (Trace, BTreeMap<usize, LocalClifford>) {
        g.rewrite_neighborhoods(self.new_adj);
        for &v in &self.removed {
            g.delete_vertex(v).expect("measured vertex alive");
        }
        let mut byproduct = BTreeMap::new();
        for (v, c) in self.gates {
            g.absorb_byproduct(v, c);
            let e = byproduct.entry(v).or_insert(LocalClifford::IDENTITY);
            *e = e.mul(c);
        }
        (self.trace, byproduct)
    }
}
