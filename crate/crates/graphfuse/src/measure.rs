//! Single-qubit Pauli measurements as graph rewrites. The bare rules act on
//! the underlying graph; [`measure_pauli`] first pulls a physical basis back
//! through the vertex tag.

use std::collections::BTreeMap;

use crate::clifford::{LocalClifford, Pauli};
use crate::error::{Error, Result};
use crate::graph::GraphState;
use crate::rewrite::{Plan, Term, Trace};
use crate::set;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureReport {
    pub vertex: usize,
    /// basis applied to the bare graph
    pub basis: Pauli,
    /// the a* neighbour of an X measurement
    pub special: Option<usize>,
    pub byproduct: BTreeMap<usize, LocalClifford>,
    pub trace: Trace,
}

pub fn measure_z(g: &mut GraphState, v: usize) -> Result<MeasureReport> {
    g.check(v)?;
    let plan = Plan::new(g, &[v], &[(v, "v")]);
    let (trace, byproduct) = plan.finish().apply(g);
    Ok(MeasureReport { vertex: v, basis: Pauli::Z, special: None, byproduct, trace })
}

pub fn measure_y(g: &mut GraphState, v: usize) -> Result<MeasureReport> {
    g.check(v)?;
    let prepared = {
        let mut plan = Plan::new(g, &[v], &[(v, "v")]);
        let nv = plan.set("N(v)", g.neighbors(v).to_vec());
        for &x in g.neighbors(v) {
            plan.row(x, vec![Term::N(x), Term::SetLess(nv, x)]);
            plan.gate(x, LocalClifford::R);
        }
        plan.finish()
    };
    let (trace, byproduct) = prepared.apply(g);
    Ok(MeasureReport { vertex: v, basis: Pauli::Y, special: None, byproduct, trace })
}

pub fn measure_x(g: &mut GraphState, v: usize) -> Result<MeasureReport> {
    g.check(v)?;
    let Some(&s) = g.neighbors(v).first() else {
        return measure_z(g, v).map(|r| MeasureReport { basis: Pauli::X, ..r });
    };
    let prepared = {
        let mut plan = Plan::new(g, &[v], &[(v, "v")]);
        x_measure_rows(&mut plan, g, v, None, g.neighbors(v).to_vec(), s, "N(v)");
        plan.finish()
    };
    let (trace, byproduct) = prepared.apply(g);
    Ok(MeasureReport { vertex: v, basis: Pauli::X, special: Some(s), byproduct, trace })
}

/// X-measurement rows for vertex `v` with neighbourhood `nv` (already
/// excluding `skip`, a vertex removed alongside `v`), special neighbour `s`.
pub(crate) fn x_measure_rows(
    plan: &mut Plan<'_>,
    g: &GraphState,
    v: usize,
    skip: Option<usize>,
    nv: Vec<usize>,
    s: usize,
    name: &'static str,
) {
    let ns = g.neighbors(s);
    let outside: Vec<usize> =
        ns.iter().copied().filter(|&d| d != v && Some(d) != skip && !set::contains(&nv, d)).collect();
    let inside: Vec<usize> = nv.iter().copied().filter(|&x| x != s).collect();
    let ns_has: Vec<bool> = inside.iter().map(|&x| set::contains(ns, x)).collect();
    let nvs = plan.set(name, nv);
    plan.row(s, vec![Term::SetLess(nvs, s)]);
    for (x, adjacent) in inside.into_iter().zip(ns_has) {
        let mut terms = vec![Term::Pin(s), Term::N(x), Term::N(s)];
        if adjacent {
            terms.push(Term::Set(nvs));
        }
        plan.row(x, terms);
    }
    for d in outside {
        plan.row(d, vec![Term::N(d), Term::Set(nvs)]);
    }
    plan.gate(s, LocalClifford::H);
}

/// Measures `basis` on the bare graph.
pub fn measure_bare(g: &mut GraphState, v: usize, basis: Pauli) -> Result<MeasureReport> {
    match basis {
        Pauli::X => measure_x(g, v),
        Pauli::Y => measure_y(g, v),
        Pauli::Z => measure_z(g, v),
        Pauli::I => Err(Error::Parse("cannot measure the identity".into())),
    }
}

/// Measures the physical observable `basis` on the tagged state: the bare
/// graph sees `C† basis C` for the tag `C` of `v`.
pub fn measure_pauli(g: &mut GraphState, v: usize, basis: Pauli) -> Result<MeasureReport> {
    g.check(v)?;
    let bare = g.clifford(v).pullback(basis);
    measure_bare(g, v, bare)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_examples() {
        let mut g = GraphState::path(3);
        measure_z(&mut g, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.alive_count(), 2);
    }

    #[test]
    fn y_examples() {
        let mut g = GraphState::path(3);
        let r = measure_y(&mut g, 1).unwrap();
        assert_eq!(g.edges(), vec![(0, 2)]);
        assert_eq!(r.byproduct.keys().copied().collect::<Vec<_>>(), vec![0, 2]);
        let mut g = GraphState::path(3);
        let r = measure_y(&mut g, 0).unwrap();
        assert_eq!(g.edges(), vec![(1, 2)]);
        assert_eq!(r.byproduct.get(&1), Some(&LocalClifford::R));
    }

    #[test]
    fn x_examples() {
        // path 1-2-3-4 as ids 0..3, measure id 1; a* = 0
        let mut g = GraphState::path(4);
        let r = measure_x(&mut g, 1).unwrap();
        assert_eq!(r.special, Some(0));
        assert_eq!(g.edges(), vec![(0, 2), (2, 3)]);
        assert_eq!(g.clifford(0), LocalClifford::H);
        let mut g = GraphState::new(2);
        measure_x(&mut g, 0).unwrap();
        assert_eq!(g.alive_count(), 1);
    }
}
