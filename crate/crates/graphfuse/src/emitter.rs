//! Resource states from a single quantum emitter, and a bounded search for
//! fusion sequences that turn a resource into a target graph.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{self, Canon};
use crate::error::{Error, Result};
use crate::fusion::FusionType;
use crate::graph::GraphState;
use crate::measure::measure_z;
use crate::oracle::fusion_probability;
use crate::rules::fuse_success_in_place;
use crate::tableau::StabilizerTableau;

/// Largest source graph accepted by [`find_fusion_sequence`].
pub const MAX_SEARCH_VERTICES: usize = 16;

/// Emits a photon attached to the emitter by a CZ.
pub fn gen_photon(g: &mut GraphState, emitter: usize) -> Result<usize> {
    g.check(emitter)?;
    let p = g.add_vertex();
    g.toggle_edge(emitter, p)?;
    Ok(p)
}

/// [`gen_photon`], then local complementation on the emitter and on the new
/// photon: the photon takes the emitter's place and the emitter hangs off it.
pub fn push_gen(g: &mut GraphState, emitter: usize) -> Result<usize> {
    let p = gen_photon(g, emitter)?;
    g.local_complement_state(emitter)?;
    g.local_complement_state(p)?;
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum EmitterOp {
    Gen,
    #[serde(rename = "pgen", alias = "push_gen")]
    PGen,
    /// Local complementation at `v` as a state operation.
    Lc {
        v: usize,
    },
    /// Removes `v` from the graph: a measurement of the tag-adjusted Z.
    MeasureZ {
        v: usize,
    },
}

/// Replays a script. Vertex 0 is the emitter; photons receive ids in emission
/// order.
pub fn build_resource(script: &[EmitterOp]) -> Result<GraphState> {
    let mut g = GraphState::new(1);
    for op in script {
        match *op {
            EmitterOp::Gen => {
                gen_photon(&mut g, 0)?;
            }
            EmitterOp::PGen => {
                push_gen(&mut g, 0)?;
            }
            EmitterOp::Lc { v } => g.local_complement_state(v)?,
            EmitterOp::MeasureZ { v } => {
                measure_z(&mut g, v)?;
            }
        }
    }
    Ok(g)
}

pub fn parse_script(s: &str) -> Result<Vec<EmitterOp>> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionStep {
    pub a: usize,
    pub b: usize,
    #[serde(rename = "type")]
    pub ty: FusionType,
}

struct Target {
    m: usize,
    cut_ranks: Vec<u8>,
    orbit: HashSet<Canon>,
}

impl Target {
    fn matches(&self, g: &GraphState) -> bool {
        let (_, rows) = canon::compact(g);
        rows.len() == self.m
            && canon::pair_cut_ranks(&rows) == self.cut_ranks
            && self.orbit.contains(&canon::canonical(&rows, &vec![0; rows.len()]))
    }
}

fn moves(g: &GraphState, used: u8, max_types: usize) -> Vec<FusionStep> {
    let alive: Vec<usize> = g.alive_vertices().collect();
    let mut out = Vec::new();
    for (i, &a) in alive.iter().enumerate() {
        for &b in &alive[i + 1..] {
            for (k, ty) in FusionType::ALL.into_iter().enumerate() {
                let mask = used | 1 << k;
                if mask.count_ones() as usize > max_types {
                    continue;
                }
                out.push(FusionStep { a, b, ty });
                if !ty.is_symmetric() {
                    out.push(FusionStep { a: b, b: a, ty });
                }
            }
        }
    }
    out
}

/// Applies a fusion that can herald success; `None` when success is
/// impossible on this state.
fn apply(g: &GraphState, s: FusionStep) -> Option<GraphState> {
    let mut h = g.clone();
    let report = fuse_success_in_place(&mut h, s.a, s.b, s.ty).ok()?;
    if report.boundary_warning && fusion_probability(&StabilizerTableau::from_graph(g), s.a, s.b, s.ty) == 0.0 {
        return None;
    }
    Some(h)
}

fn type_bit(ty: FusionType) -> u8 {
    1 << FusionType::ALL.iter().position(|&t| t == ty).expect("listed type")
}

fn dfs(
    g: &GraphState,
    depth: usize,
    used: u8,
    max_types: usize,
    target: &Target,
    seen: &mut HashSet<(Canon, u8)>,
) -> Option<Vec<FusionStep>> {
    if depth == 0 {
        return target.matches(g).then(Vec::new);
    }
    if !seen.insert((canon::canonical_tagged(g), used)) {
        return None;
    }
    for s in moves(g, used, max_types) {
        let Some(h) = apply(g, s) else { continue };
        if let Some(mut rest) = dfs(&h, depth - 1, used | type_bit(s.ty), max_types, target, seen) {
            rest.insert(0, s);
            return Some(rest);
        }
    }
    None
}

/// Searches success-branch fusion sequences of at most `max_fusions` steps
/// using at most `max_types` distinct types, whose result is LC-equivalent to
/// `target` up to relabelling. Every fusion removes two vertices, so only
/// sequences of length (|source| - |target|) / 2 are considered.
pub fn find_fusion_sequence(
    source: &GraphState,
    target: &GraphState,
    max_fusions: usize,
    max_types: usize,
) -> Result<Option<Vec<FusionStep>>> {
    let (n, m) = (source.alive_count(), target.alive_count());
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::Unsupported(n, MAX_SEARCH_VERTICES));
    }
    let (_, rows) = canon::compact(target);
    let target = Target { m, cut_ranks: canon::pair_cut_ranks(&rows), orbit: canon::lc_orbit(target)? };
    if n < m || (n - m) % 2 == 1 || (n - m) / 2 > max_fusions {
        return Ok(None);
    }
    let depth = (n - m) / 2;
    if depth == 0 {
        return Ok(target.matches(source).then(Vec::new));
    }
    let first = moves(source, 0, max_types);
    Ok(first.par_iter().find_map_first(|&s| {
        let h = apply(source, s)?;
        let mut seen = HashSet::new();
        let mut rest = dfs(&h, depth - 1, type_bit(s.ty), max_types, &target, &mut seen)?;
        rest.insert(0, s);
        Some(rest)
    }))
}

/// Replays a fusion sequence on the success branch.
pub fn replay(source: &GraphState, steps: &[FusionStep]) -> Result<GraphState> {
    let mut g = source.clone();
    for s in steps {
        fuse_success_in_place(&mut g, s.a, s.b, s.ty)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::lc_equivalent;

    #[test]
    fn gen_examples() {
        let g = build_resource(&[EmitterOp::Gen, EmitterOp::Gen, EmitterOp::Gen]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn push_gen_swaps_roles() {
        let mut g = GraphState::new(1);
        let x = gen_photon(&mut g, 0).unwrap();
        let p = push_gen(&mut g, 0).unwrap();
        assert_eq!(g.neighbors(p), &[0, x]);
        assert_eq!(g.neighbors(0), &[p]);
        let mut g = GraphState::new(1);
        let p = push_gen(&mut g, 0).unwrap();
        assert_eq!(g.edges(), vec![(0, p)]);
    }

    #[test]
    fn chain_script() {
        let mut script = vec![EmitterOp::Gen];
        script.extend([EmitterOp::PGen; 4]);
        script.push(EmitterOp::MeasureZ { v: 0 });
        let g = build_resource(&script).unwrap();
        assert_eq!(g.edges(), vec![(1, 2), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn script_json() {
        let s = r#"[{"op":"gen"},{"op":"pgen"},{"op":"lc","v":1},{"op":"measure_z","v":0}]"#;
        let ops = parse_script(s).unwrap();
        assert_eq!(ops, vec![EmitterOp::Gen, EmitterOp::PGen, EmitterOp::Lc { v: 1 }, EmitterOp::MeasureZ { v: 0 }]);
        assert!(build_resource(&[EmitterOp::MeasureZ { v: 0 }, EmitterOp::Gen]).is_err());
        assert!(parse_script("[{\"op\":\"emit\"}]").is_err());
    }

    #[test]
    fn search_examples() {
        let p4 = GraphState::path(4);
        assert_eq!(find_fusion_sequence(&p4, &GraphState::cycle(4), 3, 2).unwrap(), Some(vec![]));
        let chains = GraphState::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let steps = find_fusion_sequence(&chains, &p4, 1, 1).unwrap().unwrap();
        assert_eq!(steps.len(), 1);
        assert!(lc_equivalent(&replay(&chains, &steps).unwrap(), &p4).unwrap());
        assert_eq!(find_fusion_sequence(&chains, &GraphState::path(5), 3, 2).unwrap(), None);
    }
}
