//! Randomised comparison of the graph rewrites against the dense tableau.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::Pauli;
use crate::error::Result;
use crate::fusion::FusionType;
use crate::generate::{gnp, randomize_tags};
use crate::graph::GraphState;
use crate::measure::measure_pauli;
use crate::oracle::{oracle_fuse, oracle_measure};
use crate::rules::{fuse, Branch};
use crate::tableau::StabilizerTableau;

/// Whether the fusion rewrite and the tableau agree on `g`, with the rule's
/// subcase label. Outcome signs are not compared.
pub fn check_fusion<R: Rng + ?Sized>(
    g: &GraphState,
    a: usize,
    b: usize,
    ty: FusionType,
    branch: Branch,
    rng: &mut R,
) -> Result<(String, bool)> {
    let r = fuse(g, a, b, ty, branch)?;
    r.graph.check_invariants()?;
    let mut t = StabilizerTableau::from_graph(g);
    oracle_fuse(&mut t, a, b, ty, branch, [None, None], rng)?;
    let ok = StabilizerTableau::from_graph(&r.graph).groups_equal_mod_signs(&t)?;
    Ok((r.report.subcase, ok))
}

/// Same comparison for a physical single-qubit measurement; labels are
/// `measure.{x,y,z}` by the basis the bare graph sees.
pub fn check_measurement<R: Rng + ?Sized>(
    g: &GraphState,
    v: usize,
    basis: Pauli,
    rng: &mut R,
) -> Result<(String, bool)> {
    let mut h = g.clone();
    let report = measure_pauli(&mut h, v, basis)?;
    h.check_invariants()?;
    let mut t = StabilizerTableau::from_graph(g);
    oracle_measure(&mut t, v, basis, None, rng)?;
    let ok = StabilizerTableau::from_graph(&h).groups_equal_mod_signs(&t)?;
    Ok((format!("measure.{}", report.basis.letter().to_ascii_lowercase()), ok))
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub min_n: usize,
    pub max_n: usize,
    /// Random graphs to draw; each is tested with every type and branch.
    pub trials: usize,
    pub seed: u64,
    pub types: Vec<FusionType>,
    /// Force the fusion qubits to be adjacent (true) or not (false).
    pub connected: Option<bool>,
    pub measurements: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            min_n: 3,
            max_n: 10,
            trials: 500,
            seed: 0,
            types: FusionType::ALL.to_vec(),
            connected: None,
            measurements: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub label: String,
    pub graph: GraphState,
    pub a: usize,
    pub b: Option<usize>,
    pub ty: Option<FusionType>,
    pub branch: Option<Branch>,
    pub basis: Option<Pauli>,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub passes: BTreeMap<String, usize>,
    pub failures: BTreeMap<String, usize>,
    /// First mismatch found.
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, (label, ok): (String, bool), cx: impl FnOnce(String) -> Counterexample) {
        if ok {
            *self.passes.entry(label).or_default() += 1;
        } else {
            *self.failures.entry(label.clone()).or_default() += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(cx(label));
            }
        }
    }
}

/// Draws G(n, p) graphs with n in [min_n, max_n] and p in {0.2, 0.5, 0.8},
/// random tags on half of them, and a random fusion pair.
pub fn verify_random(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = VerifyReport::default();
    let min_n = cfg.min_n.max(2);
    for _ in 0..cfg.trials {
        let n = rng.gen_range(min_n..=cfg.max_n.max(min_n));
        let p = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
        let mut g = gnp(n, p, &mut rng);
        if rng.gen_bool(0.5) {
            let all: Vec<usize> = (0..n).collect();
            randomize_tags(&mut g, &all, &mut rng);
        }
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        if let Some(c) = cfg.connected {
            if g.has_edge(a, b) != c {
                g.toggle_edge(a, b)?;
            }
        }
        for &ty in &cfg.types {
            for branch in [Branch::Success, Branch::Failure] {
                let res = check_fusion(&g, a, b, ty, branch, &mut rng)?;
                report.record(res, |label| Counterexample {
                    label,
                    graph: g.clone(),
                    a,
                    b: Some(b),
                    ty: Some(ty),
                    branch: Some(branch),
                    basis: None,
                });
            }
        }
        if cfg.measurements {
            for basis in [Pauli::X, Pauli::Y, Pauli::Z] {
                let res = check_measurement(&g, a, basis, &mut rng)?;
                report.record(res, |label| Counterexample {
                    label,
                    graph: g.clone(),
                    a,
                    b: None,
                    ty: None,
                    branch: None,
                    basis: Some(basis),
                });
            }
        }
    }
    Ok(report)
}
