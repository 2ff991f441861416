//! Declarative fusion networks: resource states placed at id offsets, an
//! ordered fusion schedule, photon loss, and seeded Monte Carlo trials.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::Pauli;
use crate::error::{Error, Result};
use crate::fusion::{detect_boundary, FusionType};
use crate::graph::{GraphJson, GraphState};
use crate::measure::measure_pauli;
use crate::oracle::{fusion_probability, oracle_fuse, oracle_measure};
use crate::rules::{fuse_in_place, Branch};
use crate::tableau::StabilizerTableau;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResourceSource {
    Inline(GraphJson),
    /// Path to a graph JSON file, relative to the spec file.
    File {
        file: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub resource: String,
    pub offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduledFusion {
    pub a: usize,
    pub b: usize,
    #[serde(rename = "type")]
    pub ty: FusionType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
}

/// Basis measured on the partner of a lost photon.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossPartner {
    #[default]
    Z,
    X,
}

impl LossPartner {
    fn basis(self) -> Pauli {
        match self {
            LossPartner::Z => Pauli::Z,
            LossPartner::X => Pauli::X,
        }
    }
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub resources: BTreeMap<String, ResourceSource>,
    pub instances: Vec<Instance>,
    pub fusions: Vec<ScheduledFusion>,
    #[serde(default)]
    pub loss: f64,
    #[serde(default)]
    pub loss_partner: LossPartner,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    /// Resolve boundary fusions with tableau probabilities instead of 1/2.
    #[serde(default)]
    pub exact_boundaries: bool,
}

impl NetworkSpec {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Reads a spec and inlines every file-referenced resource.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let mut spec = Self::parse(&text)?;
        let dir = path.parent().unwrap_or(Path::new("."));
        for src in spec.resources.values_mut() {
            if let ResourceSource::File { file } = src {
                let p = dir.join(&*file);
                let text = std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
                *src = ResourceSource::Inline(
                    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
                );
            }
        }
        Ok(spec)
    }

    fn resource(&self, name: &str) -> Result<GraphState> {
        match self.resources.get(name) {
            Some(ResourceSource::Inline(j)) => GraphState::from_json(j),
            Some(ResourceSource::File { file }) => Err(Error::Spec(format!("resource file {file} not loaded"))),
            None => Err(Error::Spec(format!("unknown resource {name}"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.loss) {
            return Err(Error::Spec(format!("loss {} outside [0, 1]", self.loss)));
        }
        if self.trials == 0 {
            return Err(Error::Spec("trials must be at least 1".into()));
        }
        let mut used = HashSet::new();
        for (i, f) in self.fusions.iter().enumerate() {
            if f.a == f.b {
                return Err(Error::Spec(format!("fusion {} uses qubit {} twice", i + 1, f.a)));
            }
            for q in [f.a, f.b] {
                if !used.insert(q) {
                    return Err(Error::Spec(format!("qubit {q} is fused more than once")));
                }
            }
        }
        Ok(())
    }
}

/// Disjoint union of the placed resources; ids not covered by any instance
/// are removed vertices.
pub fn build_state(spec: &NetworkSpec) -> Result<GraphState> {
    spec.validate()?;
    let placed: Vec<(usize, GraphState)> =
        spec.instances.iter().map(|i| Ok((i.offset, spec.resource(&i.resource)?))).collect::<Result<_>>()?;
    let n = placed.iter().map(|(o, r)| o + r.n()).max().unwrap_or(0);
    let mut owner = vec![None; n];
    for (k, (o, r)) in placed.iter().enumerate() {
        for (v, slot) in owner.iter_mut().enumerate().skip(*o).take(r.n()) {
            if let Some(j) = *slot {
                return Err(Error::Spec(format!("instances {} and {} overlap at id {v}", j + 1, k + 1)));
            }
            *slot = Some(k);
        }
    }
    let mut g = GraphState::new(n);
    for (o, r) in &placed {
        for (u, v) in r.edges() {
            g.toggle_edge(o + u, o + v)?;
        }
        for v in r.alive_vertices() {
            g.set_clifford(o + v, r.clifford(v))?;
        }
    }
    for (v, own) in owner.iter().enumerate() {
        let alive = own.is_some_and(|k| placed[k].1.is_alive(v - placed[k].0));
        if !alive {
            g.delete_vertex(v)?;
        }
    }
    for f in &spec.fusions {
        for q in [f.a, f.b] {
            g.check(q).map_err(|_| Error::Spec(format!("fusion qubit {q} is not a placed photon")))?;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Success,
    Failure,
    Erased,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionRecord {
    pub a: usize,
    pub b: usize,
    pub outcome: Outcome,
    /// Lost photons among {a, b}.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lost: Vec<usize>,
    /// Whether a and b were adjacent just before this fusion.
    pub adjacent_before: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub effective: Option<FusionType>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subcase: Option<String>,
    pub boundary_warning: bool,
    /// Success probability used for the draw.
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub fusions: Vec<FusionRecord>,
    /// Component sizes of the final graph, largest first.
    pub components: Vec<usize>,
    pub graph: GraphJson,
}

impl TrialRecord {
    /// One-line summary without the final graph.
    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "trial": self.trial,
            "outcomes": self.fusions.iter().map(|f| f.outcome).collect::<Vec<_>>(),
            "adjacent_before": self.fusions.iter().map(|f| f.adjacent_before).collect::<Vec<_>>(),
            "components": self.components,
        })
    }
}

/// Runs the schedule once on `initial`.
pub fn run_trial<R: Rng + ?Sized>(
    spec: &NetworkSpec,
    initial: &GraphState,
    trial: usize,
    rng: &mut R,
) -> Result<TrialRecord> {
    let mut g = initial.clone();
    let mut records = Vec::with_capacity(spec.fusions.len());
    for (i, f) in spec.fusions.iter().enumerate() {
        for q in [f.a, f.b] {
            if !g.is_alive(q) {
                return Err(Error::Spec(format!("fusion {} uses qubit {q}, which is already measured", i + 1)));
            }
        }
        let lost_a = rng.gen::<f64>() < spec.loss;
        let lost_b = rng.gen::<f64>() < spec.loss;
        let draw: f64 = rng.gen();
        let adjacent_before = g.has_edge(f.a, f.b);
        if lost_a || lost_b {
            let lost: Vec<usize> = [(f.a, lost_a), (f.b, lost_b)].into_iter().filter(|x| x.1).map(|x| x.0).collect();
            for (q, l) in [(f.a, lost_a), (f.b, lost_b)] {
                measure_pauli(&mut g, q, if l { Pauli::Z } else { spec.loss_partner.basis() })?;
            }
            records.push(FusionRecord {
                a: f.a,
                b: f.b,
                outcome: Outcome::Erased,
                lost,
                adjacent_before,
                effective: None,
                subcase: None,
                boundary_warning: false,
                probability: 0.0,
            });
            continue;
        }
        let generic = detect_boundary(&g, f.a, f.b).is_generic();
        let probability = if !generic && spec.exact_boundaries {
            fusion_probability(&StabilizerTableau::from_graph(&g), f.a, f.b, f.ty)
        } else {
            0.5
        };
        let branch = f.branch.unwrap_or(if draw < probability { Branch::Success } else { Branch::Failure });
        let report = fuse_in_place(&mut g, f.a, f.b, f.ty, branch)?;
        records.push(FusionRecord {
            a: f.a,
            b: f.b,
            outcome: match branch {
                Branch::Success => Outcome::Success,
                Branch::Failure => Outcome::Failure,
            },
            lost: vec![],
            adjacent_before,
            effective: Some(report.effective),
            subcase: Some(report.subcase.clone()),
            boundary_warning: report.boundary_warning,
            probability,
        });
    }
    let mut components: Vec<usize> = g.components().iter().map(Vec::len).collect();
    components.sort_unstable_by(|x, y| y.cmp(x));
    Ok(TrialRecord { trial, fusions: records, components, graph: g.to_json() })
}

/// Generator for trial `trial`: the spec seed selects the key, the trial
/// index the stream.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FusionStats {
    pub success: usize,
    pub failure: usize,
    pub erased: usize,
    pub adjacent_before: usize,
    pub boundary_warnings: usize,
}

impl FusionStats {
    /// Successes among the fusions that were attempted.
    pub fn success_rate(&self) -> f64 {
        let attempted = self.success + self.failure;
        if attempted == 0 {
            0.0
        } else {
            self.success as f64 / attempted as f64
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub trials: usize,
    pub fusions: Vec<FusionStats>,
    pub success_rates: Vec<f64>,
    /// Component size → number of components of that size over all trials.
    pub component_sizes: BTreeMap<usize, usize>,
}

pub fn aggregate(records: &[TrialRecord]) -> Aggregate {
    let k = records.first().map_or(0, |r| r.fusions.len());
    let mut out = Aggregate { trials: records.len(), fusions: vec![FusionStats::default(); k], ..Default::default() };
    for r in records {
        for (s, f) in out.fusions.iter_mut().zip(&r.fusions) {
            match f.outcome {
                Outcome::Success => s.success += 1,
                Outcome::Failure => s.failure += 1,
                Outcome::Erased => s.erased += 1,
            }
            s.adjacent_before += f.adjacent_before as usize;
            s.boundary_warnings += f.boundary_warning as usize;
        }
        for &c in &r.components {
            *out.component_sizes.entry(c).or_default() += 1;
        }
    }
    out.success_rates = out.fusions.iter().map(FusionStats::success_rate).collect();
    out
}

/// All trials of the spec, in trial order. Independent of thread count.
pub fn run_monte_carlo(spec: &NetworkSpec) -> Result<(Vec<TrialRecord>, Aggregate)> {
    let initial = build_state(spec)?;
    let records = (0..spec.trials)
        .into_par_iter()
        .map(|t| run_trial(spec, &initial, t, &mut trial_rng(spec.seed, t)))
        .collect::<Result<Vec<_>>>()?;
    let agg = aggregate(&records);
    Ok((records, agg))
}

/// Replays a trial's outcomes on the dense tableau, forcing each success to
/// herald.
pub fn replay_on_tableau(spec: &NetworkSpec, initial: &GraphState, record: &TrialRecord) -> Result<StabilizerTableau> {
    let mut t = StabilizerTableau::from_graph(initial);
    let mut rng = trial_rng(spec.seed, record.trial);
    for (f, r) in spec.fusions.iter().zip(&record.fusions) {
        match r.outcome {
            Outcome::Erased => {
                for q in [f.a, f.b] {
                    let basis = if r.lost.contains(&q) { Pauli::Z } else { spec.loss_partner.basis() };
                    oracle_measure(&mut t, q, basis, None, &mut rng)?;
                }
            }
            Outcome::Success => {
                oracle_fuse(&mut t, f.a, f.b, f.ty, Branch::Success, [None, Some(-1)], &mut rng)?;
            }
            Outcome::Failure => {
                oracle_fuse(&mut t, f.a, f.b, f.ty, Branch::Failure, [None, None], &mut rng)?;
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_chains(branch: Option<&str>) -> NetworkSpec {
        NetworkSpec::parse(&format!(
            r#"{{"resources": {{"chain": {{"n": 3, "edges": [[0, 1], [1, 2]]}}}},
               "instances": [{{"resource": "chain", "offset": 0}}, {{"resource": "chain", "offset": 3}}],
               "fusions": [{{"a": 2, "b": 3, "type": "xzzx"{}}}]}}"#,
            branch.map_or(String::new(), |b| format!(r#", "branch": "{b}""#))
        ))
        .unwrap()
    }

    #[test]
    fn build_examples() {
        let g = build_state(&two_chains(None)).unwrap();
        assert_eq!((g.alive_count(), g.edge_count(), g.components().len()), (6, 4, 2));
        let mut spec = two_chains(None);
        spec.instances[1].offset = 2;
        assert!(build_state(&spec).is_err());
        spec.instances[1].resource = "ring".into();
        assert!(build_state(&spec).is_err());
    }

    #[test]
    fn forced_branches() {
        let spec = two_chains(Some("success"));
        let (records, _) = run_monte_carlo(&spec).unwrap();
        let g = GraphState::from_json(&records[0].graph).unwrap();
        assert_eq!(g.bare().edges(), vec![(0, 1), (1, 4), (4, 5)]);
        let spec = two_chains(Some("failure"));
        let (records, _) = run_monte_carlo(&spec).unwrap();
        // Z on the end of one chain, X on the end of the other
        assert_eq!(records[0].components, vec![2, 1, 1]);
    }

    #[test]
    fn double_fuse_is_rejected() {
        let mut spec = two_chains(None);
        spec.fusions.push(spec.fusions[0]);
        assert!(build_state(&spec).is_err());
    }

    #[test]
    fn seeds_replay() {
        let mut spec = two_chains(None);
        spec.trials = 50;
        spec.seed = 11;
        let (a, _) = run_monte_carlo(&spec).unwrap();
        let (b, _) = run_monte_carlo(&spec).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().any(|r| r.fusions[0].outcome == Outcome::Success));
        assert!(a.iter().any(|r| r.fusions[0].outcome == Outcome::Failure));
    }

    #[test]
    fn full_loss_erases_everything() {
        let mut spec = two_chains(None);
        spec.loss = 1.0;
        let (records, agg) = run_monte_carlo(&spec).unwrap();
        assert_eq!(records[0].fusions[0].outcome, Outcome::Erased);
        assert_eq!(agg.fusions[0].erased, 1);
        assert_eq!(records[0].components, vec![2, 2]);
    }

    #[test]
    fn trials_match_the_tableau() {
        let mut spec = two_chains(None);
        spec.trials = 20;
        spec.loss = 0.3;
        let initial = build_state(&spec).unwrap();
        for partner in [LossPartner::Z, LossPartner::X] {
            spec.loss_partner = partner;
            let (records, _) = run_monte_carlo(&spec).unwrap();
            for r in &records {
                let t = replay_on_tableau(&spec, &initial, r).unwrap();
                let g = GraphState::from_json(&r.graph).unwrap();
                assert!(t.groups_equal_mod_signs(&StabilizerTableau::from_graph(&g)).unwrap());
            }
        }
    }
}
