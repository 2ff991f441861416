//! Graph-state simulation of fusions (two-qubit parity measurements) and
//! single-qubit Pauli measurements, with a dense stabilizer tableau as the
//! reference implementation.

pub mod canon;
pub mod clifford;
pub mod emitter;
pub mod error;
pub mod fusion;
pub mod generate;
pub mod graph;
pub mod measure;
pub mod network;
pub mod oracle;
pub(crate) mod rewrite;
pub mod rules;
pub mod set;
pub mod tableau;
pub mod verify;

pub use canon::lc_equivalent;
pub use clifford::{LocalClifford, Pauli, SignedPauli};
pub use emitter::{build_resource, find_fusion_sequence, EmitterOp, FusionStep};
pub use error::{Error, Result};
pub use fusion::{rotated_fusion_of, FusionType};
pub use graph::{GraphJson, GraphState};
pub use measure::{measure_pauli, measure_x, measure_y, measure_z};
pub use network::{build_state, run_monte_carlo, run_trial, NetworkSpec, TrialRecord};
pub use oracle::{fusion_probability, oracle_fuse};
pub use rules::{fuse, fuse_failure, fuse_success, Branch, FusionReport, FusionResult};
pub use tableau::{Measurement, PauliString, StabilizerTableau};
