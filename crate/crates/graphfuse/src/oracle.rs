//! Fusions and single-qubit measurements on the dense tableau, used as the
//! reference for every graph rewrite.

use rand::Rng;

use crate::clifford::Pauli;
use crate::error::Result;
use crate::fusion::FusionType;
use crate::rules::Branch;
use crate::tableau::{Measurement, PauliString, StabilizerTableau};

/// Fuses qubits `a` and `b`: the type's pre-rotation, then either the
/// parities X_aX_b and Z_aZ_b (success; the second heralds with -1) or Z_a
/// and Z_b (failure). Both qubits are left as +Z placeholders so the other
/// qubit indices keep their meaning.
pub fn oracle_fuse<R: Rng + ?Sized>(
    t: &mut StabilizerTableau,
    a: usize,
    b: usize,
    ty: FusionType,
    branch: Branch,
    forced: [Option<i8>; 2],
    rng: &mut R,
) -> Result<[Measurement; 2]> {
    let n = t.n();
    let rot = ty.pre_rotation();
    t.apply_clifford(a, rot.a);
    t.apply_clifford(b, rot.b);
    let ops = match branch {
        Branch::Success => [
            PauliString::from_sparse(n, &[(a, Pauli::X), (b, Pauli::X)]),
            PauliString::from_sparse(n, &[(a, Pauli::Z), (b, Pauli::Z)]),
        ],
        Branch::Failure => {
            [PauliString::from_sparse(n, &[(a, Pauli::Z)]), PauliString::from_sparse(n, &[(b, Pauli::Z)])]
        }
    };
    let m0 = t.measure_pauli(&ops[0], forced[0], rng)?;
    let m1 = t.measure_pauli(&ops[1], forced[1], rng)?;
    t.detach(&[a, b]);
    Ok([m0, m1])
}

/// Measures the single-qubit Pauli `p` on `v` and replaces `v` by a +Z
/// placeholder.
pub fn oracle_measure<R: Rng + ?Sized>(
    t: &mut StabilizerTableau,
    v: usize,
    p: Pauli,
    forced: Option<i8>,
    rng: &mut R,
) -> Result<Measurement> {
    let op = PauliString::from_sparse(t.n(), &[(v, p)]);
    let m = t.measure_pauli(&op, forced, rng)?;
    t.detach(&[v]);
    Ok(m)
}

/// Probability that a fusion of `ty` heralds success: 1/2 unless the
/// heralding parity is fixed by the state.
pub fn fusion_probability(t: &StabilizerTableau, a: usize, b: usize, ty: FusionType) -> f64 {
    let mut t = t.clone();
    let rot = ty.pre_rotation();
    t.apply_clifford(a, rot.a);
    t.apply_clifford(b, rot.b);
    let zz = PauliString::from_sparse(t.n(), &[(a, Pauli::Z), (b, Pauli::Z)]);
    // the rng is never consulted for the deterministic case we care about
    let m = t.measure_pauli(&zz, Some(-1), &mut rand::rngs::mock::StepRng::new(0, 0));
    match m {
        Ok(m) if !m.deterministic => 0.5,
        Ok(_) => 1.0,
        Err(_) => 0.0,
    }
}
