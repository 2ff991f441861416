//! Fusion types, their pre-rotations of the standard XX∧ZZ fusion, and
//! classification of parity pairs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clifford::{LocalClifford, Pauli};
use crate::error::{Error, Result};
use crate::graph::GraphState;
use crate::set;

/// A weight-two Pauli on the fusion qubits (A, B).
pub type Parity = (Pauli, Pauli);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FusionType {
    /// X_A X_B ∧ Z_A Z_B
    Xxzz,
    /// X_A Y_B ∧ Y_A X_B
    Xyyx,
    /// X_A Z_B ∧ Z_A X_B
    Xzzx,
    /// Y_A Z_B ∧ Z_A Y_B
    Yzzy,
    /// X_A Y_B ∧ Y_A Z_B
    Xyyz,
}

impl FusionType {
    pub const ALL: [FusionType; 5] =
        [FusionType::Xxzz, FusionType::Xyyx, FusionType::Xzzx, FusionType::Yzzy, FusionType::Xyyz];

    pub fn name(self) -> &'static str {
        match self {
            FusionType::Xxzz => "xxzz",
            FusionType::Xyyx => "xyyx",
            FusionType::Xzzx => "xzzx",
            FusionType::Yzzy => "yzzy",
            FusionType::Xyyz => "xyyz",
        }
    }

    pub fn parities(self) -> [Parity; 2] {
        use Pauli::*;
        match self {
            FusionType::Xxzz => [(X, X), (Z, Z)],
            FusionType::Xyyx => [(X, Y), (Y, X)],
            FusionType::Xzzx => [(X, Z), (Z, X)],
            FusionType::Yzzy => [(Y, Z), (Z, Y)],
            FusionType::Xyyz => [(X, Y), (Y, Z)],
        }
    }

    /// Symmetric under exchanging the two fusion qubits.
    pub fn is_symmetric(self) -> bool {
        self != FusionType::Xyyz
    }

    /// Gates placed before the standard XX∧ZZ fusion to realise this type.
    pub fn pre_rotation(self) -> PreRotation {
        let i = match self {
            FusionType::Xxzz => 0,
            FusionType::Xzzx => 1,
            FusionType::Xyyx => 2,
            FusionType::Yzzy => 3,
            FusionType::Xyyz => 4,
        };
        PRE_ROTATIONS[i]
    }
}

impl fmt::Display for FusionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FusionType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FusionType::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown fusion type {s:?} (expected xxzz|xyyx|xzzx|yzzy|xyyz)")))
    }
}

/// Local gates applied to (A, B) before a standard XX∧ZZ fusion. The fusion
/// measures `U† X_A X_B U` and `U† Z_A Z_B U` on success (the latter heralds:
/// outcome -1 is success) and `U† Z_A U`, `U† Z_B U` on failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreRotation {
    pub label: &'static str,
    pub a: LocalClifford,
    pub b: LocalClifford,
}

pub const PRE_ROTATIONS: [PreRotation; 7] = [
    PreRotation { label: "1_A 1_B", a: LocalClifford::IDENTITY, b: LocalClifford::IDENTITY },
    PreRotation { label: "1_A H_B", a: LocalClifford::IDENTITY, b: LocalClifford::H },
    PreRotation { label: "Q_A K_B", a: LocalClifford::Q, b: LocalClifford::K },
    PreRotation { label: "R_A K†_B", a: LocalClifford::R, b: LocalClifford::K_DAG },
    PreRotation { label: "Q_A R_B", a: LocalClifford::Q, b: LocalClifford::R },
    PreRotation { label: "Q_A Q_B", a: LocalClifford::Q, b: LocalClifford::Q },
    PreRotation { label: "H_A H_B", a: LocalClifford::H, b: LocalClifford::H },
];

impl PreRotation {
    pub fn success_parities(&self) -> [Parity; 2] {
        [(self.a.pullback(Pauli::X), self.b.pullback(Pauli::X)), (self.a.pullback(Pauli::Z), self.b.pullback(Pauli::Z))]
    }

    pub fn failure_bases(&self) -> Parity {
        (self.a.pullback(Pauli::Z), self.b.pullback(Pauli::Z))
    }
}

/// Reduces a pair of commuting weight-two parities to its class; the flag is
/// set when A and B must be exchanged to reach the representative.
pub fn classify_parity_pair(p1: Parity, p2: Parity) -> Result<(FusionType, bool)> {
    let bad = |why: &str| Err(Error::InvalidPair(format!("{}{} / {}{}: {why}", p1.0, p1.1, p2.0, p2.1)));
    if [p1.0, p1.1, p2.0, p2.1].contains(&Pauli::I) {
        return bad("identity letter");
    }
    if p1.0 == p2.0 || p1.1 == p2.1 {
        return bad("letters on a qubit must differ");
    }
    // the class is the bijection A-letter -> B-letter over all three products
    let mut perm = [Pauli::I; 4];
    perm[p1.0 as usize] = p1.1;
    perm[p2.0 as usize] = p2.1;
    perm[p1.0.third(p2.0) as usize] = p1.1.third(p2.1);
    use Pauli::*;
    let fixed: Vec<Pauli> = Pauli::XYZ.into_iter().filter(|&p| perm[p as usize] == p).collect();
    Ok(match fixed.as_slice() {
        [_, _, _] => (FusionType::Xxzz, false),
        [Z] => (FusionType::Xyyx, false),
        [Y] => (FusionType::Xzzx, false),
        [X] => (FusionType::Yzzy, false),
        [] if perm[X as usize] == Y => (FusionType::Xyyz, false),
        [] => (FusionType::Xyyz, true),
        _ => unreachable!("a permutation of three letters fixing exactly two"),
    })
}

/// The bare-graph fusion class equivalent to fusing `base` on qubits carrying
/// tags `tag_a`, `tag_b`.
pub fn rotated_fusion_of(tag_a: LocalClifford, tag_b: LocalClifford, base: FusionType) -> (FusionType, bool) {
    let [p1, p2] = base.parities();
    let r = |p: Parity| (tag_a.pullback(p.0), tag_b.pullback(p.1));
    classify_parity_pair(r(p1), r(p2)).expect("conjugation preserves a valid pair")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryKind {
    Generic,
    SharedNeighborhood,
    APrivateEmpty,
    BPrivateEmpty,
    IsolatedPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryClass {
    pub kind: BoundaryKind,
    /// A sign-free stabilizer element supported on {A, B} only (identity
    /// letters allowed), present for every non-generic class.
    pub implied: Option<Parity>,
}

impl BoundaryClass {
    pub fn is_generic(&self) -> bool {
        self.kind == BoundaryKind::Generic
    }
}

/// Boundary configuration of the bare graph around the fusion qubits.
pub fn detect_boundary(g: &GraphState, a: usize, b: usize) -> BoundaryClass {
    use Pauli::*;
    let connected = g.has_edge(a, b);
    let na = set::without(g.neighbors(a), b);
    let nb = set::without(g.neighbors(b), a);
    let (kind, implied) = if na.is_empty() && nb.is_empty() {
        (BoundaryKind::IsolatedPair, if connected { (X, Z) } else { (X, I) })
    } else if na == nb {
        (BoundaryKind::SharedNeighborhood, if connected { (Y, Y) } else { (X, X) })
    } else if na.is_empty() {
        (BoundaryKind::APrivateEmpty, if connected { (X, Z) } else { (X, I) })
    } else if nb.is_empty() {
        (BoundaryKind::BPrivateEmpty, if connected { (Z, X) } else { (I, X) })
    } else {
        return BoundaryClass { kind: BoundaryKind::Generic, implied: None };
    };
    BoundaryClass { kind, implied: Some(implied) }
}
