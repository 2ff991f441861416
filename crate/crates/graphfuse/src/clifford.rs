//! Single-qubit Paulis and the 24-element local Clifford group (modulo phase),
//! stored as the signed images of X and Z under conjugation `P -> C P C†`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const XYZ: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn commutes_with(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    /// `self * other = i^k * result`, returns `(k mod 4, result)`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (X, X) | (Y, Y) | (Z, Z) => (0, I),
            (X, Y) => (1, Z),
            (Y, X) => (3, Z),
            (Y, Z) => (1, X),
            (Z, Y) => (3, X),
            (Z, X) => (1, Y),
            (X, Z) => (3, Y),
        }
    }

    /// The remaining letter of {X, Y, Z} given two distinct non-identity letters.
    pub fn third(self, other: Pauli) -> Pauli {
        self.mul(other).1
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    pub neg: bool,
    pub pauli: Pauli,
}

impl SignedPauli {
    pub const fn plus(pauli: Pauli) -> Self {
        SignedPauli { neg: false, pauli }
    }
    pub const fn minus(pauli: Pauli) -> Self {
        SignedPauli { neg: true, pauli }
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.neg { '-' } else { '+' }, self.pauli)
    }
}

/// A single-qubit Clifford modulo global phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalClifford {
    x: SignedPauli,
    z: SignedPauli,
}

impl Default for LocalClifford {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl LocalClifford {
    pub const IDENTITY: Self = Self::raw(SignedPauli::plus(Pauli::X), SignedPauli::plus(Pauli::Z));
    /// Hadamard: X <-> Z.
    pub const H: Self = Self::raw(SignedPauli::plus(Pauli::Z), SignedPauli::plus(Pauli::X));
    /// Phase gate diag(1, i): X -> Y, Z -> Z.
    pub const R: Self = Self::raw(SignedPauli::plus(Pauli::Y), SignedPauli::plus(Pauli::Z));
    /// H R H: X -> X, Z -> -Y (a square root of X).
    pub const Q: Self = Self::raw(SignedPauli::plus(Pauli::X), SignedPauli::minus(Pauli::Y));
    /// R H: X -> Z -> Y -> X.
    pub const K: Self = Self::raw(SignedPauli::plus(Pauli::Z), SignedPauli::plus(Pauli::Y));
    /// H R†: X -> Y -> Z -> X.
    pub const K_DAG: Self = Self::raw(SignedPauli::plus(Pauli::Y), SignedPauli::plus(Pauli::X));
    pub const PAULI_X: Self = Self::raw(SignedPauli::plus(Pauli::X), SignedPauli::minus(Pauli::Z));
    pub const PAULI_Z: Self = Self::raw(SignedPauli::minus(Pauli::X), SignedPauli::plus(Pauli::Z));

    const fn raw(x: SignedPauli, z: SignedPauli) -> Self {
        LocalClifford { x, z }
    }

    /// Builds the element with the given images of X and Z; they must be
    /// distinct non-identity letters.
    pub fn from_images(x: SignedPauli, z: SignedPauli) -> Result<Self> {
        if x.pauli == Pauli::I || z.pauli == Pauli::I || x.pauli == z.pauli {
            return Err(Error::Parse(format!("images {x}, {z} do not anticommute")));
        }
        Ok(Self::raw(x, z))
    }

    pub fn image_x(self) -> SignedPauli {
        self.x
    }
    pub fn image_z(self) -> SignedPauli {
        self.z
    }

    /// C Y C† = i C(X) C(Z).
    pub fn image_y(self) -> SignedPauli {
        let (k, p) = self.x.pauli.mul(self.z.pauli);
        // i * i^k must be real: k is odd
        let neg = ((k + 1) % 4 == 2) ^ self.x.neg ^ self.z.neg;
        SignedPauli { neg, pauli: p }
    }

    /// Conjugation action `C P C†`.
    pub fn apply(self, p: Pauli) -> SignedPauli {
        match p {
            Pauli::I => SignedPauli::plus(Pauli::I),
            Pauli::X => self.x,
            Pauli::Y => self.image_y(),
            Pauli::Z => self.z,
        }
    }

    fn apply_signed(self, p: SignedPauli) -> SignedPauli {
        let mut r = self.apply(p.pauli);
        r.neg ^= p.neg;
        r
    }

    /// Operator product `self · rhs`: `rhs` acts first.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: LocalClifford) -> LocalClifford {
        Self::raw(self.apply_signed(rhs.x), self.apply_signed(rhs.z))
    }

    /// `self` followed by `next`.
    pub fn then(self, next: LocalClifford) -> LocalClifford {
        next.mul(self)
    }

    pub fn inverse(self) -> LocalClifford {
        // the inverse maps C(X) -> X and C(Z) -> Z; solve on the three letters
        let mut img = [SignedPauli::plus(Pauli::I); 4];
        for p in Pauli::XYZ {
            let q = self.apply(p);
            img[q.pauli as usize] = SignedPauli { neg: q.neg, pauli: p };
        }
        Self::raw(img[Pauli::X as usize], img[Pauli::Z as usize])
    }

    /// Heisenberg-picture image `C† P C`, sign dropped.
    pub fn pullback(self, p: Pauli) -> Pauli {
        self.inverse().apply(p).pauli
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    /// Position in the fixed enumeration of all 24 elements.
    pub fn index(self) -> usize {
        let letters = |p: Pauli| p as usize - 1;
        let xi = letters(self.x.pauli);
        let zslot = (letters(self.z.pauli) + 3 - xi) % 3 - 1;
        ((xi * 2 + zslot) * 2 + self.x.neg as usize) * 2 + self.z.neg as usize
    }

    pub fn all() -> &'static [LocalClifford; 24] {
        &table().elements
    }

    /// Shortest word over {H, R} (ties broken lexicographically) in operator
    /// order, so "RH" means H first. The identity is written "I".
    pub fn word(self) -> &'static str {
        &table().words[self.index()]
    }

    /// Parses a word over {I, H, R} in operator order.
    pub fn from_word(word: &str) -> Result<Self> {
        let mut c = Self::IDENTITY;
        for ch in word.trim().chars() {
            let g = match ch {
                'I' => Self::IDENTITY,
                'H' => Self::H,
                'R' => Self::R,
                _ => return Err(Error::Parse(format!("bad clifford word {word:?}"))),
            };
            c = c.mul(g);
        }
        Ok(c)
    }
}

impl fmt::Display for LocalClifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

struct Table {
    elements: [LocalClifford; 24],
    words: Vec<String>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut elements = [LocalClifford::IDENTITY; 24];
        let mut words: Vec<Option<String>> = vec![None; 24];
        words[LocalClifford::IDENTITY.index()] = Some("I".to_string());
        elements[LocalClifford::IDENTITY.index()] = LocalClifford::IDENTITY;
        let mut found = 1;
        let mut len = 1;
        while found < 24 {
            // words of this length in lexicographic order ('H' < 'R')
            for bits in 0u32..(1 << len) {
                let w: String = (0..len).rev().map(|i| if bits >> i & 1 == 0 { 'H' } else { 'R' }).collect();
                let c = LocalClifford::from_word(&w).unwrap();
                let i = c.index();
                if words[i].is_none() {
                    words[i] = Some(w);
                    elements[i] = c;
                    found += 1;
                }
            }
            len += 1;
        }
        Table { elements, words: words.into_iter().map(Option::unwrap).collect() }
    })
}
