//! Dense stabilizer tableau over GF(2), used as the reference simulator.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::clifford::{LocalClifford, Pauli};
use crate::error::{Error, Result};
use crate::graph::GraphState;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(64)] }
    }
    pub fn len(&self) -> usize {
        self.len
    }
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// A Hermitian Pauli operator with a ±1 sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub neg: bool,
    pub x: Bits,
    pub z: Bits,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { neg: false, x: Bits::zeros(n), z: Bits::zeros(n) }
    }

    /// Product of single-qubit Paulis on the listed qubits.
    pub fn from_sparse(n: usize, ops: &[(usize, Pauli)]) -> Self {
        let mut p = Self::identity(n);
        for &(q, op) in ops {
            p.set(q, op);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.x.len
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn commutes(&self, other: &PauliString) -> bool {
        let mut acc = 0u64;
        for i in 0..self.x.words.len() {
            acc ^= (self.x.words[i] & other.z.words[i]) ^ (self.z.words[i] & other.x.words[i]);
        }
        acc.count_ones().is_multiple_of(2)
    }

    /// `self <- self * rhs` for commuting operands; the product stays Hermitian.
    pub fn mul_assign(&mut self, rhs: &PauliString) {
        // tally the power of i picked up qubit by qubit, 64 at a time
        let mut cnt1 = 0u64;
        let mut cnt2 = 0u64;
        for i in 0..self.x.words.len() {
            let (x1, z1) = (self.x.words[i], self.z.words[i]);
            let (x2, z2) = (rhs.x.words[i], rhs.z.words[i]);
            let nx = x1 ^ x2;
            let nz = z1 ^ z2;
            let x1z2 = x1 & z2;
            let anti = (x2 & z1) ^ x1z2;
            cnt2 ^= (cnt1 ^ nx ^ nz ^ x1z2) & anti;
            cnt1 ^= anti;
            self.x.words[i] = nx;
            self.z.words[i] = nz;
        }
        let log_i = (cnt1.count_ones() + 2 * cnt2.count_ones()) % 4;
        debug_assert!(log_i.is_multiple_of(2), "product of anticommuting Paulis");
        self.neg ^= rhs.neg ^ (log_i == 2);
    }

    fn conjugate(&mut self, q: usize, c: LocalClifford) {
        let img = c.apply(self.get(q));
        self.set(q, img.pauli);
        self.neg ^= img.neg;
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.neg { '-' } else { '+' })?;
        for q in 0..self.n() {
            write!(f, "{}", self.get(q))?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (neg, body) = match s.chars().next() {
            Some('+') => (false, &s[1..]),
            Some('-') => (true, &s[1..]),
            _ => (false, s),
        };
        let mut p = PauliString::identity(body.chars().count());
        p.neg = neg;
        for (q, ch) in body.chars().enumerate() {
            p.set(q, Pauli::from_letter(ch).ok_or_else(|| Error::Parse(format!("bad pauli letter {ch:?}")))?);
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measurement {
    /// +1 or -1
    pub outcome: i8,
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    rows: Vec<PauliString>,
}

impl StabilizerTableau {
    pub fn new(rows: Vec<PauliString>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.n() != n) {
            return Err(Error::SizeMismatch(r.n(), n));
        }
        Ok(StabilizerTableau { n, rows })
    }

    /// |0…0⟩
    pub fn zero_state(n: usize) -> Self {
        let rows = (0..n).map(|q| PauliString::from_sparse(n, &[(q, Pauli::Z)])).collect();
        StabilizerTableau { n, rows }
    }

    /// Generators X_v Z_{N(v)} with the vertex tags applied. Removed vertices
    /// become decoupled +Z placeholders so qubit indices match vertex ids.
    pub fn from_graph(g: &GraphState) -> Self {
        let n = g.n();
        let mut rows = Vec::with_capacity(n);
        for v in 0..n {
            let mut p = PauliString::identity(n);
            if g.is_alive(v) {
                p.x.set(v, true);
                for &w in g.neighbors(v) {
                    p.z.set(w, true);
                }
            } else {
                p.z.set(v, true);
            }
            rows.push(p);
        }
        let mut t = StabilizerTableau { n, rows };
        for v in g.alive_vertices() {
            let c = g.clifford(v);
            if !c.is_identity() {
                t.apply_clifford(v, c);
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.rows
    }

    /// State update `|ψ⟩ -> C_q |ψ⟩`.
    pub fn apply_clifford(&mut self, q: usize, c: LocalClifford) {
        for r in &mut self.rows {
            if r.x.get(q) || r.z.get(q) {
                r.conjugate(q, c);
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.rows[i].commutes(&self.rows[j]) {
                    return false;
                }
            }
        }
        self.canonical_form().is_ok()
    }

    /// Measures `p`; a random outcome comes from `forced` if given, else `rng`.
    pub fn measure_pauli<R: Rng + ?Sized>(
        &mut self,
        p: &PauliString,
        forced: Option<i8>,
        rng: &mut R,
    ) -> Result<Measurement> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch(p.n(), self.n));
        }
        if p.is_identity() {
            return Err(Error::Parse("cannot measure the identity".into()));
        }
        let first = self.rows.iter().position(|r| !r.commutes(p));
        match first {
            Some(i) => {
                let pivot = self.rows[i].clone();
                for j in i + 1..self.n {
                    if !self.rows[j].commutes(p) {
                        self.rows[j].mul_assign(&pivot);
                    }
                }
                let outcome = forced.unwrap_or_else(|| if rng.gen::<bool>() { 1 } else { -1 });
                let mut q = p.clone();
                q.neg = p.neg ^ (outcome < 0);
                self.rows[i] = q;
                Ok(Measurement { outcome, deterministic: false })
            }
            None => {
                let value = self.expectation(p)?;
                if forced.is_some_and(|f| f != value) {
                    return Err(Error::Contradiction);
                }
                Ok(Measurement { outcome: value, deterministic: true })
            }
        }
    }

    /// ±1 for an operator commuting with the whole group (±p must be an element).
    fn expectation(&self, p: &PauliString) -> Result<i8> {
        let canon = self.canonical_form()?;
        let mut residual = p.clone();
        residual.neg = false;
        for r in &canon.rows {
            let col = leading_column(r, self.n).expect("full-rank row");
            if column_bit(&residual, col, self.n) {
                residual.mul_assign(r);
            }
        }
        if !residual.is_identity() {
            return Err(Error::Parse("operator commutes with the group but is not in it".into()));
        }
        Ok(if residual.neg == p.neg { 1 } else { -1 })
    }

    /// Reduced row-echelon form with column order x_0..x_{n-1}, z_0..z_{n-1}.
    pub fn canonical_form(&self) -> Result<StabilizerTableau> {
        let n = self.n;
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..2 * n {
            let Some(p) = (rank..n).find(|&i| column_bit(&rows[i], col, n)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && column_bit(r, col, n) {
                    r.mul_assign(&pivot);
                }
            }
            rank += 1;
        }
        if rank < n {
            return Err(Error::RankDeficient { rank, n });
        }
        Ok(StabilizerTableau { n, rows })
    }

    pub fn groups_equal_mod_signs(&self, other: &StabilizerTableau) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let a = self.canonical_form()?;
        let b = other.canonical_form()?;
        Ok(a.rows.iter().zip(&b.rows).all(|(r, s)| r.x == s.x && r.z == s.z))
    }

    /// Same stabilizer group including signs.
    pub fn same_state(&self, other: &StabilizerTableau) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    /// Makes `qubits` a decoupled |0⟩ block after they have been measured
    /// onto a product with the rest: generators touching them are eliminated
    /// down to a pivot set that is then replaced by +Z placeholders.
    pub(crate) fn detach(&mut self, qubits: &[usize]) {
        let n = self.n;
        let mut pivots: Vec<usize> = Vec::new();
        for &q in qubits {
            for col in [q, n + q] {
                let Some(p) = (0..n).find(|&i| !pivots.contains(&i) && column_bit(&self.rows[i], col, n)) else {
                    continue;
                };
                let pivot = self.rows[p].clone();
                for i in 0..n {
                    if i != p && !pivots.contains(&i) && column_bit(&self.rows[i], col, n) {
                        self.rows[i].mul_assign(&pivot);
                    }
                }
                pivots.push(p);
            }
        }
        debug_assert_eq!(pivots.len(), qubits.len(), "measured qubits not in a product state");
        pivots.sort_unstable();
        for (&row, &q) in pivots.iter().zip(qubits) {
            self.rows[row] = PauliString::from_sparse(n, &[(q, Pauli::Z)]);
        }
    }

    /// Locally equivalent graph state plus tags with `from_graph` equal to
    /// `self` up to signs.
    pub fn to_graph(&self) -> Result<(GraphState, Vec<LocalClifford>)> {
        let n = self.n;
        let mut xs: Vec<Bits> = self.rows.iter().map(|r| r.x.clone()).collect();
        let mut zs: Vec<Bits> = self.rows.iter().map(|r| r.z.clone()).collect();
        let xor_row = |xs: &mut Vec<Bits>, zs: &mut Vec<Bits>, dst: usize, src: usize| {
            for w in 0..xs[dst].words.len() {
                let (sx, sz) = (xs[src].words[w], zs[src].words[w]);
                xs[dst].words[w] ^= sx;
                zs[dst].words[w] ^= sz;
            }
        };
        // pass 1: echelon form of the X block
        let mut pivot_cols = vec![false; n];
        let mut rank = 0;
        for (col, pivot) in pivot_cols.iter_mut().enumerate() {
            let Some(p) = (rank..n).find(|&i| xs[i].get(col)) else { continue };
            xs.swap(rank, p);
            zs.swap(rank, p);
            for i in 0..n {
                if i != rank && xs[i].get(col) {
                    xor_row(&mut xs, &mut zs, i, rank);
                }
            }
            *pivot = true;
            rank += 1;
        }
        // columns without an X pivot get a Hadamard
        let hadamard: Vec<bool> = pivot_cols.iter().map(|&p| !p).collect();
        for q in (0..n).filter(|&q| hadamard[q]) {
            for i in 0..n {
                let (x, z) = (xs[i].get(q), zs[i].get(q));
                xs[i].set(q, z);
                zs[i].set(q, x);
            }
        }
        // pass 2: X block to the identity
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| xs[i].get(col)) else {
                return Err(Error::RankDeficient { rank: col, n });
            };
            xs.swap(col, p);
            zs.swap(col, p);
            for i in 0..n {
                if i != col && xs[i].get(col) {
                    xor_row(&mut xs, &mut zs, i, col);
                }
            }
        }
        let mut g = GraphState::new(n);
        let mut tags = vec![LocalClifford::IDENTITY; n];
        for (i, z) in zs.iter().enumerate() {
            for j in i + 1..n {
                if z.get(j) {
                    g.toggle_edge(i, j).expect("valid edge");
                }
            }
            let phase = z.get(i);
            tags[i] = match (hadamard[i], phase) {
                (false, false) => LocalClifford::IDENTITY,
                (true, false) => LocalClifford::H,
                (false, true) => LocalClifford::R,
                (true, true) => LocalClifford::H.mul(LocalClifford::R),
            };
        }
        for (v, &c) in tags.iter().enumerate() {
            g.set_clifford(v, c)?;
        }
        Ok((g, tags))
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for StabilizerTableau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rows = s.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>>>()?;
        StabilizerTableau::new(rows)
    }
}

#[inline]
fn column_bit(r: &PauliString, col: usize, n: usize) -> bool {
    if col < n {
        r.x.get(col)
    } else {
        r.z.get(col - n)
    }
}

fn leading_column(r: &PauliString, n: usize) -> Option<usize> {
    (0..2 * n).find(|&c| column_bit(r, c, n))
}
