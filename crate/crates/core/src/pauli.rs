//! Pauli operators in symplectic form.
//!
//! A [`PauliOperator`] stores `i^phase · X^x · Z^z`, with the product taken
//! qubit by qubit. Hermitian operators written with `Y` letters therefore carry
//! `phase ≡ x·z (mod 4)` up to a sign: `Y = i·X·Z`.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }
}

impl PauliOperator {
    pub fn identity(k: usize) -> Self {
        Self {
            x: BitVec::zeros(k),
            z: BitVec::zeros(k),
            phase: 0,
        }
    }

    /// Hermitian operator from symplectic parts, positive sign.
    pub fn from_parts(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len());
        let phase = (x.and_count(&z) % 4) as u8;
        Self { x, z, phase }
    }

    /// Raw constructor: `i^phase · X^x · Z^z`.
    pub fn from_raw(x: BitVec, z: BitVec, phase: u8) -> Self {
        assert_eq!(x.len(), z.len());
        Self {
            x,
            z,
            phase: phase % 4,
        }
    }

    /// Positive Hermitian single-qubit Pauli `p` on qubit `q` of `k`.
    pub fn single(k: usize, q: usize, p: Pauli) -> Self {
        let mut out = Self::identity(k);
        let (x, z) = p.bits();
        out.x.set(q, x);
        out.z.set(q, z);
        out.phase = u8::from(x && z);
        out
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let k = letters.len();
        let mut x = BitVec::zeros(k);
        let mut z = BitVec::zeros(k);
        for (q, p) in letters.iter().enumerate() {
            let (a, b) = p.bits();
            x.set(q, a);
            z.set(q, b);
        }
        Self::from_parts(x, z)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn letter(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn weight(&self) -> usize {
        let mut support = self.x.clone();
        support.or_assign(&self.z);
        support.count_ones()
    }

    fn y_count(&self) -> u8 {
        (self.x.and_count(&self.z) % 4) as u8
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase + 4 - self.y_count()).is_multiple_of(2)
    }

    /// `+1` or `-1` relative to the positive Hermitian form; `None` when the
    /// operator carries an imaginary prefactor.
    pub fn sign(&self) -> Option<i8> {
        match (self.phase + 4 - self.y_count()) % 4 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn negate(&mut self) {
        self.phase = (self.phase + 2) % 4;
    }

    /// Same operator with positive Hermitian normalisation.
    pub fn unsigned(&self) -> Self {
        Self::from_parts(self.x.clone(), self.z.clone())
    }

    pub fn eq_mod_phase(&self, other: &Self) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Interleaved symplectic encoding `(x₁, z₁, …, x_k, z_k)`; phase dropped.
    pub fn encode(&self) -> BitVec {
        let k = self.num_qubits();
        let mut out = BitVec::zeros(2 * k);
        for q in self.x.ones() {
            out.set(2 * q, true);
        }
        for q in self.z.ones() {
            out.set(2 * q + 1, true);
        }
        out
    }

    /// Inverse of [`encode`](Self::encode), restoring the Hermitian phase.
    pub fn decode(bits: &BitVec) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return Err(Error::OddEncodingLength(bits.len()));
        }
        let k = bits.len() / 2;
        let mut x = BitVec::zeros(k);
        let mut z = BitVec::zeros(k);
        for i in bits.ones() {
            if i % 2 == 0 {
                x.set(i / 2, true);
            } else {
                z.set(i / 2, true);
            }
        }
        Ok(Self::from_parts(x, z))
    }

    /// Index of this Pauli in `0..4^k` under the interleaved encoding read
    /// little-endian. Only meaningful for `k ≤ 32`.
    pub fn index(&self) -> usize {
        self.encode().to_u64() as usize
    }

    pub fn from_index(index: usize, k: usize) -> Self {
        Self::decode(&BitVec::from_u64(index as u64, 2 * k)).expect("even length")
    }

    /// Symplectic inner product; `true` when the operators commute.
    #[inline]
    pub fn commutes(&self, other: &Self) -> bool {
        debug_assert_eq!(self.num_qubits(), other.num_qubits());
        self.x.dot(&other.z) == other.x.dot(&self.z)
    }

    /// `self · other` with exact phase.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.mul_assign_right(other);
        out
    }

    /// `self ← self · other`.
    pub fn mul_assign_right(&mut self, other: &Self) {
        debug_assert_eq!(self.num_qubits(), other.num_qubits());
        // Z^b X^c = (-1)^{b·c} X^c Z^b
        let swap = u8::from(self.z.dot(&other.x));
        self.phase = (self.phase + other.phase + 2 * swap) % 4;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Tensor product, `self` on the low qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) % 4,
        }
    }

    /// Restriction to qubits `start..start+len`, positive Hermitian form.
    pub fn restrict(&self, start: usize, len: usize) -> Self {
        Self::from_parts(self.x.slice(start, len), self.z.slice(start, len))
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut BitVec, &mut BitVec, &mut u8) {
        (&mut self.x, &mut self.z, &mut self.phase)
    }

    /// Every Pauli on `k` qubits with positive Hermitian form, by index.
    pub fn all(k: usize) -> impl Iterator<Item = PauliOperator> {
        (0..1usize << (2 * k)).map(move |i| Self::from_index(i, k))
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Parses strings such as `"XIZ"`, `"-Y"` or `"+iXX"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPauliString(s.to_string());
        let (mut rest, mut extra) = (s.trim(), 0u8);
        if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            extra += 2;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        if let Some(r) = rest.strip_prefix('i') {
            rest = r;
            extra += 1;
        }
        let letters = rest
            .chars()
            .map(|c| match c {
                'I' | '_' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(bad());
        }
        let mut p = Self::from_letters(&letters);
        p.phase = (p.phase + extra) % 4;
        Ok(p)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match (self.phase + 4 - self.y_count()) % 4 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.num_qubits() {
            let c = match self.letter(q) {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}
