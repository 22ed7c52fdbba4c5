//! Clifford unitaries as tableaux of Pauli images.
//!
//! A [`CliffordTableau`] on `k` qubits stores `G X_q G†` and `G Z_q G†` for
//! every qubit `q`. Row `2q` is the image of `X_q` and row `2q + 1` the image
//! of `Z_q`, so the symplectic part read row by row is the binary matrix whose
//! action on interleaved encodings is the sign-free shadow of the Pauli
//! transfer matrix.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Echelon};
use crate::pauli::PauliOperator;

/// Generators of the Clifford group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    /// Controlled-X with `(control, target)`.
    CX(usize, usize),
}

impl Gate {
    fn max_qubit(&self) -> usize {
        match *self {
            Gate::H(q) | Gate::S(q) => q,
            Gate::CX(c, t) => c.max(t),
        }
    }

    /// Conjugates `p` in place: `p ← g p g†`.
    pub fn conjugate_in_place(&self, p: &mut PauliOperator) {
        let (x, z, phase) = p.parts_mut();
        match *self {
            Gate::H(q) => {
                let (a, b) = (x.get(q), z.get(q));
                if a && b {
                    *phase = (*phase + 2) % 4;
                }
                x.set(q, b);
                z.set(q, a);
            }
            Gate::S(q) => {
                if x.get(q) {
                    *phase = (*phase + 1) % 4;
                    z.flip(q);
                }
            }
            Gate::CX(c, t) => {
                if x.get(c) {
                    x.flip(t);
                }
                if z.get(t) {
                    z.flip(c);
                }
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    k: usize,
    images: Vec<PauliOperator>,
}

impl CliffordTableau {
    pub fn identity(k: usize) -> Self {
        let images = (0..2 * k)
            .map(|i| {
                let mut bits = BitVec::zeros(2 * k);
                bits.set(i, true);
                PauliOperator::decode(&bits).expect("even")
            })
            .collect();
        Self { k, images }
    }

    /// Tableau from explicit images `[G X_0 G†, G Z_0 G†, G X_1 G†, …]`.
    ///
    /// Images must be Hermitian and satisfy the canonical commutation
    /// relations.
    pub fn from_images(images: Vec<PauliOperator>) -> Result<Self> {
        if !images.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter("odd number of tableau rows".into()));
        }
        let k = images.len() / 2;
        if let Some(p) = images.iter().find(|p| p.num_qubits() != k) {
            return Err(Error::QubitMismatch {
                expected: k,
                got: p.num_qubits(),
            });
        }
        if images.iter().any(|p| !p.is_hermitian()) {
            return Err(Error::InvalidParameter("tableau rows must be Hermitian".into()));
        }
        let t = Self { k, images };
        if !t.is_symplectic() {
            return Err(Error::InvalidParameter(
                "tableau rows violate the commutation relations".into(),
            ));
        }
        Ok(t)
    }

    /// Composes the conjugation actions of `gates`, applied first to last.
    pub fn from_generators(k: usize, gates: &[Gate]) -> Result<Self> {
        let mut t = Self::identity(k);
        for g in gates {
            t.apply_gate(*g)?;
        }
        Ok(t)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.k
    }

    pub fn images(&self) -> &[PauliOperator] {
        &self.images
    }

    pub fn x_image(&self, q: usize) -> &PauliOperator {
        &self.images[2 * q]
    }

    pub fn z_image(&self, q: usize) -> &PauliOperator {
        &self.images[2 * q + 1]
    }

    /// Sign bits of the images (`true` for a negative image).
    pub fn phases(&self) -> Vec<bool> {
        self.images.iter().map(|p| p.sign() == Some(-1)).collect()
    }

    /// `self ← gate ∘ self`.
    pub fn apply_gate(&mut self, gate: Gate) -> Result<()> {
        if gate.max_qubit() >= self.k {
            return Err(Error::QubitOutOfRange {
                index: gate.max_qubit(),
                qubits: self.k,
            });
        }
        if let Gate::CX(c, t) = gate {
            if c == t {
                return Err(Error::InvalidParameter("CX control equals target".into()));
            }
        }
        for p in &mut self.images {
            gate.conjugate_in_place(p);
        }
        Ok(())
    }

    /// `G P G†` with the phase tracked exactly.
    pub fn conjugate(&self, p: &PauliOperator) -> PauliOperator {
        assert_eq!(p.num_qubits(), self.k, "qubit count mismatch");
        let mut out = PauliOperator::from_raw(BitVec::zeros(self.k), BitVec::zeros(self.k), p.phase());
        for q in p.x().ones() {
            out.mul_assign_right(&self.images[2 * q]);
        }
        for q in p.z().ones() {
            out.mul_assign_right(&self.images[2 * q + 1]);
        }
        out
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &CliffordTableau) -> CliffordTableau {
        assert_eq!(self.k, first.k);
        CliffordTableau {
            k: self.k,
            images: first.images.iter().map(|p| self.conjugate(p)).collect(),
        }
    }

    pub fn inverse(&self) -> CliffordTableau {
        let n = 2 * self.k;
        let rows: Vec<BitVec> = self.images.iter().map(PauliOperator::encode).collect();
        // For symplectic S, S⁻¹ = Λ Sᵀ Λ, so (S⁻¹)[i][l] = S[l^1][i^1].
        let mut images: Vec<PauliOperator> = (0..n)
            .map(|i| {
                let mut row = BitVec::zeros(n);
                for l in 0..n {
                    if rows[l ^ 1].get(i ^ 1) {
                        row.set(l, true);
                    }
                }
                PauliOperator::decode(&row).expect("even")
            })
            .collect();
        let id = Self::identity(self.k);
        for (i, q) in images.iter_mut().enumerate() {
            let back = self.conjugate(q);
            debug_assert!(back.eq_mod_phase(&id.images[i]));
            if back.sign() == Some(-1) {
                q.negate();
            }
        }
        CliffordTableau { k: self.k, images }
    }

    /// Binary symplectic matrix: row `i` is the encoding of image `i`.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.images.iter().map(PauliOperator::encode).collect(), 2 * self.k)
    }

    /// Checks `S Λ Sᵀ = Λ` over GF(2).
    pub fn is_symplectic(&self) -> bool {
        let rows: Vec<BitVec> = self.images.iter().map(PauliOperator::encode).collect();
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if rows[i].symplectic_dot(&rows[j]) != ((i ^ 1) == j) {
                    return false;
                }
            }
        }
        true
    }

    /// Uniformly random Clifford (modulo global phase).
    ///
    /// Images of `X_q, Z_q` are drawn pair by pair: `X_q` uniformly from the
    /// non-zero vectors of the current symplectic complement, `Z_q` uniformly
    /// from the vectors there with symplectic product one. The number of
    /// choices at each step does not depend on earlier draws, so the
    /// symplectic part is uniform; independent sign bits complete the group.
    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Self {
        let n = 2 * k;
        let mut basis: Vec<BitVec> = (0..n)
            .map(|i| {
                let mut v = BitVec::zeros(n);
                v.set(i, true);
                v
            })
            .collect();
        let mut images = Vec::with_capacity(n);
        let combo = |basis: &[BitVec], rng: &mut R| {
            let mut v = BitVec::zeros(n);
            for b in basis {
                if rng.gen::<bool>() {
                    v.xor_assign(b);
                }
            }
            v
        };
        for _ in 0..k {
            let a = loop {
                let v = combo(&basis, rng);
                if !v.is_zero() {
                    break v;
                }
            };
            let b = loop {
                let v = combo(&basis, rng);
                if a.symplectic_dot(&v) {
                    break v;
                }
            };
            let mut next = Echelon::new(n);
            let mut reduced = Vec::with_capacity(basis.len().saturating_sub(2));
            for v in &basis {
                let mut w = v.clone();
                if v.symplectic_dot(&b) {
                    w.xor_assign(&a);
                }
                if v.symplectic_dot(&a) {
                    w.xor_assign(&b);
                }
                if next.insert(&w) {
                    reduced.push(w);
                }
            }
            basis = reduced;
            images.push(a);
            images.push(b);
        }
        let images = images
            .into_iter()
            .map(|v| {
                let mut p = PauliOperator::decode(&v).expect("even");
                if rng.gen::<bool>() {
                    p.negate();
                }
                p
            })
            .collect();
        Self { k, images }
    }

    /// Every Clifford on `k ≤ 2` qubits modulo global phase, in breadth-first
    /// order from the identity over the `H`, `S`, `CX` generators.
    pub fn enumerate(k: usize) -> Result<Vec<CliffordTableau>> {
        if k > 2 {
            return Err(Error::TooManyQubits(k));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        static CACHE: [OnceLock<Vec<CliffordTableau>>; 2] = [OnceLock::new(), OnceLock::new()];
        Ok(CACHE[k - 1].get_or_init(|| Self::breadth_first(k)).clone())
    }

    fn breadth_first(k: usize) -> Vec<CliffordTableau> {
        let mut gens = Vec::new();
        for q in 0..k {
            gens.push(Gate::H(q));
            gens.push(Gate::S(q));
        }
        for c in 0..k {
            for t in 0..k {
                if c != t {
                    gens.push(Gate::CX(c, t));
                }
            }
        }
        let start = Self::identity(k);
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start.clone()]);
        let mut out = vec![start];
        while let Some(t) = queue.pop_front() {
            for g in &gens {
                let mut next = t.clone();
                next.apply_gate(*g).expect("in range");
                if seen.insert(next.clone()) {
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        out
    }

    /// Tableau of the linear reversible map `|b⟩ ↦ |M b⟩` on computational
    /// basis states; `None` when `m` is singular.
    pub fn from_linear_map(m: &BitMatrix) -> Option<Self> {
        let k = m.num_rows();
        assert_eq!(k, m.num_cols());
        let inv_t = m.inverse()?.transpose();
        let mut images = Vec::with_capacity(2 * k);
        for j in 0..k {
            // X_j ↦ X^{M e_j}, Z_j ↦ Z^{M^{-T} e_j}
            let mut x = BitVec::zeros(k);
            let mut z = BitVec::zeros(k);
            for i in 0..k {
                x.set(i, m.get(i, j));
                z.set(i, inv_t.get(i, j));
            }
            images.push(PauliOperator::from_parts(x, BitVec::zeros(k)));
            images.push(PauliOperator::from_parts(BitVec::zeros(k), z));
        }
        Some(Self { k, images })
    }

    /// `self ⊗ other`, `self` on the low qubits.
    pub fn tensor(&self, other: &CliffordTableau) -> CliffordTableau {
        let id_hi = PauliOperator::identity(other.k);
        let id_lo = PauliOperator::identity(self.k);
        let mut images: Vec<PauliOperator> =
            self.images.iter().map(|p| p.tensor(&id_hi)).collect();
        images.extend(other.images.iter().map(|p| id_lo.tensor(p)));
        CliffordTableau {
            k: self.k + other.k,
            images,
        }
    }
}

impl fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_list();
        for p in &self.images {
            d.entry(&format_args!("{p}"));
        }
        d.finish()
    }
}
