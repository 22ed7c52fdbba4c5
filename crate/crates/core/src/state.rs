//! Pure stabilizer states with destabilizer tracking.

use crate::bits::BitVec;
use crate::clifford::CliffordTableau;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::pauli::PauliOperator;

/// Stabilizer state `C|0…0⟩` held as the tableau of `C`.
///
/// The images of `Z_q` are the stabilizer generators and the images of `X_q`
/// the matching destabilizers, so destabilizer `q` anticommutes with
/// stabilizer `q` and commutes with every other generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StabilizerState {
    tableau: CliffordTableau,
}

impl StabilizerState {
    /// `|0⟩^⊗k`.
    pub fn zero(k: usize) -> Self {
        Self {
            tableau: CliffordTableau::identity(k),
        }
    }

    /// The state `C|0…0⟩`.
    pub fn from_tableau(tableau: CliffordTableau) -> Self {
        Self { tableau }
    }

    pub fn tableau(&self) -> &CliffordTableau {
        &self.tableau
    }

    pub fn num_qubits(&self) -> usize {
        self.tableau.num_qubits()
    }

    pub fn stabilizer(&self, q: usize) -> &PauliOperator {
        self.tableau.z_image(q)
    }

    pub fn destabilizer(&self, q: usize) -> &PauliOperator {
        self.tableau.x_image(q)
    }

    pub fn stabilizers(&self) -> impl Iterator<Item = &PauliOperator> {
        (0..self.num_qubits()).map(|q| self.stabilizer(q))
    }

    pub fn destabilizers(&self) -> impl Iterator<Item = &PauliOperator> {
        (0..self.num_qubits()).map(|q| self.destabilizer(q))
    }

    /// `ρ ← G ρ G†`.
    pub fn apply_clifford(&mut self, g: &CliffordTableau) {
        assert_eq!(g.num_qubits(), self.num_qubits(), "qubit count mismatch");
        self.tableau = g.compose(&self.tableau);
        debug_assert!(self.check_invariants().is_ok());
    }

    /// `ρ ← P ρ P†`: generators anticommuting with `P` change sign.
    pub fn apply_pauli(&mut self, p: &PauliOperator) {
        assert_eq!(p.num_qubits(), self.num_qubits(), "qubit count mismatch");
        if p.is_identity() {
            return;
        }
        let mut images = self.tableau.images().to_vec();
        for g in &mut images {
            if !g.commutes(p) {
                g.negate();
            }
        }
        self.tableau = CliffordTableau::from_images(images).expect("signs do not affect validity");
    }

    /// Fixed non-identity destabilizer: the generator paired with the first
    /// stabilizer row (`X₁` for `|0⟩^⊗k`).
    pub fn default_destabilizer(&self) -> PauliOperator {
        self.destabilizer(0).clone()
    }

    /// `tr(Q ρ)` where `Q` is the projector onto the pure state `other`.
    pub fn survival(&self, other: &StabilizerState) -> f64 {
        assert_eq!(self.num_qubits(), other.num_qubits());
        let relative = other.tableau.inverse().compose(&self.tableau);
        let qubits: Vec<usize> = (0..self.num_qubits()).collect();
        StabilizerState::from_tableau(relative).marginal_zero_probability(&qubits)
    }

    /// Probability that measuring `qubits` in the computational basis gives
    /// all zeros.
    pub fn marginal_zero_probability(&self, qubits: &[usize]) -> f64 {
        let k = self.num_qubits();
        let mut inside = vec![false; k];
        for &q in qubits {
            inside[q] = true;
        }
        let outside: Vec<usize> = (0..k).filter(|&q| !inside[q]).collect();
        let blocked = k + outside.len();
        // Columns: X part, Z part outside the measured set, then an identity
        // block recording which generators were combined.
        let mut m = BitMatrix::zeros(k, blocked + k);
        for (r, g) in self.stabilizers().enumerate() {
            for q in g.x().ones() {
                m.set(r, q, true);
            }
            for (c, &q) in outside.iter().enumerate() {
                if g.z().get(q) {
                    m.set(r, k + c, true);
                }
            }
            m.set(r, blocked + r, true);
        }
        let pivots = m.row_reduce();
        let rank = pivots.iter().filter(|&&c| c < blocked).count();
        for r in rank..k {
            let mut prod = PauliOperator::identity(k);
            for c in 0..k {
                if m.get(r, blocked + c) {
                    prod.mul_assign_right(self.stabilizer(c));
                }
            }
            if prod.sign() != Some(1) {
                return 0.0;
            }
        }
        let dim = (k - rank) as i32;
        2f64.powi(dim - qubits.len() as i32)
    }

    /// Deterministic outcome `±1` of measuring Hermitian `p`, or `None` when
    /// the outcome is uniformly random.
    pub fn expectation(&self, p: &PauliOperator) -> Option<i8> {
        if self.stabilizers().any(|s| !s.commutes(p)) {
            return None;
        }
        let mut prod = PauliOperator::identity(self.num_qubits());
        for q in 0..self.num_qubits() {
            if !self.destabilizer(q).commutes(p) {
                prod.mul_assign_right(self.stabilizer(q));
            }
        }
        debug_assert!(prod.eq_mod_phase(p));
        let s = prod.sign()? * p.sign()?;
        Some(s)
    }

    /// Checks the generator commutation structure.
    pub fn check_invariants(&self) -> Result<()> {
        let k = self.num_qubits();
        for i in 0..k {
            for j in 0..k {
                let (s_i, s_j) = (self.stabilizer(i), self.stabilizer(j));
                if !s_i.commutes(s_j) {
                    return Err(Error::Invariant(format!("stabilizers {i} and {j} anticommute")));
                }
                let anti = !self.destabilizer(i).commutes(s_j);
                if anti != (i == j) {
                    return Err(Error::Invariant(format!(
                        "destabilizer {i} / stabilizer {j} commutation is wrong"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &StabilizerState) -> StabilizerState {
        StabilizerState::from_tableau(self.tableau.tensor(&other.tableau))
    }

    /// Computational basis state `|b⟩`.
    pub fn basis(bits: &BitVec) -> StabilizerState {
        let k = bits.len();
        let mut s = StabilizerState::zero(k);
        for q in bits.ones() {
            s.apply_pauli(&PauliOperator::single(k, q, crate::pauli::Pauli::X));
        }
        s
    }
}
