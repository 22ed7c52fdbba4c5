//! Hidden classical memories that remember the gate history.
//!
//! Register B holds the interleaved encoding of an A-destabilizer and follows
//! every Clifford covariantly, `P ↦ G P G†`. The noise map reads it back and
//! applies the stored Pauli to register A. Register C adds a period-τ counter
//! whose trigger bit gates that application.

use crate::bits::BitVec;
use crate::clifford::CliffordTableau;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::state::StabilizerState;

/// Encoding `B(P)` of the stored destabilizer, `2k` bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegisterB {
    bits: BitVec,
}

impl RegisterB {
    /// Stores `B(P₀)`; the identity is rejected since it would never disturb
    /// register A.
    pub fn new(p0: &PauliOperator) -> Result<Self> {
        if p0.is_identity() {
            return Err(Error::IdentityDestabilizer);
        }
        Ok(Self { bits: p0.encode() })
    }

    /// Wraps raw register contents (any bit pattern, including all zeros).
    pub fn from_bits(bits: BitVec) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return Err(Error::OddEncodingLength(bits.len()));
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn num_qubits(&self) -> usize {
        self.bits.len() / 2
    }

    /// Stored Pauli in positive Hermitian form.
    pub fn pauli(&self) -> PauliOperator {
        PauliOperator::decode(&self.bits).expect("even length")
    }

    /// `B(P) ↦ B(G P G†)`.
    pub fn update(&mut self, g: &CliffordTableau) {
        self.bits = g.conjugate(&self.pauli()).encode();
    }
}

/// Period-τ counter with a trigger bit.
///
/// Transitions: `(i, t) ↦ (i + 1, t)` for `i ≤ τ − 3`, `(τ − 2, t) ↦ (τ − 1, ¬t)`
/// and `(τ − 1, t) ↦ (0, ¬t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegisterC {
    counter: usize,
    trigger: bool,
    tau: usize,
}

impl RegisterC {
    /// Register in the state that precedes counter value 0, `(τ − 1, 1)`.
    ///
    /// From here the trigger is next raised by the τ-th advance.
    pub fn new(tau: usize) -> Result<Self> {
        Self::with_state(tau, tau.saturating_sub(1), true)
    }

    pub fn with_state(tau: usize, counter: usize, trigger: bool) -> Result<Self> {
        if tau < 2 {
            return Err(Error::InvalidPeriod(tau));
        }
        if counter >= tau {
            return Err(Error::InvalidParameter(format!(
                "counter {counter} out of range for tau {tau}"
            )));
        }
        Ok(Self {
            counter,
            trigger,
            tau,
        })
    }

    pub fn counter(&self) -> usize {
        self.counter
    }

    pub fn trigger(&self) -> bool {
        self.trigger
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn advance(&mut self) {
        if self.counter + 2 >= self.tau {
            self.trigger = !self.trigger;
        }
        self.counter = (self.counter + 1) % self.tau;
    }
}

/// Applies the Pauli stored in register B to register A.
pub fn noise_apply(state: &mut StabilizerState, b: &RegisterB) {
    state.apply_pauli(&b.pauli());
}

/// Advances register C, then applies register B's Pauli when the trigger is
/// raised.
pub fn noise_apply_triggered(state: &mut StabilizerState, b: &RegisterB, c: &mut RegisterC) {
    c.advance();
    if c.trigger() {
        noise_apply(state, b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Gate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn init_encodes_destabilizer() {
        let b = RegisterB::new(&p("XI")).unwrap();
        assert_eq!(b.bits().to_string(), "1000");
        assert_eq!(RegisterB::new(&p("II")), Err(Error::IdentityDestabilizer));
        assert!(b.pauli().eq_mod_phase(&p("XI")));
    }

    #[test]
    fn update_follows_conjugation() {
        let mut b = RegisterB::new(&p("X")).unwrap();
        b.update(&CliffordTableau::identity(1));
        assert_eq!(b.bits().to_string(), "10");
        b.update(&CliffordTableau::from_generators(1, &[Gate::H(0)]).unwrap());
        assert_eq!(b.bits().to_string(), "01");
    }

    #[test]
    fn sequential_updates_compose() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let g1 = CliffordTableau::random(3, &mut rng);
            let g2 = CliffordTableau::random(3, &mut rng);
            let mut a = RegisterB::new(&p("XZY")).unwrap();
            a.update(&g1);
            a.update(&g2);
            let mut b = RegisterB::new(&p("XZY")).unwrap();
            b.update(&g2.compose(&g1));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn noise_is_an_involution() {
        let mut s = StabilizerState::zero(2);
        let zero = RegisterB::from_bits(BitVec::zeros(4)).unwrap();
        noise_apply(&mut s, &zero);
        assert_eq!(s, StabilizerState::zero(2));
        let b = RegisterB::new(&p("XI")).unwrap();
        noise_apply(&mut s, &b);
        assert_eq!(s.survival(&StabilizerState::zero(2)), 0.0);
        noise_apply(&mut s, &b);
        assert_eq!(s, StabilizerState::zero(2));
    }

    #[test]
    fn counter_transitions() {
        let mut c = RegisterC::with_state(4, 0, false).unwrap();
        c.advance();
        assert_eq!((c.counter(), c.trigger()), (1, false));
        let mut c = RegisterC::with_state(4, 2, false).unwrap();
        c.advance();
        assert_eq!((c.counter(), c.trigger()), (3, true));
        c.advance();
        assert_eq!((c.counter(), c.trigger()), (0, false));
        assert_eq!(RegisterC::new(1), Err(Error::InvalidPeriod(1)));
    }

    #[test]
    fn trigger_fires_on_calls_congruent_to_tau_minus_one() {
        for tau in 2..7 {
            let mut c = RegisterC::new(tau).unwrap();
            for call in 0..10 * tau {
                c.advance();
                assert_eq!(c.trigger(), call % tau == tau - 1, "tau {tau} call {call}");
            }
        }
    }

    #[test]
    fn triggered_noise_waits_for_tau() {
        let tau = 4;
        let b = RegisterB::new(&p("XI")).unwrap();
        let mut c = RegisterC::new(tau).unwrap();
        let mut s = StabilizerState::zero(2);
        for _ in 0..tau - 1 {
            noise_apply_triggered(&mut s, &b, &mut c);
            assert_eq!(s, StabilizerState::zero(2));
        }
        noise_apply_triggered(&mut s, &b, &mut c);
        assert_eq!(s.survival(&StabilizerState::zero(2)), 0.0);
    }

    #[test]
    fn tau_two_fires_every_second_call() {
        // Trace oracle: calls 1, 3, 5, … apply the stored Pauli.
        let b = RegisterB::new(&p("X")).unwrap();
        let mut c = RegisterC::new(2).unwrap();
        let mut s = StabilizerState::zero(1);
        let mut plain = StabilizerState::zero(1);
        for call in 0..8 {
            noise_apply_triggered(&mut s, &b, &mut c);
            if call % 2 == 1 {
                noise_apply(&mut plain, &b);
            }
            assert_eq!(s, plain);
        }
    }

    #[test]
    fn two_tau_covariant_calls_restore_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for tau in 2..6 {
            let mut s = StabilizerState::zero(3);
            let mut b = RegisterB::new(&s.default_destabilizer()).unwrap();
            let mut c = RegisterC::new(tau).unwrap();
            let mut total = CliffordTableau::identity(3);
            for _ in 0..2 * tau {
                let g = CliffordTableau::random(3, &mut rng);
                total = g.compose(&total);
                s.apply_clifford(&g);
                b.update(&g);
                noise_apply_triggered(&mut s, &b, &mut c);
            }
            let mut expected = StabilizerState::zero(3);
            expected.apply_clifford(&total);
            assert_eq!(s.survival(&expected), 1.0);
        }
    }
}
