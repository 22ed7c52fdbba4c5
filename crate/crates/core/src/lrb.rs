//! Logical randomized benchmarking in the unencoded frame.
//!
//! The logical register is a `k`-qubit stabilizer state; the syndrome
//! register is classical. Register B lives in the syndrome bits as
//! `π(B(P))`, so every QEC round decodes it and applies the stored
//! destabilizer to the logical state. With shielding, copies `1..c` of
//! register B occupy the trailing syndrome bits (padding checks that the
//! decoder ignores) and copy 0 is the `π` window itself.

use std::sync::Arc;

use rand::Rng;

use crate::bits::BitVec;
use crate::clifford::CliffordTableau;
use crate::curve::{SurvivalCurve, SurvivalPoint};
use crate::error::{Error, Result};
use crate::qec::{
    build_pi, min_weight_decoder, reset_syndrome, steane_code, Decoder, PiMap, StabilizerCode,
    Syndrome,
};
use crate::rb::{count_successes, sample_outcome};
use crate::rng::{sequence_rng, SimRng};
use crate::shield::ShieldMatrix;
use crate::state::StabilizerState;

/// Decoder, `π` and register layout shared by every sequence.
#[derive(Clone, Debug)]
pub struct LrbSetup {
    k: usize,
    n: usize,
    copies: usize,
    decoder: Decoder,
    pi: PiMap,
    shield_offset: usize,
    /// Syndrome bits that may ever be set.
    mask: BitVec,
}

impl LrbSetup {
    /// `decoder` acts on the first `n − k − 2k(c − 1)` syndrome bits' blocks;
    /// the remaining `2k(c − 1)` bits hold the extra copies.
    pub fn new(n: usize, decoder: Decoder, copies: usize) -> Result<Self> {
        let k = decoder.num_logical();
        if k == 0 || copies == 0 {
            return Err(Error::InvalidParameter(
                "need at least one logical qubit and one copy".into(),
            ));
        }
        let syndrome_len = decoder.syndrome_len();
        if syndrome_len + k != n {
            return Err(Error::InvalidCode(format!(
                "{syndrome_len} syndrome bits and {k} logical qubits do not fill {n} qubits"
            )));
        }
        if copies == 1 && n <= 3 * k {
            return Err(Error::InvalidParameter(format!(
                "code needs n > 3k, got n = {n}, k = {k}"
            )));
        }
        if copies > 1 && n <= k * (1 + 2 * copies) {
            return Err(Error::InvalidParameter(format!(
                "{copies} copies need n > k(1 + 2c) = {}, got n = {n}",
                k * (1 + 2 * copies)
            )));
        }
        let cap = (n - k) / (2 * k);
        if copies > cap {
            return Err(Error::InvalidParameter(format!(
                "at most {cap} copies fit in {} syndrome bits",
                n - k
            )));
        }
        let pi = build_pi(&decoder)?;
        let shield_bits = 2 * k * (copies - 1);
        let shield_offset = syndrome_len
            .checked_sub(shield_bits)
            .ok_or_else(|| Error::InvalidParameter("syndrome register too small".into()))?;
        if pi.window().iter().any(|&w| w >= shield_offset) {
            return Err(Error::InvalidParameter(
                "shield copies would overlap the decoder window".into(),
            ));
        }
        let mut mask = BitVec::zeros(syndrome_len);
        for &w in pi.window() {
            mask.set(w, true);
        }
        for i in shield_offset..syndrome_len {
            mask.set(i, true);
        }
        Ok(Self {
            k,
            n,
            copies,
            decoder,
            pi,
            shield_offset,
            mask,
        })
    }

    /// Minimum-weight decoder of a small code (no shield).
    pub fn from_code(code: &StabilizerCode) -> Result<Self> {
        let (decoder, _) = min_weight_decoder(code)?;
        Self::new(code.num_physical(), decoder, 1)
    }

    /// `k` Steane blocks, padded with `2k(c − 1)` trivially checked qubits
    /// when `copies > 1`.
    pub fn steane(k: usize, copies: usize) -> Result<Self> {
        if k == 0 || copies == 0 {
            return Err(Error::InvalidParameter("k and copies must be positive".into()));
        }
        let (block, _) = min_weight_decoder(&steane_code())?;
        let mut parts = vec![block; k];
        let padding = 2 * k * (copies - 1);
        if padding > 0 {
            parts.push(Decoder::silent(padding));
        }
        Self::new(7 * k + padding, Decoder::product(&parts), copies)
    }

    pub fn num_logical(&self) -> usize {
        self.k
    }

    pub fn num_physical(&self) -> usize {
        self.n
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn decoder(&self) -> &Decoder {
        &self.decoder
    }

    pub fn pi(&self) -> &PiMap {
        &self.pi
    }

    fn shield_row_range(&self, row: usize) -> (usize, usize) {
        let w = 2 * self.k;
        (self.shield_offset + (row - 1) * w, w)
    }

    fn read_shield(&self, syndrome: &Syndrome) -> ShieldMatrix {
        let mut rows = Vec::with_capacity(self.copies);
        rows.push(self.pi.invert(syndrome));
        for row in 1..self.copies {
            let (start, len) = self.shield_row_range(row);
            rows.push(syndrome.slice(start, len));
        }
        ShieldMatrix::from_rows(rows).expect("consistent rows")
    }

    fn write_shield(&self, shield: &ShieldMatrix, syndrome: &mut Syndrome) {
        self.pi.apply_into(&shield.rows()[0], syndrome);
        for row in 1..self.copies {
            let (start, _) = self.shield_row_range(row);
            syndrome.splice(start, &shield.rows()[row]);
        }
    }
}

#[derive(Clone, Debug)]
pub struct LrbConfig {
    pub setup: Arc<LrbSetup>,
    pub reset_prob: f64,
    pub m_values: Vec<usize>,
    pub n_sequences: usize,
    pub seed: u64,
}

impl LrbConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.reset_prob) {
            return Err(Error::InvalidParameter(format!(
                "reset probability {} not in [0, 1]",
                self.reset_prob
            )));
        }
        if let Some(&m) = self.m_values.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidParameter(format!(
                "sequence length {m} must be at least 2"
            )));
        }
        if self.n_sequences == 0 {
            return Err(Error::InvalidParameter("n_sequences must be positive".into()));
        }
        Ok(())
    }
}

/// Logical state plus classical syndrome bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnencodedState {
    pub logical: StabilizerState,
    pub syndrome: Syndrome,
}

impl UnencodedState {
    pub fn measure_syndrome(&self) -> Syndrome {
        self.syndrome.clone()
    }
}

/// `|0⟩^⊗k` with register B (every copy) holding `B(P₀)`, `P₀` the default
/// destabilizer.
pub fn prepare_faulty_initial(setup: &LrbSetup) -> UnencodedState {
    let logical = StabilizerState::zero(setup.k);
    let b = logical.default_destabilizer().encode();
    let mut syndrome = BitVec::zeros(setup.decoder.syndrome_len());
    let shield = ShieldMatrix::replicate(&b, setup.copies).expect("copies > 0");
    setup.write_shield(&shield, &mut syndrome);
    UnencodedState { logical, syndrome }
}

/// Applies `G` to the logical state and covariantly updates register B
/// (consensus and broadcast across copies).
pub fn lrb_gate_step(state: &mut UnencodedState, setup: &LrbSetup, g: &CliffordTableau) {
    state.logical.apply_clifford(g);
    let mut shield = setup.read_shield(&state.syndrome);
    shield.update(g);
    setup.write_shield(&shield, &mut state.syndrome);
}

/// Decodes the syndrome, applies the correction, then resets each syndrome
/// bit with probability `r`.
pub fn qec_round<R: Rng + ?Sized>(state: &mut UnencodedState, setup: &LrbSetup, r: f64, rng: &mut R) {
    let correction = setup.decoder.decode(&state.syndrome);
    state.logical.apply_pauli(&correction);
    reset_syndrome(&mut state.syndrome, r, rng);
}

/// Fails when a syndrome bit outside register B is set.
pub fn check_outside_window(state: &UnencodedState, setup: &LrbSetup) -> Result<()> {
    // stray = syndrome ∧ ¬mask
    let mut stray = state.syndrome.clone();
    stray.xor_assign(&setup.mask);
    stray.or_assign(&setup.mask);
    stray.xor_assign(&setup.mask);
    if let Some(bit) = stray.first_one() {
        return Err(Error::Invariant(format!(
            "syndrome bit {bit} outside register B is set"
        )));
    }
    Ok(())
}

/// Survival probability of one LRB sequence: faulty preparation, `m − 1`
/// random logical gates and the inverse, each followed by a QEC round.
pub fn lrb_sequence_probability(m: usize, config: &LrbConfig, rng: &mut SimRng) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "sequence length {m} must be at least 2"
        )));
    }
    let setup = &*config.setup;
    let k = setup.k;
    let mut state = prepare_faulty_initial(setup);
    let mut total = CliffordTableau::identity(k);
    for _ in 0..m - 1 {
        let g = CliffordTableau::random(k, rng);
        total = g.compose(&total);
        lrb_gate_step(&mut state, setup, &g);
        qec_round(&mut state, setup, config.reset_prob, rng);
    }
    lrb_gate_step(&mut state, setup, &total.inverse());
    qec_round(&mut state, setup, config.reset_prob, rng);
    check_outside_window(&state, setup)?;
    Ok(state.logical.survival(&StabilizerState::zero(k)))
}

pub fn run_lrb_sequence(m: usize, config: &LrbConfig, rng: &mut SimRng) -> Result<u8> {
    let prob = lrb_sequence_probability(m, config, rng)?;
    Ok(sample_outcome(prob, rng))
}

pub fn estimate_lrb_survival(config: &LrbConfig) -> Result<SurvivalCurve> {
    config.validate()?;
    let mut points = Vec::with_capacity(config.m_values.len());
    for &m in &config.m_values {
        let successes = count_successes(config.n_sequences, |i| {
            let mut rng = sequence_rng(config.seed, m, i);
            run_lrb_sequence(m, config, &mut rng)
        })?;
        points.push(SurvivalPoint::from_counts(m, successes, config.n_sequences));
    }
    let label = format!(
        "lrb(k={}, c={}, r={})",
        config.setup.k, config.setup.copies, config.reset_prob
    );
    Ok(SurvivalCurve::new(label, config.seed, points))
}
