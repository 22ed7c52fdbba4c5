//! Standard randomized benchmarking on the stabilizer engine.

use rand::Rng;

use crate::clifford::CliffordTableau;
use crate::curve::{SurvivalCurve, SurvivalPoint};
use crate::error::{Error, Result};
use crate::hidden::{noise_apply, noise_apply_triggered, RegisterB, RegisterC};
use crate::pauli::PauliOperator;
use crate::rng::{sequence_rng, SimRng};
use crate::state::StabilizerState;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseModel {
    Ideal,
    /// With probability `p` a uniformly random k-qubit Pauli (identity
    /// included) follows each gate.
    Depolarizing { p: f64 },
    /// Applies the destabilizer stored in register B after every gate.
    HiddenRegister,
    /// As `HiddenRegister`, gated by a period-τ trigger.
    HiddenRegisterTau { tau: usize },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::Depolarizing { p } if !(0.0..=1.0).contains(&p) => Err(
                Error::InvalidParameter(format!("depolarizing p = {p} not in [0, 1]")),
            ),
            NoiseModel::HiddenRegisterTau { tau } if tau < 2 => Err(Error::InvalidPeriod(tau)),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RbConfig {
    pub k: usize,
    pub model: NoiseModel,
    pub m_values: Vec<usize>,
    pub n_sequences: usize,
    pub seed: u64,
}

impl RbConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        if let Some(&m) = self.m_values.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidParameter(format!(
                "sequence length {m} must exceed 1"
            )));
        }
        if self.n_sequences == 0 {
            return Err(Error::InvalidParameter("n_sequences must be positive".into()));
        }
        self.model.validate()
    }
}

/// Register-A state plus whatever memory the noise model carries.
struct NoisyDevice {
    state: StabilizerState,
    b: Option<RegisterB>,
    c: Option<RegisterC>,
    model: NoiseModel,
}

impl NoisyDevice {
    fn new(k: usize, model: NoiseModel) -> Result<Self> {
        let state = StabilizerState::zero(k);
        let (b, c) = match model {
            NoiseModel::HiddenRegister => (Some(RegisterB::new(&state.default_destabilizer())?), None),
            NoiseModel::HiddenRegisterTau { tau } => (
                Some(RegisterB::new(&state.default_destabilizer())?),
                Some(RegisterC::new(tau)?),
            ),
            _ => (None, None),
        };
        Ok(Self { state, b, c, model })
    }

    fn step<R: Rng + ?Sized>(&mut self, g: &CliffordTableau, rng: &mut R) {
        self.state.apply_clifford(g);
        if let Some(b) = &mut self.b {
            b.update(g);
        }
        match self.model {
            NoiseModel::Ideal => {}
            NoiseModel::Depolarizing { p } => {
                if rng.gen::<f64>() < p {
                    let k = self.state.num_qubits();
                    let mut bits = crate::bits::BitVec::zeros(2 * k);
                    for i in 0..2 * k {
                        bits.set(i, rng.gen());
                    }
                    let pauli = PauliOperator::decode(&bits).expect("even length");
                    self.state.apply_pauli(&pauli);
                }
            }
            NoiseModel::HiddenRegister => noise_apply(&mut self.state, self.b.as_ref().unwrap()),
            NoiseModel::HiddenRegisterTau { .. } => noise_apply_triggered(
                &mut self.state,
                self.b.as_ref().unwrap(),
                self.c.as_mut().unwrap(),
            ),
        }
    }
}

/// Draws the `{I − Q, Q}` outcome: `1` when the survival event occurs.
pub(crate) fn sample_outcome<R: Rng + ?Sized>(prob: f64, rng: &mut R) -> u8 {
    if prob >= 1.0 {
        1
    } else if prob <= 0.0 {
        0
    } else {
        u8::from(rng.gen::<f64>() < prob)
    }
}

/// One RB sequence of length `m`: `m − 1` random gates and their inverse, each
/// followed by the model's noise, then the survival measurement.
pub fn run_rb_sequence(m: usize, config: &RbConfig, rng: &mut SimRng) -> Result<u8> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "sequence length {m} must exceed 1"
        )));
    }
    let k = config.k;
    let mut device = NoisyDevice::new(k, config.model)?;
    let mut total = CliffordTableau::identity(k);
    for _ in 0..m - 1 {
        let g = CliffordTableau::random(k, rng);
        total = g.compose(&total);
        device.step(&g, rng);
    }
    device.step(&total.inverse(), rng);
    let prob = device.state.survival(&StabilizerState::zero(k));
    Ok(sample_outcome(prob, rng))
}

/// Sums `f(m, index)` over `0..n` on the worker pool when available.
pub(crate) fn count_successes<F>(n: usize, f: F) -> Result<u64>
where
    F: Fn(usize) -> Result<u8> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .map(|i| f(i).map(u64::from))
            .try_reduce(|| 0, |a, b| Ok(a + b))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(|i| f(i).map(u64::from)).sum()
    }
}

pub fn estimate_survival(config: &RbConfig) -> Result<SurvivalCurve> {
    config.validate()?;
    let mut points = Vec::with_capacity(config.m_values.len());
    for &m in &config.m_values {
        let successes = count_successes(config.n_sequences, |i| {
            let mut rng = sequence_rng(config.seed, m, i);
            run_rb_sequence(m, config, &mut rng)
        })?;
        points.push(SurvivalPoint::from_counts(m, successes, config.n_sequences));
    }
    Ok(SurvivalCurve::new(model_label(&config.model), config.seed, points))
}

pub fn model_label(model: &NoiseModel) -> String {
    match model {
        NoiseModel::Ideal => "ideal".into(),
        NoiseModel::Depolarizing { p } => format!("depolarizing(p={p})"),
        NoiseModel::HiddenRegister => "hidden_register".into(),
        NoiseModel::HiddenRegisterTau { tau } => format!("hidden_register_tau(tau={tau})"),
    }
}
