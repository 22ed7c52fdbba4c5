#![allow(dead_code)]

use lrbsim::bits::BitVec;
use lrbsim::clifford::{CliffordTableau, Gate};
use lrbsim::gf2::BitMatrix;
use lrbsim::hidden::RegisterB;
use lrbsim::lrb::{lrb_gate_step, prepare_faulty_initial, qec_round, LrbSetup};
use lrbsim::pauli::PauliOperator;
use lrbsim::qec::{steane_code, StabilizerCode};
use lrbsim::state::StabilizerState;
use nalgebra::Complex;

type C = Complex<f64>;

/// Dense state vector; qubit `q` is bit `q` of the basis index.
#[derive(Clone, Debug)]
pub struct StateVector {
    pub k: usize,
    pub amps: Vec<C>,
}

impl StateVector {
    pub fn zero(k: usize) -> Self {
        let mut amps = vec![C::new(0.0, 0.0); 1 << k];
        amps[0] = C::new(1.0, 0.0);
        Self { k, amps }
    }

    pub fn apply_gate(&mut self, g: Gate) {
        let n = self.amps.len();
        match g {
            Gate::H(q) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..n {
                    if i & (1 << q) == 0 {
                        let j = i | (1 << q);
                        let (a, b) = (self.amps[i], self.amps[j]);
                        self.amps[i] = (a + b) * s;
                        self.amps[j] = (a - b) * s;
                    }
                }
            }
            Gate::S(q) => {
                for i in 0..n {
                    if i & (1 << q) != 0 {
                        self.amps[i] *= C::new(0.0, 1.0);
                    }
                }
            }
            Gate::CX(c, t) => {
                for i in 0..n {
                    if i & (1 << c) != 0 && i & (1 << t) == 0 {
                        self.amps.swap(i, i | (1 << t));
                    }
                }
            }
        }
    }

    /// `P |ψ⟩` with `P = i^phase X^x Z^z`.
    pub fn pauli_image(&self, p: &PauliOperator) -> Vec<C> {
        let (mut xm, mut zm) = (0usize, 0usize);
        for q in 0..self.k {
            if p.x().get(q) {
                xm |= 1 << q;
            }
            if p.z().get(q) {
                zm |= 1 << q;
            }
        }
        let phase = C::new(0.0, 1.0).powu(p.phase() as u32);
        let mut out = vec![C::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let sign = if (b & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[b ^ xm] += a * phase * sign;
        }
        out
    }

    pub fn apply_pauli(&mut self, p: &PauliOperator) {
        self.amps = self.pauli_image(p);
    }

    pub fn expectation(&self, p: &PauliOperator) -> C {
        self.amps
            .iter()
            .zip(self.pauli_image(p))
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn zero_probability(&self) -> f64 {
        self.amps[0].norm_sqr()
    }
}

/// Random word over `H`, `S` and (for `k ≥ 2`) `CX`.
pub fn random_gates<R: rand::Rng>(k: usize, len: usize, rng: &mut R) -> Vec<Gate> {
    (0..len)
        .map(|_| {
            let choices = if k >= 2 { 3 } else { 2 };
            match rng.gen_range(0..choices) {
                0 => Gate::H(rng.gen_range(0..k)),
                1 => Gate::S(rng.gen_range(0..k)),
                _ => {
                    let c = rng.gen_range(0..k);
                    let t = (c + rng.gen_range(1..k)) % k;
                    Gate::CX(c, t)
                }
            }
        })
        .collect()
}

/// Linear syndrome permutation realising `π ∘ update_G ∘ π⁻¹` on states with
/// nothing set outside the window.
fn syndrome_map(setup: &LrbSetup, g: &CliffordTableau) -> CliffordTableau {
    let len = setup.decoder().syndrome_len();
    let mut m = BitMatrix::identity(len);
    for &w in setup.pi().window() {
        let mut e = BitVec::zeros(len);
        e.set(w, true);
        let mut b = RegisterB::from_bits(setup.pi().invert(&e)).unwrap();
        b.update(g);
        let image = setup.pi().apply(b.bits());
        for i in 0..len {
            m.set(i, w, image.get(i));
        }
    }
    CliffordTableau::from_linear_map(&m).expect("invertible wiring")
}

fn encoded_syndrome(code: &StabilizerCode, state: &StabilizerState) -> BitVec {
    let mut s = BitVec::zeros(code.num_checks());
    for (j, g) in code.generators().iter().enumerate() {
        match state.expectation(g) {
            Some(1) => {}
            Some(-1) => s.set(j, true),
            _ => panic!("syndrome not deterministic"),
        }
    }
    s
}

/// Survival of one `k = 1`, `r = 0` LRB sequence simulated on all seven
/// physical qubits, with every gate conjugated by the encoder.
pub fn encoded_lrb_probability(gates: &[CliffordTableau]) -> f64 {
    let code = steane_code();
    let setup = LrbSetup::steane(1, 1).unwrap();
    let enc = code.encoder().unwrap();
    let dec = enc.inverse();
    let mut phys = StabilizerState::zero(7);
    phys.apply_clifford(&enc);
    let initial = prepare_faulty_initial(&setup);
    phys.apply_pauli(&code.pure_error(&initial.syndrome));
    for g in gates {
        let local = g.tensor(&syndrome_map(&setup, g));
        let v = enc.compose(&local.compose(&dec));
        phys.apply_clifford(&v);
        let s = encoded_syndrome(&code, &phys);
        let correction = setup.decoder().decode(&s);
        phys.apply_pauli(&code.logical_operator(&correction));
    }
    phys.apply_clifford(&dec);
    phys.marginal_zero_probability(&[0])
}

/// Same sequence in the unencoded frame.
pub fn unencoded_lrb_probability(gates: &[CliffordTableau]) -> f64 {
    let setup = LrbSetup::steane(1, 1).unwrap();
    let mut state = prepare_faulty_initial(&setup);
    let mut rng = lrbsim::rng::aux_rng(0, 0);
    for g in gates {
        lrb_gate_step(&mut state, &setup, g);
        qec_round(&mut state, &setup, 0.0, &mut rng);
    }
    state.logical.survival(&StabilizerState::zero(1))
}

/// `m − 1` random single-qubit Cliffords followed by their inverse.
pub fn random_lrb_gates<R: rand::Rng>(m: usize, rng: &mut R) -> Vec<CliffordTableau> {
    let mut gates = Vec::with_capacity(m);
    let mut total = CliffordTableau::identity(1);
    for _ in 0..m - 1 {
        let g = CliffordTableau::random(1, rng);
        total = g.compose(&total);
        gates.push(g);
    }
    gates.push(total.inverse());
    gates
}

/// Tableau state and dense state agree on every stabilizer expectation and
/// on the all-zero overlap.
pub fn states_agree(tab: &StabilizerState, dense: &StateVector, tol: f64) -> bool {
    let stabs_ok = tab.stabilizers().all(|g| {
        let e = dense.expectation(g);
        (e.re - 1.0).abs() < tol && e.im.abs() < tol
    });
    let zero = StabilizerState::zero(tab.num_qubits());
    stabs_ok && (tab.survival(&zero) - dense.zero_probability()).abs() < tol
}
