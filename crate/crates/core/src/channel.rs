//! Pauli-basis superoperators, the exact Clifford twirl and the survival
//! formula `p(m) = tr(Q ℰ T^m Q)` for `k ≤ 2`.
//!
//! A superoperator acts on Pauli coordinates `c_a = tr(D_a ρ)` where `D_a` is
//! the positive Hermitian Pauli with index `a` (see [`PauliOperator::index`]).
//! Its matrix is `R[b][a] = 2^{-k} tr(D_b ℰ(D_a))`.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::clifford::CliffordTableau;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator};

/// Largest qubit count accepted by the dense routines in this module.
pub const MAX_DENSE_QUBITS: usize = 2;

pub type CMatrix = DMatrix<Complex<f64>>;

/// Real `4^k × 4^k` Pauli transfer matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Superoperator {
    k: usize,
    matrix: DMatrix<f64>,
}

fn dim(k: usize) -> usize {
    1 << (2 * k)
}

impl Superoperator {
    pub fn from_matrix(k: usize, matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != dim(k) || matrix.ncols() != dim(k) {
            return Err(Error::InvalidParameter(format!(
                "superoperator for {k} qubits must be {0}x{0}",
                dim(k)
            )));
        }
        Ok(Self { k, matrix })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            k,
            matrix: DMatrix::identity(dim(k), dim(k)),
        }
    }

    /// Global depolarizing channel: `1` on the identity component, `1 − p`
    /// elsewhere.
    pub fn depolarizing(k: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("depolarizing p = {p}")));
        }
        let mut diag = vec![1.0 - p; dim(k)];
        diag[0] = 1.0;
        Ok(Self {
            k,
            matrix: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)),
        })
    }

    /// Signed permutation `D_a ↦ G D_a G†`.
    pub fn from_clifford(g: &CliffordTableau) -> Self {
        let k = g.num_qubits();
        let mut matrix = DMatrix::zeros(dim(k), dim(k));
        for a in 0..dim(k) {
            let image = g.conjugate(&PauliOperator::from_index(a, k));
            let sign = image.sign().expect("Hermitian image") as f64;
            matrix[(image.index(), a)] = sign;
        }
        Self { k, matrix }
    }

    /// Channel `ρ ↦ Σ K ρ K†`.
    pub fn from_kraus(k: usize, kraus: &[CMatrix]) -> Result<Self> {
        if k > MAX_DENSE_QUBITS {
            return Err(Error::TooManyQubits(k));
        }
        let paulis: Vec<CMatrix> = (0..dim(k))
            .map(|a| pauli_matrix(&PauliOperator::from_index(a, k)))
            .collect();
        let norm = 1.0 / (1u64 << k) as f64;
        let mut matrix = DMatrix::zeros(dim(k), dim(k));
        for (a, da) in paulis.iter().enumerate() {
            let mut out = CMatrix::zeros(1 << k, 1 << k);
            for op in kraus {
                out += op * da * op.adjoint();
            }
            for (b, db) in paulis.iter().enumerate() {
                matrix[(b, a)] = (db * &out).trace().re * norm;
            }
        }
        Ok(Self { k, matrix })
    }

    /// Random mixture of three Haar-like unitaries with random weights.
    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<Self> {
        let weights: Vec<f64> = (0..3).map(|_| rng.gen::<f64>() + 0.05).collect();
        let total: f64 = weights.iter().sum();
        let kraus: Vec<CMatrix> = weights
            .iter()
            .map(|w| random_unitary(1 << k, rng) * Complex::new((w / total).sqrt(), 0.0))
            .collect();
        Self::from_kraus(k, &kraus)
    }

    pub fn num_qubits(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Superoperator) -> Superoperator {
        Self {
            k: self.k,
            matrix: &self.matrix * &first.matrix,
        }
    }
}

/// Dense `2^k × 2^k` matrix of a Pauli operator including its phase. Qubit 0
/// is the most significant tensor factor.
pub fn pauli_matrix(p: &PauliOperator) -> CMatrix {
    let zero = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let i = Complex::new(0.0, 1.0);
    let mut out = CMatrix::from_element(1, 1, one);
    for q in 0..p.num_qubits() {
        let m = match p.letter(q) {
            Pauli::I => CMatrix::from_row_slice(2, 2, &[one, zero, zero, one]),
            Pauli::X => CMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
            Pauli::Y => CMatrix::from_row_slice(2, 2, &[zero, -i, i, zero]),
            Pauli::Z => CMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
        };
        out = out.kronecker(&m);
    }
    // `letter` yields Hermitian letters; the stored phase is relative to
    // X^x Z^z, so rebase it onto the letter product.
    let y_count = (0..p.num_qubits())
        .filter(|&q| p.letter(q) == Pauli::Y)
        .count();
    let phase = (p.phase() as usize + 4 - (y_count % 4)) % 4;
    out * i.powu(phase as u32)
}

fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    g.qr().q()
}

/// Exact twirl of a channel over the full Clifford group.
#[derive(Clone, Debug, PartialEq)]
pub struct TwirlOracle {
    k: usize,
    t: DMatrix<f64>,
}

impl TwirlOracle {
    pub fn num_qubits(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.t
    }

    /// `max_G ‖T σ̄_G − σ̄_G T‖_max`.
    pub fn commutation_residual(&self, group: &[Superoperator]) -> f64 {
        group
            .iter()
            .map(|g| {
                let d = &self.t * g.matrix() - g.matrix() * &self.t;
                d.amax()
            })
            .fold(0.0, f64::max)
    }
}

/// Pauli transfer matrices of every element of the `k`-qubit Clifford group.
pub fn group_superoperators(k: usize) -> Result<Vec<Superoperator>> {
    Ok(CliffordTableau::enumerate(k)?
        .iter()
        .map(Superoperator::from_clifford)
        .collect())
}

/// `T = |C_k|⁻¹ Σ_G σ̄_G ℰ σ̄_G⁻¹` by enumeration.
pub fn twirl_exact(channel: &Superoperator, k: usize) -> Result<TwirlOracle> {
    if k > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits(k));
    }
    if channel.k != k {
        return Err(Error::QubitMismatch {
            expected: k,
            got: channel.k,
        });
    }
    let group = group_superoperators(k)?;
    let mut t = DMatrix::zeros(dim(k), dim(k));
    for g in &group {
        // Signed permutations are orthogonal, so σ̄⁻¹ = σ̄ᵀ.
        t += g.matrix() * channel.matrix() * g.matrix().transpose();
    }
    t /= group.len() as f64;
    Ok(TwirlOracle { k, t })
}

/// `tr(Q ℰ T^m Q)` with `Q = |0⟩⟨0|^{⊗k}`.
///
/// `m` counts the random gates; an RB sequence of length `L` (including the
/// inverse) corresponds to `m = L − 1`.
pub fn exact_survival(m: usize, channel: &Superoperator, k: usize) -> Result<f64> {
    let twirl = twirl_exact(channel, k)?;
    Ok(exact_survival_with(m, channel, &twirl))
}

/// As [`exact_survival`] with a precomputed twirl.
pub fn exact_survival_with(m: usize, channel: &Superoperator, twirl: &TwirlOracle) -> f64 {
    let k = channel.k;
    let q = nalgebra::DVector::from_fn(dim(k), |a, _| {
        if PauliOperator::from_index(a, k).x().is_zero() {
            1.0
        } else {
            0.0
        }
    });
    let mut v = q.clone();
    for _ in 0..m {
        v = twirl.matrix() * v;
    }
    v = channel.matrix() * v;
    q.dot(&v) / (1u64 << k) as f64
}
