use lrbsim::channel::{group_superoperators, pauli_matrix, twirl_exact, CMatrix, Superoperator};
use lrbsim::pauli::PauliOperator;
use nalgebra::{Complex, DMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// The 24 single-qubit Cliffords as dense unitaries, generated from `H` and
/// `S` and deduplicated up to global phase.
fn dense_cliffords() -> Vec<CMatrix> {
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let h = CMatrix::from_row_slice(2, 2, &[c(s2, 0.0), c(s2, 0.0), c(s2, 0.0), c(-s2, 0.0)]);
    let s = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]);
    let same_up_to_phase = |a: &CMatrix, b: &CMatrix| (a.adjoint() * b).trace().norm() > 2.0 - 1e-9;
    let mut group = vec![CMatrix::identity(2, 2)];
    let mut frontier = group.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in &frontier {
            for g in [&h, &s] {
                let v = g * u;
                if !group.iter().any(|w| same_up_to_phase(w, &v)) {
                    group.push(v.clone());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    group
}

fn dense_twirl(kraus: &[CMatrix]) -> DMatrix<f64> {
    let group = dense_cliffords();
    assert_eq!(group.len(), 24);
    let paulis: Vec<CMatrix> = (0..4).map(|a| pauli_matrix(&PauliOperator::from_index(a, 1))).collect();
    let mut t = DMatrix::zeros(4, 4);
    for (a, da) in paulis.iter().enumerate() {
        let mut out = CMatrix::zeros(2, 2);
        for u in &group {
            let inner = u.adjoint() * da * u;
            let mut e = CMatrix::zeros(2, 2);
            for k in kraus {
                e += k * &inner * k.adjoint();
            }
            out += u * e * u.adjoint();
        }
        out /= c(24.0, 0.0);
        for (b, db) in paulis.iter().enumerate() {
            t[(b, a)] = (db * &out).trace().re / 2.0;
        }
    }
    t
}

fn amplitude_damping(gamma: f64) -> Vec<CMatrix> {
    vec![
        CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c((1.0 - gamma).sqrt(), 0.0)]),
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(gamma.sqrt(), 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
    ]
}

#[test]
fn twirl_matches_dense_average() {
    let kraus = amplitude_damping(0.3);
    let e = Superoperator::from_kraus(1, &kraus).unwrap();
    let t = twirl_exact(&e, 1).unwrap();
    assert!((t.matrix() - dense_twirl(&kraus)).amax() < 1e-12);
}

#[test]
fn depolarizing_twirl_by_brute_force() {
    // ρ ↦ (1 − p)ρ + p I/2 written with Kraus operators.
    let p: f64 = 0.1;
    let mut kraus = vec![CMatrix::identity(2, 2) * c((1.0 - 3.0 * p / 4.0).sqrt(), 0.0)];
    for a in 1..4 {
        kraus.push(pauli_matrix(&PauliOperator::from_index(a, 1)) * c((p / 4.0).sqrt(), 0.0));
    }
    let t = dense_twirl(&kraus);
    let want = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 0.9, 0.9, 0.9]));
    assert!((t - &want).amax() < 1e-12);
    let lib = Superoperator::depolarizing(1, p).unwrap();
    assert!((lib.matrix() - want).amax() < 1e-12);
}

#[test]
fn twirls_commute_with_group() {
    let group = group_superoperators(1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10 {
        let e = Superoperator::random(1, &mut rng).unwrap();
        let t = twirl_exact(&e, 1).unwrap();
        assert!(t.commutation_residual(&group) < 1e-10);
    }
}

#[test]
fn two_qubit_twirl_commutes() {
    let group = group_superoperators(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let e = Superoperator::random(2, &mut rng).unwrap();
    let t = twirl_exact(&e, 2).unwrap();
    assert!(t.commutation_residual(&group) < 1e-10);
}
