use lrbsim::bits::BitVec;
use lrbsim::clifford::CliffordTableau;
use lrbsim::shield::{
    amplitude_lower_bound, copies_needed, shield_round, simulate_shield_survival, ShieldMatrix,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matrix() -> impl Strategy<Value = ShieldMatrix> {
    (1usize..4, 1usize..6).prop_flat_map(|(k, c)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), 2 * k), c).prop_map(
            |rows| ShieldMatrix::from_rows(rows.iter().map(|r| BitVec::from_bools(r)).collect()).unwrap(),
        )
    })
}

proptest! {
    #[test]
    fn spread_is_idempotent_and_monotone(m in matrix()) {
        let s = m.spread_or();
        prop_assert_eq!(s.spread_or(), s.clone());
        for (before, after) in m.rows().iter().zip(s.rows()) {
            let mut union = before.clone();
            union.or_assign(after);
            prop_assert_eq!(&union, after);
        }
        let first = &s.rows()[0];
        prop_assert!(s.rows().iter().all(|r| r == first));
    }

    #[test]
    fn zero_reset_round_commutes_with_spread(m in matrix(), seed in any::<u64>()) {
        let k = m.rows()[0].len() / 2;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = CliffordTableau::random(k, &mut rng);
        let a = shield_round(&m.spread_or(), &g, 0.0, &mut rng).spread_or();
        let b = shield_round(&m, &g, 0.0, &mut rng).spread_or();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn copies_meet_target(k in 1usize..30, m in 1usize..20, a in 0.42f64..0.999, r in 0.05f64..0.99) {
        let c = copies_needed(k, m, a, r).unwrap();
        prop_assert!(c >= 1);
        // Solving for c makes r^c ≤ (1 − a)/√(2km), which is the tail bound
        // behind the amplitude estimate.
        let tail = r.powi(c as i32);
        prop_assert!(tail <= (1.0 - a) / ((2 * k * m) as f64).sqrt() * (1.0 + 1e-12));
        if c > 1 {
            let prev = r.powi(c as i32 - 1);
            prop_assert!(prev > (1.0 - a) / ((2 * k * m) as f64).sqrt() * (1.0 - 1e-12));
        }
    }
}

#[test]
fn per_bit_survival_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (c, r, trials) = (3usize, 0.6f64, 100_000usize);
    let one = BitVec::parse("10").unwrap();
    let id = CliffordTableau::identity(1);
    let mut kept = 0usize;
    for _ in 0..trials {
        let m = ShieldMatrix::replicate(&one, c).unwrap();
        if shield_round(&m, &id, r, &mut rng).consensus().get(0) {
            kept += 1;
        }
    }
    let p = 1.0 - r.powi(c as i32);
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let est = kept as f64 / trials as f64;
    assert!((est - p).abs() < 3.0 * sigma, "{est} vs {p}");
}

#[test]
fn simulation_respects_lower_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let k = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=6);
        let c = rng.gen_range(1..=4);
        let r = rng.gen_range(0.05..0.6);
        let est = simulate_shield_survival(k, m, c, r, 2000, &mut rng).unwrap();
        let bound = amplitude_lower_bound(c, k, m, r).unwrap();
        let sigma = (bound * (1.0 - bound) / 2000.0).sqrt().max(est.stderr);
        assert!(est.p_hat >= bound - 3.0 * sigma, "k={k} m={m} c={c} r={r}: {} < {bound}", est.p_hat);
    }
}

#[test]
fn single_copy_decays_like_unshielded() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let one = simulate_shield_survival(2, 4, 1, 0.3, 4000, &mut rng).unwrap();
    let many = simulate_shield_survival(2, 4, 4, 0.3, 4000, &mut rng).unwrap();
    assert!(one.p_hat < many.p_hat);
    assert!(one.p_hat < 0.9);
}
