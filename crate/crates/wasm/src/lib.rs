//! Browser bindings. Curves come back as flat `[m, p_hat, stderr, …]`
//! arrays so JavaScript receives a single `Float64Array`.
//!
//! The `*_points` functions hold the logic and are callable natively; the
//! exported wrappers only convert errors.

use std::sync::Arc;

use lrbsim::curve::SurvivalCurve;
use lrbsim::lrb::{estimate_lrb_survival, LrbConfig, LrbSetup};
use lrbsim::rb::{estimate_survival, NoiseModel, RbConfig};
use lrbsim::shield;
use wasm_bindgen::prelude::*;

/// Keeps a single call responsive on the main thread.
pub const MAX_WORK: usize = 2_000_000;

fn flatten(curve: &SurvivalCurve) -> Vec<f64> {
    curve
        .points
        .iter()
        .flat_map(|p| [p.m as f64, p.p_hat, p.stderr])
        .collect()
}

fn lengths(m_max: usize) -> Result<Vec<usize>, String> {
    if m_max < 2 {
        return Err("largest sequence length must be at least 2".into());
    }
    Ok((2..=m_max).collect())
}

fn check_work(m_max: usize, n: usize, scale: usize) -> Result<(), String> {
    if m_max.saturating_mul(n).saturating_mul(scale) > MAX_WORK {
        return Err("too much work for one call; lower N or the largest m".into());
    }
    Ok(())
}

/// Single-qubit RB. `model` is `"depolarizing"` (uses `p`), `"hidden_register"`
/// or `"ideal"`.
pub fn rb_points(model: &str, p: f64, m_max: usize, n: usize, seed: u64) -> Result<Vec<f64>, String> {
    let model = match model {
        "depolarizing" => NoiseModel::Depolarizing { p },
        "hidden_register" => NoiseModel::HiddenRegister,
        "ideal" => NoiseModel::Ideal,
        other => return Err(format!("unknown model {other:?}")),
    };
    check_work(m_max, n, 1)?;
    let config = RbConfig {
        k: 1,
        model,
        m_values: lengths(m_max)?,
        n_sequences: n,
        seed,
    };
    let curve = estimate_survival(&config).map_err(|e| e.to_string())?;
    Ok(flatten(&curve))
}

/// LRB on `k` Steane blocks with `copies` copies of register B.
pub fn lrb_points(
    k: usize,
    reset: f64,
    copies: usize,
    m_max: usize,
    n: usize,
    seed: u64,
) -> Result<Vec<f64>, String> {
    check_work(m_max, n, k * copies.max(1))?;
    let setup = LrbSetup::steane(k, copies).map_err(|e| e.to_string())?;
    let config = LrbConfig {
        setup: Arc::new(setup),
        reset_prob: reset,
        m_values: lengths(m_max)?,
        n_sequences: n,
        seed,
    };
    let curve = estimate_lrb_survival(&config).map_err(|e| e.to_string())?;
    Ok(flatten(&curve))
}

#[wasm_bindgen]
pub fn rb_curve(model: &str, p: f64, m_max: usize, n: usize, seed: u32) -> Result<Vec<f64>, JsError> {
    rb_points(model, p, m_max, n, seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lrb_curve(
    k: usize,
    reset: f64,
    copies: usize,
    m_max: usize,
    n: usize,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    lrb_points(k, reset, copies, m_max, n, seed.into()).map_err(|e| JsError::new(&e))
}

/// Copies of register B for amplitude `a` over `m` gates on `k` qubits.
#[wasm_bindgen]
pub fn copies_needed(k: usize, m: usize, a: f64, r: f64) -> Result<usize, JsError> {
    shield::copies_needed(k, m, a, r).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn amplitude_lower_bound(c: usize, k: usize, m: usize, r: f64) -> Result<f64, JsError> {
    shield::amplitude_lower_bound(c, k, m, r).map_err(|e| JsError::new(&e.to_string()))
}
