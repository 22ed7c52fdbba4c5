//! Least-squares fits of `p(m) = Σᵢ aᵢ λᵢ^m` with every `λᵢ ∈ (0, 1]`.
//!
//! For fixed decay rates the amplitudes solve a linear problem, so the search
//! runs over the rates only: a grid of starts ranked by their projected
//! residual, then Levenberg–Marquardt on the full parameter vector.

use nalgebra::{DMatrix, DVector};

use crate::curve::SurvivalCurve;
use crate::error::{Error, Result};

const LAMBDA_MIN: f64 = 1e-9;
const CONSTANT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct DecayFit {
    /// `(aᵢ, λᵢ)` sorted by `λ` descending.
    pub components: Vec<(f64, f64)>,
    /// Root-mean-square residual.
    pub residual: f64,
    pub r: usize,
    /// Input was constant; a single `λ = 1` component is reported.
    pub degenerate: bool,
}

impl DecayFit {
    pub fn eval(&self, m: f64) -> f64 {
        self.components.iter().map(|(a, l)| a * l.powf(m)).sum()
    }

    fn spread(&self) -> f64 {
        let (lo, hi) = self
            .components
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
                (lo.min(c.1), hi.max(c.1))
            });
        hi - lo
    }
}

pub fn fit_curve(curve: &SurvivalCurve, r: usize) -> Result<DecayFit> {
    fit_exponential(&curve.ms(), &curve.p_hats(), r)
}

pub fn fit_exponential(ms: &[f64], ps: &[f64], r: usize) -> Result<DecayFit> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if ms.len() != ps.len() {
        return Err(Error::InvalidParameter("length mismatch".into()));
    }
    if ms.len() < 2 * r {
        return Err(Error::InsufficientPoints {
            needed: 2 * r,
            got: ms.len(),
        });
    }
    if ms.iter().chain(ps).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite input".into()));
    }
    let (lo, hi) = ps
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &p| {
            (l.min(p), h.max(p))
        });
    if hi - lo < CONSTANT_TOL {
        let mean = ps.iter().sum::<f64>() / ps.len() as f64;
        return Ok(DecayFit {
            components: vec![(mean, 1.0)],
            residual: rms(ms, ps, &[(mean, 1.0)]),
            r: 1,
            degenerate: true,
        });
    }

    let mut starts = grid_starts(ms, ps, r);
    if r == 1 {
        if let Some(l) = log_linear_start(ms, ps) {
            starts.insert(0, vec![l]);
        }
        starts = starts
            .into_iter()
            .map(|l| vec![golden_refine(ms, ps, l[0])])
            .collect();
    }

    let mut best: Option<DecayFit> = None;
    for lambdas in starts {
        let Some(amps) = amplitudes(ms, ps, &lambdas) else {
            continue;
        };
        let init: Vec<(f64, f64)> = amps.into_iter().zip(lambdas).collect();
        let polished = levenberg_marquardt(ms, ps, init);
        let mut components = polished;
        components.sort_by(|a, b| b.1.total_cmp(&a.1));
        let fit = DecayFit {
            residual: rms(ms, ps, &components),
            components,
            r,
            degenerate: false,
        };
        best = Some(match best {
            None => fit,
            Some(b) => {
                let better = fit.residual < b.residual - 1e-13
                    || ((fit.residual - b.residual).abs() <= 1e-13 && fit.spread() < b.spread());
                if better {
                    fit
                } else {
                    b
                }
            }
        });
    }
    best.ok_or_else(|| Error::InvalidParameter("no admissible start".into()))
}

fn rms(ms: &[f64], ps: &[f64], comps: &[(f64, f64)]) -> f64 {
    let ss: f64 = ms
        .iter()
        .zip(ps)
        .map(|(&m, &p)| {
            let model: f64 = comps.iter().map(|(a, l)| a * l.powf(m)).sum();
            (model - p).powi(2)
        })
        .sum();
    (ss / ms.len() as f64).sqrt()
}

/// Linear least-squares amplitudes for fixed rates.
fn amplitudes(ms: &[f64], ps: &[f64], lambdas: &[f64]) -> Option<Vec<f64>> {
    let phi = DMatrix::from_fn(ms.len(), lambdas.len(), |i, j| lambdas[j].powf(ms[i]));
    let svd = phi.svd(true, true);
    let a = svd.solve(&DVector::from_column_slice(ps), 1e-12).ok()?;
    Some(a.iter().copied().collect())
}

fn projected_rms(ms: &[f64], ps: &[f64], lambdas: &[f64]) -> f64 {
    match amplitudes(ms, ps, lambdas) {
        Some(a) => {
            let comps: Vec<(f64, f64)> = a.into_iter().zip(lambdas.iter().copied()).collect();
            rms(ms, ps, &comps)
        }
        None => f64::INFINITY,
    }
}

/// Rate tuples `λ₁ < … < λ_r` on a grid, best projected residuals first.
fn grid_starts(ms: &[f64], ps: &[f64], r: usize) -> Vec<Vec<f64>> {
    let steps = match r {
        1 => 400,
        2 => 40,
        3 => 20,
        _ => 10,
    };
    let grid: Vec<f64> = (1..=steps).map(|i| i as f64 / steps as f64).collect();
    let mut tuples: Vec<Vec<f64>> = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    if r > grid.len() {
        return tuples;
    }
    loop {
        tuples.push(idx.iter().map(|&i| grid[i]).collect());
        let mut pos = r;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if idx[pos] < grid.len() - r + pos {
                idx[pos] += 1;
                for j in pos + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                pos = usize::MAX;
                break;
            }
        }
        if pos != usize::MAX {
            break;
        }
    }
    let mut scored: Vec<(f64, Vec<f64>)> = tuples
        .into_iter()
        .map(|l| (projected_rms(ms, ps, &l), l))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    scored.into_iter().take(8).map(|(_, l)| l).collect()
}

/// Slope of `ln p` against `m` when every point is positive.
fn log_linear_start(ms: &[f64], ps: &[f64]) -> Option<f64> {
    if ps.iter().any(|&p| p <= 0.0) {
        return None;
    }
    let n = ms.len() as f64;
    let mx = ms.iter().sum::<f64>() / n;
    let ly: Vec<f64> = ps.iter().map(|p| p.ln()).collect();
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = ms.iter().map(|m| (m - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = ms.iter().zip(&ly).map(|(m, y)| (m - mx) * (y - my)).sum();
    Some((sxy / sxx).exp().clamp(LAMBDA_MIN, 1.0))
}

/// Golden-section minimisation of the projected residual near `start`.
fn golden_refine(ms: &[f64], ps: &[f64], start: f64) -> f64 {
    let f = |l: f64| projected_rms(ms, ps, &[l]);
    let mut lo = (start - 0.01).max(LAMBDA_MIN);
    let mut hi = (start + 0.01).min(1.0);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    [mid, start, 1.0]
        .into_iter()
        .min_by(|a, b| f(*a).total_cmp(&f(*b)))
        .unwrap()
}

fn levenberg_marquardt(ms: &[f64], ps: &[f64], init: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let r = init.len();
    let n = ms.len();
    let mut theta: Vec<f64> = init.iter().map(|c| c.0).chain(init.iter().map(|c| c.1)).collect();
    let unpack = |t: &[f64]| -> Vec<(f64, f64)> { (0..r).map(|i| (t[i], t[r + i])).collect() };
    let sse = |t: &[f64]| {
        let c = unpack(t);
        rms(ms, ps, &c).powi(2) * n as f64
    };
    let mut cost = sse(&theta);
    let mut mu = 1e-3;
    for _ in 0..500 {
        let mut jac = DMatrix::zeros(n, 2 * r);
        let mut res = DVector::zeros(n);
        for (i, (&m, &p)) in ms.iter().zip(ps).enumerate() {
            let mut model = 0.0;
            for j in 0..r {
                let (a, l) = (theta[j], theta[r + j]);
                let lm = l.powf(m);
                model += a * lm;
                jac[(i, j)] = lm;
                jac[(i, r + j)] = if m == 0.0 { 0.0 } else { a * m * l.powf(m - 1.0) };
            }
            res[i] = model - p;
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * &res;
        if g.amax() < 1e-15 {
            break;
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for d in 0..2 * r {
                a[(d, d)] += mu * (jtj[(d, d)] + 1e-12);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                mu *= 10.0;
                continue;
            };
            let mut cand = theta.clone();
            for d in 0..2 * r {
                cand[d] += step[d];
            }
            for v in &mut cand[r..] {
                *v = v.clamp(LAMBDA_MIN, 1.0);
            }
            let c = sse(&cand);
            if c < cost {
                let done = cost - c < 1e-30;
                theta = cand;
                cost = c;
                mu = (mu / 10.0).max(1e-15);
                improved = !done;
                break;
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    unpack(&theta)
}
