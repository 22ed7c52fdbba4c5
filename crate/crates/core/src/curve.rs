//! Survival estimates with binomial standard errors.

/// Estimated survival at one sequence length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurvivalPoint {
    pub m: usize,
    pub p_hat: f64,
    pub stderr: f64,
    pub n: usize,
}

impl SurvivalPoint {
    pub fn from_counts(m: usize, successes: u64, n: usize) -> Self {
        let p_hat = if n == 0 { 0.0 } else { successes as f64 / n as f64 };
        Self::from_mean(m, p_hat, n)
    }

    /// `stderr = sqrt(p̂(1 − p̂)/n)`.
    pub fn from_mean(m: usize, p_hat: f64, n: usize) -> Self {
        let stderr = if n == 0 {
            0.0
        } else {
            (p_hat * (1.0 - p_hat) / n as f64).sqrt()
        };
        Self {
            m,
            p_hat,
            stderr,
            n,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurvivalCurve {
    pub label: String,
    pub seed: u64,
    pub points: Vec<SurvivalPoint>,
}

impl SurvivalCurve {
    pub fn new(label: impl Into<String>, seed: u64, points: Vec<SurvivalPoint>) -> Self {
        Self {
            label: label.into(),
            seed,
            points,
        }
    }

    pub fn point(&self, m: usize) -> Option<&SurvivalPoint> {
        self.points.iter().find(|p| p.m == m)
    }

    pub fn ms(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.m as f64).collect()
    }

    pub fn p_hats(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.p_hat).collect()
    }

    /// Distance of `p̂(m)` from the value a perfect period-2 oscillation takes
    /// at `m`: `p̂` for even `m`, `1 − p̂` for odd `m`.
    pub fn oscillation_amplitude(&self, m: usize) -> Option<f64> {
        self.point(m)
            .map(|p| if m.is_multiple_of(2) { p.p_hat } else { 1.0 - p.p_hat })
    }
}
