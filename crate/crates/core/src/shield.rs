//! Classical repetition code protecting register B against syndrome reset.
//!
//! Register B is held as `c` copies of its `2k`-bit encoding. Each round
//! takes the column-wise OR of the copies, updates it under the round's
//! gate, broadcasts it back to every copy and then resets bits. A set bit
//! is lost only when all `c` copies reset in the same round.

use rand::Rng;

use crate::bits::BitVec;
use crate::clifford::CliffordTableau;
use crate::curve::SurvivalPoint;
use crate::error::{Error, Result};
use crate::hidden::RegisterB;
use crate::pauli::PauliOperator;
use crate::qec::reset_syndrome;

/// `c` rows, each a copy of a `2k`-bit encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShieldMatrix {
    rows: Vec<BitVec>,
}

impl ShieldMatrix {
    pub fn replicate(row: &BitVec, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidParameter("at least one copy required".into()));
        }
        Self::from_rows(vec![row.clone(); copies])
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidParameter("at least one copy required".into()));
        };
        if first.len() % 2 != 0 {
            return Err(Error::OddEncodingLength(first.len()));
        }
        if rows.iter().any(|r| r.len() != first.len()) {
            return Err(Error::InvalidParameter("rows differ in length".into()));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn copies(&self) -> usize {
        self.rows.len()
    }

    /// Column-wise OR over all copies.
    pub fn consensus(&self) -> BitVec {
        let mut out = self.rows[0].clone();
        for r in &self.rows[1..] {
            out.or_assign(r);
        }
        out
    }

    pub fn broadcast(&mut self, row: &BitVec) {
        for r in &mut self.rows {
            r.clone_from(row);
        }
    }

    /// Sets every column to the OR of that column across rows.
    pub fn spread_or(&self) -> Self {
        let c = self.consensus();
        Self {
            rows: vec![c; self.rows.len()],
        }
    }

    /// Gate part of a shield round: consensus, covariant update, broadcast.
    pub fn update(&mut self, g: &CliffordTableau) {
        let mut b = RegisterB::from_bits(self.consensus()).expect("even length");
        b.update(g);
        self.broadcast(b.bits());
    }

    pub fn reset<R: Rng + ?Sized>(&mut self, r: f64, rng: &mut R) {
        for row in &mut self.rows {
            reset_syndrome(row, r, rng);
        }
    }
}

/// One full round: consensus, update under `g`, broadcast, reset with
/// probability `r` per bit.
pub fn shield_round<R: Rng + ?Sized>(
    m: &ShieldMatrix,
    g: &CliffordTableau,
    r: f64,
    rng: &mut R,
) -> ShieldMatrix {
    let mut out = m.clone();
    out.update(g);
    out.reset(r, rng);
    out
}

fn check_rate(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("reset probability {r} not in (0, 1)")));
    }
    Ok(())
}

/// Smallest `c` with `(1 − r^c)^{2km}`-style protection reaching amplitude
/// `a`: `c = ⌈log_{1/r}(√(2km)/(1 − a))⌉`.
pub fn copies_needed(k: usize, m: usize, a: f64, r: f64) -> Result<usize> {
    if !(std::f64::consts::SQRT_2 - 1.0..1.0).contains(&a) {
        return Err(Error::InvalidParameter(format!(
            "target amplitude {a} outside [sqrt(2) - 1, 1)"
        )));
    }
    check_rate(r)?;
    if k == 0 || m == 0 {
        return Err(Error::InvalidParameter("k and m must be positive".into()));
    }
    let ratio = ((2 * k * m) as f64).sqrt() / (1.0 - a);
    let c = (ratio.ln() / (1.0 / r).ln()).ceil();
    Ok(c.max(1.0) as usize)
}

/// `(1 − r^c)^{2km}`.
pub fn amplitude_lower_bound(c: usize, k: usize, m: usize, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("reset probability {r} not in [0, 1]")));
    }
    Ok((1.0 - r.powi(c as i32)).powi((2 * k * m) as i32))
}

/// Fraction of `n` runs in which the shielded encoding of a random
/// destabilizer still matches its fault-free trajectory after `m` rounds of
/// random gates.
pub fn simulate_shield_survival<R: Rng + ?Sized>(
    k: usize,
    m: usize,
    c: usize,
    r: f64,
    n: usize,
    rng: &mut R,
) -> Result<SurvivalPoint> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("reset probability {r} not in [0, 1]")));
    }
    if k == 0 || c == 0 || n == 0 {
        return Err(Error::InvalidParameter("k, c and n must be positive".into()));
    }
    let mut kept = 0u64;
    for _ in 0..n {
        let p0 = loop {
            let p = PauliOperator::from_index(rng.gen_range(0..1usize << (2 * k).min(62)), k);
            if !p.is_identity() {
                break p;
            }
        };
        let mut ideal = RegisterB::new(&p0)?;
        let mut shield = ShieldMatrix::replicate(ideal.bits(), c)?;
        for _ in 0..m {
            let g = CliffordTableau::random(k, rng);
            ideal.update(&g);
            shield = shield_round(&shield, &g, r, rng);
        }
        if &shield.consensus() == ideal.bits() {
            kept += 1;
        }
    }
    Ok(SurvivalPoint::from_counts(m, kept, n))
}
