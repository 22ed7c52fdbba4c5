//! Stabilizer codes with an explicit unencoded frame.
//!
//! The encoder `E` maps, for logical slot `i < k` and syndrome slot `j`,
//!
//! ```text
//! X_i ↦ X̄_i    Z_i ↦ Z̄_i    X_{k+j} ↦ d_j    Z_{k+j} ↦ g_j
//! ```
//!
//! where `g_j` are the stabilizer generators and `d_j` their pure errors
//! (`d_j` anticommutes with `g_j` only and commutes with every logical).
//! In the unencoded frame a physical Pauli therefore becomes a logical part
//! on the first `k` qubits and a bit flip on syndrome slot `j` exactly when it
//! anticommutes with `g_j`.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::clifford::CliffordTableau;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Echelon};
use crate::pauli::PauliOperator;

/// Syndrome bits, one per stabilizer generator.
pub type Syndrome = BitVec;

#[derive(Clone, PartialEq)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    generators: Vec<PauliOperator>,
    pure_errors: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    distance: Option<usize>,
}

impl fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}", self.n, self.k)?;
        if let Some(d) = self.distance {
            write!(f, ", {d}")?;
        }
        write!(f, "]]")
    }
}

fn swapped(p: &PauliOperator) -> BitVec {
    PauliOperator::from_parts(p.z().clone(), p.x().clone()).encode()
}

fn check_commutation(
    generators: &[PauliOperator],
    logical_x: &[PauliOperator],
    logical_z: &[PauliOperator],
) -> Result<()> {
    for (i, g) in generators.iter().enumerate() {
        if !g.is_hermitian() || g.is_identity() {
            return Err(Error::InvalidCode(format!("generator {i} is not a valid check")));
        }
        for h in &generators[i + 1..] {
            if !g.commutes(h) {
                return Err(Error::InvalidCode("generators do not commute".into()));
            }
        }
        for l in logical_x.iter().chain(logical_z) {
            if !g.commutes(l) {
                return Err(Error::InvalidCode(
                    "logical operator anticommutes with a generator".into(),
                ));
            }
        }
    }
    for (i, xi) in logical_x.iter().enumerate() {
        for (j, zj) in logical_z.iter().enumerate() {
            if xi.commutes(zj) == (i == j) {
                return Err(Error::InvalidCode(format!(
                    "logical X{i} and Z{j} have the wrong commutation"
                )));
            }
        }
        for xj in &logical_x[i + 1..] {
            if !xi.commutes(xj) {
                return Err(Error::InvalidCode("logical X operators anticommute".into()));
            }
        }
    }
    for (i, zi) in logical_z.iter().enumerate() {
        for zj in &logical_z[i + 1..] {
            if !zi.commutes(zj) {
                return Err(Error::InvalidCode(format!(
                    "logical Z{i} anticommutes with another logical Z"
                )));
            }
        }
    }
    Ok(())
}

impl StabilizerCode {
    /// Validates the operators and derives pure errors.
    pub fn new(
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
        distance: Option<usize>,
    ) -> Result<Self> {
        let n = generators
            .first()
            .or(logical_x.first())
            .map(PauliOperator::num_qubits)
            .ok_or_else(|| Error::InvalidCode("empty code".into()))?;
        let k = logical_x.len();
        if logical_z.len() != k {
            return Err(Error::InvalidCode("unpaired logical operators".into()));
        }
        if generators.len() + k != n {
            return Err(Error::InvalidCode(format!(
                "{} generators and {k} logical qubits do not fill {n} qubits",
                generators.len()
            )));
        }
        if generators
            .iter()
            .chain(&logical_x)
            .chain(&logical_z)
            .any(|p| p.num_qubits() != n)
        {
            return Err(Error::InvalidCode("operators act on different qubit counts".into()));
        }
        check_commutation(&generators, &logical_x, &logical_z)?;
        let mut span = Echelon::new(2 * n);
        for p in generators.iter().chain(&logical_x).chain(&logical_z) {
            if !span.insert(&p.encode()) {
                return Err(Error::InvalidCode("operators are not independent".into()));
            }
        }

        // Rows are symplectic duals, so A v = e_j prescribes ⟨v, ·⟩.
        let constraints: Vec<BitVec> = generators
            .iter()
            .chain(&logical_x)
            .chain(&logical_z)
            .map(swapped)
            .collect();
        let a = BitMatrix::from_rows(constraints, 2 * n);
        let r = generators.len();
        let mut pure_errors: Vec<PauliOperator> = Vec::with_capacity(r);
        for j in 0..r {
            let mut rhs = BitVec::zeros(r + 2 * k);
            rhs.set(j, true);
            let v = a
                .solve(&rhs)
                .ok_or_else(|| Error::InvalidCode("no pure error exists".into()))?;
            let mut d = PauliOperator::decode(&v)?;
            for (i, prev) in pure_errors.iter().enumerate() {
                if !d.commutes(prev) {
                    d = d.multiply(&generators[i]).unsigned();
                }
            }
            pure_errors.push(d);
        }
        Ok(Self {
            n,
            k,
            generators,
            pure_errors,
            logical_x,
            logical_z,
            distance,
        })
    }

    pub fn num_physical(&self) -> usize {
        self.n
    }

    pub fn num_logical(&self) -> usize {
        self.k
    }

    pub fn num_checks(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn pure_errors(&self) -> &[PauliOperator] {
        &self.pure_errors
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn distance(&self) -> Option<usize> {
        self.distance
    }

    /// Encoder tableau in the frame described in the module docs.
    pub fn encoder(&self) -> Result<CliffordTableau> {
        let mut images = Vec::with_capacity(2 * self.n);
        for i in 0..self.k {
            images.push(self.logical_x[i].clone());
            images.push(self.logical_z[i].clone());
        }
        for j in 0..self.generators.len() {
            images.push(self.pure_errors[j].clone());
            images.push(self.generators[j].clone());
        }
        CliffordTableau::from_images(images)
    }

    /// Bit `j` set iff `p` anticommutes with generator `j`.
    pub fn syndrome(&self, p: &PauliOperator) -> Syndrome {
        let mut s = BitVec::zeros(self.generators.len());
        for (j, g) in self.generators.iter().enumerate() {
            if !p.commutes(g) {
                s.set(j, true);
            }
        }
        s
    }

    /// Logical action of a physical Pauli read off from its commutation with
    /// the logical operators: `X` part from `Z̄`, `Z` part from `X̄`.
    pub fn logical_component(&self, p: &PauliOperator) -> PauliOperator {
        let mut x = BitVec::zeros(self.k);
        let mut z = BitVec::zeros(self.k);
        for i in 0..self.k {
            x.set(i, !p.commutes(&self.logical_z[i]));
            z.set(i, !p.commutes(&self.logical_x[i]));
        }
        PauliOperator::from_parts(x, z)
    }

    /// Physical representative `∏ X̄^x Z̄^z` of a logical Pauli, as a positive
    /// Hermitian operator.
    pub fn logical_operator(&self, l: &PauliOperator) -> PauliOperator {
        let mut out = PauliOperator::identity(self.n);
        for i in 0..self.k {
            if l.x().get(i) {
                out.mul_assign_right(&self.logical_x[i]);
            }
            if l.z().get(i) {
                out.mul_assign_right(&self.logical_z[i]);
            }
        }
        out.unsigned()
    }

    /// Physical Pauli that sets the syndrome to `s` without logical action.
    pub fn pure_error(&self, s: &Syndrome) -> PauliOperator {
        let mut out = PauliOperator::identity(self.n);
        for j in s.ones() {
            out.mul_assign_right(&self.pure_errors[j]);
        }
        out.unsigned()
    }

    /// Smallest weight of a Pauli commuting with every generator but acting
    /// non-trivially on the logical qubits, searched up to `max_weight`.
    pub fn compute_distance(&self, max_weight: usize) -> Option<usize> {
        (1..=max_weight.min(self.n)).find(|&w| {
            paulis_of_weight(self.n, w).any(|p| {
                self.syndrome(&p).is_zero() && !self.logical_component(&p).is_identity()
            })
        })
    }

    /// For `k = 1`: whether `X^⊗n` and `Z^⊗n` implement logical `X` and `Z`.
    pub fn has_transversal_paulis(&self) -> bool {
        if self.k != 1 {
            return false;
        }
        let all = |letter: &str| -> PauliOperator { letter.repeat(self.n).parse().expect("valid") };
        let (xs, zs) = (all("X"), all("Z"));
        self.syndrome(&xs).is_zero()
            && self.syndrome(&zs).is_zero()
            && self.logical_component(&xs) == "X".parse().unwrap()
            && self.logical_component(&zs) == "Z".parse().unwrap()
    }

    /// Independent copies; generators, pure errors and logicals are ordered
    /// block by block.
    pub fn product(codes: &[StabilizerCode]) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::InvalidCode("empty product".into()));
        }
        let n: usize = codes.iter().map(|c| c.n).sum();
        let mut out = Self {
            n,
            k: codes.iter().map(|c| c.k).sum(),
            generators: Vec::new(),
            pure_errors: Vec::new(),
            logical_x: Vec::new(),
            logical_z: Vec::new(),
            distance: codes.iter().map(|c| c.distance).min().flatten(),
        };
        let mut offset = 0;
        for c in codes {
            let embed = |p: &PauliOperator| embed(p, offset, n);
            out.generators.extend(c.generators.iter().map(embed));
            out.pure_errors.extend(c.pure_errors.iter().map(embed));
            out.logical_x.extend(c.logical_x.iter().map(embed));
            out.logical_z.extend(c.logical_z.iter().map(embed));
            offset += c.n;
        }
        Ok(out)
    }

    /// Appends `extra` qubits, each fixed by its own `Z` check with `X` as
    /// pure error. The new checks follow the existing ones.
    pub fn padded(&self, extra: usize) -> Self {
        let n = self.n + extra;
        let mut out = Self {
            n,
            k: self.k,
            generators: self.generators.iter().map(|p| embed(p, 0, n)).collect(),
            pure_errors: self.pure_errors.iter().map(|p| embed(p, 0, n)).collect(),
            logical_x: self.logical_x.iter().map(|p| embed(p, 0, n)).collect(),
            logical_z: self.logical_z.iter().map(|p| embed(p, 0, n)).collect(),
            distance: self.distance,
        };
        for q in self.n..n {
            out.generators
                .push(PauliOperator::single(n, q, crate::pauli::Pauli::Z));
            out.pure_errors
                .push(PauliOperator::single(n, q, crate::pauli::Pauli::X));
        }
        out
    }
}

fn embed(p: &PauliOperator, offset: usize, n: usize) -> PauliOperator {
    let mut x = BitVec::zeros(n);
    let mut z = BitVec::zeros(n);
    x.splice(offset, p.x());
    z.splice(offset, p.z());
    PauliOperator::from_raw(x, z, p.phase())
}

/// Every positive Hermitian `n`-qubit Pauli of weight `w`, ordered by
/// interleaved encoding.
pub fn paulis_of_weight(n: usize, w: usize) -> impl Iterator<Item = PauliOperator> {
    let mut all = Vec::new();
    let mut support: Vec<usize> = (0..w).collect();
    if w <= n {
        loop {
            for letters in 0..3usize.pow(w as u32) {
                let mut bits = BitVec::zeros(2 * n);
                let mut l = letters;
                for &q in &support {
                    let (x, z) = match l % 3 {
                        0 => (true, false),
                        1 => (true, true),
                        _ => (false, true),
                    };
                    l /= 3;
                    bits.set(2 * q, x);
                    bits.set(2 * q + 1, z);
                }
                all.push(bits);
            }
            let Some(i) = (0..w).rev().find(|&i| support[i] < n - w + i) else {
                break;
            };
            support[i] += 1;
            for j in i + 1..w {
                support[j] = support[j - 1] + 1;
            }
        }
    }
    all.sort();
    all.into_iter()
        .map(|b| PauliOperator::decode(&b).expect("even length"))
}

/// Reduced rows plus the number of rows dropped as linearly dependent.
fn independent(h: &BitMatrix) -> (Vec<BitVec>, usize) {
    let rows = h.independent_rows();
    let dropped = h.num_rows() - rows.len();
    (rows, dropped)
}

/// Representatives of `ker(h_other)` that are independent modulo the row
/// space of `h_same`.
fn logical_basis(h_same: &[BitVec], h_other: &BitMatrix, n: usize) -> Vec<BitVec> {
    let mut span = Echelon::new(n);
    for r in h_same {
        span.insert(r);
    }
    h_other
        .kernel()
        .into_iter()
        .filter(|v| span.insert(v))
        .collect()
}

/// CSS code from X-type checks `hx` and Z-type checks `hz`.
///
/// Generators are the independent rows of `hx` (as X-type) followed by those
/// of `hz` (as Z-type). Dependent rows are dropped.
pub fn css_from_parity_checks(hx: &BitMatrix, hz: &BitMatrix) -> Result<StabilizerCode> {
    let n = hx.num_cols();
    if hz.num_cols() != n {
        return Err(Error::InvalidCode("Hx and Hz have different widths".into()));
    }
    if !hx.mul(&hz.transpose()).is_zero() {
        return Err(Error::NonOrthogonalChecks);
    }
    let (rx, _) = independent(hx);
    let (rz, _) = independent(hz);
    let lx = logical_basis(&rx, hz, n);
    let lz = logical_basis(&rz, hx, n);
    let k = lx.len();
    if lz.len() != k || k != n - rx.len() - rz.len() {
        return Err(Error::InvalidCode("inconsistent logical dimension".into()));
    }
    // Re-pair the Z logicals so that Lx Lzᵀ = I.
    let lx_m = BitMatrix::from_rows(lx.clone(), n);
    let lz_m = BitMatrix::from_rows(lz, n);
    let pairing = lx_m.mul(&lz_m.transpose());
    let a = pairing
        .inverse()
        .ok_or_else(|| Error::InvalidCode("logical operators cannot be paired".into()))?
        .transpose();
    let lz_paired = a.mul(&lz_m);

    let zero = BitVec::zeros(n);
    let x_type = |v: &BitVec| PauliOperator::from_parts(v.clone(), zero.clone());
    let z_type = |v: &BitVec| PauliOperator::from_parts(zero.clone(), v.clone());
    let generators = rx.iter().map(x_type).chain(rz.iter().map(z_type)).collect();
    StabilizerCode::new(
        generators,
        lx.iter().map(x_type).collect(),
        lz_paired.rows().iter().map(z_type).collect(),
        None,
    )
}

/// Checks of the `[7, 4, 3]` Hamming code.
pub const HAMMING_CHECKS: [&str; 3] = ["0001111", "0110011", "1010101"];

/// The `[[7, 1, 3]]` Steane code with logical `X^⊗7` and `Z^⊗7`.
pub fn steane_code() -> StabilizerCode {
    let rows: Vec<BitVec> = HAMMING_CHECKS
        .iter()
        .map(|r| BitVec::parse(r).expect("valid"))
        .collect();
    let h = BitMatrix::from_rows(rows.clone(), 7);
    let zero = BitVec::zeros(7);
    let generators: Vec<PauliOperator> = rows
        .iter()
        .map(|v| PauliOperator::from_parts(v.clone(), zero.clone()))
        .chain(rows.iter().map(|v| PauliOperator::from_parts(zero.clone(), v.clone())))
        .collect();
    debug_assert!(h.mul(&h.transpose()).is_zero());
    StabilizerCode::new(
        generators,
        vec!["XXXXXXX".parse().expect("valid")],
        vec!["ZZZZZZZ".parse().expect("valid")],
        Some(3),
    )
    .expect("Steane code is valid")
}

/// `copies` independent Steane blocks, `[[7c, c, 3]]`.
pub fn product_steane(copies: usize) -> Result<StabilizerCode> {
    StabilizerCode::product(&vec![steane_code(); copies])
}

/// Parsed contents of a parity-check file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityChecks {
    pub n: usize,
    pub k: usize,
    pub hx: BitMatrix,
    pub hz: BitMatrix,
}

impl ParityChecks {
    pub fn to_code(&self) -> Result<StabilizerCode> {
        let code = css_from_parity_checks(&self.hx, &self.hz)?;
        if code.num_logical() != self.k {
            return Err(Error::ParityFile(format!(
                "header declares k = {} but the checks give k = {}",
                self.k,
                code.num_logical()
            )));
        }
        Ok(code)
    }
}

/// Format: a header line `n k`, the rows of `Hx` as 0/1 strings, one blank
/// line, then the rows of `Hz`. Lines starting with `#` are ignored.
impl FromStr for ParityChecks {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.starts_with('#'))
            .skip_while(|l| l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::ParityFile("missing header".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::ParityFile(format!("bad header {header:?}")))?;
        let [n, k] = nums[..] else {
            return Err(Error::ParityFile(format!("bad header {header:?}")));
        };
        let mut sections: Vec<Vec<BitVec>> = vec![Vec::new()];
        for line in lines {
            if line.is_empty() {
                if !sections.last().unwrap().is_empty() {
                    sections.push(Vec::new());
                }
                continue;
            }
            let row = BitVec::parse(line)
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::ParityFile(format!("bad row {line:?}")))?;
            sections.last_mut().unwrap().push(row);
        }
        if sections.last().is_some_and(Vec::is_empty) {
            sections.pop();
        }
        if sections.len() != 2 {
            return Err(Error::ParityFile(
                "expected Hx and Hz blocks separated by one blank line".into(),
            ));
        }
        let hz = BitMatrix::from_rows(sections.pop().unwrap(), n);
        let hx = BitMatrix::from_rows(sections.pop().unwrap(), n);
        Ok(Self { n, k, hx, hz })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StabilizerState;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn steane_structure() {
        let c = steane_code();
        assert_eq!(c.num_checks(), 6);
        assert!(!c.logical_x()[0].commutes(&c.logical_z()[0]));
        assert!(c.encoder().unwrap().is_symplectic());
        assert_eq!(c.compute_distance(3), Some(3));
        assert!(c.has_transversal_paulis());
    }

    #[test]
    fn pure_errors_are_dual() {
        let c = product_steane(2).unwrap();
        for (j, d) in c.pure_errors().iter().enumerate() {
            let mut want = BitVec::zeros(c.num_checks());
            want.set(j, true);
            assert_eq!(c.syndrome(d), want);
            assert!(c.logical_component(d).is_identity());
        }
    }

    #[test]
    fn logical_components() {
        let c = steane_code();
        assert!(c.logical_component(&c.generators()[0]).is_identity());
        assert_eq!(c.logical_component(&c.logical_x()[0]), p("X"));
        assert_eq!(c.logical_component(&p("XIIIIII")), p("X"));
        assert_eq!(c.logical_component(&p("IIZIIII")), p("Z"));
        assert_eq!(c.logical_component(&p("IIIIIYI")), p("Y"));
    }

    #[test]
    fn x_error_syndrome_is_hz_column() {
        let c = steane_code();
        let enc = c.encoder().unwrap();
        let mut s = StabilizerState::zero(7);
        s.apply_clifford(&enc);
        s.apply_pauli(&p("XIIIIII"));
        for (j, g) in c.generators().iter().enumerate() {
            let bit = s.expectation(g) == Some(-1);
            let want = j >= 3 && HAMMING_CHECKS[j - 3].as_bytes()[0] == b'1';
            assert_eq!(bit, want, "check {j}");
        }
    }

    #[test]
    fn css_loader_matches_steane_group() {
        let rows: Vec<BitVec> = HAMMING_CHECKS.iter().map(|r| BitVec::parse(r).unwrap()).collect();
        let h = BitMatrix::from_rows(rows, 7);
        let loaded = css_from_parity_checks(&h, &h).unwrap();
        let steane = steane_code();
        assert_eq!(loaded.num_logical(), 1);
        let mut span = Echelon::new(14);
        for g in steane.generators() {
            span.insert(&g.encode());
        }
        for g in loaded.generators() {
            assert!(span.contains(&g.encode()));
        }
        assert!(loaded.encoder().unwrap().is_symplectic());
        assert_eq!(loaded.compute_distance(3), Some(3));
    }

    #[test]
    fn css_rejects_non_orthogonal() {
        let hx = BitMatrix::from_rows(vec![BitVec::parse("110").unwrap()], 3);
        let hz = BitMatrix::from_rows(vec![BitVec::parse("100").unwrap()], 3);
        assert_eq!(css_from_parity_checks(&hx, &hz), Err(Error::NonOrthogonalChecks));
    }

    #[test]
    fn css_bookkeeping() {
        // Repetition-style checks: k = n − rank Hx − rank Hz.
        let hz = BitMatrix::from_rows(
            ["1100", "0110", "1010", "0011"].iter().map(|r| BitVec::parse(r).unwrap()).collect(),
            4,
        );
        let hx = BitMatrix::from_rows(vec![BitVec::parse("1111").unwrap()], 4);
        let c = css_from_parity_checks(&hx, &hz).unwrap();
        assert_eq!(hz.rank(), 3);
        assert_eq!(c.num_logical(), 4 - hx.rank() - hz.rank());
        assert_eq!(c.num_checks(), 4);
        let hz2 = BitMatrix::from_rows(vec![BitVec::parse("1100").unwrap()], 4);
        let c2 = css_from_parity_checks(&hx, &hz2).unwrap();
        assert_eq!(c2.num_logical(), 2);
        assert!(c2.encoder().unwrap().is_symplectic());
    }

    #[test]
    fn parity_file_round_trip() {
        let text = "7 1\n0001111\n0110011\n1010101\n\n0001111\n0110011\n1010101\n";
        let parsed: ParityChecks = text.parse().unwrap();
        assert_eq!((parsed.n, parsed.k), (7, 1));
        assert_eq!(parsed.to_code().unwrap().num_checks(), 6);
        assert!("7 1\n0001111\n".parse::<ParityChecks>().is_err());
        assert!("7\n".parse::<ParityChecks>().is_err());
        assert!("7 2\n0001111\n\n0001111\n".parse::<ParityChecks>().unwrap().to_code().is_err());
    }

    #[test]
    fn encoder_frame_contract() {
        use rand::SeedableRng;
        let c = steane_code();
        let enc = c.encoder().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let g = CliffordTableau::random(1, &mut rng);
            let mut logical = StabilizerState::zero(1);
            logical.apply_clifford(&g);
            let full = logical.tensor(&StabilizerState::zero(6));
            let mut encoded = full.clone();
            encoded.apply_clifford(&enc);
            for gen in c.generators() {
                assert_eq!(encoded.expectation(gen), Some(1));
            }
            encoded.apply_clifford(&enc.inverse());
            assert_eq!(encoded.survival(&full), 1.0);
        }
    }

    #[test]
    fn padding_adds_trivial_checks() {
        let c = steane_code().padded(3);
        assert_eq!(c.num_physical(), 10);
        assert_eq!(c.num_checks(), 9);
        assert!(c.encoder().unwrap().is_symplectic());
        assert_eq!(c.syndrome(&p("IIIIIIIIXI")).ones().collect::<Vec<_>>(), vec![7]);
    }

    #[test]
    fn weight_enumeration_counts() {
        assert_eq!(paulis_of_weight(7, 1).count(), 21);
        assert_eq!(paulis_of_weight(7, 2).count(), 21 * 9);
    }
}
