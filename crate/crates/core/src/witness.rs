//! Block analysis of twirled maps: does the twirl act by scalars on a
//! decomposition into irreducible subrepresentations?
//!
//! The decomposition is read off from the eigenspaces of a random symmetric
//! element of the commutant, which separates every irreducible copy with
//! probability one.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use crate::clifford::CliffordTableau;
use crate::error::Result;
use crate::pauli::PauliOperator;
use crate::rng::aux_rng;

const CLUSTER_TOL: f64 = 1e-8;
pub const SCALAR_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationReport {
    pub label: String,
    pub dim: usize,
    /// Sizes of the irreducible blocks found, in eigenvalue order.
    pub blocks: Vec<usize>,
    /// `⟨χ, χ⟩ = Σ mᵢ²`; equals the block count iff multiplicity free.
    pub character_norm: f64,
    /// Multiplicity of the trivial representation.
    pub trivial_multiplicity: f64,
    /// Largest entry of the twirl coupling two distinct blocks.
    pub off_block_residual: f64,
    /// Largest deviation of a diagonal block from a multiple of the identity.
    pub block_scalar_residual: f64,
    /// Eigenvalues of the twirl as `(re, im)`, sorted by real part descending.
    pub eigenvalues: Vec<(f64, f64)>,
}

impl RepresentationReport {
    pub fn multiplicity_free(&self) -> bool {
        (self.character_norm - self.blocks.len() as f64).abs() < 1e-6
    }

    pub fn scalar_action(&self) -> bool {
        self.off_block_residual < SCALAR_TOL && self.block_scalar_residual < SCALAR_TOL
    }
}

/// Twirl of `channel` over the orthogonal representation `rep` and its
/// block analysis.
pub fn analyze_twirl<R: Rng + ?Sized>(
    label: &str,
    rep: &[DMatrix<f64>],
    channel: &DMatrix<f64>,
    rng: &mut R,
) -> RepresentationReport {
    let n = channel.nrows();
    let g = rep.len() as f64;
    let average = |m: &DMatrix<f64>| {
        let mut acc = DMatrix::zeros(n, n);
        for s in rep {
            acc += s * m * s.transpose();
        }
        acc / g
    };
    let t = average(channel);
    let r = DMatrix::from_fn(n, n, |_, _| rng.gen::<f64>() - 0.5);
    let z = average(&(&r + r.transpose()));
    let eig = SymmetricEigen::new(z);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = eig.eigenvalues.amax().max(1.0);
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c)
                if (eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()]).abs()
                    < CLUSTER_TOL * scale =>
            {
                c.push(i)
            }
            _ => clusters.push(vec![i]),
        }
    }
    let v = DMatrix::from_fn(n, n, |row, col| eig.eigenvectors[(row, order[col])]);
    let tb = v.transpose() * &t * &v;
    let mut label_of = vec![0usize; n];
    let mut pos = 0;
    for (c, cluster) in clusters.iter().enumerate() {
        for _ in cluster {
            label_of[pos] = c;
            pos += 1;
        }
    }
    let mut off_block: f64 = 0.0;
    let mut block_scalar: f64 = 0.0;
    let mut start = 0;
    for cluster in &clusters {
        let d = cluster.len();
        let block = tb.view((start, start), (d, d));
        let mean = block.trace() / d as f64;
        for i in 0..d {
            for j in 0..d {
                let want = if i == j { mean } else { 0.0 };
                block_scalar = block_scalar.max((block[(i, j)] - want).abs());
            }
        }
        start += d;
    }
    for i in 0..n {
        for j in 0..n {
            if label_of[i] != label_of[j] {
                off_block = off_block.max(tb[(i, j)].abs());
            }
        }
    }

    let character_norm = rep.iter().map(|s| s.trace().powi(2)).sum::<f64>() / g;
    let trivial_multiplicity = rep.iter().map(|s| s.trace()).sum::<f64>() / g;
    let mut eigenvalues: Vec<(f64, f64)> = t
        .complex_eigenvalues()
        .iter()
        .map(|c| (c.re, c.im))
        .collect();
    eigenvalues.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));

    RepresentationReport {
        label: label.to_string(),
        dim: n,
        blocks: clusters.iter().map(Vec::len).collect(),
        character_norm,
        trivial_multiplicity,
        off_block_residual: off_block,
        block_scalar_residual: block_scalar,
        eigenvalues,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityWitness {
    /// Pauli transfer representation with a depolarizing channel.
    pub standard: RepresentationReport,
    /// Register A with classical register B and the stored-destabilizer map.
    pub hidden_register: RepresentationReport,
}

/// Single-qubit representation on register A (Pauli coordinates) times
/// register B restricted to computational-basis states, index `4a + b`.
pub fn hidden_register_representation() -> Result<Vec<DMatrix<f64>>> {
    let group = CliffordTableau::enumerate(1)?;
    Ok(group
        .iter()
        .map(|g| {
            let a_rep = crate::channel::Superoperator::from_clifford(g);
            let mut perm = DMatrix::zeros(4, 4);
            for b in 0..4 {
                let image = g.conjugate(&PauliOperator::from_index(b, 1)).index();
                perm[(image, b)] = 1.0;
            }
            a_rep.matrix().kronecker(&perm)
        })
        .collect())
}

/// Diagonal map `D_a ⊗ |b⟩⟨b| ↦ ±D_a ⊗ |b⟩⟨b|`, sign − iff `D_a` anticommutes
/// with the Pauli stored in `b`.
pub fn hidden_register_noise() -> DMatrix<f64> {
    let mut e = DMatrix::zeros(16, 16);
    for a in 0..4 {
        let pa = PauliOperator::from_index(a, 1);
        for b in 0..4 {
            let pb = PauliOperator::from_index(b, 1);
            e[(4 * a + b, 4 * a + b)] = if pa.commutes(&pb) { 1.0 } else { -1.0 };
        }
    }
    e
}

/// Contrasts the multiplicity-free Pauli transfer representation with the
/// register A ⊗ B representation at `k = 1`.
pub fn multiplicity_witness(seed: u64) -> Result<MultiplicityWitness> {
    let mut rng = aux_rng(seed, 0x5C4);
    let standard_rep: Vec<DMatrix<f64>> = crate::channel::group_superoperators(1)?
        .into_iter()
        .map(|s| s.matrix().clone())
        .collect();
    let depol = crate::channel::Superoperator::depolarizing(1, 0.1)?;
    let standard = analyze_twirl("standard", &standard_rep, depol.matrix(), &mut rng);
    let hidden_register = analyze_twirl(
        "hidden register",
        &hidden_register_representation()?,
        &hidden_register_noise(),
        &mut rng,
    );
    Ok(MultiplicityWitness {
        standard,
        hidden_register,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_representation_is_scalar() {
        let w = multiplicity_witness(1).unwrap();
        assert!(w.standard.multiplicity_free());
        assert!(w.standard.scalar_action());
        let mut sizes = w.standard.blocks.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3]);
    }

    #[test]
    fn hidden_register_has_multiplicities_and_coupling() {
        let w = multiplicity_witness(1).unwrap();
        let h = &w.hidden_register;
        assert_eq!(h.dim, 16);
        assert!(!h.multiplicity_free());
        assert!((h.trivial_multiplicity - 2.0).abs() < 1e-12);
        assert!(!h.scalar_action());
        assert!(h.off_block_residual > 1e-3);
        assert_eq!(h.eigenvalues.len(), 16);
        assert_eq!(h.blocks.iter().sum::<usize>(), 16);
    }

    #[test]
    fn witness_is_seed_stable_in_its_verdict() {
        for seed in 0..5 {
            let w = multiplicity_witness(seed).unwrap();
            assert!(w.standard.scalar_action());
            assert!(!w.hidden_register.scalar_action());
        }
    }
}
