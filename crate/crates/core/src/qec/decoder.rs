//! Lookup-table decoders, possibly split into independent blocks.

use std::sync::Arc;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

use super::code::{paulis_of_weight, StabilizerCode, Syndrome};

/// Largest syndrome block a table may index.
const MAX_TABLE_BITS: usize = 24;

#[derive(Clone, Debug, PartialEq)]
struct Block {
    syndrome_offset: usize,
    syndrome_len: usize,
    logical_offset: usize,
    logical_len: usize,
    /// Indexed by the block syndrome read little-endian; `None` for blocks
    /// that never produce a correction.
    table: Option<Arc<Vec<PauliOperator>>>,
}

/// Map from syndromes to logical corrections.
#[derive(Clone, Debug, PartialEq)]
pub struct Decoder {
    blocks: Vec<Block>,
    syndrome_len: usize,
    k: usize,
}

impl Decoder {
    /// Single-block decoder from a full table over `2^syndrome_len` entries.
    pub fn from_table(k: usize, syndrome_len: usize, table: Vec<PauliOperator>) -> Result<Self> {
        if syndrome_len > MAX_TABLE_BITS || table.len() != 1 << syndrome_len {
            return Err(Error::InvalidParameter(format!(
                "table for {syndrome_len} syndrome bits needs {} entries",
                1u64 << syndrome_len.min(63)
            )));
        }
        if table.iter().any(|p| p.num_qubits() != k) {
            return Err(Error::QubitMismatch {
                expected: k,
                got: table.iter().find(|p| p.num_qubits() != k).unwrap().num_qubits(),
            });
        }
        Ok(Self {
            blocks: vec![Block {
                syndrome_offset: 0,
                syndrome_len,
                logical_offset: 0,
                logical_len: k,
                table: Some(Arc::new(table)),
            }],
            syndrome_len,
            k,
        })
    }

    /// Decoder that maps every syndrome to the identity.
    pub fn trivial(k: usize, syndrome_len: usize) -> Result<Self> {
        Self::from_table(k, syndrome_len, vec![PauliOperator::identity(k); 1 << syndrome_len])
    }

    /// Zero logical qubits over `syndrome_len` ignored bits.
    pub fn silent(syndrome_len: usize) -> Self {
        Self {
            blocks: vec![Block {
                syndrome_offset: 0,
                syndrome_len,
                logical_offset: 0,
                logical_len: 0,
                table: None,
            }],
            syndrome_len,
            k: 0,
        }
    }

    /// Blockwise decoder on concatenated syndromes and logical qubits.
    pub fn product(parts: &[Decoder]) -> Self {
        let mut out = Self {
            blocks: Vec::new(),
            syndrome_len: 0,
            k: 0,
        };
        for d in parts {
            for b in &d.blocks {
                out.blocks.push(Block {
                    syndrome_offset: b.syndrome_offset + out.syndrome_len,
                    logical_offset: b.logical_offset + out.k,
                    ..b.clone()
                });
            }
            out.syndrome_len += d.syndrome_len;
            out.k += d.k;
        }
        out
    }

    pub fn num_logical(&self) -> usize {
        self.k
    }

    pub fn syndrome_len(&self) -> usize {
        self.syndrome_len
    }

    pub fn decode(&self, s: &Syndrome) -> PauliOperator {
        assert_eq!(s.len(), self.syndrome_len, "syndrome length");
        let mut x = BitVec::zeros(self.k);
        let mut z = BitVec::zeros(self.k);
        for b in &self.blocks {
            let Some(table) = &b.table else { continue };
            let idx = s.slice(b.syndrome_offset, b.syndrome_len).to_u64() as usize;
            let l = &table[idx];
            x.splice(b.logical_offset, l.x());
            z.splice(b.logical_offset, l.z());
        }
        PauliOperator::from_parts(x, z)
    }

    /// `(syndrome offset, syndrome length, logical offset, logical length)`
    /// for every block that carries logical qubits.
    pub(crate) fn logical_blocks(&self) -> impl Iterator<Item = (usize, usize, usize, usize, &[PauliOperator])> {
        self.blocks.iter().filter_map(|b| {
            b.table.as_ref().filter(|_| b.logical_len > 0).map(|t| {
                (
                    b.syndrome_offset,
                    b.syndrome_len,
                    b.logical_offset,
                    b.logical_len,
                    t.as_slice(),
                )
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoderReport {
    pub cutoff: usize,
    /// Syndromes no error up to the cutoff produces; they decode to the
    /// identity.
    pub unfilled: Vec<Syndrome>,
}

/// Minimum-weight decoder: errors are enumerated by weight, then by
/// interleaved encoding; the first error reaching a syndrome fixes its entry.
///
/// The cutoff is `⌈(d − 1)/2⌉ + 1` when the distance is known, else 2.
pub fn min_weight_decoder(code: &StabilizerCode) -> Result<(Decoder, DecoderReport)> {
    let cutoff = match code.distance() {
        Some(d) => (d.saturating_sub(1)).div_ceil(2) + 1,
        None => 2,
    };
    min_weight_decoder_with_cutoff(code, cutoff)
}

pub fn min_weight_decoder_with_cutoff(
    code: &StabilizerCode,
    cutoff: usize,
) -> Result<(Decoder, DecoderReport)> {
    let r = code.num_checks();
    let k = code.num_logical();
    if r > MAX_TABLE_BITS {
        return Err(Error::InvalidParameter(format!(
            "{r} syndrome bits exceed the lookup-table limit of {MAX_TABLE_BITS}"
        )));
    }
    let mut table: Vec<Option<PauliOperator>> = vec![None; 1 << r];
    table[0] = Some(PauliOperator::identity(k));
    let mut remaining = (1usize << r) - 1;
    'outer: for w in 1..=cutoff {
        for e in paulis_of_weight(code.num_physical(), w) {
            let idx = code.syndrome(&e).to_u64() as usize;
            if table[idx].is_none() {
                table[idx] = Some(code.logical_component(&e));
                remaining -= 1;
                if remaining == 0 {
                    break 'outer;
                }
            }
        }
    }
    let unfilled = (0..1usize << r)
        .filter(|&i| table[i].is_none())
        .map(|i| BitVec::from_u64(i as u64, r))
        .collect();
    let table = table
        .into_iter()
        .map(|e| e.unwrap_or_else(|| PauliOperator::identity(k)))
        .collect();
    Ok((
        Decoder::from_table(k, r, table)?,
        DecoderReport { cutoff, unfilled },
    ))
}

/// Chosen preimage syndrome for every logical Pauli, stored per block.
#[derive(Clone, Debug, PartialEq)]
pub struct SyndromeChoice {
    syndrome_len: usize,
    k: usize,
    /// `(syndrome offset, logical offset, logical length, preimages)` with
    /// preimages indexed by the block Pauli's index.
    blocks: Vec<(usize, usize, usize, Vec<Syndrome>)>,
}

impl SyndromeChoice {
    pub fn num_logical(&self) -> usize {
        self.k
    }

    pub fn syndrome_len(&self) -> usize {
        self.syndrome_len
    }

    /// `S(P)`: the chosen syndrome decoding to `P` (mod phase).
    pub fn preimage(&self, p: &PauliOperator) -> Syndrome {
        assert_eq!(p.num_qubits(), self.k);
        let mut s = BitVec::zeros(self.syndrome_len);
        for (s_off, l_off, l_len, pre) in &self.blocks {
            let idx = p.restrict(*l_off, *l_len).index();
            s.splice(*s_off, &pre[idx]);
        }
        s
    }

    pub(crate) fn blocks(&self) -> &[(usize, usize, usize, Vec<Syndrome>)] {
        &self.blocks
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurjectivityReport {
    pub surjective: bool,
    /// Logical Paulis (per block, in block coordinates) without a preimage.
    pub missing: Vec<PauliOperator>,
    /// Lexicographically smallest preimages; `None` unless surjective.
    pub choice: Option<SyndromeChoice>,
}

/// Whether every logical Pauli (mod phase) is a decoder output.
///
/// Blocks are independent, so the check and the lexicographically smallest
/// preimage are computed block by block.
pub fn check_surjective(decoder: &Decoder) -> SurjectivityReport {
    let mut missing = Vec::new();
    let mut blocks = Vec::new();
    for (s_off, s_len, l_off, l_len, table) in decoder.logical_blocks() {
        let mut syndromes: Vec<Syndrome> = (0..1u64 << s_len)
            .map(|i| BitVec::from_u64(i, s_len))
            .collect();
        syndromes.sort();
        let mut pre: Vec<Option<Syndrome>> = vec![None; 1 << (2 * l_len)];
        for s in syndromes {
            let idx = table[s.to_u64() as usize].index();
            if pre[idx].is_none() {
                pre[idx] = Some(s);
            }
        }
        for (i, p) in pre.iter().enumerate() {
            if p.is_none() {
                missing.push(PauliOperator::from_index(i, l_len));
            }
        }
        blocks.push((s_off, l_off, l_len, pre));
    }
    let surjective = missing.is_empty();
    let choice = surjective.then(|| SyndromeChoice {
        syndrome_len: decoder.syndrome_len(),
        k: decoder.num_logical(),
        blocks: blocks
            .into_iter()
            .map(|(s, l, n, pre)| (s, l, n, pre.into_iter().map(Option::unwrap).collect()))
            .collect(),
    });
    SurjectivityReport {
        surjective,
        missing,
        choice,
    }
}
