//! The syndrome wiring `π` and syndrome reset.

use std::collections::HashMap;

use rand::Rng;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

use super::code::Syndrome;
use super::decoder::{check_surjective, Decoder};

#[derive(Clone, Debug, PartialEq)]
struct PiBlock {
    /// Bits `[2·logical_offset, 2·(logical_offset + logical_len))` of `B(P)`.
    logical_offset: usize,
    logical_len: usize,
    syndrome_offset: usize,
    syndrome_len: usize,
    /// Block syndrome for each block encoding, indexed by the encoding.
    forward: Vec<Syndrome>,
    /// Inverse on the image; other syndromes map to the encoding of their
    /// decoded Pauli.
    inverse: HashMap<Syndrome, u64>,
    table: Vec<u64>,
}

/// Bijection between register-B encodings `B(P)` and chosen syndromes,
/// `π(B(P)) = S(P)`, applied block by block.
#[derive(Clone, Debug, PartialEq)]
pub struct PiMap {
    k: usize,
    syndrome_len: usize,
    blocks: Vec<PiBlock>,
    window: Vec<usize>,
}

/// Builds `π` from a surjective decoder using the lexicographically smallest
/// preimages.
pub fn build_pi(decoder: &Decoder) -> Result<PiMap> {
    let report = check_surjective(decoder);
    let choice = report.choice.ok_or(Error::NotSurjective {
        missing: report.missing.len(),
    })?;
    let mut blocks = Vec::new();
    let mut window = Vec::new();
    let tables: Vec<_> = decoder.logical_blocks().map(|b| b.4.to_vec()).collect();
    for ((s_off, l_off, l_len, pre), table) in choice.blocks().iter().zip(tables) {
        let s_len = pre[0].len();
        let inverse: HashMap<Syndrome, u64> = pre
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u64))
            .collect();
        let mut support = BitVec::zeros(s_len);
        for s in pre {
            support.or_assign(s);
        }
        window.extend(support.ones().map(|b| b + s_off));
        blocks.push(PiBlock {
            logical_offset: *l_off,
            logical_len: *l_len,
            syndrome_offset: *s_off,
            syndrome_len: s_len,
            forward: pre.clone(),
            inverse,
            table: table.iter().map(|p| p.index() as u64).collect(),
        });
    }
    window.sort_unstable();
    Ok(PiMap {
        k: decoder.num_logical(),
        syndrome_len: decoder.syndrome_len(),
        blocks,
        window,
    })
}

impl PiMap {
    pub fn num_logical(&self) -> usize {
        self.k
    }

    pub fn syndrome_len(&self) -> usize {
        self.syndrome_len
    }

    /// Syndrome positions that some `π(B(P))` can set: the register-B window.
    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// Writes `π(b)` into the decoder blocks of `syndrome`; bits outside the
    /// blocks are left alone.
    pub fn apply_into(&self, b: &BitVec, syndrome: &mut Syndrome) {
        assert_eq!(b.len(), 2 * self.k);
        for blk in &self.blocks {
            let idx = b.slice(2 * blk.logical_offset, 2 * blk.logical_len).to_u64() as usize;
            syndrome.splice(blk.syndrome_offset, &blk.forward[idx]);
        }
    }

    /// `π(b)` as a full syndrome, zero outside the decoder blocks.
    pub fn apply(&self, b: &BitVec) -> Syndrome {
        let mut s = BitVec::zeros(self.syndrome_len);
        self.apply_into(b, &mut s);
        s
    }

    /// `π⁻¹(s)`; syndromes outside the image map to `B(D(s))` blockwise.
    pub fn invert(&self, s: &Syndrome) -> BitVec {
        assert_eq!(s.len(), self.syndrome_len);
        let mut b = BitVec::zeros(2 * self.k);
        for blk in &self.blocks {
            let part = s.slice(blk.syndrome_offset, blk.syndrome_len);
            let idx = match blk.inverse.get(&part) {
                Some(&i) => i,
                None => blk.table[part.to_u64() as usize],
            };
            b.splice(2 * blk.logical_offset, &BitVec::from_u64(idx, 2 * blk.logical_len));
        }
        b
    }

    /// `π(B(P))`.
    pub fn encode_pauli(&self, p: &PauliOperator) -> Syndrome {
        self.apply(&p.encode())
    }
}

/// Sets each bit to 0 independently with probability `r`.
///
/// Only set bits draw randomness; clearing a zero bit has no effect.
pub fn reset_syndrome<R: Rng + ?Sized>(bits: &mut BitVec, r: f64, rng: &mut R) {
    if r <= 0.0 {
        return;
    }
    if r >= 1.0 {
        *bits = BitVec::zeros(bits.len());
        return;
    }
    let ones: Vec<usize> = bits.ones().collect();
    for i in ones {
        if rng.gen::<f64>() < r {
            bits.set(i, false);
        }
    }
}
