//! Word-packed bit vectors.

use std::fmt;

const WORD: usize = 64;

/// Fixed-length bit vector packed into `u64` words.
///
/// Bits beyond `len` in the last word are always zero, so word-wise equality
/// and hashing agree with bitwise equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, ignoring whitespace.
    pub fn parse(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| Self::from_bools(&b))
    }

    /// Little-endian integer view: bit `i` of `value` becomes bit `i`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1 << len) - 1 };
            v.words[0] = value & mask;
        }
        v
    }

    /// Inverse of [`BitVec::from_u64`]; panics when longer than one word.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Number of positions set in both vectors.
    pub fn and_count(&self, other: &BitVec) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// GF(2) inner product.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Symplectic form on interleaved `(x, z)` pairs: Σ u_{2q} v_{2q+1} + u_{2q+1} v_{2q}.
    #[inline]
    pub fn symplectic_dot(&self, other: &BitVec) -> bool {
        const EVEN: u64 = 0x5555_5555_5555_5555;
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            let swapped = ((b & EVEN) << 1) | ((b >> 1) & EVEN);
            acc ^= a & swapped;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    /// Copies `len` bits starting at `start` into a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Writes `src` into `self` starting at bit `start`.
    pub fn splice(&mut self, start: usize, src: &BitVec) {
        for i in 0..src.len() {
            self.set(start + i, src.get(i));
        }
    }

    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        out.splice(0, self);
        out.splice(self.len, other);
        out
    }

    pub fn to_bools(&self) -> Vec<bool> {
        self.iter().collect()
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order reading bit 0 first.
impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_and_count() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        v.flip(64);
        assert!(!v.get(64));
    }

    #[test]
    fn dot_and_parse() {
        let a = BitVec::parse("1101").unwrap();
        let b = BitVec::parse("1011").unwrap();
        assert!(!a.dot(&b));
        assert_eq!(a.and_count(&b), 2);
        assert!(BitVec::parse("10x").is_none());
        assert_eq!(a.to_string(), "1101");
    }

    #[test]
    fn symplectic_dot_pairs_adjacent_bits() {
        // X vs Z on one qubit anticommute; XZ vs ZX commute.
        assert!(BitVec::parse("10").unwrap().symplectic_dot(&BitVec::parse("01").unwrap()));
        assert!(!BitVec::parse("1001").unwrap().symplectic_dot(&BitVec::parse("0110").unwrap()));
        let mut a = BitVec::zeros(130);
        let mut b = BitVec::zeros(130);
        a.set(128, true);
        b.set(129, true);
        assert!(a.symplectic_dot(&b));
    }

    #[test]
    fn lexicographic_order_reads_bit_zero_first() {
        let a = BitVec::parse("0011").unwrap();
        let b = BitVec::parse("0100").unwrap();
        assert!(a < b);
    }

    #[test]
    fn slice_and_splice() {
        let a = BitVec::parse("101100").unwrap();
        let s = a.slice(2, 3);
        assert_eq!(s.to_string(), "110");
        let mut z = BitVec::zeros(6);
        z.splice(1, &s);
        assert_eq!(z.to_string(), "011000");
    }
}
