//! Fixed-length bit vectors over F2, packed into 64-bit words.
//!
//! Bit `i` of a vector is the `i`-th least significant bit of word `i / 64`.
//! The same little-endian convention is used everywhere an integer index
//! stands for a point of the Boolean cube.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Interpret the low `len` bits of `index` as a vector (bit 0 first).
    pub fn from_index(index: u64, len: usize) -> Self {
        assert!(len <= 64, "from_index supports at most 64 bits");
        let mut v = BitVec::zeros(len);
        if len > 0 {
            let mask = if len == 64 {
                u64::MAX
            } else {
                (1u64 << len) - 1
            };
            v.words[0] = index & mask;
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parse a string of '0'/'1' characters; the first character is bit 0.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::invalid(format!(
                        "bitstring may contain only '0' and '1', found {other:?}"
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND with `other` (the F2 inner product).
    #[inline]
    pub fn parity_and(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (w, o) in self.words.iter().zip(&other.words) {
            acc ^= w & o;
        }
        acc.count_ones() & 1 == 1
    }

    /// The integer whose low bits are this vector (requires `len <= 64`).
    pub fn index(&self) -> u64 {
        assert!(self.len <= 64, "index() supports at most 64 bits");
        if self.len == 0 {
            0
        } else {
            self.words[0]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// A uniformly random vector of the given length.
    pub fn random<R: rand::Rng>(len: usize, rng: &mut R) -> Self {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            v.set(i, rng.gen::<bool>());
        }
        v
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bitstring())
    }
}
