use std::fmt;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
pub(crate) fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// A fixed-length vector over F_2, bit `i` stored at bit `i % 64` of word `i / 64`.
///
/// Padding bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Low `len` bits of `value`; `len` must be at most 64.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64, "from_u64 needs len <= 64, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value & low_mask(len);
        }
        v
    }

    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = BitVector { len, words };
        v.clear_padding();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters; the first character is bit 0.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::Parse(format!("bad bit character {ch:?} in {s:?}"))),
            }
        }
        Ok(v)
    }

    /// Inverse of [`from_bit_str`](Self::from_bit_str).
    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    /// Parses a hexadecimal integer whose bit `i` is coordinate `i`.
    pub fn from_hex(len: usize, hex: &str) -> Result<Self> {
        let digits = hex.trim().trim_start_matches("0x").trim_start_matches("0X");
        let mut v = Self::zeros(len);
        for (pos, ch) in digits.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?} in {hex:?}")))?
                as u64;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let idx = pos * 4 + b;
                    if idx >= len {
                        return Err(Error::Parse(format!(
                            "hex value {hex:?} does not fit in {len} bits"
                        )));
                    }
                    v.set(idx, true);
                }
            }
        }
        Ok(v)
    }

    pub fn to_hex(&self) -> String {
        words_to_hex(&self.words)
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The vector as an integer; panics when longer than 64 bits.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "to_u64 on a {}-bit vector", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Coordinates `range` as a new vector.
    pub fn slice(&self, range: std::ops::Range<usize>) -> BitVector {
        assert!(range.end <= self.len);
        let mut out = BitVector::zeros(range.len());
        for (dst, src) in range.enumerate() {
            if self.get(src) {
                out.set(dst, true);
            }
        }
        out
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= low_mask(rem);
            }
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

/// Little-endian word slice as a lowercase hex integer without prefix.
pub(crate) fn words_to_hex(words: &[u64]) -> String {
    let top = match words.iter().rposition(|&w| w != 0) {
        Some(i) => i,
        None => return "0".to_string(),
    };
    let mut s = format!("{:x}", words[top]);
    for w in words[..top].iter().rev() {
        s.push_str(&format!("{w:016x}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip_across_words() {
        let mut v = BitVector::zeros(130);
        for i in [0, 5, 63, 64, 100, 129] {
            v.set(i, true);
        }
        let hex = v.to_hex();
        assert_eq!(BitVector::from_hex(130, &hex).unwrap(), v);
        assert_eq!(BitVector::zeros(7).to_hex(), "0");
    }

    #[test]
    fn hex_rejects_overflow() {
        assert!(BitVector::from_hex(3, "f").is_err());
        assert!(BitVector::from_hex(4, "f").is_ok());
    }

    #[test]
    fn bit_str_orders_index_zero_first() {
        let v = BitVector::from_bit_str("1100").unwrap();
        assert_eq!(v.to_u64(), 0b0011);
        assert_eq!(format!("{v:?}"), "BitVector(1100)");
        assert_eq!(v.to_bit_string(), "1100");
    }

    #[test]
    fn from_words_clears_padding() {
        let v = BitVector::from_words(3, vec![u64::MAX]);
        assert_eq!(v.weight(), 3);
    }

    #[test]
    fn concat_and_slice() {
        let a = BitVector::from_bit_str("101").unwrap();
        let b = BitVector::from_bit_str("0011").unwrap();
        let c = a.concat(&b);
        assert_eq!(c, BitVector::from_bit_str("1010011").unwrap());
        assert_eq!(c.slice(3..7), b);
    }
}
