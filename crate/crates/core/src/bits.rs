//! Fixed-length bit strings.
//!
//! Bit 1 is the leftmost character of the printed string and the most
//! significant bit of the integer encoding, so `"011011"` encodes to
//! `0b011011 = 27`. The same bit maps to qubit 0 in the simulator.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest bit string representable by [`BitVector`].
pub const MAX_BITS: usize = 64;

/// A binary vector of length `1..=64`.
///
/// Ordering is lexicographic on the printed string (equal lengths compare by
/// integer value).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    bits: u64,
}

fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl BitVector {
    /// Builds a vector from its integer encoding `Σ c_i·2^(len−i)`.
    pub fn from_u64(len: usize, bits: u64) -> Result<Self> {
        if len == 0 || len > MAX_BITS {
            return Err(Error::BitString(format!(
                "length {len} out of range 1..=64"
            )));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::BitString(format!(
                "value {bits} does not fit {len} bits"
            )));
        }
        Ok(Self { len, bits })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_u64(len, 0)
    }

    /// Builds a vector from 0/1 entries, first entry leftmost.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut value = 0u64;
        for &b in bits {
            if b > 1 {
                return Err(Error::BitString(format!("entry {b} is not binary")));
            }
            value = (value << 1) | b as u64;
        }
        Self::from_u64(bits.len(), value)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Integer encoding; also the basis-state index of this string.
    #[inline]
    pub fn as_u64(&self) -> u64 {
        self.bits
    }

    /// Bit at zero-based position `i` counted from the left.
    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        debug_assert!(i < self.len);
        ((self.bits >> (self.len - 1 - i)) & 1) as u8
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.bit(i)).collect()
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Zero-based positions of the 1 entries, left to right.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.bit(i) == 1).collect()
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        check_len(self.len, other.len)?;
        Ok(Self {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let len = self.len + other.len;
        if len > MAX_BITS {
            return Err(Error::BitString(format!("concatenation of {len} bits")));
        }
        Ok(Self {
            len,
            bits: (self.bits << other.len) | other.bits,
        })
    }

    /// Bits `[start, start + width)` as an integer.
    pub fn slice_value(&self, start: usize, width: usize) -> u64 {
        debug_assert!(start + width <= self.len);
        (self.bits >> (self.len - start - width)) & low_mask(width)
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Length { expected, found });
    }
    Ok(())
}

/// Number of positions where `a` and `b` differ.
pub fn hamming_distance(a: &BitVector, b: &BitVector) -> Result<u32> {
    check_len(a.len, b.len)?;
    Ok((a.bits ^ b.bits).count_ones())
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                _ => Err(Error::BitString(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::BitString(s.to_string()));
        }
        Self::from_bits(&bits)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn integer_encoding_is_msb_first() {
        let v = bv("011011");
        assert_eq!(v.as_u64(), 27);
        assert_eq!(v.bit(0), 0);
        assert_eq!(v.bit(1), 1);
        assert_eq!(v.to_string(), "011011");
        assert_eq!(v.support(), vec![1, 2, 4, 5]);
    }

    #[test]
    fn distances_from_decoding_examples() {
        assert_eq!(hamming_distance(&bv("011011"), &bv("111011")).unwrap(), 1);
        assert_eq!(hamming_distance(&bv("010"), &bv("011")).unwrap(), 1);
        assert_eq!(hamming_distance(&bv("111"), &bv("011")).unwrap(), 1);
        let x = bv("1010011");
        assert_eq!(hamming_distance(&x, &x).unwrap(), 0);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        assert!(matches!(
            hamming_distance(&bv("01"), &bv("011")),
            Err(Error::Length {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn rejects_bad_strings() {
        assert!("".parse::<BitVector>().is_err());
        assert!("012".parse::<BitVector>().is_err());
        assert!(BitVector::from_u64(0, 0).is_err());
        assert!(BitVector::from_u64(3, 8).is_err());
    }

    #[test]
    fn slices_and_concat() {
        let v = bv("0001110111");
        assert_eq!(v.slice_value(2, 2), 0b01);
        assert_eq!(v.slice_value(8, 2), 0b11);
        let c = bv("011").concat(&bv("10")).unwrap();
        assert_eq!(c.to_string(), "01110");
    }

    proptest::proptest! {
        #[test]
        fn distance_is_symmetric_weight_of_xor(len in 1usize..=64, a: u64, b: u64) {
            let m = low_mask(len);
            let x = BitVector::from_u64(len, a & m).unwrap();
            let y = BitVector::from_u64(len, b & m).unwrap();
            let d = hamming_distance(&x, &y).unwrap();
            proptest::prop_assert_eq!(d, hamming_distance(&y, &x).unwrap());
            proptest::prop_assert_eq!(d, x.xor(&y).unwrap().weight());
            proptest::prop_assert_eq!(x.to_string().parse::<BitVector>().unwrap(), x);
        }
    }
}
