//! Fixed-length bit strings over F2.
//!
//! Bit `i` of a string is character `i` of its textual form, so `"0011"` has
//! bits 2 and 3 set. Strings are limited to 128 bits, enough for every code
//! length a dense simulation can address.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Maximum supported length of a [`BitString`].
pub const MAX_BITS: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: usize,
    bits: u128,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_BITS, "bit string length {len} exceeds {MAX_BITS}");
        Self { len, bits: 0 }
    }

    /// The unit vector `e_i` of length `len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut s = Self::zeros(len);
        s.set(i, true);
        s
    }

    /// Builds a string from the low `len` bits of `value` (bit `i` of `value`
    /// becomes character `i`).
    pub fn from_u64(len: usize, value: u64) -> Self {
        Self::from_u128(len, value as u128)
    }

    pub fn from_u128(len: usize, value: u128) -> Self {
        assert!(len <= MAX_BITS, "bit string length {len} exceeds {MAX_BITS}");
        let mask = if len == MAX_BITS { u128::MAX } else { (1u128 << len) - 1 };
        Self { len, bits: value & mask }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut s = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            s.set(i, b);
        }
        s
    }

    /// Every string of length `len`, in increasing packed-value order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> + Clone {
        assert!(len < 64, "cannot enumerate all strings of length {len}");
        (0..(1u64 << len)).map(move |v| BitString::from_u64(len, v))
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
    pub fn as_u128(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.bits >> i) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// XOR of two strings of equal length.
    pub fn try_xor(&self, other: &BitString) -> Result<BitString, Error> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { expected: self.len, found: other.len });
        }
        Ok(BitString { len: self.len, bits: self.bits ^ other.bits })
    }

    /// Lowercase hex of the packed value, as used in JSON records.
    pub fn to_hex(&self) -> String {
        format!("{:x}", self.bits)
    }

    pub fn from_hex(len: usize, hex: &str) -> Result<BitString, Error> {
        let value = u128::from_str_radix(hex, 16)
            .map_err(|e| Error::Parse(format!("invalid hex bit string {hex:?}: {e}")))?;
        if len < MAX_BITS && value >> len != 0 {
            return Err(Error::Parse(format!("hex value {hex} does not fit in {len} bits")));
        }
        Ok(BitString::from_u128(len, value))
    }
}

impl BitXor for BitString {
    type Output = BitString;

    /// Panics on length mismatch; use [`BitString::try_xor`] for a checked XOR.
    fn bitxor(self, rhs: BitString) -> BitString {
        assert_eq!(self.len, rhs.len, "xor of bit strings with different lengths");
        BitString { len: self.len, bits: self.bits ^ rhs.bits }
    }
}

impl BitXorAssign for BitString {
    fn bitxor_assign(&mut self, rhs: BitString) {
        *self = *self ^ rhs;
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.len() > MAX_BITS {
            return Err(Error::Parse(format!("bit string longer than {MAX_BITS} bits")));
        }
        let mut out = BitString::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(i, true),
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            }
        }
        Ok(out)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
