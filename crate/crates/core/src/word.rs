//! Fixed-length bitstrings.
//!
//! Position 0 is the leftmost character of the printed word. Words of up to
//! 64 bits are packed into a single machine word with position 0 stored in
//! the most significant used bit, so that comparing two packed words of the
//! same length numerically is the same as comparing them lexicographically.
//! Longer words spill into a plain bit vector.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use crate::error::Error;

/// Number of bits that fit in the packed representation.
pub const PACKED_BITS: usize = 64;

#[inline]
const fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A bitstring of arbitrary length.
///
/// Invariant: every word of length at most [`PACKED_BITS`] uses the packed
/// representation with all bits above `len` cleared, so derived equality and
/// hashing agree with bitwise equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitWord(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Packed { len: u8, bits: u64 },
    Spilled(Vec<bool>),
}

impl BitWord {
    /// The empty word.
    pub const fn empty() -> Self {
        BitWord(Repr::Packed { len: 0, bits: 0 })
    }

    /// Builds a word of `len` bits from its packed value, most significant
    /// used bit first. Bits above `len` are ignored.
    ///
    /// # Panics
    ///
    /// Panics if `len > 64`.
    pub fn from_packed(len: usize, bits: u64) -> Self {
        assert!(len <= PACKED_BITS, "packed words hold at most 64 bits");
        BitWord(Repr::Packed {
            len: len as u8,
            bits: bits & low_mask(len),
        })
    }

    /// `len` zero bits.
    pub fn zeros(len: usize) -> Self {
        if len <= PACKED_BITS {
            Self::from_packed(len, 0)
        } else {
            BitWord(Repr::Spilled(alloc::vec![false; len]))
        }
    }

    /// Builds a word from a slice of bits, leftmost first.
    pub fn from_bits(bits: &[bool]) -> Self {
        bits.iter().copied().collect()
    }

    /// The packed value, if the word fits in 64 bits.
    #[inline]
    pub fn as_packed(&self) -> Option<u64> {
        match self.0 {
            Repr::Packed { bits, .. } => Some(bits),
            Repr::Spilled(_) => None,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        match &self.0 {
            Repr::Packed { len, .. } => *len as usize,
            Repr::Spilled(v) => v.len(),
        }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Bit at position `i` (0 = leftmost).
    ///
    /// # Panics
    ///
    /// Panics if `i >= self.len()`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        match &self.0 {
            Repr::Packed { len, bits } => {
                let len = *len as usize;
                assert!(i < len, "bit index {i} out of range for length {len}");
                (bits >> (len - 1 - i)) & 1 == 1
            }
            Repr::Spilled(v) => v[i],
        }
    }

    pub fn iter(&self) -> Bits<'_> {
        Bits {
            word: self,
            range: 0..self.len(),
        }
    }

    /// Number of 1-bits.
    #[inline]
    pub fn weight(&self) -> usize {
        match &self.0 {
            Repr::Packed { bits, .. } => bits.count_ones() as usize,
            Repr::Spilled(v) => v.iter().filter(|&&b| b).count(),
        }
    }

    /// Cyclic right rotation by `s` steps: the last bit moves to the front.
    /// Negative `s` rotates left; `s` is reduced modulo the length.
    pub fn rotate_right(&self, s: isize) -> BitWord {
        let len = self.len();
        if len == 0 {
            return self.clone();
        }
        let s = s.rem_euclid(len as isize) as usize;
        if s == 0 {
            return self.clone();
        }
        match &self.0 {
            Repr::Packed { bits, .. } => {
                let rotated = (bits >> s) | (bits << (len - s));
                Self::from_packed(len, rotated)
            }
            Repr::Spilled(v) => {
                let mut out = v.clone();
                out.rotate_right(s);
                BitWord(Repr::Spilled(out))
            }
        }
    }

    /// The word with bit `i` inverted.
    pub fn flipped(&self, i: usize) -> BitWord {
        let mut out = self.clone();
        out.flip(i);
        out
    }

    /// Inverts bit `i` in place.
    pub fn flip(&mut self, i: usize) {
        match &mut self.0 {
            Repr::Packed { len, bits } => {
                let len = *len as usize;
                assert!(i < len, "bit index {i} out of range for length {len}");
                *bits ^= 1 << (len - 1 - i);
            }
            Repr::Spilled(v) => v[i] = !v[i],
        }
    }

    /// The subword covering `range`.
    pub fn slice(&self, range: Range<usize>) -> BitWord {
        let len = self.len();
        assert!(
            range.start <= range.end && range.end <= len,
            "slice {range:?} out of range for length {len}"
        );
        match &self.0 {
            Repr::Packed { bits, .. } => {
                let width = range.end - range.start;
                if width == 0 {
                    return Self::empty();
                }
                Self::from_packed(width, bits >> (len - range.end))
            }
            Repr::Spilled(v) => v[range].iter().copied().collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitWord) -> BitWord {
        let total = self.len() + other.len();
        match (&self.0, &other.0) {
            (Repr::Packed { bits: a, .. }, Repr::Packed { len: lb, bits: b }) if total <= 64 => {
                let lb = *lb as usize;
                let shifted = if lb == 64 { 0 } else { a << lb };
                Self::from_packed(total, shifted | b)
            }
            _ => self.iter().chain(other.iter()).collect(),
        }
    }

    /// `self` followed by a single bit.
    pub fn pushed(&self, bit: bool) -> BitWord {
        self.concat(&BitWord::from_packed(1, bit as u64))
    }

    /// Hamming distance to a word of the same length.
    pub fn hamming(&self, other: &BitWord) -> Option<usize> {
        if self.len() != other.len() {
            return None;
        }
        match (&self.0, &other.0) {
            (Repr::Packed { bits: a, .. }, Repr::Packed { bits: b, .. }) => {
                Some((a ^ b).count_ones() as usize)
            }
            _ => Some(
                self.iter()
                    .zip(other.iter())
                    .filter(|(a, b)| a != b)
                    .count(),
            ),
        }
    }

    /// Position of the 0 matching the 1 at `start`, i.e. the first position
    /// after `start` where the running balance (+1 per 1, -1 per 0) counted
    /// from `start` returns to zero.
    pub fn match_forward(&self, start: usize) -> Option<usize> {
        let len = self.len();
        if start >= len || !self.get(start) {
            return None;
        }
        match &self.0 {
            Repr::Packed { bits, .. } => {
                let mut depth = 0i32;
                for i in start..len {
                    if (bits >> (len - 1 - i)) & 1 == 1 {
                        depth += 1;
                    } else {
                        depth -= 1;
                        if depth == 0 {
                            return Some(i);
                        }
                    }
                }
                None
            }
            Repr::Spilled(v) => {
                let mut depth = 0i32;
                for (i, &b) in v.iter().enumerate().skip(start) {
                    if b {
                        depth += 1;
                    } else {
                        depth -= 1;
                        if depth == 0 {
                            return Some(i);
                        }
                    }
                }
                None
            }
        }
    }

    /// Position of the 1 matching the 0 at `end`, scanning leftwards.
    pub fn match_backward(&self, end: usize) -> Option<usize> {
        if end >= self.len() || self.get(end) {
            return None;
        }
        let mut depth = 0i32;
        for i in (0..=end).rev() {
            if self.get(i) {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            } else {
                depth += 1;
            }
        }
        None
    }
}

impl Default for BitWord {
    fn default() -> Self {
        Self::empty()
    }
}

impl FromIterator<bool> for BitWord {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut bits = 0u64;
        let mut len = 0usize;
        let mut spill: Option<Vec<bool>> = None;
        for b in iter {
            match &mut spill {
                Some(v) => v.push(b),
                None if len < PACKED_BITS => {
                    bits = (bits << 1) | b as u64;
                    len += 1;
                }
                None => {
                    let mut v: Vec<bool> = BitWord::from_packed(len, bits).iter().collect();
                    v.push(b);
                    spill = Some(v);
                }
            }
        }
        match spill {
            Some(v) => BitWord(Repr::Spilled(v)),
            None => BitWord::from_packed(len, bits),
        }
    }
}

/// Iterator over the bits of a word, leftmost first.
pub struct Bits<'a> {
    word: &'a BitWord,
    range: Range<usize>,
}

impl Iterator for Bits<'_> {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        self.range.next().map(|i| self.word.get(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.range.size_hint()
    }
}

impl DoubleEndedIterator for Bits<'_> {
    fn next_back(&mut self) -> Option<bool> {
        self.range.next_back().map(|i| self.word.get(i))
    }
}

impl ExactSizeIterator for Bits<'_> {}

/// Lexicographic order on the printed words; a proper prefix sorts first.
impl Ord for BitWord {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Packed { len: la, bits: a }, Repr::Packed { len: lb, bits: b }) if la == lb => {
                a.cmp(b)
            }
            _ => self.iter().cmp(other.iter()),
        }
    }
}

impl PartialOrd for BitWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.bytes()
            .enumerate()
            .map(|(i, c)| match c {
                b'0' => Ok(false),
                b'1' => Ok(true),
                _ => Err(Error::Parse { position: i }),
            })
            .collect()
    }
}
