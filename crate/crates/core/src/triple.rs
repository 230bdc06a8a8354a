//! Vertex coordinates on the middle levels graph.
//!
//! Every vertex of levels `n` and `n+1` of the `(2n+1)`-cube is written
//! uniquely as `σ^s(x b)`: a Dyck word `x` of length `2n` (the nut), one
//! extra bit `b`, and a cyclic right rotation by the shift `s`.

use core::fmt;

use crate::dyck::{check_dyck, is_dyck};
use crate::error::Error;
use crate::word::BitWord;

/// A vertex `⟨nut, bit, shift⟩` of the middle levels graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    nut: BitWord,
    bit: bool,
    shift: usize,
}

impl Triple {
    /// Validates the nut and the shift range `0..=2n`.
    pub fn new(nut: BitWord, bit: bool, shift: usize) -> Result<Self, Error> {
        check_dyck(&nut)?;
        if nut.is_empty() {
            return Err(Error::EmptyDyck);
        }
        if shift > nut.len() {
            return Err(Error::Shift {
                shift,
                max: nut.len(),
            });
        }
        Ok(Triple { nut, bit, shift })
    }

    /// Caller guarantees the invariants.
    #[inline]
    pub(crate) fn new_unchecked(nut: BitWord, bit: bool, shift: usize) -> Self {
        debug_assert!(is_dyck(&nut) && shift <= nut.len());
        Triple { nut, bit, shift }
    }

    #[inline]
    pub fn nut(&self) -> &BitWord {
        &self.nut
    }

    #[inline]
    pub fn bit(&self) -> bool {
        self.bit
    }

    #[inline]
    pub fn shift(&self) -> usize {
        self.shift
    }

    /// Number of edges of the nut.
    #[inline]
    pub fn n(&self) -> usize {
        self.nut.len() / 2
    }

    /// The encoded vertex `σ^shift(nut · bit)`.
    #[inline]
    pub fn encode(&self) -> BitWord {
        self.nut.pushed(self.bit).rotate_right(self.shift as isize)
    }

    /// Recovers the unique triple of a middle-levels vertex by trying every
    /// rotation. Exactly one rotation must yield `Dyck · bit`.
    pub fn decode(v: &BitWord) -> Result<Triple, Error> {
        let len = v.len();
        if len < 3 || len.is_multiple_of(2) {
            return Err(Error::Length {
                word: v.clone(),
                len,
                expected: if len < 3 { 3 } else { len + 1 },
            });
        }
        let n = len / 2;
        let weight = v.weight();
        let bit = match weight {
            w if w == n => false,
            w if w == n + 1 => true,
            _ => {
                return Err(Error::Level {
                    word: v.clone(),
                    weight,
                    n,
                })
            }
        };
        let mut found = None;
        let mut matches = 0;
        for s in 0..len {
            // v = σ^s(x b)  <=>  σ^{-s}(v) = x b
            let unrotated = v.rotate_right(-(s as isize));
            if unrotated.get(len - 1) == bit {
                let nut = unrotated.slice(0..len - 1);
                if is_dyck(&nut) {
                    matches += 1;
                    found.get_or_insert(Triple::new_unchecked(nut, bit, s));
                }
            }
        }
        match (found, matches) {
            (Some(t), 1) => Ok(t),
            _ => Err(Error::Decode {
                word: v.clone(),
                matches,
            }),
        }
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{:?},{},{}⟩", self.nut, self.bit as u8, self.shift)
    }
}

/// The middle levels graph `M_n`: levels `n` and `n+1` of the `(2n+1)`-cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MiddleLevels {
    n: usize,
}

impl MiddleLevels {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::ZeroN);
        }
        Ok(MiddleLevels { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Length of the vertex words, `2n+1`.
    pub fn dimension(&self) -> usize {
        2 * self.n + 1
    }

    /// `C(2n+1, n)`, the size of each of the two levels.
    pub fn level_size(&self) -> Result<u64, Error> {
        binomial(self.dimension() as u64, self.n as u64).ok_or(Error::Overflow { n: self.n })
    }

    /// Total vertex count `2·C(2n+1, n)`.
    pub fn vertex_count(&self) -> Result<u64, Error> {
        self.level_size()?
            .checked_mul(2)
            .ok_or(Error::Overflow { n: self.n })
    }

    /// True iff `v` is a vertex of this graph.
    pub fn contains(&self, v: &BitWord) -> bool {
        v.len() == self.dimension() && (v.weight() == self.n || v.weight() == self.n + 1)
    }
}

/// `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}
