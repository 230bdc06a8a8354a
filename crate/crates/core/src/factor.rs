//! The cycle factor of the middle levels graph.
//!
//! `f(⟨x,0,s⟩) = ⟨r(x),1,s+1⟩` and `f(⟨x,1,s⟩) = ⟨x,0,s⟩`. Each application
//! flips a single bit of the encoded vertex, and `f` is a permutation, so its
//! orbits are vertex-disjoint cycles covering the graph. Two steps rotate the
//! nut once and advance the shift by one, which makes every cycle contain
//! all shifts of every nut in one rotation class.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::dyck::dyck_words;
use crate::error::Error;
use crate::tree::{canonical_of, rotate_dyck, rotate_dyck_inverse, rotation_period, ClassId};
use crate::triple::{MiddleLevels, Triple};
use crate::word::BitWord;

/// Applies `f`.
pub fn f_map(v: &Triple) -> Triple {
    let modulus = v.nut().len() + 1;
    if v.bit() {
        Triple::new_unchecked(v.nut().clone(), false, v.shift())
    } else {
        Triple::new_unchecked(rotate_dyck(v.nut()), true, (v.shift() + 1) % modulus)
    }
}

/// Applies `f⁻¹`.
pub fn f_inverse(v: &Triple) -> Triple {
    let modulus = v.nut().len() + 1;
    if v.bit() {
        Triple::new_unchecked(
            rotate_dyck_inverse(v.nut()),
            false,
            (v.shift() + modulus - 1) % modulus,
        )
    } else {
        Triple::new_unchecked(v.nut().clone(), true, v.shift())
    }
}

/// The position (0 = leftmost) of the bit in which `v` and `f(v)` differ.
///
/// For `⟨1u0v, 0, s⟩` this is the 0 between `u` and `v`, moved by the shift;
/// for `⟨x, 1, s⟩` it is the trailing bit.
pub fn flip_position(v: &Triple) -> usize {
    let modulus = v.nut().len() + 1;
    let local = if v.bit() {
        v.nut().len()
    } else {
        v.nut().match_forward(0).expect("non-empty Dyck word")
    };
    (local + v.shift()) % modulus
}

/// `f` on encoded vertices. Decodes by rotation scan, so this costs `O(n²)`.
pub fn f_word(v: &BitWord) -> Result<BitWord, Error> {
    Triple::decode(v).map(|t| f_map(&t).encode())
}

/// `f⁻¹` on encoded vertices.
pub fn f_inverse_word(v: &BitWord) -> Result<BitWord, Error> {
    Triple::decode(v).map(|t| f_inverse(&t).encode())
}

/// The factor cycle through `start`: `start, f(start), f²(start), …`,
/// stopping before `start` comes around again.
pub fn cycle_of(start: &Triple) -> CycleIter {
    CycleIter {
        start: start.clone(),
        next: Some(start.clone()),
    }
}

/// Iterator returned by [`cycle_of`].
pub struct CycleIter {
    start: Triple,
    next: Option<Triple>,
}

impl Iterator for CycleIter {
    type Item = Triple;

    fn next(&mut self) -> Option<Triple> {
        let cur = self.next.take()?;
        let succ = f_map(&cur);
        if succ != self.start {
            self.next = Some(succ);
        }
        Some(cur)
    }
}

/// One cycle of the factor, identified by the plane tree of its nuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorCycle {
    pub class: ClassId,
    /// Rotation period `t` of the nuts in the class.
    pub period: usize,
    /// `⟨canonical, 0, 0⟩`.
    pub start: Triple,
    /// `2·t·(2n+1)`.
    pub length: u64,
}

/// All cycles of the factor for `n`, ordered by canonical word.
pub fn enumerate_classes(n: usize) -> Result<Vec<FactorCycle>, Error> {
    MiddleLevels::new(n)?;
    // members per class; the orbit of a nut has exactly `period` members
    let mut classes: BTreeMap<ClassId, usize> = BTreeMap::new();
    for x in dyck_words(n) {
        *classes.entry(canonical_of(&x)?).or_insert(0) += 1;
    }
    let dimension = (2 * n + 1) as u64;
    Ok(classes
        .into_iter()
        .map(|(class, period)| {
            debug_assert_eq!(rotation_period(class.canonical()), Ok(period));
            FactorCycle {
                start: Triple::new_unchecked(class.canonical().clone(), false, 0),
                length: 2 * period as u64 * dimension,
                period,
                class,
            }
        })
        .collect())
}
