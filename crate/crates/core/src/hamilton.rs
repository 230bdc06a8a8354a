//! Streaming the Hamilton cycle.
//!
//! Away from gluing footprints the cycle follows the factor, in whichever
//! direction it was entered. Footprint vertices carry explicit neighbor
//! pairs. The stream keeps the current vertex as a triple, so each step is
//! one tree rotation on the nut (`O(n)`) plus a table lookup near shifts
//! 0 to 3, where all footprint vertices live.

use core::borrow::Borrow;

use crate::error::Error;
use crate::factor::{f_inverse, f_map};
use crate::gluing::{star_word, EdgeKind, GluingPlan, FOOTPRINT_SHIFTS};
use crate::triple::{MiddleLevels, Triple};
use crate::word::BitWord;

const MAX_FOOTPRINT_SHIFT: usize = 3;

/// Number of vertices of the middle levels graph, `2·C(2n+1, n)`.
pub fn cycle_length(n: usize) -> Result<u64, Error> {
    MiddleLevels::new(n)?.vertex_count()
}

/// The Hamilton-cycle neighbor of `at` other than `prev`.
///
/// Decodes `at` by rotation scan; use [`HamiltonStream`] for bulk
/// generation.
pub fn successor(plan: &GluingPlan, prev: &BitWord, at: &BitWord) -> Result<BitWord, Error> {
    let [a, b] = neighbors(plan, at)?;
    if *prev == a {
        Ok(b)
    } else if *prev == b {
        Ok(a)
    } else {
        Err(Error::NotAdjacent {
            prev: prev.clone(),
            at: at.clone(),
        })
    }
}

/// Both Hamilton-cycle neighbors of `at`.
pub fn neighbors(plan: &GluingPlan, at: &BitWord) -> Result<[BitWord; 2], Error> {
    let levels = MiddleLevels::new(plan.n())?;
    if at.len() != levels.dimension() {
        return Err(Error::Length {
            word: at.clone(),
            len: at.len(),
            expected: levels.dimension(),
        });
    }
    if let Some([a, b]) = plan.neighbors(at) {
        return Ok([a.word.clone(), b.word.clone()]);
    }
    let t = Triple::decode(at)?;
    Ok([f_inverse(&t).encode(), f_map(&t).encode()])
}

/// Builds the gluing plan for `n` and streams its Hamilton cycle.
pub fn generate(n: usize) -> Result<HamiltonStream<GluingPlan>, Error> {
    Ok(HamiltonStream::new(GluingPlan::build(n)?))
}

/// The Hamilton cycle as an iterator of vertex words.
///
/// Yields every vertex exactly once, starting from `⟨(10)^n, 0, 0⟩` and
/// first moving along `f`, then stops. The plan may be owned or borrowed
/// (any `Borrow<GluingPlan>`, e.g. `&GluingPlan` or `Arc<GluingPlan>`).
pub struct HamiltonStream<P> {
    plan: P,
    start: BitWord,
    current: Triple,
    word: BitWord,
    prev: BitWord,
    forward: bool,
    emitted: u64,
    done: bool,
}

impl<P: Borrow<GluingPlan>> HamiltonStream<P> {
    pub fn new(plan: P) -> Self {
        let n = plan.borrow().n();
        let current = Triple::new_unchecked(star_word(n), false, 0);
        // The edge to f⁻¹(start) survives every gluing: start can only be
        // the `z` of some footprint, whose removed edge is (z, f(z)).
        let prev = f_inverse(&current).encode();
        Self::from_parts(plan, current, prev, true)
    }

    /// Resumes the cycle at `at`, arriving from its neighbor `prev`. The
    /// stream ends just before `at` would repeat.
    pub fn starting_at(plan: P, prev: &BitWord, at: &BitWord) -> Result<Self, Error> {
        let next = successor(plan.borrow(), prev, at)?;
        let current = Triple::decode(at)?;
        let forward = next == f_map(&current).encode();
        Ok(Self::from_parts(plan, current, prev.clone(), forward))
    }

    fn from_parts(plan: P, current: Triple, prev: BitWord, forward: bool) -> Self {
        let word = current.encode();
        HamiltonStream {
            plan,
            start: word.clone(),
            current,
            word,
            prev,
            forward,
            emitted: 0,
            done: false,
        }
    }

    pub fn plan(&self) -> &GluingPlan {
        self.plan.borrow()
    }

    /// Vertices yielded so far.
    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    fn advance(&mut self) -> Triple {
        let plan = self.plan.borrow();
        if self.current.shift() <= MAX_FOOTPRINT_SHIFT {
            if let Some([a, b]) = plan.neighbors(&self.word) {
                let nb = if a.word != self.prev { a } else { b };
                match nb.edge {
                    EdgeKind::Forward => self.forward = true,
                    EdgeKind::Backward => self.forward = false,
                    // glue edges end at footprint vertices, which set the
                    // direction again on the way out
                    EdgeKind::Glue => {}
                }
                return nb.vertex.clone();
            }
        }
        if self.forward {
            f_map(&self.current)
        } else {
            f_inverse(&self.current)
        }
    }
}

impl<P: Borrow<GluingPlan>> Iterator for HamiltonStream<P> {
    type Item = BitWord;

    fn next(&mut self) -> Option<BitWord> {
        if self.done {
            return None;
        }
        let next = self.advance();
        let next_word = next.encode();
        let out = core::mem::replace(&mut self.word, next_word);
        self.prev = out.clone();
        self.current = next;
        self.emitted += 1;
        if self.word == self.start {
            self.done = true;
        }
        Some(out)
    }
}

const _: () = {
    let mut i = 0;
    while i < FOOTPRINT_SHIFTS.len() {
        assert!(FOOTPRINT_SHIFTS[i] <= MAX_FOOTPRINT_SHIFT);
        i += 1;
    }
};

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec::Vec;
    use std::sync::Arc;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn cycle_lengths() {
        assert_eq!(cycle_length(1).unwrap(), 6);
        assert_eq!(cycle_length(3).unwrap(), 70);
        assert_eq!(cycle_length(10).unwrap(), 705432);
        assert_eq!(cycle_length(0), Err(Error::ZeroN));
    }

    #[test]
    fn successor_examples() {
        let plan = GluingPlan::build(2).unwrap();
        assert_eq!(
            successor(&plan, &w("11001"), &w("11000")).unwrap(),
            w("11010")
        );
        assert_eq!(
            successor(&plan, &w("11010"), &w("11000")).unwrap(),
            w("11001")
        );
        // adjacent in the cube, but not on the cycle
        assert!(matches!(
            successor(&plan, &w("11100"), &w("11000")),
            Err(Error::NotAdjacent { .. })
        ));
        assert!(matches!(
            successor(&plan, &w("11001"), &w("11110")),
            Err(Error::Level { .. })
        ));
        assert!(matches!(
            successor(&plan, &w("1100"), &w("1100")),
            Err(Error::Length { .. })
        ));
    }

    #[test]
    fn successor_at_override_vertices() {
        let plan = GluingPlan::build(3).unwrap();
        for (v, [a, b]) in plan.overrides() {
            assert_eq!(successor(&plan, &a.word, v).unwrap(), b.word);
            assert_eq!(successor(&plan, &b.word, v).unwrap(), a.word);
        }
    }

    #[test]
    fn small_cycles() {
        let one: Vec<_> = generate(1).unwrap().collect();
        assert_eq!(one.len(), 6);
        assert_eq!(one[0], w("100"));
        let two: Vec<_> = generate(2).unwrap().collect();
        assert_eq!(two.len(), 20);
        assert_eq!(&two[..3], &[w("10100"), w("11100"), w("01100")]);
        assert_eq!(generate(5).unwrap().count(), 924);
    }

    fn check_cycle(n: usize, cycle: &[BitWord]) {
        assert_eq!(cycle.len() as u64, cycle_length(n).unwrap());
        let distinct: BTreeSet<_> = cycle.iter().collect();
        assert_eq!(distinct.len(), cycle.len());
        for i in 0..cycle.len() {
            let (a, b) = (&cycle[i], &cycle[(i + 1) % cycle.len()]);
            assert_eq!(a.hamming(b), Some(1), "step {i} of n = {n}");
            let expected = if i % 2 == 0 { n } else { n + 1 };
            assert_eq!(a.weight(), expected);
        }
    }

    #[test]
    fn hamiltonian_for_small_n() {
        for n in 1..=7 {
            let cycle: Vec<_> = generate(n).unwrap().collect();
            check_cycle(n, &cycle);
        }
    }

    #[test]
    fn stream_agrees_with_successor() {
        let plan = GluingPlan::build(5).unwrap();
        let cycle: Vec<_> = HamiltonStream::new(&plan).collect();
        let len = cycle.len();
        for i in 0..len {
            let prev = &cycle[(i + len - 1) % len];
            assert_eq!(
                successor(&plan, prev, &cycle[i]).unwrap(),
                cycle[(i + 1) % len]
            );
        }
    }

    /// Same cyclic sequence up to rotation and reflection.
    fn same_cycle(a: &[BitWord], b: &[BitWord]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let Some(k) = b.iter().position(|v| *v == a[0]) else {
            return false;
        };
        let len = a.len();
        let fwd = (0..len).all(|i| a[i] == b[(k + i) % len]);
        let bwd = (0..len).all(|i| a[i] == b[(k + len - i) % len]);
        fwd || bwd
    }

    #[test]
    fn restarting_anywhere_gives_the_same_cycle() {
        let plan = Arc::new(GluingPlan::build(4).unwrap());
        let base: Vec<_> = HamiltonStream::new(plan.clone()).collect();
        let len = base.len();
        for i in (0..len).step_by(7) {
            let prev = &base[(i + len - 1) % len];
            let next = &base[(i + 1) % len];
            for from in [prev, next] {
                let again: Vec<_> = HamiltonStream::starting_at(plan.clone(), from, &base[i])
                    .unwrap()
                    .collect();
                assert_eq!(again.len(), len);
                assert!(same_cycle(&base, &again));
            }
        }
        assert!(HamiltonStream::starting_at(plan.clone(), &base[5], &base[0]).is_err());
    }

    #[test]
    fn empty_plan_is_the_factor_cycle() {
        for n in 1..=2 {
            let plan = GluingPlan::build(n).unwrap();
            assert!(plan.chosen().is_empty());
            let start = Triple::new(star_word(n), false, 0).unwrap();
            let factor: Vec<_> = crate::factor::cycle_of(&start)
                .map(|t| t.encode())
                .collect();
            let stream: Vec<_> = HamiltonStream::new(&plan).collect();
            assert_eq!(stream, factor);
        }
    }
}
