//! Dyck words: balanced bitstrings whose every prefix has at least as many
//! 1s as 0s.

use crate::error::Error;
use crate::word::BitWord;

/// True iff `w` is a Dyck word. Odd lengths are never Dyck.
pub fn is_dyck(w: &BitWord) -> bool {
    if !w.len().is_multiple_of(2) {
        return false;
    }
    let mut depth = 0i64;
    for b in w.iter() {
        depth += if b { 1 } else { -1 };
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

pub(crate) fn check_dyck(x: &BitWord) -> Result<(), Error> {
    if is_dyck(x) {
        Ok(())
    } else {
        Err(Error::NotDyck(x.clone()))
    }
}

/// Splits a non-empty Dyck word as `x = 1 u 0 v` with `u`, `v` Dyck.
pub fn dyck_decompose(x: &BitWord) -> Result<(BitWord, BitWord), Error> {
    check_dyck(x)?;
    if x.is_empty() {
        return Err(Error::EmptyDyck);
    }
    let m = x.match_forward(0).expect("Dyck word has a matching 0");
    Ok((x.slice(1..m), x.slice(m + 1..x.len())))
}

/// Catalan number C_n, or `None` on overflow.
pub fn catalan(n: usize) -> Option<u64> {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        // C_{k+1} = C_k * 2(2k+1) / (k+2)
        c = c.checked_mul(2 * (2 * k + 1))? / (k + 2);
        if c > u64::MAX as u128 {
            return None;
        }
    }
    Some(c as u64)
}

/// All Dyck words of length `2n` in lexicographic order.
pub fn dyck_words(n: usize) -> DyckWords {
    DyckWords {
        n,
        // (10)^n is the smallest
        current: Some((0..2 * n).map(|i| i % 2 == 0).collect()),
    }
}

/// Iterator returned by [`dyck_words`].
pub struct DyckWords {
    n: usize,
    current: Option<alloc::vec::Vec<bool>>,
}

impl Iterator for DyckWords {
    type Item = BitWord;

    fn next(&mut self) -> Option<BitWord> {
        let cur = self.current.take()?;
        let out = BitWord::from_bits(&cur);
        self.current = next_dyck(cur, self.n);
        Some(out)
    }
}

/// Lexicographic successor: find the rightmost 0 that can become 1, then
/// fill the suffix with the smallest completion.
fn next_dyck(mut v: alloc::vec::Vec<bool>, n: usize) -> Option<alloc::vec::Vec<bool>> {
    let len = 2 * n;
    // ones/zeros counted over the prefix v[..i]
    let mut ones = v.iter().filter(|&&b| b).count();
    let mut zeros = len - ones;
    for i in (0..len).rev() {
        if v[i] {
            ones -= 1;
        } else {
            zeros -= 1;
            if ones < n {
                v[i] = true;
                let mut o = ones + 1;
                let mut z = zeros;
                for slot in v.iter_mut().skip(i + 1) {
                    // smallest completion alternates 0 whenever allowed
                    if z < o {
                        *slot = false;
                        z += 1;
                    } else {
                        *slot = true;
                        o += 1;
                    }
                }
                return Some(v);
            }
        }
    }
    None
}
