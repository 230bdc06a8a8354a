//! Ordered rooted trees and their Dyck word encoding.
//!
//! A depth-first traversal writes a 1 for every step away from the root and
//! a 0 for every step back. Rotation re-roots a tree at the first child of
//! its root; pulling moves a depth-2 leftmost leaf up to become the new
//! leftmost child of the root.

use alloc::vec;
use alloc::vec::Vec;

use crate::dyck::{check_dyck, dyck_decompose};
use crate::error::Error;
use crate::word::BitWord;

/// Tree rotation `1u0v ↦ u1v0`.
pub fn rotate_word(x: &BitWord) -> Result<BitWord, Error> {
    let (u, v) = dyck_decompose(x)?;
    Ok(u.pushed(true).concat(&v).pushed(false))
}

/// Inverse tree rotation `u1v0 ↦ 1u0v`, found by matching the final 0
/// backwards.
pub fn rotate_word_inverse(x: &BitWord) -> Result<BitWord, Error> {
    check_dyck(x)?;
    if x.is_empty() {
        return Err(Error::EmptyDyck);
    }
    let last = x.len() - 1;
    let j = x.match_backward(last).expect("Dyck word has a matching 1");
    let u = x.slice(0..j);
    let v = x.slice(j + 1..last);
    Ok(BitWord::from_packed(1, 1)
        .concat(&u)
        .pushed(false)
        .concat(&v))
}

/// Rotation on a word already known to be a non-empty Dyck word.
#[inline]
pub(crate) fn rotate_dyck(x: &BitWord) -> BitWord {
    let len = x.len();
    let m = x.match_forward(0).expect("non-empty Dyck word");
    if let Some(bits) = x.as_packed() {
        // u occupies positions 1..m, v positions m+1..len
        let u = (bits >> (len - m)) & ((1u64 << (m - 1)) - 1);
        let v = bits & ((1u64 << (len - 1 - m)) - 1);
        let u = if m > 1 { u << (len - m + 1) } else { 0 };
        let out = u | (1u64 << (len - m)) | (v << 1);
        return BitWord::from_packed(len, out);
    }
    x.slice(1..m)
        .pushed(true)
        .concat(&x.slice(m + 1..len))
        .pushed(false)
}

#[inline]
pub(crate) fn rotate_dyck_inverse(x: &BitWord) -> BitWord {
    let len = x.len();
    let j = x.match_backward(len - 1).expect("non-empty Dyck word");
    BitWord::from_packed(1, 1)
        .concat(&x.slice(0..j))
        .pushed(false)
        .concat(&x.slice(j + 1..len - 1))
}

/// A Dyck word is pullable iff it reads `110u0v`, i.e. its leftmost leaf
/// sits at depth 2. Any Dyck word starting with `110` parses this way.
pub fn is_pullable(x: &BitWord) -> bool {
    x.len() >= 4 && x.get(0) && x.get(1) && !x.get(2)
}

/// The pull `110u0v ↦ 101u0v`.
pub fn pull(x: &BitWord) -> Result<BitWord, Error> {
    check_dyck(x)?;
    if !is_pullable(x) {
        return Err(Error::NotPullable(x.clone()));
    }
    Ok(x.flipped(1).flipped(2))
}

/// Plane-tree class of a Dyck word: the lexicographically smallest word in
/// its rotation orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(BitWord);

impl ClassId {
    pub fn canonical(&self) -> &BitWord {
        &self.0
    }

    pub fn into_word(self) -> BitWord {
        self.0
    }
}

impl core::fmt::Display for ClassId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(&self.0, f)
    }
}

/// The rotation orbit of `x`: `x, r(x), …, r^{t-1}(x)` where `t` is the
/// rotation period.
pub fn rotation_orbit(x: &BitWord) -> Result<Vec<BitWord>, Error> {
    check_dyck(x)?;
    if x.is_empty() {
        return Err(Error::EmptyDyck);
    }
    let mut orbit = vec![x.clone()];
    let mut cur = rotate_dyck(x);
    // r^{2n} is the identity, so this stops after at most 2n steps
    while &cur != x {
        debug_assert!(orbit.len() < x.len());
        orbit.push(cur.clone());
        cur = rotate_dyck(&cur);
    }
    Ok(orbit)
}

/// The smallest `t > 0` with `r^t(x) = x`.
pub fn rotation_period(x: &BitWord) -> Result<usize, Error> {
    rotation_orbit(x).map(|o| o.len())
}

pub fn canonical_of(x: &BitWord) -> Result<ClassId, Error> {
    let orbit = rotation_orbit(x)?;
    Ok(ClassId(
        orbit.into_iter().min().expect("orbit is non-empty"),
    ))
}

/// Canonical word plus the number of rotations taking `x` to it (the
/// smallest such count).
pub(crate) fn canonical_with_offset(x: &BitWord) -> (ClassId, usize) {
    let mut best = x.clone();
    let mut offset = 0;
    let mut cur = rotate_dyck(x);
    let mut k = 1;
    while &cur != x {
        if cur < best {
            best = cur.clone();
            offset = k;
        }
        cur = rotate_dyck(&cur);
        k += 1;
    }
    (ClassId(best), offset)
}

/// Identifier of a tree vertex; stable across rotations and pulls.
pub type VertexId = usize;

/// An ordered rooted tree with stable vertex ids `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedTree {
    root: VertexId,
    children: Vec<Vec<VertexId>>,
    parent: Vec<Option<VertexId>>,
}

impl OrderedTree {
    /// Builds the tree of a Dyck word with ids assigned in preorder, so the
    /// root is 0.
    pub fn from_dyck(x: &BitWord) -> Result<Self, Error> {
        check_dyck(x)?;
        let n = x.len() / 2;
        let mut children = vec![Vec::new(); n + 1];
        let mut parent = vec![None; n + 1];
        let mut stack = vec![0];
        let mut next = 1;
        for b in x.iter() {
            let top = *stack.last().expect("Dyck prefix keeps the root");
            if b {
                children[top].push(next);
                parent[next] = Some(top);
                stack.push(next);
                next += 1;
            } else {
                stack.pop();
            }
        }
        Ok(OrderedTree {
            root: 0,
            children,
            parent,
        })
    }

    /// Depth-first encoding.
    pub fn to_dyck(&self) -> BitWord {
        let mut bits = Vec::with_capacity(2 * self.edge_count());
        // (vertex, index of next child to visit)
        let mut stack = vec![(self.root, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if let Some(&c) = self.children[v].get(i) {
                stack.push((v, i + 1));
                bits.push(true);
                stack.push((c, 0));
            } else if v != self.root {
                bits.push(false);
            }
        }
        BitWord::from_bits(&bits)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.len() - 1
    }

    /// Rotation, keeping labels: the first child of the root becomes the
    /// root, and the old root, with its remaining subtrees, becomes the
    /// last child of the new root.
    pub fn rotate(&mut self) {
        let old = self.root;
        if self.children[old].is_empty() {
            return;
        }
        let first = self.children[old].remove(0);
        self.children[first].push(old);
        self.parent[old] = Some(first);
        self.parent[first] = None;
        self.root = first;
    }

    pub fn rotated(&self) -> OrderedTree {
        let mut t = self.clone();
        t.rotate();
        t
    }

    /// The path from the root to the leftmost leaf.
    pub fn leftmost_path(&self) -> Vec<VertexId> {
        let mut path = vec![self.root];
        let mut v = self.root;
        while let Some(&c) = self.children[v].first() {
            path.push(c);
            v = c;
        }
        path
    }

    /// Pull on the labeled tree. Requires the leftmost leaf at depth 2.
    pub fn pull(&mut self) -> Result<(), Error> {
        let path = self.leftmost_path();
        if path.len() != 3 {
            return Err(Error::NotPullable(self.to_dyck()));
        }
        let (a, leaf) = (path[1], path[2]);
        self.children[a].remove(0);
        self.children[self.root].insert(0, leaf);
        self.parent[leaf] = Some(self.root);
        Ok(())
    }

    /// Distances from `c` to every vertex, ignoring edge directions.
    pub fn distances_from(&self, c: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[c] = 0;
        let mut queue = alloc::collections::VecDeque::from([c]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v] + 1;
            for &w in self.children[v].iter().chain(self.parent[v].iter()) {
                if dist[w] == usize::MAX {
                    dist[w] = d;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Sum over all vertices of the distance to `c`.
    pub fn distance_sum(&self, c: VertexId) -> usize {
        self.distances_from(c).iter().sum()
    }

    /// Preorder listing of vertex ids.
    pub fn preorder(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::{dyck_words, is_dyck};
    use alloc::collections::BTreeSet;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn tree_examples() {
        let t = OrderedTree::from_dyck(&w("10")).unwrap();
        assert_eq!(t.children(0), &[1]);
        assert!(t.children(1).is_empty());

        let path = OrderedTree::from_dyck(&w("1100")).unwrap();
        assert_eq!(path.children(0), &[1]);
        assert_eq!(path.children(1), &[2]);

        let cherry = OrderedTree::from_dyck(&w("1010")).unwrap();
        assert_eq!(cherry.children(0), &[1, 2]);

        for s in ["10", "1100", "1010"] {
            assert_eq!(OrderedTree::from_dyck(&w(s)).unwrap().to_dyck(), w(s));
        }
        assert!(OrderedTree::from_dyck(&w("0110")).is_err());
    }

    #[test]
    fn codec_roundtrip() {
        for n in 0..=7 {
            for x in dyck_words(n) {
                let t = OrderedTree::from_dyck(&x).unwrap();
                assert_eq!(t.to_dyck(), x);
                assert_eq!(t.preorder(), (0..=n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(rotate_word(&w("1100")).unwrap(), w("1010"));
        assert_eq!(rotate_word(&w("1010")).unwrap(), w("1100"));
        assert_eq!(rotate_word(&w("110100")).unwrap(), w("101010"));
        assert_eq!(rotate_word_inverse(&w("1010")).unwrap(), w("1100"));
        assert_eq!(rotate_word_inverse(&w("1100")).unwrap(), w("1010"));
        assert_eq!(rotate_word_inverse(&w("101010")).unwrap(), w("110100"));
        assert!(rotate_word(&w("")).is_err());
        assert!(rotate_word(&w("0101")).is_err());
    }

    #[test]
    fn rotation_is_a_bijection_with_order_dividing_2n() {
        for n in 1..=6 {
            let all: Vec<_> = dyck_words(n).collect();
            let mut images = BTreeSet::new();
            for x in &all {
                let y = rotate_word(x).unwrap();
                assert!(is_dyck(&y));
                assert_eq!(rotate_dyck(x), y);
                assert_eq!(rotate_word_inverse(&y).unwrap(), *x);
                assert_eq!(rotate_dyck_inverse(&y), *x);
                images.insert(y);

                let mut z = x.clone();
                for _ in 0..2 * n {
                    z = rotate_dyck(&z);
                }
                assert_eq!(&z, x);

                let t = rotation_period(x).unwrap();
                assert_eq!((2 * n) % t, 0);
                assert_eq!(gcd(t, 2 * n + 1), 1);
            }
            assert_eq!(images.len(), all.len());
        }
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn labeled_rotation_commutes_with_words() {
        for n in 1..=5 {
            for x in dyck_words(n) {
                let t = OrderedTree::from_dyck(&x).unwrap();
                let r = t.rotated();
                assert_eq!(r.to_dyck(), rotate_word(&x).unwrap());
                let mut back = t.clone();
                for _ in 0..2 * n {
                    back.rotate();
                }
                assert_eq!(back, t, "2n labeled rotations restore {x}");
            }
        }
    }

    #[test]
    fn labeled_rotation_of_path() {
        let mut t = OrderedTree::from_dyck(&w("1100")).unwrap();
        t.rotate();
        assert_eq!(t.root(), 1);
        assert_eq!(t.children(1), &[2, 0]);
        assert_eq!(t.to_dyck(), w("1010"));
    }

    #[test]
    fn pull_examples() {
        assert!(is_pullable(&w("1100")));
        assert!(!is_pullable(&w("1010")));
        assert!(!is_pullable(&w("111000")));
        assert_eq!(pull(&w("1100")).unwrap(), w("1010"));
        assert_eq!(pull(&w("110100")).unwrap(), w("101100"));
        assert_eq!(pull(&w("110010")).unwrap(), w("101010"));
        assert_eq!(pull(&w("1010")), Err(Error::NotPullable(w("1010"))));
    }

    #[test]
    fn pullable_means_110u0v() {
        for n in 1..=7 {
            for x in dyck_words(n) {
                let parsed = x.len() >= 4 && x.get(0) && {
                    // x = 1 (1 0 u) 0 v: the first child's subtree is 10u
                    let (inner, _) = dyck_decompose(&x).unwrap();
                    inner.len() >= 2 && inner.get(0) && !inner.get(1)
                };
                assert_eq!(is_pullable(&x), parsed, "{x}");
                if parsed {
                    let p = pull(&x).unwrap();
                    assert!(is_dyck(&p));
                    let mut t = OrderedTree::from_dyck(&x).unwrap();
                    t.pull().unwrap();
                    assert_eq!(t.to_dyck(), p);
                }
            }
        }
    }

    #[test]
    fn canonical_examples() {
        let c = canonical_of(&w("1100")).unwrap();
        assert_eq!(c.canonical(), &w("1010"));
        assert_eq!(rotation_period(&w("1100")).unwrap(), 2);
        assert_eq!(rotation_period(&w("10")).unwrap(), 1);
        let t = rotation_period(&w("111000")).unwrap();
        assert_eq!(t, 3);
        assert_eq!(
            canonical_of(&w("110100")).unwrap().canonical(),
            &w("101010")
        );
    }

    #[test]
    fn canonical_is_rotation_invariant() {
        for n in 1..=6 {
            for x in dyck_words(n) {
                let c = canonical_of(&x).unwrap();
                assert!(is_dyck(c.canonical()));
                assert_eq!(canonical_of(&rotate_word(&x).unwrap()).unwrap(), c);
                let (c2, k) = canonical_with_offset(&x);
                assert_eq!(c2, c);
                let mut y = x.clone();
                for _ in 0..k {
                    y = rotate_dyck(&y);
                }
                assert_eq!(&y, c.canonical());
            }
        }
    }

    #[test]
    fn plane_tree_counts() {
        let expected = [1usize, 1, 2, 3, 6, 14, 34];
        for (i, &e) in expected.iter().enumerate() {
            let n = i + 1;
            let classes: BTreeSet<_> = dyck_words(n).map(|x| canonical_of(&x).unwrap()).collect();
            assert_eq!(classes.len(), e, "n = {n}");
        }
    }

    #[test]
    fn distance_sum_of_star_and_path() {
        let star = OrderedTree::from_dyck(&w("101010")).unwrap();
        assert_eq!(star.distance_sum(0), 3);
        assert_eq!(star.distance_sum(1), 5);
        let path = OrderedTree::from_dyck(&w("111000")).unwrap();
        assert_eq!(path.distance_sum(0), 6);
        assert_eq!(path.distance_sum(1), 4);
    }
}
