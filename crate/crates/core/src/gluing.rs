//! Gluing the factor cycles into a single Hamilton cycle.
//!
//! For a pullable tree `x = 110u0v`, put `y = ⟨x,0,0⟩` and `z = ⟨p(x),0,0⟩`.
//! The 6-cycle `G(x) = (y, f(y), f⁶(y), f⁵(y), z, f(z))` shares the edges
//! `(y, f(y))` and `(f⁵(y), f⁶(y))` with the factor cycle through `y` and
//! `(z, f(z))` with the cycle through `z`. When those two cycles differ,
//! taking the symmetric difference of the three edge sets leaves one cycle.
//!
//! Distinct pullable trees have disjoint footprints
//! `S(x) = {f^i(y) | 0 ≤ i ≤ 6} ∪ {z, f(z)}`, so any set of gluings can be
//! applied independently. A spanning set is found by reducing every tree
//! to the star with rotations and pulls, one pull per merge.

use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::dyck::{check_dyck, dyck_decompose};
use crate::error::{Error, PlanError};
use crate::factor::{enumerate_classes, f_inverse, f_map};
use crate::tree::{canonical_of, canonical_with_offset, is_pullable, pull, OrderedTree, VertexId};
use crate::triple::{MiddleLevels, Triple};
use crate::word::BitWord;

/// Shifts of the footprint vertices `f⁰(y), …, f⁶(y), z, f(z)`.
pub const FOOTPRINT_SHIFTS: [usize; 9] = [0, 1, 1, 2, 2, 3, 3, 0, 1];

/// The gluing 6-cycle of a pullable tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingCycle {
    pub x: BitWord,
    /// `y, f(y), f⁶(y), f⁵(y), z, f(z)`.
    pub vertices: [Triple; 6],
    /// `f⁰(y), …, f⁶(y), z, f(z)`.
    pub footprint: [Triple; 9],
}

fn check_pullable(x: &BitWord) -> Result<(), Error> {
    check_dyck(x)?;
    if is_pullable(x) {
        Ok(())
    } else {
        Err(Error::NotPullable(x.clone()))
    }
}

/// The footprint `S(x)` computed by iterating `f`.
pub fn footprint(x: &BitWord) -> Result<[Triple; 9], Error> {
    check_pullable(x)?;
    let y = Triple::new_unchecked(x.clone(), false, 0);
    let z = Triple::new_unchecked(pull(x)?, false, 0);
    let mut iterates = Vec::with_capacity(9);
    iterates.push(y);
    for i in 0..6 {
        let next = f_map(&iterates[i]);
        iterates.push(next);
    }
    let fz = f_map(&z);
    iterates.push(z);
    iterates.push(fz);
    Ok(iterates.try_into().expect("nine footprint vertices"))
}

/// The six words `110u0v0, 110u1v0, 100u1v0, 101u1v0, 101u0v0, 111u0v0` of
/// `G(x)`, built by substituting `u` and `v`.
pub fn gluing_words_by_substitution(x: &BitWord) -> Result<[BitWord; 6], Error> {
    check_pullable(x)?;
    // x = 1 (1 0 u) 0 v
    let (inner, v) = dyck_decompose(x)?;
    let u = inner.slice(2..inner.len());
    let word = |head: &str, mid: bool| -> BitWord {
        let head: BitWord = head.parse().expect("literal prefix");
        head.concat(&u).pushed(mid).concat(&v).pushed(false)
    };
    Ok([
        word("110", false),
        word("110", true),
        word("100", true),
        word("101", true),
        word("101", false),
        word("111", false),
    ])
}

/// Builds `G(x)` from `f`-iterates and checks it against the substitution
/// formula.
///
/// # Panics
///
/// Panics if the two constructions disagree.
pub fn gluing_cycle(x: &BitWord) -> Result<GluingCycle, Error> {
    let footprint = footprint(x)?;
    let [y, fy, _, _, _, f5, f6, z, fz] = footprint.clone();
    let vertices = [y, fy, f6, f5, z, fz];
    let expected = gluing_words_by_substitution(x)?;
    for (v, w) in vertices.iter().zip(expected.iter()) {
        assert_eq!(
            &v.encode(),
            w,
            "gluing cycle of {x} disagrees with substitution"
        );
    }
    Ok(GluingCycle {
        x: x.clone(),
        vertices,
        footprint,
    })
}

/// Chooses the fixed star center for reducing `x`: the vertex that is the
/// root when `x` is rotated to its canonical word (using the fewest
/// rotations), in the preorder labels of `x`.
pub fn choose_center(x: &BitWord) -> Result<VertexId, Error> {
    let mut t = OrderedTree::from_dyck(x)?;
    if x.is_empty() {
        return Ok(t.root());
    }
    let (_, offset) = canonical_with_offset(x);
    for _ in 0..offset {
        t.rotate();
    }
    Ok(t.root())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Rotate,
    Pull,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: StepKind,
    /// The tree's word before the step.
    pub before: BitWord,
}

/// Record of reducing a tree to the star with a fixed center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: BitWord,
    pub center: VertexId,
    pub steps: Vec<ReductionStep>,
    /// Sum of distances to the center, initially and after every pull.
    pub distance_sums: Vec<usize>,
    pub end: BitWord,
}

impl ReductionTrace {
    pub fn pulls(&self) -> impl Iterator<Item = &BitWord> {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::Pull)
            .map(|s| &s.before)
    }
}

/// Transforms `x` into a star by rotations and pulls around a fixed center.
///
/// Each round rotates until the center is the root and its leftmost leaf
/// lies at depth `d > 1`, rotates `d - 2` more times so that leaf sits at
/// depth 2, and pulls it. Every pull brings one vertex closer to the center,
/// so the number of rounds is bounded by the initial distance sum. The loop
/// ends when no rotation rooted at the center has a non-leaf first child,
/// which means every neighbor of the center is a leaf.
///
/// # Panics
///
/// Panics if the distance sum fails to decrease or the final tree is not a
/// star; either would be a defect.
pub fn reduce_to_star(x: &BitWord) -> Result<ReductionTrace, Error> {
    check_dyck(x)?;
    if x.is_empty() {
        return Err(Error::EmptyDyck);
    }
    let n = x.len() / 2;
    let center = choose_center(x)?;
    let mut tree = OrderedTree::from_dyck(x)?;
    let mut steps = Vec::new();
    let mut sums = alloc::vec![tree.distance_sum(center)];
    let bound = sums[0];

    loop {
        // (i) a rotation rooting the tree at the center with a deep leftmost leaf
        let mut probe = tree.clone();
        let mut lead = None;
        for k in 0..2 * n {
            if probe.root() == center
                && probe
                    .children(center)
                    .first()
                    .is_some_and(|&c| !probe.children(c).is_empty())
            {
                lead = Some(k);
                break;
            }
            probe.rotate();
        }
        let Some(lead) = lead else { break };
        for _ in 0..lead {
            steps.push(ReductionStep {
                kind: StepKind::Rotate,
                before: tree.to_dyck(),
            });
            tree.rotate();
        }
        // (ii) bring the leftmost leaf to depth 2
        let depth = tree.leftmost_path().len() - 1;
        debug_assert!(depth > 1);
        for _ in 0..depth - 2 {
            steps.push(ReductionStep {
                kind: StepKind::Rotate,
                before: tree.to_dyck(),
            });
            tree.rotate();
        }
        // (iii) pull
        let before = tree.to_dyck();
        debug_assert!(is_pullable(&before));
        tree.pull()?;
        steps.push(ReductionStep {
            kind: StepKind::Pull,
            before,
        });
        let sum = tree.distance_sum(center);
        let last = *sums.last().expect("initial sum");
        assert!(sum < last, "pull did not bring the tree closer to the star");
        sums.push(sum);
        assert!(
            sums.len() - 1 <= bound,
            "reduction of {x} exceeded its bound"
        );
    }

    let end = tree.to_dyck();
    let star = star_word(n);
    assert!(
        tree.distances_from(center).iter().all(|&d| d <= 1),
        "reduction of {x} stopped before reaching the star"
    );
    debug_assert_eq!(canonical_of(&end), canonical_of(&star));
    Ok(ReductionTrace {
        start: x.clone(),
        center,
        steps,
        distance_sums: sums,
        end,
    })
}

/// `(10)^n`.
pub fn star_word(n: usize) -> BitWord {
    (0..2 * n).map(|i| i % 2 == 0).collect()
}

/// How a Hamilton-cycle edge relates to the factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// `v → f(v)`.
    Forward,
    /// `v → f⁻¹(v)`.
    Backward,
    /// An edge added by a gluing cycle.
    Glue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighbor {
    pub vertex: Triple,
    pub word: BitWord,
    pub edge: EdgeKind,
}

/// Hamilton-cycle neighbors of a footprint vertex.
pub type Override = [Neighbor; 2];

/// Toggles the edges of every `G(x)` for the given pullable words and
/// returns the resulting neighbor pairs for all footprint vertices.
///
/// The words must have pairwise disjoint footprints; [`GluingPlan`] checks
/// that before calling this.
pub fn overrides_of(chosen: &[BitWord]) -> Result<HashMap<BitWord, Override>, Error> {
    let mut out = HashMap::with_capacity(9 * chosen.len());
    for x in chosen {
        let fp = footprint(x)?;
        let mut adj: Vec<Vec<Neighbor>> = fp
            .iter()
            .map(|v| {
                let back = f_inverse(v);
                let fwd = f_map(v);
                alloc::vec![
                    Neighbor {
                        word: back.encode(),
                        vertex: back,
                        edge: EdgeKind::Backward,
                    },
                    Neighbor {
                        word: fwd.encode(),
                        vertex: fwd,
                        edge: EdgeKind::Forward,
                    },
                ]
            })
            .collect();
        // footprint indices: y=0, f(y)=1, f⁵(y)=5, f⁶(y)=6, z=7, f(z)=8
        let removed = [(0, 1), (5, 6), (7, 8)];
        let added = [(1, 6), (5, 7), (8, 0)];
        for (a, b) in removed {
            adj[a].retain(|nb| nb.word != fp[b].encode());
            adj[b].retain(|nb| nb.word != fp[a].encode());
        }
        for (a, b) in added {
            adj[a].push(Neighbor {
                vertex: fp[b].clone(),
                word: fp[b].encode(),
                edge: EdgeKind::Glue,
            });
            adj[b].push(Neighbor {
                vertex: fp[a].clone(),
                word: fp[a].encode(),
                edge: EdgeKind::Glue,
            });
        }
        for (v, nbs) in fp.iter().zip(adj) {
            let pair: Override = nbs
                .try_into()
                .expect("every footprint vertex keeps degree 2");
            out.insert(v.encode(), pair);
        }
    }
    Ok(out)
}

/// Minimal disjoint-set forest over `0..len`.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: alloc::vec![1; len],
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[i] != root {
            let next = self.parent[i];
            self.parent[i] = root;
            i = next;
        }
        root
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Index of plane-tree classes by canonical word.
struct ClassIndex {
    index: HashMap<BitWord, usize>,
}

impl ClassIndex {
    fn new(n: usize) -> Result<Self, Error> {
        let index = enumerate_classes(n)?
            .into_iter()
            .enumerate()
            .map(|(i, c)| (c.class.into_word(), i))
            .collect();
        Ok(ClassIndex { index })
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    fn of(&self, x: &BitWord) -> usize {
        let (class, _) = canonical_with_offset(x);
        self.index[class.canonical()]
    }
}

/// A spanning set of gluings together with the edge overrides they induce.
#[derive(Debug, Clone)]
pub struct GluingPlan {
    n: usize,
    classes: usize,
    chosen: Vec<BitWord>,
    overrides: HashMap<BitWord, Override>,
}

impl GluingPlan {
    /// Selects gluings by reducing class representatives, in ascending
    /// canonical order, to the star. A pull joins the classes before and
    /// after it unless they are already connected. Representatives that are
    /// already connected to the star class are skipped.
    pub fn build(n: usize) -> Result<Self, Error> {
        MiddleLevels::new(n)?;
        let classes = enumerate_classes(n)?;
        let index = ClassIndex::new(n)?;
        let mut uf = UnionFind::new(classes.len());
        let star = index.of(&star_word(n));
        let mut components = classes.len();
        let mut chosen = Vec::with_capacity(classes.len().saturating_sub(1));

        for (i, class) in classes.iter().enumerate() {
            if components == 1 {
                break;
            }
            if uf.find(i) == uf.find(star) {
                continue;
            }
            let trace = reduce_to_star(class.class.canonical())?;
            for w in trace.pulls() {
                let a = index.of(w);
                let b = index.of(&pull(w)?);
                if uf.union(a, b) {
                    chosen.push(w.clone());
                    components -= 1;
                }
            }
            assert_eq!(
                uf.find(i),
                uf.find(star),
                "reduction of {} did not reach the star class",
                class.class
            );
        }
        assert_eq!(components, 1);
        // footprint disjointness and the spanning-tree property are
        // re-checked independently of the selection above
        Self::from_chosen(n, chosen)
    }

    /// Validates an externally supplied gluing set: every word must be a
    /// pullable Dyck word of length `2n`, footprints must be pairwise
    /// disjoint, and the gluings must form a spanning tree over the classes.
    pub fn from_chosen(n: usize, chosen: Vec<BitWord>) -> Result<Self, Error> {
        MiddleLevels::new(n)?;
        let index = ClassIndex::new(n)?;
        let mut uf = UnionFind::new(index.len());
        let mut owner: HashMap<BitWord, usize> = HashMap::new();
        for (i, x) in chosen.iter().enumerate() {
            if x.len() != 2 * n || check_pullable(x).is_err() {
                return Err(PlanError::NotPullable(x.clone()).into());
            }
            for v in footprint(x)? {
                if let Some(&j) = owner.get(&v.encode()) {
                    return Err(if chosen[j] == *x {
                        PlanError::Duplicate(x.clone())
                    } else {
                        PlanError::Overlap(chosen[j].clone(), x.clone())
                    }
                    .into());
                }
                owner.insert(v.encode(), i);
            }
            if !uf.union(index.of(x), index.of(&pull(x)?)) {
                return Err(PlanError::Redundant(x.clone()).into());
            }
        }
        if chosen.len() + 1 != index.len() {
            return Err(PlanError::Count {
                expected: index.len() - 1,
                found: chosen.len(),
            }
            .into());
        }
        Self::assemble(n, index.len(), chosen)
    }

    fn assemble(n: usize, classes: usize, chosen: Vec<BitWord>) -> Result<Self, Error> {
        let overrides = overrides_of(&chosen)?;
        assert_eq!(overrides.len(), 9 * chosen.len(), "footprints overlap");
        Ok(GluingPlan {
            n,
            classes,
            chosen,
            overrides,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of factor cycles before gluing.
    pub fn class_count(&self) -> usize {
        self.classes
    }

    /// The chosen pullable words, in selection order.
    pub fn chosen(&self) -> &[BitWord] {
        &self.chosen
    }

    /// The Hamilton-cycle neighbors of `v` if it lies in a footprint.
    #[inline]
    pub fn neighbors(&self, v: &BitWord) -> Option<&Override> {
        self.overrides.get(v)
    }

    pub fn overrides(&self) -> impl Iterator<Item = (&BitWord, &Override)> {
        self.overrides.iter()
    }

    pub fn override_count(&self) -> usize {
        self.overrides.len()
    }
}
