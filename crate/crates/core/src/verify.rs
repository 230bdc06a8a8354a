//! Independent checks: stream verification, a brute-force Hamilton cycle
//! search for tiny instances, and exhaustive lemma checks.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::{HashMap, HashSet};

use crate::dyck::{catalan, dyck_decompose, dyck_words, is_dyck};
use crate::error::Error;
use crate::factor::{cycle_of, enumerate_classes, f_inverse, f_map, flip_position};
use crate::gluing::{
    footprint, gluing_cycle, gluing_words_by_substitution, reduce_to_star, star_word, GluingPlan,
    FOOTPRINT_SHIFTS,
};
use crate::hamilton::HamiltonStream;
use crate::tree::{canonical_of, is_pullable, rotate_word, rotate_word_inverse, rotation_period};
use crate::triple::{MiddleLevels, Triple};
use crate::word::BitWord;

/// Largest word length checked for distinctness with a direct bitset
/// (2^27 bits = 16 MiB).
pub const BITSET_MAX_BITS: usize = 27;

/// Plane trees with `n` edges for `n = 1..=7`.
pub const PLANE_TREE_COUNTS: [usize; 7] = [1, 1, 2, 3, 6, 14, 34];

/// Largest `n` accepted by [`check_all_lemmas`].
pub const MAX_LEMMA_N: usize = 6;

/// Largest `n` accepted by [`brute_force_hamilton`].
pub const MAX_BRUTE_FORCE_N: usize = 3;

const MAX_RECORDED_FAILURES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamFailure {
    /// A word that is not a vertex of the middle levels graph.
    Vertex {
        position: u64,
        word: BitWord,
    },
    /// Consecutive words not at Hamming distance 1.
    Hamming {
        position: u64,
        prev: BitWord,
        next: BitWord,
    },
    /// Weight did not alternate between `n` and `n+1`.
    Alternation {
        position: u64,
        word: BitWord,
    },
    /// A word seen before.
    Duplicate {
        position: u64,
        word: BitWord,
    },
    Count {
        expected: u64,
        found: u64,
    },
    /// Last word not adjacent to the first.
    Closure {
        last: BitWord,
        first: BitWord,
    },
}

impl fmt::Display for StreamFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamFailure::Vertex { position, word } => {
                write!(
                    f,
                    "vertex at {position}: {word} is not in the middle levels"
                )
            }
            StreamFailure::Hamming {
                position,
                prev,
                next,
            } => write!(f, "hamming at {position}: {prev} -> {next}"),
            StreamFailure::Alternation { position, word } => {
                write!(f, "alternation at {position}: {word}")
            }
            StreamFailure::Duplicate { position, word } => {
                write!(f, "distinctness at {position}: {word} repeated")
            }
            StreamFailure::Count { expected, found } => {
                write!(f, "count: expected {expected}, found {found}")
            }
            StreamFailure::Closure { last, first } => {
                write!(f, "closure: {last} -> {first}")
            }
        }
    }
}

/// Result of [`check_stream`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamReport {
    pub n: usize,
    pub expected: u64,
    pub count: u64,
    /// The first few failures, in stream order.
    pub failures: Vec<StreamFailure>,
    /// Total number of failures, including unrecorded ones.
    pub failure_count: u64,
}

impl StreamReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

impl fmt::Display for StreamReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "HAMILTON n={}: {verdict} count={} expected={}",
            self.n, self.count, self.expected
        )?;
        for failure in &self.failures {
            write!(f, "\n  {failure}")?;
        }
        if self.failure_count > self.failures.len() as u64 {
            write!(
                f,
                "\n  ... {} more",
                self.failure_count - self.failures.len() as u64
            )?;
        }
        Ok(())
    }
}

enum Seen {
    Bits(Vec<u64>),
    Set(HashSet<BitWord>),
}

impl Seen {
    fn new(bits: usize) -> Self {
        if bits <= BITSET_MAX_BITS {
            Seen::Bits(vec![0; (1usize << bits).div_ceil(64)])
        } else {
            Seen::Set(HashSet::new())
        }
    }

    /// False if `w` was already present.
    fn insert(&mut self, w: &BitWord) -> bool {
        match self {
            Seen::Bits(bits) => {
                let i = w.as_packed().expect("short word") as usize;
                let (slot, mask) = (i / 64, 1u64 << (i % 64));
                let fresh = bits[slot] & mask == 0;
                bits[slot] |= mask;
                fresh
            }
            Seen::Set(set) => set.insert(w.clone()),
        }
    }
}

/// Checks that `stream` lists a Hamilton cycle of the middle levels graph:
/// the right number of distinct vertices, single-bit steps with alternating
/// weights, and a last vertex adjacent to the first.
pub fn check_stream<I>(n: usize, stream: I) -> Result<StreamReport, Error>
where
    I: IntoIterator<Item = BitWord>,
{
    let levels = MiddleLevels::new(n)?;
    let expected = levels.vertex_count()?;
    let mut seen = Seen::new(levels.dimension());
    let mut failures = Vec::new();
    let mut failure_count = 0u64;
    let mut fail = |f: StreamFailure| {
        if failures.len() < MAX_RECORDED_FAILURES {
            failures.push(f);
        }
        failure_count += 1;
    };

    let mut first: Option<BitWord> = None;
    let mut prev: Option<BitWord> = None;
    let mut count = 0u64;
    for word in stream {
        let position = count;
        count += 1;
        if !levels.contains(&word) {
            fail(StreamFailure::Vertex {
                position,
                word: word.clone(),
            });
        } else if !seen.insert(&word) {
            fail(StreamFailure::Duplicate {
                position,
                word: word.clone(),
            });
        }
        if let Some(p) = &prev {
            if p.hamming(&word) != Some(1) {
                fail(StreamFailure::Hamming {
                    position,
                    prev: p.clone(),
                    next: word.clone(),
                });
            }
            if p.weight() == word.weight() {
                fail(StreamFailure::Alternation {
                    position,
                    word: word.clone(),
                });
            }
        }
        if first.is_none() {
            first = Some(word.clone());
        }
        prev = Some(word);
    }
    if count != expected {
        fail(StreamFailure::Count {
            expected,
            found: count,
        });
    }
    if let (Some(first), Some(last)) = (first, prev) {
        if last.hamming(&first) != Some(1) {
            fail(StreamFailure::Closure { last, first });
        }
    }
    Ok(StreamReport {
        n,
        expected,
        count,
        failures,
        failure_count,
    })
}

/// Finds a Hamilton cycle of the middle levels graph by backtracking over
/// single-bit flips, without using any of the factor or gluing machinery.
pub fn brute_force_hamilton(n: usize) -> Result<Vec<BitWord>, Error> {
    if !(1..=MAX_BRUTE_FORCE_N).contains(&n) {
        return Err(Error::Range {
            n,
            min: 1,
            max: MAX_BRUTE_FORCE_N,
        });
    }
    let dim = 2 * n + 1;
    let vertices: Vec<u64> = (0u64..1 << dim)
        .filter(|v| {
            let w = v.count_ones() as usize;
            w == n || w == n + 1
        })
        .collect();
    let index: HashMap<u64, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| {
            (0..dim)
                .filter_map(|b| index.get(&(v ^ (1 << b))).copied())
                .collect()
        })
        .collect();

    let total = vertices.len();
    let mut path = vec![0usize];
    let mut on_path = vec![false; total];
    on_path[0] = true;
    // untried extensions per depth, most constrained last so it pops first
    let mut pending = vec![candidates(&adj, &on_path, 0)];
    loop {
        let v = *path.last().expect("path keeps its start");
        if path.len() == total && adj[v].contains(&0) {
            break;
        }
        let next = if path.len() < total {
            pending.last_mut().and_then(Vec::pop)
        } else {
            None
        };
        match next {
            Some(w) => {
                on_path[w] = true;
                path.push(w);
                let viable = path.len() == total || still_closable(&adj, &on_path, v, w);
                pending.push(if viable {
                    candidates(&adj, &on_path, w)
                } else {
                    Vec::new()
                });
            }
            None => {
                on_path[v] = false;
                path.pop();
                pending.pop();
                assert!(!path.is_empty(), "middle levels graph has a Hamilton cycle");
            }
        }
    }
    Ok(path
        .into_iter()
        .map(|i| BitWord::from_packed(dim, vertices[i]))
        .collect())
}

/// Cheap necessary condition after the path end moved from `old` to `end`:
/// the start still has a free neighbor, and every free neighbor of `old`
/// can still be entered and left.
fn still_closable(adj: &[Vec<usize>], on_path: &[bool], old: usize, end: usize) -> bool {
    if adj[0].iter().all(|&u| on_path[u]) {
        return false;
    }
    adj[old].iter().filter(|&&u| !on_path[u]).all(|&u| {
        let links = adj[u]
            .iter()
            .filter(|&&x| !on_path[x] || x == end || x == 0)
            .count();
        links >= 2
    })
}

/// Unvisited neighbors of `v`, ordered so that the one with the fewest
/// unvisited neighbors of its own comes last.
fn candidates(adj: &[Vec<usize>], on_path: &[bool], v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = adj[v].iter().copied().filter(|&w| !on_path[w]).collect();
    let free = |w: usize| adj[w].iter().filter(|&&u| !on_path[u]).count();
    out.sort_by_key(|&w| core::cmp::Reverse((free(w), w)));
    out
}

/// Outcome of one lemma check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "LEMMA {}: {verdict} {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub n: usize,
    pub lemmas: Vec<Lemma>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.lemmas.iter().all(|l| l.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Lemma> {
        self.lemmas.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, lemma) in self.lemmas.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{lemma}")?;
        }
        Ok(())
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_triples(n: usize, nuts: &[BitWord]) -> impl Iterator<Item = Triple> + '_ {
    nuts.iter().flat_map(move |x| {
        (0..=2 * n).flat_map(move |s| {
            [false, true]
                .into_iter()
                .map(move |b| Triple::new_unchecked(x.clone(), b, s))
        })
    })
}

fn lemma_dyck_count(n: usize, nuts: &[BitWord]) -> Check {
    let distinct: BTreeSet<_> = nuts.iter().collect();
    ensure(nuts.iter().all(is_dyck), || {
        "non-Dyck word enumerated".into()
    })?;
    ensure(distinct.len() == nuts.len(), || "duplicates".into())?;
    let expected = catalan(n).ok_or("catalan overflow")?;
    ensure(nuts.len() as u64 == expected, || {
        format!("|D_{n}| = {} but C_{n} = {expected}", nuts.len())
    })?;
    Ok(format!("|D_{n}| = {expected}"))
}

fn lemma_triple_codec(n: usize, nuts: &[BitWord]) -> Check {
    let mut count = 0u64;
    for t in all_triples(n, nuts) {
        let v = t.encode();
        let back = Triple::decode(&v).map_err(|e| format!("{t:?}: {e}"))?;
        ensure(back == t, || format!("{t:?} decodes to {back:?}"))?;
        count += 1;
    }
    let levels = MiddleLevels::new(n).map_err(|e| format!("{e}"))?;
    let dim = levels.dimension();
    let mut decoded = 0u64;
    for bits in 0u64..1 << dim {
        let v = BitWord::from_packed(dim, bits);
        if levels.contains(&v) {
            Triple::decode(&v).map_err(|e| format!("{e}"))?;
            decoded += 1;
        }
    }
    let expected = levels.vertex_count().map_err(|e| format!("{e}"))?;
    ensure(count == expected && decoded == expected, || {
        format!("{count} triples, {decoded} decoded, {expected} vertices")
    })?;
    Ok(format!("{expected} vertices, unique decoding"))
}

fn lemma_rotation(n: usize, nuts: &[BitWord]) -> Check {
    let mut images = BTreeSet::new();
    for x in nuts {
        let y = rotate_word(x).map_err(|e| format!("{e}"))?;
        let back = rotate_word_inverse(&y).map_err(|e| format!("{e}"))?;
        ensure(&back == x, || format!("r⁻¹(r({x})) = {back}"))?;
        images.insert(y);
        let mut z = x.clone();
        for _ in 0..2 * n {
            z = rotate_word(&z).map_err(|e| format!("{e}"))?;
        }
        ensure(&z == x, || format!("r^{}({x}) = {z}", 2 * n))?;
        let t = rotation_period(x).map_err(|e| format!("{e}"))?;
        ensure((2 * n).is_multiple_of(t) && gcd(t, 2 * n + 1) == 1, || {
            format!("period {t} of {x}")
        })?;
    }
    ensure(images.len() == nuts.len(), || "r is not injective".into())?;
    Ok(format!(
        "r bijective on {} trees, r^{} = id",
        nuts.len(),
        2 * n
    ))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lemma_f_bijective(n: usize, nuts: &[BitWord]) -> Check {
    let mut images = HashSet::new();
    let mut count = 0usize;
    for v in all_triples(n, nuts) {
        let fv = f_map(&v);
        ensure(f_inverse(&fv) == v, || format!("f⁻¹(f({v:?})) ≠ {v:?}"))?;
        ensure(f_map(&f_inverse(&v)) == v, || {
            format!("f(f⁻¹({v:?})) ≠ {v:?}")
        })?;
        images.insert(fv.encode());
        count += 1;
    }
    ensure(images.len() == count, || "f is not injective".into())?;
    Ok(format!("{count} vertices"))
}

fn lemma_f_single_bit(n: usize, nuts: &[BitWord]) -> Check {
    let modulus = 2 * n + 1;
    for v in all_triples(n, nuts) {
        let (a, b) = (v.encode(), f_map(&v).encode());
        ensure(a.hamming(&b) == Some(1), || format!("{a} -> {b}"))?;
        let expected = if v.bit() {
            (v.shift() + 2 * n) % modulus
        } else {
            // the bit between u and v in σ^s(1u0v0)
            let (u, _) = dyck_decompose(v.nut()).map_err(|e| format!("{e}"))?;
            (v.shift() + 1 + u.len()) % modulus
        };
        ensure(
            a.flipped(expected) == b && flip_position(&v) == expected,
            || format!("{v:?} flips the wrong position"),
        )?;
    }
    Ok("all steps flip the bit between u and v".into())
}

fn lemma_f_squared(n: usize, nuts: &[BitWord]) -> Check {
    for x in nuts {
        for s in 0..=2 * n {
            let v = Triple::new_unchecked(x.clone(), false, s);
            let ff = f_map(&f_map(&v));
            let r = rotate_word(x).map_err(|e| format!("{e}"))?;
            let expected = Triple::new_unchecked(r, false, (s + 1) % (2 * n + 1));
            ensure(ff == expected && ff != v, || format!("f²({v:?}) = {ff:?}"))?;
        }
    }
    Ok("f²⟨x,0,s⟩ = ⟨r(x),0,s+1⟩".into())
}

fn lemma_alternation(n: usize, nuts: &[BitWord]) -> Check {
    for v in all_triples(n, nuts) {
        let w = f_map(&v).encode().weight();
        let expected = if v.bit() { n } else { n + 1 };
        ensure(w == expected, || format!("f({v:?}) has weight {w}"))?;
    }
    Ok(format!("f swaps levels {n} and {}", n + 1))
}

fn lemma_factor(n: usize) -> Check {
    let classes = enumerate_classes(n).map_err(|e| format!("{e}"))?;
    let mut seen = HashSet::new();
    let mut total = 0u64;
    for c in &classes {
        let cycle: Vec<Triple> = cycle_of(&c.start).collect();
        ensure(cycle.len() as u64 == c.length, || {
            format!(
                "cycle of {} has {} vertices, formula says {}",
                c.class,
                cycle.len(),
                c.length
            )
        })?;
        ensure(c.length % 2 == 0 && (n < 2 || c.length >= 6), || {
            format!("cycle of {} has length {}", c.class, c.length)
        })?;
        let members: HashSet<&Triple> = cycle.iter().collect();
        for v in &cycle {
            ensure(seen.insert(v.encode()), || {
                format!("{v:?} lies on two cycles")
            })?;
            if !v.bit() {
                for s in 0..=2 * n {
                    let shifted = Triple::new_unchecked(v.nut().clone(), false, s);
                    ensure(members.contains(&shifted), || {
                        format!("cycle of {} misses {shifted:?}", c.class)
                    })?;
                }
            }
        }
        total += c.length;
    }
    let expected = MiddleLevels::new(n)
        .and_then(|m| m.vertex_count())
        .map_err(|e| format!("{e}"))?;
    ensure(total == expected && seen.len() as u64 == expected, || {
        format!("cycles cover {} of {expected} vertices", seen.len())
    })?;
    Ok(format!(
        "{} disjoint cycles of length 2t(2n+1) covering {expected} vertices, all shifts present",
        classes.len()
    ))
}

fn lemma_class_count(n: usize) -> Check {
    let count = enumerate_classes(n).map_err(|e| format!("{e}"))?.len();
    if let Some(&expected) = PLANE_TREE_COUNTS.get(n - 1) {
        ensure(count == expected, || {
            format!("{count} classes, expected {expected}")
        })?;
    }
    Ok(format!("{count} plane trees"))
}

fn lemma_gluing_tuple(pullables: &[BitWord]) -> Check {
    for x in pullables {
        let fp = footprint(x).map_err(|e| format!("{e}"))?;
        let by_f = [&fp[0], &fp[1], &fp[6], &fp[5], &fp[7], &fp[8]].map(Triple::encode);
        let by_subst = gluing_words_by_substitution(x).map_err(|e| format!("{e}"))?;
        ensure(by_f == by_subst, || {
            format!("G({x}) differs from the substitution tuple")
        })?;
        for i in 0..6 {
            ensure(by_f[i].hamming(&by_f[(i + 1) % 6]) == Some(1), || {
                format!("G({x}) is not a cycle of single-bit steps")
            })?;
        }
        // the shared edges are factor edges
        ensure(
            f_map(&fp[0]) == fp[1] && f_map(&fp[5]) == fp[6] && f_map(&fp[7]) == fp[8],
            || format!("G({x}) does not share its factor edges"),
        )?;
        gluing_cycle(x).map_err(|e| format!("{e}"))?;
    }
    Ok(format!("{} pullable trees", pullables.len()))
}

fn lemma_footprint_shifts(pullables: &[BitWord]) -> Check {
    for x in pullables {
        let shifts = footprint(x).map_err(|e| format!("{e}"))?.map(|t| t.shift());
        ensure(shifts == FOOTPRINT_SHIFTS, || {
            format!("S({x}) has shifts {shifts:?}")
        })?;
    }
    Ok("0,1,1,2,2,3,3,0,1".into())
}

fn lemma_footprint_disjoint(pullables: &[BitWord]) -> Check {
    let mut owner: HashMap<BitWord, &BitWord> = HashMap::new();
    for x in pullables {
        for v in footprint(x).map_err(|e| format!("{e}"))? {
            if let Some(other) = owner.insert(v.encode(), x) {
                return Err(format!("S({other}) and S({x}) share {v:?}"));
            }
        }
    }
    let pairs = pullables.len() * pullables.len().saturating_sub(1) / 2;
    Ok(format!("{pairs} pairs of pullable trees"))
}

fn lemma_reduction(n: usize, nuts: &[BitWord]) -> Check {
    let star = canonical_of(&star_word(n)).map_err(|e| format!("{e}"))?;
    let mut pulls = 0usize;
    for x in nuts {
        let trace = reduce_to_star(x).map_err(|e| format!("{e}"))?;
        ensure(trace.distance_sums.windows(2).all(|p| p[1] < p[0]), || {
            format!("distance sum of {x} did not decrease")
        })?;
        let count = trace.pulls().count();
        ensure(count <= trace.distance_sums[0], || {
            format!("{x} took {count} pulls")
        })?;
        ensure(trace.pulls().all(is_pullable), || {
            format!("{x} pulled a non-pullable tree")
        })?;
        let end = canonical_of(&trace.end).map_err(|e| format!("{e}"))?;
        ensure(end == star, || format!("{x} ended at {}", trace.end))?;
        pulls += count;
    }
    Ok(format!(
        "{} trees reach the star with {pulls} pulls",
        nuts.len()
    ))
}

fn lemma_plan(n: usize) -> Check {
    let plan = GluingPlan::build(n).map_err(|e| format!("{e}"))?;
    let expected = plan.class_count() - 1;
    ensure(plan.chosen().len() == expected, || {
        format!(
            "{} gluings for {} classes",
            plan.chosen().len(),
            plan.class_count()
        )
    })?;
    ensure(plan.override_count() == 9 * expected, || {
        format!("{} overrides", plan.override_count())
    })?;
    let report = check_stream(n, HamiltonStream::new(&plan)).map_err(|e| format!("{e}"))?;
    ensure(report.passed(), || format!("{report}"))?;
    Ok(format!(
        "{expected} gluings, Hamilton cycle of {} vertices",
        report.count
    ))
}

/// Runs every exhaustive lemma for `n` in `1..=6`.
pub fn check_all_lemmas(n: usize) -> Result<LemmaReport, Error> {
    if !(1..=MAX_LEMMA_N).contains(&n) {
        return Err(Error::Range {
            n,
            min: 1,
            max: MAX_LEMMA_N,
        });
    }
    let nuts: Vec<BitWord> = dyck_words(n).collect();
    let pullables: Vec<BitWord> = nuts.iter().filter(|x| is_pullable(x)).cloned().collect();
    let checks: [(&'static str, Check); 14] = [
        ("dyck-count", lemma_dyck_count(n, &nuts)),
        ("triple-codec", lemma_triple_codec(n, &nuts)),
        ("rotation", lemma_rotation(n, &nuts)),
        ("f-bijective", lemma_f_bijective(n, &nuts)),
        ("f-single-bit", lemma_f_single_bit(n, &nuts)),
        ("f-squared", lemma_f_squared(n, &nuts)),
        ("level-alternation", lemma_alternation(n, &nuts)),
        ("factor-cycles", lemma_factor(n)),
        ("class-count", lemma_class_count(n)),
        ("gluing-cycle", lemma_gluing_tuple(&pullables)),
        ("footprint-shifts", lemma_footprint_shifts(&pullables)),
        ("footprint-disjoint", lemma_footprint_disjoint(&pullables)),
        ("star-reduction", lemma_reduction(n, &nuts)),
        ("gluing-plan", lemma_plan(n)),
    ];
    let lemmas = checks
        .into_iter()
        .map(|(name, result)| {
            let (passed, detail) = match result {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Lemma {
                name,
                passed,
                detail,
            }
        })
        .collect();
    Ok(LemmaReport { n, lemmas })
}
