//! Cubic graphs presented as the Hamiltonian cycle `0, 1, …, n−1` plus a
//! chord perfect matching `c`, and the linear-time construction of a
//! connected PDS of size `⌊(2n+1)/3⌋` on them.
//!
//! Labels are taken mod `n` with representatives in `0..n`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pds::check_pds;
use crate::set::VertexSet;

/// A cubic graph whose cycle `0, 1, …, n−1` is Hamiltonian.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubicCycleGraph {
    chord: Vec<usize>,
}

fn cycle_adjacent(u: usize, v: usize, n: usize) -> bool {
    let d = (v + n - u) % n;
    d == 1 || d == n - 1
}

impl CubicCycleGraph {
    /// Builds the graph from its chord pairs. Every vertex must appear in
    /// exactly one pair and no pair may join cycle neighbours.
    pub fn new(n: usize, chords: &[(usize, usize)]) -> Result<Self> {
        if n < 4 || n % 2 == 1 {
            return Err(Error::InvalidInstance(format!(
                "cycle length must be even and at least 4, got {n}"
            )));
        }
        let mut chord = vec![usize::MAX; n];
        for &(u, v) in chords {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v || cycle_adjacent(u, v, n) {
                return Err(Error::InvalidInstance(format!(
                    "chord {u}-{v} duplicates a cycle edge or is a loop"
                )));
            }
            for w in [u, v] {
                if chord[w] != usize::MAX {
                    return Err(Error::InvalidInstance(format!("vertex {w} has two chords")));
                }
            }
            chord[u] = v;
            chord[v] = u;
        }
        if let Some(v) = chord.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidInstance(format!("vertex {v} has no chord")));
        }
        Ok(Self { chord })
    }

    /// Builds the graph from the chord map `v ↦ c(v)`.
    pub fn from_chord_map(chord: Vec<usize>) -> Result<Self> {
        let n = chord.len();
        if chord
            .iter()
            .enumerate()
            .any(|(v, &c)| c >= n || chord[c] != v)
        {
            return Err(Error::InvalidInstance(
                "chord map is not an involution on 0..n".into(),
            ));
        }
        let pairs: Vec<_> = (0..n)
            .filter(|&v| v < chord[v])
            .map(|v| (v, chord[v]))
            .collect();
        Self::new(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.chord.len()
    }

    /// `c(v)`, the neighbour of `v` off the cycle.
    pub fn chord(&self, v: usize) -> usize {
        self.chord[v]
    }

    /// Chord pairs `(u, c(u))` with `u < c(u)`, ascending.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .filter(|&v| v < self.chord[v])
            .map(|v| (v, self.chord[v]))
            .collect()
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut edges: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        edges.extend(self.chords());
        Graph::from_edges(n, &edges).expect("cycle plus matching is simple")
    }

    /// Text form: `n` on the first line, then one chord pair per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.chords() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Lexicographically least chord list over all rotations and reflections
    /// of the cycle labelling.
    pub fn dihedral_canonical(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut best: Option<Vec<(usize, usize)>> = None;
        for r in 0..n {
            for reflect in [false, true] {
                let map = |v: usize| {
                    if reflect {
                        (r + n - v) % n
                    } else {
                        (v + r) % n
                    }
                };
                let mut pairs: Vec<_> = self
                    .chords()
                    .into_iter()
                    .map(|(u, v)| {
                        let (a, b) = (map(u), map(v));
                        (a.min(b), a.max(b))
                    })
                    .collect();
                pairs.sort_unstable();
                if best.as_ref().is_none_or(|b| pairs < *b) {
                    best = Some(pairs);
                }
            }
        }
        best.expect("n >= 4")
    }

    /// Same graph up to rotating or reflecting the cycle labels.
    pub fn is_dihedral_image_of(&self, other: &Self) -> bool {
        self.n() == other.n() && self.dihedral_canonical() == other.dihedral_canonical()
    }
}

impl fmt::Debug for CubicCycleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CubicCycleGraph(n={}, chords={:?})",
            self.n(),
            self.chords()
        )
    }
}

/// Parses the cycle format: the vertex count, then chord pairs. Tokens may be
/// laid out on any lines; blank lines and `#` comments are skipped.
pub fn parse_cycle_graph(text: &str) -> Result<CubicCycleGraph> {
    let mut tokens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            let value = tok.parse::<usize>().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("expected a non-negative integer, found `{tok}`"),
            })?;
            tokens.push((i + 1, value));
        }
    }
    let Some(&(_, n)) = tokens.first() else {
        return Err(Error::Parse {
            line: 0,
            msg: "missing vertex count".into(),
        });
    };
    let rest = &tokens[1..];
    if rest.len() % 2 == 1 {
        return Err(Error::Parse {
            line: rest.last().map_or(0, |t| t.0),
            msg: "chord pair is missing its second vertex".into(),
        });
    }
    if rest.len() != n {
        return Err(Error::Parse {
            line: rest.last().map_or(tokens[0].0, |t| t.0),
            msg: format!("expected {} chord pairs, found {}", n / 2, rest.len() / 2),
        });
    }
    let pairs: Vec<_> = rest.chunks(2).map(|c| (c[0].1, c[1].1)).collect();
    CubicCycleGraph::new(n, &pairs)
}

/// `k = ⌈(n−1)/3⌉`, the window of the L/R classification and of good shifts.
pub fn window(n: usize) -> usize {
    (n - 1).div_ceil(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// Chord lands 2..=k steps behind.
    L,
    /// Chord lands 2..=k steps ahead.
    R,
    Neither,
}

/// The two tag patterns possible when no good shift exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LrType {
    #[serde(rename = "RLRL")]
    Rlrl,
    #[serde(rename = "RRLL")]
    Rrll,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LrClassification {
    pub k: usize,
    pub tags: Vec<Side>,
}

impl LrClassification {
    pub fn count(&self, side: Side) -> usize {
        self.tags.iter().filter(|&&t| t == side).count()
    }

    /// The alternation pattern of the tags, if they follow one.
    pub fn alternation(&self) -> Option<LrType> {
        let n = self.tags.len();
        let t = |v: usize| self.tags[v % n];
        if self.tags.contains(&Side::Neither) {
            return None;
        }
        if (0..n).all(|v| t(v) != t(v + 1)) {
            return Some(LrType::Rlrl);
        }
        // Tags two apart always differ exactly for the rotations of RRLL.
        if (0..n).all(|v| t(v) != t(v + 2)) {
            return Some(LrType::Rrll);
        }
        None
    }
}

fn side_of(g: &CubicCycleGraph, v: usize, k: usize) -> Side {
    let n = g.n();
    let ahead = (g.chord(v) + n - v) % n;
    if (2..=k).contains(&ahead) {
        Side::R
    } else if ahead + k >= n && ahead <= n - 2 {
        Side::L
    } else {
        Side::Neither
    }
}

pub fn classify_lr(g: &CubicCycleGraph) -> LrClassification {
    let k = window(g.n());
    LrClassification {
        k,
        tags: (0..g.n()).map(|v| side_of(g, v, k)).collect(),
    }
}

/// `n − k` consecutive cycle vertices `start, start+1, …, start−k−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Shift {
    pub start: usize,
    pub k: usize,
    pub n: usize,
}

impl Shift {
    pub fn len(&self) -> usize {
        self.n - self.k
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Last vertex, `start − k − 1`.
    pub fn end(&self) -> usize {
        (self.start + self.len() - 1) % self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        (v + self.n - self.start) % self.n < self.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).map(move |i| (self.start + i) % self.n)
    }

    pub fn to_set(&self) -> VertexSet {
        let mut s = VertexSet::empty(self.n);
        for v in self.vertices() {
            s.insert(v);
        }
        s
    }

    /// Both endpoints have their chord inside, so every member has two
    /// neighbours in the shift.
    pub fn endpoints_hold(&self, g: &CubicCycleGraph) -> bool {
        g.n() == self.n && self.contains(g.chord(self.start)) && self.contains(g.chord(self.end()))
    }
}

/// The shift starting at `start` with parameter `k`, if its endpoint
/// condition holds. Requires `2 <= k <= n − 2`.
pub fn shift_at(g: &CubicCycleGraph, start: usize, k: usize) -> Option<Shift> {
    assert!(k >= 2 && k + 2 <= g.n(), "shift parameter out of range");
    let shift = Shift { start, k, n: g.n() };
    shift.endpoints_hold(g).then_some(shift)
}

/// A shift with parameter `⌈(n−1)/3⌉`; it is a PDS of size `⌊(2n+1)/3⌋`.
pub fn find_good_shift(g: &CubicCycleGraph) -> Result<Option<Shift>> {
    let n = g.n();
    if n < 6 {
        return Err(Error::GraphTooSmall { n, min: 6 });
    }
    let k = window(n);
    Ok((0..n)
        .find(|&u| side_of(g, u, k) != Side::L && side_of(g, (u + n - k - 1) % n, k) != Side::R)
        .map(|start| Shift { start, k, n }))
}

/// First vertex `r` of the normalised labelling: tag R for RLRL, and
/// `r, r+1 ∈ R` for RRLL.
fn normalising_offset(class: &LrClassification, ty: LrType) -> usize {
    let n = class.tags.len();
    let t = |v: usize| class.tags[v % n];
    (0..n)
        .find(|&r| match ty {
            LrType::Rlrl => t(r) == Side::R,
            LrType::Rrll => t(r) == Side::R && t(r + 1) == Side::R,
        })
        .expect("alternating tags contain R")
}

/// A shift with parameter `⌈(n−1)/3⌉ − 1` on an instance without a good shift.
pub fn find_almost_good_shift(g: &CubicCycleGraph) -> Result<Shift> {
    let n = g.n();
    if n < 8 {
        return Err(Error::GraphTooSmall { n, min: 8 });
    }
    if find_good_shift(g)?.is_some() {
        return Err(Error::HasGoodShift);
    }
    let class = classify_lr(g);
    let ty = class.alternation().ok_or(Error::UnclassifiedType)?;
    let r = normalising_offset(&class, ty);
    let start = match ty {
        LrType::Rlrl => r,
        LrType::Rrll => (r + 1) % n,
    };
    let shift = Shift {
        start,
        k: class.k - 1,
        n,
    };
    if !shift.endpoints_hold(g) {
        return Err(Error::InvalidInstance(format!(
            "shift at {start} with parameter {} fails its endpoint condition",
            shift.k
        )));
    }
    Ok(shift)
}

/// The orbit `{u, u+m, u+2m, …}` mod `n`; orbits for `gcd(m, n)`
/// consecutive representatives partition the vertices.
pub fn residue_class(u: usize, modulus: usize, n: usize) -> VertexSet {
    assert!(modulus >= 1 && n >= 1);
    let mut s = VertexSet::empty(n);
    let mut v = u % n;
    while s.insert(v) {
        v = (v + modulus) % n;
    }
    s
}

/// The two 8-vertex instances without a PDS of size 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ExceptionGraph {
    /// Tag pattern RRLL.
    H1,
    /// Tag pattern RLRL.
    H2,
}

/// How a solution was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Construction {
    /// `n = 4`: every triple of `K4`.
    AnyTriple,
    GoodShift {
        shift: Shift,
    },
    /// The forced 10-vertex chord pattern, rotated by `offset`.
    TenVertexPattern {
        offset: usize,
    },
    /// An almost-good shift minus one vertex.
    AlmostGoodShift {
        shift: Shift,
        removed: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SolveOutcome {
    Pds {
        set: VertexSet,
        construction: Construction,
    },
    Exception {
        graph: ExceptionGraph,
    },
}

impl SolveOutcome {
    pub fn set(&self) -> Option<&VertexSet> {
        match self {
            Self::Pds { set, .. } => Some(set),
            Self::Exception { .. } => None,
        }
    }
}

/// Labels relative to a normalising offset `r`: local `i` is vertex `r + i`.
struct Frame<'a> {
    g: &'a CubicCycleGraph,
    r: usize,
}

impl Frame<'_> {
    fn n(&self) -> i64 {
        self.g.n() as i64
    }

    fn real(&self, i: i64) -> usize {
        (i + self.r as i64).rem_euclid(self.n()) as usize
    }

    /// `c(i)` in local labels, in `0..n`.
    fn c(&self, i: i64) -> i64 {
        (self.g.chord(self.real(i)) as i64 - self.r as i64).rem_euclid(self.n())
    }

    fn local(&self, i: i64) -> i64 {
        i.rem_euclid(self.n())
    }
}

/// Chord tables of the two 16-vertex instances without a good shift, in
/// normalised labels, each with the vertex whose removal leaves a PDS.
const SIXTEEN_VERTEX_TABLES: [([(usize, usize); 8], usize); 2] = [
    (
        [
            (0, 3),
            (2, 5),
            (4, 7),
            (6, 9),
            (8, 11),
            (10, 13),
            (12, 15),
            (14, 1),
        ],
        4,
    ),
    (
        [
            (0, 5),
            (2, 7),
            (4, 9),
            (6, 11),
            (8, 13),
            (10, 15),
            (12, 1),
            (14, 3),
        ],
        3,
    ),
];

/// Connected PDS of size `⌊(2n+1)/3⌋`, or the exception graph when none exists.
/// With `verify`, the set is re-checked in O(n) before it is returned.
pub fn solve_hamiltonian_cubic(g: &CubicCycleGraph, verify: bool) -> Result<SolveOutcome> {
    let n = g.n();
    let outcome = if n == 4 {
        SolveOutcome::Pds {
            set: VertexSet::from_vertices(4, [0, 1, 2])?,
            construction: Construction::AnyTriple,
        }
    } else if let Some(shift) = find_good_shift(g)? {
        SolveOutcome::Pds {
            set: shift.to_set(),
            construction: Construction::GoodShift { shift },
        }
    } else {
        without_good_shift(g)?
    };
    if verify {
        if let Some(set) = outcome.set() {
            verify_solution(g, set)?;
        }
    }
    Ok(outcome)
}

fn without_good_shift(g: &CubicCycleGraph) -> Result<SolveOutcome> {
    let n = g.n();
    let k = window(n) as i64;
    let class = classify_lr(g);
    let ty = class.alternation().ok_or(Error::UnclassifiedType)?;
    let f = Frame {
        g,
        r: normalising_offset(&class, ty),
    };
    let almost = |first: i64| Shift {
        start: f.real(first),
        k: window(n) - 1,
        n,
    };
    let remove = |shift: Shift, local: i64| {
        let removed = f.real(local);
        let mut set = shift.to_set();
        debug_assert!(set.contains(removed));
        set.remove(removed);
        SolveOutcome::Pds {
            set,
            construction: Construction::AlmostGoodShift { shift, removed },
        }
    };
    let mismatch = || {
        Error::InvalidInstance(format!(
            "unexpected chord pattern for n={n} without a good shift"
        ))
    };

    Ok(match (n, ty) {
        (8, LrType::Rrll) => SolveOutcome::Exception {
            graph: ExceptionGraph::H1,
        },
        (8, LrType::Rlrl) => SolveOutcome::Exception {
            graph: ExceptionGraph::H2,
        },
        (10, LrType::Rlrl) => {
            if (0..10).step_by(2).any(|u| f.c(u) != (u + 3) % 10) {
                return Err(mismatch());
            }
            let mut set = VertexSet::full(n);
            for i in [0, 6, 9] {
                set.remove(f.real(i));
            }
            SolveOutcome::Pds {
                set,
                construction: Construction::TenVertexPattern { offset: f.r },
            }
        }
        (14, LrType::Rlrl) => {
            let p = almost(0);
            let drop = if f.c(6) != 9 {
                6
            } else if f.c(3) != 0 {
                3
            } else {
                4
            };
            remove(p, drop)
        }
        (16, LrType::Rlrl) => {
            let (_, drop) = SIXTEEN_VERTEX_TABLES
                .iter()
                .find(|(table, _)| table.iter().all(|&(u, v)| f.c(u as i64) == v as i64))
                .ok_or_else(mismatch)?;
            remove(almost(0), *drop as i64)
        }
        (n, LrType::Rlrl) if n >= 20 => {
            let drop = if f.c(3) != 0 {
                3
            } else if f.c(-k - 3) != f.local(-k) {
                -k - 3
            } else {
                k - 2
            };
            remove(almost(0), drop)
        }
        (n, LrType::Rrll) if n >= 20 => {
            let p = almost(1);
            let drop = if p.contains(f.real(f.c(k - 1))) {
                k - 2
            } else {
                k - 1
            };
            remove(p, drop)
        }
        _ => return Err(mismatch()),
    })
}

fn verify_solution(g: &CubicCycleGraph, set: &VertexSet) -> Result<()> {
    let n = g.n();
    let want = (2 * n + 1) / 3;
    if set.len() != want {
        return Err(Error::VerificationFailed(format!(
            "set has {} vertices, expected {want}",
            set.len()
        )));
    }
    let graph = g.to_graph();
    let verdict = check_pds(&graph, set)?;
    if let Some(w) = verdict.unsatisfied.first() {
        return Err(Error::VerificationFailed(format!(
            "vertex {} is unsatisfied ({} inside, {} outside)",
            w.vertex, w.inside, w.outside
        )));
    }
    if !graph.induced_connected(set) {
        return Err(Error::VerificationFailed("set is not connected".into()));
    }
    Ok(())
}

/// Uniformly random chord matching avoiding cycle neighbours, by rejection.
/// Panics unless `n` is even and at least 4.
pub fn random_cubic_cycle(n: usize, seed: u64) -> CubicCycleGraph {
    assert!(
        n >= 4 && n.is_multiple_of(2),
        "cycle length must be even and at least 4"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        order.shuffle(&mut rng);
        if order.chunks(2).all(|p| !cycle_adjacent(p[0], p[1], n)) {
            let pairs: Vec<_> = order.chunks(2).map(|p| (p[0], p[1])).collect();
            return CubicCycleGraph::new(n, &pairs).expect("valid matching");
        }
    }
}

/// Every chord matching on `n` cycle vertices. Requires `n <= 16`.
pub fn all_cubic_cycles(n: usize) -> Result<Vec<CubicCycleGraph>> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidInstance(format!(
            "cycle length must be even and at least 4, got {n}"
        )));
    }
    if n > 16 {
        return Err(Error::InstanceTooLarge { n, cap: 16 });
    }
    let mut out = Vec::new();
    let mut chord = vec![usize::MAX; n];
    extend_matching(&mut chord, &mut out);
    Ok(out)
}

fn extend_matching(chord: &mut Vec<usize>, out: &mut Vec<CubicCycleGraph>) {
    let n = chord.len();
    let Some(u) = chord.iter().position(|&c| c == usize::MAX) else {
        out.push(CubicCycleGraph {
            chord: chord.clone(),
        });
        return;
    };
    for v in u + 2..n {
        if chord[v] == usize::MAX && !cycle_adjacent(u, v, n) {
            chord[u] = v;
            chord[v] = u;
            extend_matching(chord, out);
            chord[u] = usize::MAX;
            chord[v] = usize::MAX;
        }
    }
}

/// Whether some instance on `n` vertices has tag pattern `ty` and no good shift.
pub fn admits_no_good_shift(n: usize, ty: LrType) -> bool {
    if n < 8 || n % 2 == 1 {
        return false;
    }
    let k = window(n);
    match ty {
        LrType::Rlrl => k % 2 == 1 && (n + 1 == 3 * k || n == 3 * k + 1),
        LrType::Rrll => n + 1 == 3 * k && k % 4 == 3,
    }
}

/// Random instance with tag pattern `ty` and no good shift, with its labels
/// randomly rotated and reflected.
pub fn random_without_good_shift(n: usize, ty: LrType, seed: u64) -> Result<CubicCycleGraph> {
    if !admits_no_good_shift(n, ty) {
        return Err(Error::InfeasibleParameters(format!(
            "no {ty:?} instance without a good shift has {n} vertices"
        )));
    }
    let k = window(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Sources carry tag R; every chord runs from a source 2..=k steps ahead.
    let (sources, base): (Vec<usize>, usize) = match ty {
        LrType::Rlrl => ((0..n).step_by(2).collect(), 3),
        LrType::Rrll => ((0..n).filter(|v| v % 4 < 2).collect(), 2),
    };
    let mut target: Vec<usize> = sources.iter().map(|&s| (s + base) % n).collect();
    let ahead = |s: usize, t: usize| (t + n - s) % n;
    for _ in 0..20 * n {
        let i = rng.gen_range(0..sources.len());
        let j = rng.gen_range(0..sources.len());
        let (a, b) = (ahead(sources[i], target[j]), ahead(sources[j], target[i]));
        if (2..=k).contains(&a) && (2..=k).contains(&b) {
            target.swap(i, j);
        }
    }
    let shift = rng.gen_range(0..n);
    let reflect = rng.gen_bool(0.5);
    let map = |v: usize| {
        if reflect {
            (shift + n - v) % n
        } else {
            (v + shift) % n
        }
    };
    let pairs: Vec<_> = sources
        .iter()
        .zip(&target)
        .map(|(&s, &t)| (map(s), map(t)))
        .collect();
    CubicCycleGraph::new(n, &pairs)
}

/// Largest order accepted by [`cycle_presentation`].
pub const MAX_CYCLE_SEARCH_ORDER: usize = 24;

/// Relabels a cubic graph along some Hamiltonian cycle, found by exhaustive
/// search. Returns the presentation and `order`, where cycle label `i` is
/// original vertex `order[i]`; `None` when the graph has no Hamiltonian cycle.
pub fn cycle_presentation(g: &Graph) -> Result<Option<(CubicCycleGraph, Vec<usize>)>> {
    let n = g.n();
    if !g.is_cubic() {
        return Err(Error::InvalidInstance("graph is not cubic".into()));
    }
    if n > MAX_CYCLE_SEARCH_ORDER {
        return Err(Error::InstanceTooLarge {
            n,
            cap: MAX_CYCLE_SEARCH_ORDER,
        });
    }
    let mut path = vec![0usize];
    let mut used = 1u32;
    if !extend_path(g, &mut path, &mut used) {
        return Ok(None);
    }
    let mut label = vec![0; n];
    for (i, &v) in path.iter().enumerate() {
        label[v] = i;
    }
    let pairs: Vec<_> = g
        .edges()
        .map(|(u, v)| (label[u], label[v]))
        .filter(|&(a, b)| !cycle_adjacent(a, b, n))
        .collect();
    Ok(Some((CubicCycleGraph::new(n, &pairs)?, path)))
}

fn extend_path(g: &Graph, path: &mut Vec<usize>, used: &mut u32) -> bool {
    let last = *path.last().expect("path starts at 0");
    if path.len() == g.n() {
        return g.has_edge(last, path[0]);
    }
    for &w in g.neighbors(last) {
        if *used & (1 << w) == 0 {
            *used |= 1 << w;
            path.push(w);
            if extend_path(g, path, used) {
                return true;
            }
            path.pop();
            *used &= !(1 << w);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{max_pds_exact, ExactOptions};
    use crate::generators::fixture;
    use Side::{L, R};

    fn cyc(name: &str) -> CubicCycleGraph {
        fixture(name).unwrap().cycle.unwrap()
    }

    #[test]
    fn exception_graph_tags() {
        assert_eq!(classify_lr(&cyc("h1")).tags, vec![R, R, L, L, R, R, L, L]);
        assert_eq!(classify_lr(&cyc("h1")).alternation(), Some(LrType::Rrll));
        assert_eq!(classify_lr(&cyc("h2")).tags, vec![R, L, R, L, R, L, R, L]);
        assert_eq!(classify_lr(&cyc("h2")).alternation(), Some(LrType::Rlrl));
    }

    #[test]
    fn prism_has_no_tags_and_a_good_shift() {
        let g = cyc("prism6");
        let class = classify_lr(&g);
        assert_eq!(class.k, 2);
        assert_eq!(class.count(Side::Neither), 6);
        let shift = find_good_shift(&g).unwrap().unwrap();
        assert_eq!(shift.to_set().to_vec(), vec![0, 1, 2, 3]);
        let out = solve_hamiltonian_cubic(&g, true).unwrap();
        assert_eq!(out.set().unwrap().to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn exceptions_and_almost_good_shifts() {
        for (name, graph, first) in [("h1", ExceptionGraph::H1, 1), ("h2", ExceptionGraph::H2, 0)] {
            let g = cyc(name);
            assert_eq!(find_good_shift(&g).unwrap(), None);
            assert_eq!(
                solve_hamiltonian_cubic(&g, true).unwrap(),
                SolveOutcome::Exception { graph }
            );
            let p = find_almost_good_shift(&g).unwrap();
            assert_eq!(p.to_set().to_vec(), (first..first + 6).collect::<Vec<_>>());
        }
        assert_eq!(
            find_almost_good_shift(&cyc("prism6")),
            Err(Error::GraphTooSmall { n: 6, min: 8 })
        );
        let with_shift = random_cubic_cycle(12, 3);
        assert_eq!(
            find_almost_good_shift(&with_shift),
            Err(Error::HasGoodShift)
        );
        assert_eq!(
            find_good_shift(&random_cubic_cycle(4, 0)),
            Err(Error::GraphTooSmall { n: 4, min: 6 })
        );
    }

    #[test]
    fn ten_vertex_pattern() {
        let g = cyc("cubic10");
        assert_eq!(find_good_shift(&g).unwrap(), None);
        let out = solve_hamiltonian_cubic(&g, true).unwrap();
        assert_eq!(out.set().unwrap().to_vec(), vec![1, 2, 3, 4, 5, 7, 8]);
    }

    #[test]
    fn fourteen_vertex_almost_good_shift() {
        for seed in 0..10 {
            let g = random_without_good_shift(14, LrType::Rlrl, seed).unwrap();
            let p = find_almost_good_shift(&g).unwrap();
            assert_eq!(p.len(), 10);
            let r = normalising_offset(&classify_lr(&g), LrType::Rlrl);
            assert_eq!(p.start, r);
        }
    }

    #[test]
    fn k4_is_forced() {
        let g = random_cubic_cycle(4, 9);
        assert_eq!(g.chords(), vec![(0, 2), (1, 3)]);
        let out = solve_hamiltonian_cubic(&g, true).unwrap();
        assert_eq!(out.set().unwrap().len(), 3);
    }

    #[test]
    fn residue_classes() {
        assert_eq!(residue_class(0, 4, 8).to_vec(), vec![0, 4]);
        assert_eq!(residue_class(5, 4, 8).to_vec(), vec![1, 5]);
        assert_eq!(residue_class(1, 3, 6).len(), 2);
        assert_eq!(residue_class(0, 4, 10).to_vec(), vec![0, 2, 4, 6, 8]);
        for (m, n) in [(4, 8), (3, 6), (4, 10), (6, 20), (8, 22), (5, 15)] {
            let d = gcd(m, n);
            let mut seen = VertexSet::empty(n);
            for u in 0..d {
                let class = residue_class(u, m, n);
                assert_eq!(class.len(), n / d);
                assert!(seen.intersection(&class).is_empty());
                seen = seen.union(&class);
            }
            assert_eq!(seen.len(), n);
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
    fn random_instances_are_valid_and_reproducible() {
        for n in (4..60).step_by(2) {
            let g = random_cubic_cycle(n, 77);
            assert!(g.to_graph().is_cubic());
            assert_eq!(g, random_cubic_cycle(n, 77));
            assert_eq!(
                CubicCycleGraph::from_chord_map((0..n).map(|v| g.chord(v)).collect()).unwrap(),
                g
            );
        }
    }

    #[test]
    fn text_round_trip_and_rejects() {
        let g = random_cubic_cycle(20, 5);
        assert_eq!(parse_cycle_graph(&g.to_text()).unwrap(), g);
        assert_eq!(
            parse_cycle_graph("8\n0 2 1 3 4 6 5 7\n").unwrap(),
            cyc("h1")
        );
        assert!(matches!(
            parse_cycle_graph("6\n0 3\n1 4\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cycle_graph("6\n0 1\n2 4\n3 5\n"),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            parse_cycle_graph("5\n0 2\n1 3\n4\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cycle_graph("4\n0 2\n0 2\n"),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            parse_cycle_graph("x"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn matching_counts() {
        let counts: Vec<usize> = [4, 6, 8, 10]
            .iter()
            .map(|&n| all_cubic_cycles(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 4, 31, 293]);
    }

    /// Every shift with parameter at least the window is a PDS; every
    /// almost-good shift is one vertex too large to be one.
    #[test]
    fn shift_pds_property() {
        for n in [6, 8, 10, 12] {
            let window = window(n);
            for g in all_cubic_cycles(n).unwrap() {
                let graph = g.to_graph();
                for start in 0..n {
                    for k in window - 1..=n - 2 {
                        if k < 2 {
                            continue;
                        }
                        let Some(p) = shift_at(&g, start, k) else {
                            continue;
                        };
                        assert_eq!(
                            check_pds(&graph, &p.to_set()).unwrap().holds,
                            k >= window,
                            "{g:?} {p:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn good_shift_criterion_matches_endpoint_check() {
        for n in [6, 8, 10, 12] {
            for g in all_cubic_cycles(n).unwrap() {
                let any = (0..n).any(|u| shift_at(&g, u, window(n)).is_some());
                assert_eq!(find_good_shift(&g).unwrap().is_some(), any);
            }
        }
    }

    #[test]
    fn exhaustive_small_instances_match_the_oracle() {
        for n in [6, 8, 10] {
            let target = (2 * n + 1) / 3;
            for g in all_cubic_cycles(n).unwrap() {
                let graph = g.to_graph();
                let opt = max_pds_exact(
                    &graph,
                    ExactOptions {
                        connected_only: true,
                        ..Default::default()
                    },
                )
                .unwrap()
                .size;
                match solve_hamiltonian_cubic(&g, true).unwrap() {
                    SolveOutcome::Pds { set, .. } => {
                        assert_eq!(set.len(), target);
                        assert_eq!(opt, target);
                    }
                    SolveOutcome::Exception { graph: h } => {
                        assert_eq!(n, 8);
                        assert!(opt < target);
                        let reference = if h == ExceptionGraph::H1 {
                            cyc("h1")
                        } else {
                            cyc("h2")
                        };
                        assert!(g.is_dihedral_image_of(&reference));
                    }
                }
            }
        }
    }

    #[test]
    fn no_good_shift_families_are_solved() {
        for n in (8..=80).step_by(2) {
            for ty in [LrType::Rlrl, LrType::Rrll] {
                if !admits_no_good_shift(n, ty) {
                    continue;
                }
                for seed in 0..40 {
                    let g = random_without_good_shift(n, ty, seed).unwrap();
                    assert_eq!(find_good_shift(&g).unwrap(), None);
                    assert_eq!(classify_lr(&g).alternation(), Some(ty));
                    let out = solve_hamiltonian_cubic(&g, true).unwrap();
                    assert_eq!(out.set().is_none(), n == 8);
                }
            }
        }
    }

    #[test]
    fn which_orders_lack_good_shifts() {
        let lacking: Vec<usize> = (8..=40)
            .filter(|&n| {
                admits_no_good_shift(n, LrType::Rlrl) || admits_no_good_shift(n, LrType::Rrll)
            })
            .collect();
        assert_eq!(lacking, vec![8, 10, 14, 16, 20, 22, 26, 28, 32, 34, 38, 40]);
    }

    #[test]
    fn cycle_search_recovers_a_presentation() {
        // Relabel a cycle-presented instance so the cycle is hidden.
        let hidden = random_cubic_cycle(14, 21).to_graph();
        let relabel = |v: usize| (v * 5 + 3) % 14;
        let edges: Vec<_> = hidden
            .edges()
            .map(|(u, v)| (relabel(u), relabel(v)))
            .collect();
        let g = Graph::from_edges(14, &edges).unwrap();
        let (c, order) = cycle_presentation(&g).unwrap().unwrap();
        for i in 0..14 {
            assert!(g.has_edge(order[i], order[(i + 1) % 14]));
            assert!(g.has_edge(order[i], order[c.chord(i)]));
        }
        // A bridge rules out a Hamiltonian cycle.
        assert_eq!(
            cycle_presentation(&fixture("fig1_cubic").unwrap().graph).unwrap(),
            None
        );
        // Petersen graph: cubic, not Hamiltonian.
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5)).collect();
        let petersen = Graph::from_edges(10, &[outer, spokes, inner].concat()).unwrap();
        assert_eq!(cycle_presentation(&petersen).unwrap(), None);
        assert!(matches!(
            cycle_presentation(&fixture("k3").unwrap().graph),
            Err(Error::InvalidInstance(_))
        ));
    }
}
