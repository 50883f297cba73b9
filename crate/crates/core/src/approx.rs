//! Local-move approximation: a PDS of size `⌈n/2⌉` or `⌈n/2⌉ + 1`.
//!
//! The loop repeatedly replaces `S` by `S̄ ∪ {u}` where `u ∈ S` maximises
//! `d_S̄(u) − d_S(u)`. Each move lowers the cut by that difference, so the
//! cut drops strictly at least every second move.

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact;
use crate::graph::Graph;
use crate::pds::satisfies;
use crate::set::VertexSet;

/// One move `S := S̄ ∪ {u}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Move {
    pub vertex: usize,
    /// `d_S(u)` before the move.
    pub inside: usize,
    /// `d_S̄(u)` before the move.
    pub outside: usize,
    pub size_before: usize,
    pub cut_before: usize,
    pub cut_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxTrace {
    pub initial: VertexSet,
    pub moves: Vec<Move>,
    #[serde(rename = "final")]
    pub result: VertexSet,
}

impl ApproxTrace {
    /// One JSON object per line: the initial set, each move, the final set.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let mut push = |v: serde_json::Value| {
            out.push_str(&v.to_string());
            out.push('\n');
        };
        push(serde_json::json!({ "initial": self.initial.to_vec() }));
        for m in &self.moves {
            push(serde_json::to_value(m).expect("plain struct"));
        }
        push(serde_json::json!({ "final": self.result.to_vec() }));
        out
    }
}

/// Membership with a role flag: `v ∈ S` iff `mark[v] != flipped`, so taking
/// the complement is O(1).
struct State<'a> {
    g: &'a Graph,
    mark: Vec<bool>,
    flipped: bool,
    /// Neighbours of `v` with `mark` set.
    marked_deg: Vec<usize>,
    len: usize,
    cut: usize,
}

impl<'a> State<'a> {
    fn new(g: &'a Graph, s: &VertexSet) -> Self {
        let mark: Vec<bool> = (0..g.n()).map(|v| s.contains(v)).collect();
        let marked_deg: Vec<usize> = (0..g.n())
            .map(|v| g.neighbors(v).iter().filter(|&&w| mark[w]).count())
            .collect();
        let cut = (0..g.n())
            .filter(|&v| mark[v])
            .map(|v| g.degree(v) - marked_deg[v])
            .sum();
        Self {
            g,
            mark,
            flipped: false,
            marked_deg,
            len: s.len(),
            cut,
        }
    }

    fn member(&self, v: usize) -> bool {
        self.mark[v] != self.flipped
    }

    /// `(d_S(v), d_S̄(v))`.
    fn degrees(&self, v: usize) -> (usize, usize) {
        let (marked, unmarked) = (self.marked_deg[v], self.g.degree(v) - self.marked_deg[v]);
        if self.flipped {
            (unmarked, marked)
        } else {
            (marked, unmarked)
        }
    }

    fn is_pds(&self) -> bool {
        let n = self.g.n();
        (0..n).filter(|&v| self.member(v)).all(|v| {
            let (inside, outside) = self.degrees(v);
            satisfies(inside, outside, self.len, n)
        })
    }

    /// Member maximising `d_S̄ − d_S`; ties go to the smallest id.
    fn argmax(&self) -> usize {
        let mut best: Option<(i64, usize)> = None;
        for v in (0..self.g.n()).filter(|&v| self.member(v)) {
            let (inside, outside) = self.degrees(v);
            let diff = outside as i64 - inside as i64;
            if best.is_none_or(|(b, _)| diff > b) {
                best = Some((diff, v));
            }
        }
        best.expect("S is non-empty").1
    }

    fn complement_and_add(&mut self, u: usize) -> Move {
        let (inside, outside) = self.degrees(u);
        let size_before = self.len;
        let cut_before = self.cut;
        self.flipped = !self.flipped;
        self.len = self.g.n() - self.len;
        // u is now outside; flip its mark to put it back in.
        self.mark[u] = !self.mark[u];
        for &w in self.g.neighbors(u) {
            if self.mark[u] {
                self.marked_deg[w] += 1;
            } else {
                self.marked_deg[w] -= 1;
            }
        }
        self.len += 1;
        self.cut = cut_before + inside - outside;
        Move {
            vertex: u,
            inside,
            outside,
            size_before,
            cut_before,
            cut_after: self.cut,
        }
    }

    fn to_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.g.n(), (0..self.g.n()).filter(|&v| self.member(v)))
            .expect("in range")
    }
}

/// Runs the local-move loop from `init`, from a seeded random `⌈n/2⌉`-subset,
/// or from `{0, …, ⌈n/2⌉−1}`, in that order of preference.
pub fn half_pds(
    g: &Graph,
    init: Option<&VertexSet>,
    seed: Option<u64>,
) -> Result<(VertexSet, ApproxTrace)> {
    let n = g.n();
    if n < 3 {
        return Err(Error::GraphTooSmall { n, min: 3 });
    }
    g.require_connected()?;
    let half = n.div_ceil(2);
    let initial = match (init, seed) {
        (Some(s), _) => {
            s.ensure_universe(g)?;
            if s.len() != half {
                return Err(Error::InvalidInit {
                    size: s.len(),
                    expected: half,
                });
            }
            s.clone()
        }
        (None, Some(seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            VertexSet::from_vertices(n, sample(&mut rng, n, half))?
        }
        (None, None) => VertexSet::from_vertices(n, 0..half)?,
    };

    let mut state = State::new(g, &initial);
    let mut moves = Vec::new();
    while !state.is_pds() {
        let u = state.argmax();
        moves.push(state.complement_and_add(u));
    }
    let result = state.to_set();
    Ok((
        result.clone(),
        ApproxTrace {
            initial,
            moves,
            result,
        },
    ))
}

/// `2 − 2/(Δ+1)`, the worst-case ratio between the optimum and [`half_pds`].
pub fn approx_ratio_bound(g: &Graph) -> Ratio<u64> {
    let delta = g.max_degree() as u64;
    Ratio::new(2 * delta, delta + 1)
}

/// Whether a PDS of size at least `k` exists. Sizes up to `⌈n/2⌉` are always
/// reachable; larger `k` falls back to exhaustive search.
pub fn decide_pds_at_least_k(g: &Graph, k: usize, cap: usize) -> Result<bool> {
    let n = g.n();
    if k < 2 || k >= n {
        return Err(Error::InvalidSubsetSize { size: k, n });
    }
    g.require_connected()?;
    if k <= n.div_ceil(2) {
        return Ok(true);
    }
    Ok(exact::pds_of_size_at_least(g, k, cap)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fixture, random_connected};
    use crate::pds::check_pds;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied()).unwrap()
    }

    fn assert_contract(g: &Graph, s: &VertexSet) {
        let half = g.n().div_ceil(2);
        assert!(check_pds(g, s).unwrap().holds);
        assert!(
            s.len() == half || s.len() == half + 1,
            "size {} for n={}",
            s.len(),
            g.n()
        );
    }

    #[test]
    fn path_start_already_dense() {
        let g = fixture("path4").unwrap().graph;
        let (s, trace) = half_pds(&g, Some(&set(4, &[0, 1])), None).unwrap();
        assert_eq!(s.to_vec(), vec![0, 1]);
        assert!(trace.moves.is_empty());
    }

    #[test]
    fn complete_graph_init_is_kept() {
        let g = fixture("k4").unwrap().graph;
        for (a, b) in [(0, 1), (0, 3), (1, 2), (2, 3)] {
            let init = set(4, &[a, b]);
            let (s, trace) = half_pds(&g, Some(&init), None).unwrap();
            assert_eq!(s, init);
            assert!(trace.moves.is_empty());
        }
    }

    #[test]
    fn cubic_fixture_default_init() {
        let g = fixture("fig1_cubic").unwrap().graph;
        let (s, _) = half_pds(&g, None, None).unwrap();
        assert_contract(&g, &s);
        assert!(s.len() == 5 || s.len() == 6);
    }

    #[test]
    fn precondition_errors() {
        let k2 = fixture("k2").unwrap().graph;
        assert_eq!(
            half_pds(&k2, None, None),
            Err(Error::GraphTooSmall { n: 2, min: 3 })
        );
        let g = fixture("path4").unwrap().graph;
        assert_eq!(
            half_pds(&g, Some(&set(4, &[0])), None),
            Err(Error::InvalidInit {
                size: 1,
                expected: 2
            })
        );
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(half_pds(&split, None, None), Err(Error::Disconnected));
    }

    #[test]
    fn ratio_values() {
        assert_eq!(
            approx_ratio_bound(&fixture("fig1_cubic").unwrap().graph),
            Ratio::new(3, 2)
        );
        assert_eq!(
            approx_ratio_bound(&fixture("cycle7").unwrap().graph),
            Ratio::new(4, 3)
        );
        for n in 3..10u64 {
            let g = fixture(&format!("k{n}")).unwrap().graph;
            assert_eq!(approx_ratio_bound(&g), Ratio::new(2 * n - 2, n));
        }
    }

    #[test]
    fn decision_examples() {
        let cubic = fixture("fig1_cubic").unwrap().graph;
        assert!(decide_pds_at_least_k(&cubic, 5, 24).unwrap());
        assert!(decide_pds_at_least_k(&cubic, 7, 24).unwrap());
        assert!(!decide_pds_at_least_k(&cubic, 8, 24).unwrap());
        let h1 = fixture("h1").unwrap().graph;
        assert!(!decide_pds_at_least_k(&h1, 5, 24).unwrap());
        assert!(decide_pds_at_least_k(&h1, 4, 24).unwrap());
        assert!(decide_pds_at_least_k(&h1, 3, 24).unwrap());
    }

    /// Replays a trace against independently recomputed degrees and cut sizes.
    fn replay(g: &Graph, trace: &ApproxTrace) {
        let n = g.n();
        let half = n.div_ceil(2);
        let cut = |s: &VertexSet| {
            g.edges()
                .filter(|&(u, v)| s.contains(u) != s.contains(v))
                .count()
        };
        let mut s = trace.initial.clone();
        let mut cuts = vec![cut(&s)];
        for m in &trace.moves {
            assert_eq!(m.size_before, s.len());
            assert_eq!(m.cut_before, cut(&s));
            // A failing set always offers a vertex with more outside neighbours
            // (or as many, one above the half).
            let verdict = check_pds(g, &s).unwrap();
            assert!(!verdict.holds);
            let diff = m.outside as i64 - m.inside as i64;
            let best = s
                .iter()
                .map(|v| g.degree(v) as i64 - 2 * s.degree_into(g, v) as i64)
                .max()
                .unwrap();
            assert_eq!(diff, best);
            if s.len() == half {
                assert!(diff > 0);
            } else {
                assert_eq!(s.len(), half + 1);
                assert!(diff >= 0);
            }
            assert_eq!(m.inside, s.degree_into(g, m.vertex));
            let mut next = s.complement();
            next.insert(m.vertex);
            s = next;
            assert_eq!(m.cut_after, cut(&s));
            cuts.push(cut(&s));
            if n % 2 == 1 {
                assert_eq!(s.len(), half);
            }
        }
        assert_eq!(s, trace.result);
        for w in cuts.windows(3) {
            assert!(w[2] < w[0]);
        }
        assert!(trace.moves.len() <= 2 * g.m());
    }

    #[test]
    fn traces_replay_on_random_graphs() {
        for seed in 0..300u64 {
            let n = 3 + (seed as usize % 40);
            let max_m = n * (n - 1) / 2;
            let m = (n - 1) + (seed as usize * 7919) % (max_m - n + 2);
            let g = random_connected(n, m, seed).unwrap();
            for s in [None, Some(seed)] {
                let (out, trace) = half_pds(&g, None, s).unwrap();
                assert_contract(&g, &out);
                replay(&g, &trace);
            }
        }
    }

    #[test]
    fn even_sizes_alternate() {
        for seed in 0..100u64 {
            let g = random_connected(20, 40, seed).unwrap();
            let (_, trace) = half_pds(&g, None, Some(seed)).unwrap();
            for (i, m) in trace.moves.iter().enumerate() {
                let expected = if i % 2 == 0 { 10 } else { 11 };
                assert_eq!(m.size_before, expected);
            }
        }
    }

    #[test]
    fn large_random_graphs() {
        for (n, m, seed) in [
            (1_000, 3_000, 1),
            (5_000, 10_000, 2),
            (10_000, 30_000, 3),
            (10_001, 20_000, 4),
        ] {
            let g = random_connected(n, m, seed).unwrap();
            let (s, _) = half_pds(&g, None, Some(seed)).unwrap();
            assert_contract(&g, &s);
        }
    }

    #[test]
    fn trace_json_lines() {
        let g = fixture("fig1_cubic").unwrap().graph;
        let (_, trace) = half_pds(&g, None, Some(3)).unwrap();
        let text = trace.to_json_lines();
        assert_eq!(text.lines().count(), trace.moves.len() + 2);
        for line in text.lines() {
            serde_json::from_str::<serde_json::Value>(line).unwrap();
        }
    }
}
