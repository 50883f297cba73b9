//! Simple undirected graphs on dense vertex ids, with the structural
//! predicates used across the solvers and the edge-list / JSON formats.
//!
//! Edge-list text: first line `n m`, then `m` lines `u v`. Blank lines and
//! lines starting with `#` are ignored.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::VertexSet;

/// Immutable simple undirected graph with sorted adjacency lists.
///
/// Connectivity is not a construction invariant; solver entry points call
/// [`Graph::require_connected`] so that reduction outputs and fixtures can be
/// assembled first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// JSON shape `{"n":…, "edges":[[u,v],…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges, out-of-range ids and `n < 2`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!(
                "need at least 2 vertices, got {n}"
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {u}-{v} references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{}", w[0])));
            }
        }
        Ok(Self {
            adj,
            m: edges.len(),
        })
    }

    /// [`Graph::from_edges`] followed by a connectivity check.
    pub fn connected(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::from_edges(n, edges)?;
        g.require_connected()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        self.induced_connected(&VertexSet::full(self.n()))
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// `K_{1,ℓ}` for some `ℓ ≥ 1`; `K2` counts.
    pub fn is_star(&self) -> bool {
        let n = self.n();
        if self.m != n - 1 {
            return false;
        }
        if n == 2 {
            return true;
        }
        let centers = (0..n).filter(|&v| self.degree(v) == n - 1).count();
        centers == 1 && (0..n).all(|v| self.degree(v) == n - 1 || self.degree(v) == 1)
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|l| l.len() == 3)
    }

    /// Split-graph test on the degree sequence: with `d1 ≥ … ≥ dn` and
    /// `t = max{i : d_i ≥ i − 1}`, the graph is split iff
    /// `Σ_{i≤t} d_i = t(t−1) + Σ_{i>t} d_i`.
    pub fn is_split(&self) -> bool {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        let t = deg
            .iter()
            .enumerate()
            .filter(|&(i, &d)| d >= i)
            .map(|(i, _)| i + 1)
            .max()
            .unwrap_or(0);
        let head: usize = deg[..t].iter().sum();
        let tail: usize = deg[t..].iter().sum();
        head == t * t.saturating_sub(1) + tail
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// A proper 2-colouring, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Whether `g[s]` is connected. The empty set counts as connected.
    pub fn induced_connected(&self, s: &VertexSet) -> bool {
        let Some(start) = s.iter().next() else {
            return true;
        };
        let mut seen = VertexSet::empty(self.n());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if s.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == s.len()
    }

    /// Whether no edge has both endpoints in `s`; returns the first such edge otherwise.
    pub fn independence_violation(&self, s: &VertexSet) -> Option<(usize, usize)> {
        s.iter().find_map(|u| {
            self.adj[u]
                .iter()
                .find(|&&v| v > u && s.contains(v))
                .map(|&v| (u, v))
        })
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        self.independence_violation(s).is_none()
    }

    /// Per-vertex neighbourhood bitmasks, for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|l| l.iter().fold(0u64, |acc, &v| acc | (1u64 << v)))
                .collect(),
        )
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_edges(doc.n, &edges)
    }
}

/// Parses the edge-list format. With `strict`, a disconnected graph is an error.
pub fn parse_graph(text: &str, strict: bool) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let [n, m] = parse_pair(hline, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines.by_ref().take(m) {
        let [u, v] = parse_pair(line, body)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            msg: format!("more than the announced {m} edges"),
        });
    }
    let g = Graph::from_edges(n, &edges)?;
    if strict {
        g.require_connected()?;
    }
    Ok(g)
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            msg: format!("expected two integers, got `{body}`"),
        });
    }
    let mut out = [0usize; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{f}` is not a non-negative integer"),
        })?;
    }
    Ok(out)
}
