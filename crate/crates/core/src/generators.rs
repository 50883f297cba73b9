//! Fixture catalogue and instance generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{parse_graph, Graph};
use crate::hamiltonian::{parse_cycle_graph, CubicCycleGraph};
use crate::set::VertexSet;

const FIG1_CUBIC: &str = include_str!("../data/fig1_cubic.txt");
const FIG1_CATERPILLAR: &str = include_str!("../data/fig1_caterpillar.txt");
const FIG2_SOURCE: &str = include_str!("../data/fig2_source.txt");
const H1: &str = include_str!("../data/h1.cyc");
const H2: &str = include_str!("../data/h2.cyc");
const PRISM6: &str = include_str!("../data/prism6.cyc");
const CUBIC10: &str = include_str!("../data/cubic10_no_good_shift.cyc");

/// Values a fixture is known to have. Each one is re-checked by the oracle tests.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    pub max_pds: Option<usize>,
    pub max_connected_pds: Option<usize>,
    pub alpha: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    /// Present for Hamiltonian cubic fixtures stored in cycle form.
    pub cycle: Option<CubicCycleGraph>,
    /// A distinguished vertex set drawn in the source figure, if any.
    pub highlighted: Option<VertexSet>,
    pub expected: Expected,
    pub note: &'static str,
}

/// Names accepted by [`fixture`]; parametric families take a numeric suffix
/// (`k<n>`, `star<ℓ>`, `path<n>`, `cycle<n>`).
pub const CATALOG: &[&str] = &[
    "fig1_cubic",
    "fig1_caterpillar",
    "fig2_source",
    "h1",
    "h2",
    "prism6",
    "cubic10",
    "k2",
    "k4",
    "star4",
    "path4",
    "cycle5",
];

pub fn fixture(name: &str) -> Result<Fixture> {
    let from_text = |text: &str| parse_graph(text, true).expect("bundled fixture parses");
    let from_cycle = |text: &str| parse_cycle_graph(text).expect("bundled fixture parses");
    let mut fx = match name {
        "fig1_cubic" => Fixture {
            graph: from_text(FIG1_CUBIC),
            highlighted: Some(VertexSet::from_vertices(10, [1, 2, 3, 4, 7, 8, 9])?),
            expected: Expected {
                max_pds: Some(7),
                max_connected_pds: Some(5),
                alpha: None,
            },
            note: "cubic graph whose maximum PDS are all disconnected",
            ..blank()
        },
        "fig1_caterpillar" => Fixture {
            graph: from_text(FIG1_CATERPILLAR),
            highlighted: Some(VertexSet::from_vertices(15, (0..6).chain(9..15))?),
            expected: Expected {
                max_pds: Some(12),
                max_connected_pds: Some(8),
                alpha: None,
            },
            note: "caterpillar whose maximum PDS are all disconnected",
            ..blank()
        },
        "fig2_source" => Fixture {
            graph: from_text(FIG2_SOURCE),
            expected: Expected {
                alpha: Some(3),
                ..Default::default()
            },
            note: "source graph for the split and bipartite constructions (p..t = 0..4)",
            ..blank()
        },
        "h1" | "h2" | "prism6" | "cubic10" => {
            let (text, expected, note) = match name {
                "h1" => (H1, Some(4), "8-vertex exception of type RRLL"),
                "h2" => (H2, Some(4), "8-vertex exception of type RLRL"),
                "prism6" => (PRISM6, Some(4), "triangular prism"),
                _ => (
                    CUBIC10,
                    Some(7),
                    "10-vertex chord pattern without a good shift",
                ),
            };
            let cycle = from_cycle(text);
            Fixture {
                graph: cycle.to_graph(),
                cycle: Some(cycle),
                expected: Expected {
                    max_pds: expected,
                    ..Default::default()
                },
                note,
                ..blank()
            }
        }
        _ => parametric(name)?,
    };
    fx.name = name.to_string();
    Ok(fx)
}

fn blank() -> Fixture {
    Fixture {
        name: String::new(),
        graph: Graph::from_edges(2, &[(0, 1)]).expect("K2"),
        cycle: None,
        highlighted: None,
        expected: Expected::default(),
        note: "",
    }
}

fn parametric(name: &str) -> Result<Fixture> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(unknown)?;
    let (family, digits) = name.split_at(split);
    let p: usize = digits.parse().map_err(|_| unknown())?;
    let (graph, expected, note) = match family {
        "k" | "complete" if p >= 2 => {
            let edges: Vec<_> = (0..p)
                .flat_map(|u| (u + 1..p).map(move |v| (u, v)))
                .collect();
            let max = (p > 2).then_some(p - 1);
            (
                Graph::connected(p, &edges)?,
                Expected {
                    max_pds: max,
                    alpha: Some(1),
                    ..Default::default()
                },
                "complete graph",
            )
        }
        "star" if p >= 1 => {
            let edges: Vec<_> = (1..=p).map(|v| (0, v)).collect();
            let max = (p >= 2).then_some(p);
            (
                Graph::connected(p + 1, &edges)?,
                Expected {
                    max_pds: max,
                    alpha: Some(p),
                    ..Default::default()
                },
                "star K_{1,l}, centre 0",
            )
        }
        "path" if p >= 2 => {
            let edges: Vec<_> = (0..p - 1).map(|v| (v, v + 1)).collect();
            (
                Graph::connected(p, &edges)?,
                Expected {
                    alpha: Some(p.div_ceil(2)),
                    ..Default::default()
                },
                "path",
            )
        }
        "cycle" if p >= 3 => {
            let edges: Vec<_> = (0..p).map(|v| (v, (v + 1) % p)).collect();
            (
                Graph::connected(p, &edges)?,
                Expected {
                    alpha: Some(p / 2),
                    ..Default::default()
                },
                "cycle",
            )
        }
        _ => return Err(unknown()),
    };
    Ok(Fixture {
        graph,
        expected,
        note,
        ..blank()
    })
}

/// Random connected simple graph: a random spanning tree plus uniformly
/// chosen extra edges.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let max_m = n * n.saturating_sub(1) / 2;
    if n < 2 || m + 1 < n || m > max_m {
        return Err(Error::InfeasibleParameters(format!(
            "need n >= 2 and n-1 <= m <= {max_m}, got n={n}, m={m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let key = |u: usize, v: usize| if u < v { (u, v) } else { (v, u) };

    let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let e = key(order[i], parent);
        present.insert(e);
        edges.push(e);
    }
    let extra = m - (n - 1);
    if 2 * m <= max_m {
        while edges.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && present.insert(key(u, v)) {
                edges.push(key(u, v));
            }
        }
    } else {
        let mut pool: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !present.contains(e))
            .collect();
        pool.shuffle(&mut rng);
        edges.extend(pool.into_iter().take(extra));
    }
    Graph::connected(n, &edges)
}

/// Largest order supported by [`all_connected_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 9;

/// One representative of every isomorphism class of connected graphs on `n`
/// vertices (`2 ≤ n ≤ 9`; the sweeps use `n ≤ 8`).
///
/// Classes are grown vertex by vertex (every connected graph has a non-cut
/// vertex) and deduplicated on a canonical code: the lexicographically largest
/// upper-triangle bit string over labelings compatible with colour refinement.
pub fn all_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(2..=MAX_ENUMERATION_ORDER).contains(&n) {
        return Err(Error::InfeasibleParameters(format!(
            "exhaustive enumeration supports 2 <= n <= {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let mut level: Vec<Vec<u64>> = vec![vec![0b10, 0b01]];
    for order in 3..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for adj in &level {
            for nbrs in 1u64..(1 << (order - 1)) {
                let mut grown = adj.clone();
                for (v, row) in grown.iter_mut().enumerate() {
                    if nbrs >> v & 1 == 1 {
                        *row |= 1 << (order - 1);
                    }
                }
                grown.push(nbrs);
                if seen.insert(canonical_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|adj| {
            let edges: Vec<_> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .filter(|&(u, v)| adj[u] >> v & 1 == 1)
                .collect();
            Graph::connected(n, &edges).expect("grown graphs are connected")
        })
        .collect())
}

/// Isomorphism-invariant code of a graph given by adjacency masks (`n ≤ 11`).
pub fn canonical_code(adj: &[u64]) -> u64 {
    let n = adj.len();
    let colors = refine_colors(adj);
    let mut slots: Vec<usize> = colors.clone();
    slots.sort_unstable();
    let mut search = CanonSearch {
        adj,
        colors: &colors,
        slots: &slots,
        perm: Vec::with_capacity(n),
        used: 0,
        best: None,
        total_bits: n * (n - 1) / 2,
    };
    search.descend(0);
    search.best.expect("at least one labeling")
}

fn refine_colors(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    let mut classes = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&w| adj[v] >> w & 1 == 1)
                    .map(|w| colors[w])
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colors = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

struct CanonSearch<'a> {
    adj: &'a [u64],
    colors: &'a [usize],
    slots: &'a [usize],
    perm: Vec<usize>,
    used: u64,
    best: Option<u64>,
    total_bits: usize,
}

impl CanonSearch<'_> {
    /// `prefix` holds the bits of columns `1..perm.len()`.
    fn descend(&mut self, prefix: u64) {
        let pos = self.perm.len();
        let n = self.adj.len();
        if pos == n {
            if self.best.is_none_or(|b| prefix > b) {
                self.best = Some(prefix);
            }
            return;
        }
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.colors[v] != self.slots[pos] {
                continue;
            }
            let mut code = prefix;
            for &u in &self.perm {
                code = code << 1 | (self.adj[u] >> v & 1);
            }
            let bits = pos * (pos + 1) / 2;
            if let Some(best) = self.best {
                if code < best >> (self.total_bits - bits) {
                    continue;
                }
            }
            self.perm.push(v);
            self.used |= 1 << v;
            self.descend(code);
            self.used &= !(1 << v);
            self.perm.pop();
        }
    }
}

/// Fixture names resolved to graphs for sweeps over the catalogue.
pub fn catalog_graphs() -> Vec<Fixture> {
    CATALOG
        .iter()
        .map(|n| fixture(n).expect("catalogued"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{max_independent_set_exact, max_pds_exact, ExactOptions};

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (2..=7)
            .map(|n| all_connected_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn enumeration_bounds() {
        assert!(all_connected_graphs(1).is_err());
        assert!(all_connected_graphs(10).is_err());
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..50 {
            let g = random_connected(8, 8 + seed as usize % 14, seed).unwrap();
            let adj = g.adjacency_masks().unwrap();
            let mut perm: Vec<usize> = (0..8).collect();
            perm.shuffle(&mut rng);
            let relabeled: Vec<u64> = (0..8)
                .map(|new_v| {
                    let old_v = perm[new_v];
                    (0..8)
                        .filter(|&new_w| adj[old_v] >> perm[new_w] & 1 == 1)
                        .fold(0, |m, w| m | 1 << w)
                })
                .collect();
            assert_eq!(canonical_code(&adj), canonical_code(&relabeled));
        }
    }

    #[test]
    fn random_connected_contract() {
        let tree = random_connected(5, 4, 1).unwrap();
        assert_eq!(tree.m(), 4);
        assert!(tree.is_connected());
        for (n, m) in [(10, 9), (10, 30), (10, 45), (50, 200)] {
            let g = random_connected(n, m, 42).unwrap();
            assert_eq!((g.n(), g.m()), (n, m));
            assert!(g.is_connected());
            assert_eq!(g, random_connected(n, m, 42).unwrap());
        }
        assert!(random_connected(5, 3, 0).is_err());
        assert!(random_connected(5, 11, 0).is_err());
        assert!(random_connected(1, 0, 0).is_err());
    }

    #[test]
    fn catalogue_parses_and_unknown_names_fail() {
        for fx in catalog_graphs() {
            assert!(fx.graph.is_connected(), "{}", fx.name);
        }
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("star0"), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("k"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn figure_transcriptions() {
        let cubic = fixture("fig1_cubic").unwrap().graph;
        assert!(cubic.is_cubic() && cubic.n() == 10);
        let cat = fixture("fig1_caterpillar").unwrap().graph;
        assert_eq!(cat.n(), 15);
        assert_eq!(cat.degree(0), 6);
        assert_eq!(cat.degree(9), 6);
        for fx in ["h1", "h2", "prism6", "cubic10"] {
            let f = fixture(fx).unwrap();
            assert!(f.graph.is_cubic());
        }
    }

    /// Every fixture's recorded values agree with the oracles.
    #[test]
    fn expected_values_match_oracles() {
        for name in CATALOG
            .iter()
            .copied()
            .chain(["star7", "k6", "path9", "cycle8"])
        {
            let fx = fixture(name).unwrap();
            if let Some(v) = fx.expected.max_pds {
                assert_eq!(
                    max_pds_exact(&fx.graph, ExactOptions::default())
                        .unwrap()
                        .size,
                    v,
                    "{name}"
                );
            }
            if let Some(v) = fx.expected.max_connected_pds {
                let opts = ExactOptions {
                    connected_only: true,
                    ..Default::default()
                };
                assert_eq!(max_pds_exact(&fx.graph, opts).unwrap().size, v, "{name}");
            }
            if let Some(v) = fx.expected.alpha {
                assert_eq!(
                    max_independent_set_exact(&fx.graph, 24).unwrap().0,
                    v,
                    "{name}"
                );
            }
        }
    }
}
