//! Two constructions turning a Max Independent Set instance into a Max PDS
//! instance, with both directions of the size correspondence.
//!
//! * σ builds a split graph on `2 + m + n` vertices: `z1`, `z2`, one vertex
//!   per source edge (the set `M`) and one per source vertex (the set `N`).
//!   `M ∪ {z1, z2}` is a clique and an edge-vertex `e` sees `u ∈ N` iff
//!   `u ∉ e`.
//! * β builds a bipartite graph: a padding block `L` joined to every vertex
//!   of `M`, and the same non-incidence rule between `M` and `N`.
//!
//! Target numbering is `z1, z2, M, N` for σ and `L, M, N` for β, with `M` in
//! sorted edge order and `N` in source order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphDocument};
use crate::pds::check_pds;
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionKind {
    Sigma,
    Beta,
}

/// What a target vertex stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    Z1,
    Z2,
    Padding { index: usize },
    Edge { u: usize, v: usize },
    Vertex { v: usize },
}

/// Shared block layout: `core` fixed vertices, then `M`, then `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Layout {
    core_prefix: usize,
    edges: Vec<(usize, usize)>,
    source_n: usize,
}

impl Layout {
    fn m_start(&self) -> usize {
        self.core_prefix
    }

    fn n_start(&self) -> usize {
        self.core_prefix + self.edges.len()
    }

    fn target_n(&self) -> usize {
        self.n_start() + self.source_n
    }

    /// Prefix block plus `M`: the part every repaired PDS contains.
    fn core(&self) -> VertexSet {
        VertexSet::from_vertices(self.target_n(), 0..self.n_start()).expect("in range")
    }

    fn lift(&self, source_set: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(
            self.target_n(),
            source_set.iter().map(|v| self.n_start() + v),
        )
        .expect("in range")
    }

    fn project(&self, target_set: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(
            self.source_n,
            target_set
                .iter()
                .filter(|&v| v >= self.n_start())
                .map(|v| v - self.n_start()),
        )
        .expect("in range")
    }

    /// Non-incidence edges between `M` and `N`.
    fn incidence_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            for v in (0..self.source_n).filter(|&v| v != a && v != b) {
                out.push((self.m_start() + i, self.n_start() + v));
            }
        }
        out
    }

    fn role(&self, t: usize) -> Role {
        if t >= self.n_start() {
            Role::Vertex {
                v: t - self.n_start(),
            }
        } else {
            let (u, v) = self.edges[t - self.m_start()];
            Role::Edge { u, v }
        }
    }
}

fn require_source(g: &Graph) -> Result<()> {
    g.require_connected()?;
    if g.is_star() {
        return Err(Error::IsStar);
    }
    Ok(())
}

fn require_independent(g: &Graph, s: &VertexSet) -> Result<()> {
    s.ensure_universe(g)?;
    match g.independence_violation(s) {
        Some((u, v)) => Err(Error::NotIndependent(u, v)),
        None => Ok(()),
    }
}

fn require_pds(g: &Graph, s: &VertexSet) -> Result<()> {
    if check_pds(g, s)?.holds {
        Ok(())
    } else {
        Err(Error::NotAPds)
    }
}

#[derive(Debug, Clone)]
pub struct SigmaInstance {
    pub source: Graph,
    pub target: Graph,
    layout: Layout,
}

pub fn sigma_construct(g: &Graph) -> Result<SigmaInstance> {
    require_source(g)?;
    let layout = Layout {
        core_prefix: 2,
        edges: g.edges().collect(),
        source_n: g.n(),
    };
    let clique: Vec<usize> = (0..layout.n_start()).collect();
    let mut edges: Vec<(usize, usize)> = clique
        .iter()
        .flat_map(|&a| clique.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
        .collect();
    edges.extend(layout.incidence_edges());
    let target = Graph::from_edges(layout.target_n(), &edges)?;
    Ok(SigmaInstance {
        source: g.clone(),
        target,
        layout,
    })
}

impl SigmaInstance {
    pub const Z1: usize = 0;
    pub const Z2: usize = 1;

    /// Target vertex of the source edge `{u, v}`.
    pub fn edge_vertex(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.layout
            .edges
            .binary_search(&key)
            .ok()
            .map(|i| self.layout.m_start() + i)
    }

    /// Target vertex of source vertex `v`.
    pub fn vertex(&self, v: usize) -> usize {
        self.layout.n_start() + v
    }

    pub fn role(&self, t: usize) -> Role {
        match t {
            Self::Z1 => Role::Z1,
            Self::Z2 => Role::Z2,
            _ => self.layout.role(t),
        }
    }

    pub fn roles(&self) -> Vec<Role> {
        (0..self.target.n()).map(|t| self.role(t)).collect()
    }

    /// `M ∪ {z1, z2}`.
    pub fn core(&self) -> VertexSet {
        self.layout.core()
    }

    /// `N` as a target vertex set.
    pub fn n_part(&self) -> VertexSet {
        self.layout.core().complement()
    }
}

/// `M ∪ {z1, z2} ∪ R` for an independent set `R` of the source.
pub fn sigma_forward(inst: &SigmaInstance, is_set: &VertexSet) -> Result<VertexSet> {
    require_independent(&inst.source, is_set)?;
    Ok(inst.core().union(&inst.layout.lift(is_set)))
}

/// A PDS at least as large as `s1` that contains `M ∪ {z1, z2}`.
pub fn sigma_repair(inst: &SigmaInstance, s1: &VertexSet) -> Result<VertexSet> {
    let g = &inst.target;
    require_pds(g, s1)?;
    let mut s2 = s1.union(&inst.core());
    let missing: Vec<usize> = inst
        .core()
        .difference(s1)
        .iter()
        .filter(|&t| t >= inst.layout.m_start())
        .collect();
    loop {
        let short = missing
            .iter()
            .copied()
            .find(|&e| s2.degree_into(g, e) + 2 < s2.len());
        let Some(e) = short else { break };
        let (a, b) = inst.layout.edges[e - inst.layout.m_start()];
        let evict = [a, b]
            .into_iter()
            .map(|v| inst.vertex(v))
            .find(|&t| s2.contains(t))
            .expect("an edge-vertex below the threshold has an endpoint in the set");
        s2.remove(evict);
    }
    if !check_pds(g, &s2)?.holds {
        return Err(Error::VerificationFailed(
            "repaired set is not a PDS".into(),
        ));
    }
    Ok(s2)
}

/// Independent set of the source read off a PDS of the target.
pub fn sigma_extract_is(inst: &SigmaInstance, s: &VertexSet) -> Result<VertexSet> {
    let repaired = sigma_repair(inst, s)?;
    let out = inst.layout.project(&repaired);
    if let Some((u, v)) = inst.source.independence_violation(&out) {
        return Err(Error::VerificationFailed(format!(
            "extracted set holds edge {u}-{v}"
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct BetaInstance {
    pub source: Graph,
    pub k: usize,
    pub target: Graph,
    layout: Layout,
}

/// `|L| = m·(n−k−1) − k + 1`.
pub fn beta_padding(n: usize, m: usize, k: usize) -> Option<usize> {
    (m.checked_mul(n.checked_sub(k + 1)?)? + 1).checked_sub(k)
}

pub fn beta_construct(g: &Graph, k: usize) -> Result<BetaInstance> {
    require_source(g)?;
    let n = g.n();
    if k < 1 || k + 1 >= n {
        return Err(Error::KOutOfRange { k, n });
    }
    let l = beta_padding(n, g.m(), k).ok_or(Error::KOutOfRange { k, n })?;
    let layout = Layout {
        core_prefix: l,
        edges: g.edges().collect(),
        source_n: n,
    };
    let mut edges: Vec<(usize, usize)> = (0..l)
        .flat_map(|p| (0..g.m()).map(move |i| (p, l + i)))
        .collect();
    edges.extend(layout.incidence_edges());
    let target = Graph::from_edges(layout.target_n(), &edges)?;
    Ok(BetaInstance {
        source: g.clone(),
        k,
        target,
        layout,
    })
}

impl BetaInstance {
    pub fn padding(&self) -> usize {
        self.layout.core_prefix
    }

    pub fn edge_vertex(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.layout
            .edges
            .binary_search(&key)
            .ok()
            .map(|i| self.layout.m_start() + i)
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.layout.n_start() + v
    }

    pub fn role(&self, t: usize) -> Role {
        if t < self.padding() {
            Role::Padding { index: t }
        } else {
            self.layout.role(t)
        }
    }

    pub fn roles(&self) -> Vec<Role> {
        (0..self.target.n()).map(|t| self.role(t)).collect()
    }

    /// `L ∪ M`.
    pub fn core(&self) -> VertexSet {
        self.layout.core()
    }

    /// `|L| + |M| + k`: the size a PDS reaches exactly when `α(G) ≥ k`.
    pub fn threshold(&self) -> usize {
        self.layout.n_start() + self.k
    }

    /// `(ℓ+k−1)·(n−k) = (n−k−1)·(ℓ+m+k−1)`, the padding's defining balance.
    pub fn size_identity_holds(&self) -> bool {
        let (l, m, n, k) = (
            self.padding(),
            self.layout.edges.len(),
            self.source.n(),
            self.k,
        );
        (l + k - 1) * (n - k) == (n - k - 1) * (l + m + k - 1)
    }

    /// Closed-form prediction of whether `L ∪ M` alone induces a PDS:
    /// `|L|·|N| ≥ (|N|−2)·(|L|+|M|−1)`.
    pub fn core_is_pds_predicted(&self) -> bool {
        let (l, m, n) = (self.padding(), self.layout.edges.len(), self.source.n());
        l * n >= (n - 2) * (l + m - 1)
    }
}

/// `L ∪ M ∪ R` for an independent set `R` with `|R| ≥ k`.
pub fn beta_forward(inst: &BetaInstance, is_set: &VertexSet) -> Result<VertexSet> {
    require_independent(&inst.source, is_set)?;
    if is_set.len() < inst.k {
        return Err(Error::SizeBelowThreshold {
            size: is_set.len(),
            threshold: inst.k,
        });
    }
    Ok(inst.core().union(&inst.layout.lift(is_set)))
}

/// A PDS containing `L ∪ M`, from any PDS of size at least the threshold.
pub fn beta_repair(inst: &BetaInstance, s1: &VertexSet) -> Result<VertexSet> {
    require_pds(&inst.target, s1)?;
    if s1.len() < inst.threshold() {
        return Err(Error::SizeBelowThreshold {
            size: s1.len(),
            threshold: inst.threshold(),
        });
    }
    let s2 = s1.union(&inst.core());
    if !check_pds(&inst.target, &s2)?.holds {
        return Err(Error::VerificationFailed(
            "repaired set is not a PDS".into(),
        ));
    }
    Ok(s2)
}

pub fn beta_extract_is(inst: &BetaInstance, s: &VertexSet) -> Result<VertexSet> {
    let repaired = beta_repair(inst, s)?;
    let out = inst.layout.project(&repaired);
    if let Some((u, v)) = inst.source.independence_violation(&out) {
        return Err(Error::VerificationFailed(format!(
            "extracted set holds edge {u}-{v}"
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Independent set mapped to a PDS.
    Forward,
    /// PDS mapped back to an independent set.
    Backward,
}

/// A source independent set and a target PDS claimed to correspond.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub kind: ReductionKind,
    pub direction: Direction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub source: GraphDocument,
    pub independent_set: Vec<usize>,
    /// Target vertex ids.
    pub pds: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub independent: bool,
    pub pds_holds: bool,
    /// Forward: `|pds| = |core| + |IS|`. Backward: `|IS| ≥ |pds| − |core|`.
    pub size_identity: bool,
    /// The pair is what the construction itself produces from its input side.
    pub reproduced: bool,
    pub core_size: usize,
    pub target_n: usize,
}

impl CertificateReport {
    pub fn valid(&self) -> bool {
        self.independent && self.pds_holds && self.size_identity && self.reproduced
    }
}

enum Built {
    Sigma(SigmaInstance),
    Beta(BetaInstance),
}

impl Built {
    fn new(kind: ReductionKind, g: &Graph, k: Option<usize>) -> Result<Self> {
        Ok(match kind {
            ReductionKind::Sigma => Self::Sigma(sigma_construct(g)?),
            ReductionKind::Beta => {
                let k =
                    k.ok_or_else(|| Error::InvalidInstance("beta certificate needs k".into()))?;
                Self::Beta(beta_construct(g, k)?)
            }
        })
    }

    fn target(&self) -> &Graph {
        match self {
            Self::Sigma(i) => &i.target,
            Self::Beta(i) => &i.target,
        }
    }

    fn core(&self) -> VertexSet {
        match self {
            Self::Sigma(i) => i.core(),
            Self::Beta(i) => i.core(),
        }
    }

    fn forward(&self, s: &VertexSet) -> Result<VertexSet> {
        match self {
            Self::Sigma(i) => sigma_forward(i, s),
            Self::Beta(i) => beta_forward(i, s),
        }
    }

    fn backward(&self, s: &VertexSet) -> Result<VertexSet> {
        match self {
            Self::Sigma(i) => sigma_extract_is(i, s),
            Self::Beta(i) => beta_extract_is(i, s),
        }
    }
}

impl ReductionCertificate {
    pub fn forward(
        kind: ReductionKind,
        g: &Graph,
        k: Option<usize>,
        is_set: &VertexSet,
    ) -> Result<Self> {
        let pds = Built::new(kind, g, k)?.forward(is_set)?;
        Ok(Self {
            kind,
            direction: Direction::Forward,
            k,
            source: g.to_document(),
            independent_set: is_set.to_vec(),
            pds: pds.to_vec(),
        })
    }

    pub fn backward(
        kind: ReductionKind,
        g: &Graph,
        k: Option<usize>,
        pds: &VertexSet,
    ) -> Result<Self> {
        let is_set = Built::new(kind, g, k)?.backward(pds)?;
        Ok(Self {
            kind,
            direction: Direction::Backward,
            k,
            source: g.to_document(),
            independent_set: is_set.to_vec(),
            pds: pds.to_vec(),
        })
    }

    /// Rebuilds the construction and checks both sides with their oracles.
    pub fn verify(&self) -> Result<CertificateReport> {
        let g = Graph::from_document(&self.source)?;
        let built = Built::new(self.kind, &g, self.k)?;
        let target = built.target();
        let is_set = VertexSet::from_vertices(g.n(), self.independent_set.iter().copied())?;
        let pds = VertexSet::from_vertices(target.n(), self.pds.iter().copied())?;
        let core = built.core().len();
        let pds_holds = check_pds(target, &pds).map(|v| v.holds).unwrap_or(false);
        let (size_identity, reproduced) = match self.direction {
            Direction::Forward => (
                pds.len() == core + is_set.len(),
                built.forward(&is_set).is_ok_and(|s| s == pds),
            ),
            Direction::Backward => (
                is_set.len() + core >= pds.len(),
                built.backward(&pds).is_ok_and(|s| s == is_set),
            ),
        };
        Ok(CertificateReport {
            independent: g.is_independent(&is_set),
            pds_holds,
            size_identity,
            reproduced,
            core_size: core,
            target_n: target.n(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{max_independent_set_exact, max_pds_exact, ExactOptions, MaskGraph};
    use crate::generators::{all_connected_graphs, fixture};

    fn fig2() -> Graph {
        fixture("fig2_source").unwrap().graph
    }

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied()).unwrap()
    }

    fn independent_sets(g: &Graph) -> Vec<VertexSet> {
        (0u64..1 << g.n())
            .map(|m| VertexSet::from_mask(g.n(), m))
            .filter(|s| g.is_independent(s))
            .collect()
    }

    fn sources(max_n: usize) -> Vec<Graph> {
        (3..=max_n)
            .flat_map(|n| all_connected_graphs(n).unwrap())
            .filter(|g| !g.is_star())
            .collect()
    }

    #[test]
    fn sigma_on_the_five_vertex_source() {
        let inst = sigma_construct(&fig2()).unwrap();
        assert_eq!(inst.target.n(), 13);
        assert!(inst.target.is_split());
        assert!(inst.target.is_connected());
        // p..t are 0..4; the edge-vertex pq sees r, s, t in N.
        let pq = inst.edge_vertex(0, 1).unwrap();
        let n_neighbours: Vec<usize> = inst
            .target
            .neighbors(pq)
            .iter()
            .copied()
            .filter(|&t| t >= 8)
            .collect();
        assert_eq!(
            n_neighbours,
            vec![inst.vertex(2), inst.vertex(3), inst.vertex(4)]
        );
        let core = inst.core();
        for a in core.iter() {
            for b in core.iter().filter(|&b| b > a) {
                assert!(inst.target.has_edge(a, b));
            }
        }
        assert_eq!(inst.role(0), Role::Z1);
        assert_eq!(inst.role(pq), Role::Edge { u: 0, v: 1 });
        assert_eq!(inst.role(12), Role::Vertex { v: 4 });
    }

    #[test]
    fn sigma_on_a_triangle_and_a_star() {
        let k3 = fixture("k3").unwrap().graph;
        let inst = sigma_construct(&k3).unwrap();
        assert_eq!(inst.target.n(), 8);
        for i in 0..3 {
            let e = 2 + i;
            assert_eq!(
                inst.target.neighbors(e).iter().filter(|&&t| t >= 5).count(),
                1
            );
        }
        assert_eq!(
            sigma_construct(&fixture("star3").unwrap().graph).unwrap_err(),
            Error::IsStar
        );
        assert_eq!(
            sigma_construct(&fixture("k2").unwrap().graph).unwrap_err(),
            Error::IsStar
        );
    }

    #[test]
    fn sigma_forward_examples() {
        let g = fig2();
        let inst = sigma_construct(&g).unwrap();
        let s = sigma_forward(&inst, &set(5, &[0, 2, 4])).unwrap();
        assert_eq!(s.len(), 11);
        assert!(check_pds(&inst.target, &s).unwrap().holds);
        for v in 0..5 {
            let s = sigma_forward(&inst, &set(5, &[v])).unwrap();
            assert_eq!(s.len(), 6 + 3);
            assert!(check_pds(&inst.target, &s).unwrap().holds);
        }
        assert_eq!(
            sigma_forward(&inst, &set(5, &[0, 1])),
            Err(Error::NotIndependent(0, 1))
        );
        // The empty independent set maps to the core; its status is whatever the oracle says.
        let core = sigma_forward(&inst, &VertexSet::empty(5)).unwrap();
        assert_eq!(core, inst.core());
        if check_pds(&inst.target, &core).unwrap().holds {
            assert!(sigma_extract_is(&inst, &core).unwrap().is_empty());
        }
    }

    #[test]
    fn sigma_round_trip_on_every_independent_set() {
        let g = fig2();
        let inst = sigma_construct(&g).unwrap();
        for r in independent_sets(&g) {
            let s = sigma_forward(&inst, &r).unwrap();
            if r.is_empty() && !check_pds(&inst.target, &s).unwrap().holds {
                continue;
            }
            assert!(check_pds(&inst.target, &s).unwrap().holds, "{r:?}");
            assert_eq!(sigma_repair(&inst, &s).unwrap(), s);
            let back = sigma_extract_is(&inst, &s).unwrap();
            assert!(back.len() >= r.len());
        }
    }

    /// Every PDS of the 13-vertex target repairs to a PDS containing the core.
    #[test]
    fn sigma_repair_on_every_pds() {
        let inst = sigma_construct(&fig2()).unwrap();
        let mg = MaskGraph::new(&inst.target, 24).unwrap();
        let n = inst.target.n();
        let n_only = inst.n_part();
        assert!(!check_pds(&inst.target, &n_only).unwrap().holds);
        let mut seen = 0;
        for mask in 0u64..(1 << n) {
            let k = mask.count_ones() as usize;
            if k < 2 || k >= n || !mg.is_pds(mask) {
                continue;
            }
            seen += 1;
            let s1 = VertexSet::from_mask(n, mask);
            let s2 = sigma_repair(&inst, &s1).unwrap();
            assert!(s2.len() >= s1.len());
            assert!(inst.core().is_subset(&s2));
            let is = sigma_extract_is(&inst, &s1).unwrap();
            assert!(is.len() + inst.core().len() >= s1.len());
        }
        assert!(seen > 0);
    }

    /// With the core inside `S`, an edge-vertex is satisfied iff `d_S(e) ≥ |S| − 2`.
    #[test]
    fn edge_vertex_satisfaction_criterion() {
        for g in sources(5) {
            let inst = sigma_construct(&g).unwrap();
            let t = &inst.target;
            let core = inst.core();
            for mask in 0u64..(1 << g.n()) {
                let s = core.union(&inst.layout.lift(&VertexSet::from_mask(g.n(), mask)));
                if s.len() >= t.n() {
                    continue;
                }
                for e in (2..inst.layout.n_start()).filter(|&e| s.contains(e)) {
                    let inside = s.degree_into(t, e);
                    let sat = crate::pds::satisfies(inside, t.degree(e) - inside, s.len(), t.n());
                    assert_eq!(sat, inside + 2 >= s.len());
                }
            }
        }
    }

    #[test]
    fn sigma_size_correspondence_small() {
        for g in sources(5) {
            let inst = sigma_construct(&g).unwrap();
            assert!(inst.target.is_connected() && inst.target.is_split());
            let alpha = max_independent_set_exact(&g, 24).unwrap().0;
            let opt = max_pds_exact(&inst.target, ExactOptions::default()).unwrap();
            assert_eq!(opt.size, g.m() + 2 + alpha);
            assert_eq!(sigma_extract_is(&inst, &opt.witness).unwrap().len(), alpha);
        }
    }

    #[test]
    fn beta_on_the_five_vertex_source() {
        let g = fig2();
        let inst = beta_construct(&g, 3).unwrap();
        assert_eq!(inst.padding(), 4);
        assert_eq!(inst.target.n(), 15);
        assert!(inst.target.is_bipartite());
        assert!(inst.size_identity_holds());
        let s = beta_forward(&inst, &set(5, &[0, 2, 4])).unwrap();
        assert_eq!(s.len(), 13);
        assert!(check_pds(&inst.target, &s).unwrap().holds);
        assert!(inst.target.induced_connected(&s));
        assert_eq!(beta_extract_is(&inst, &s).unwrap().to_vec(), vec![0, 2, 4]);
        assert_eq!(
            beta_forward(&inst, &set(5, &[0])),
            Err(Error::SizeBelowThreshold {
                size: 1,
                threshold: 3
            })
        );
        assert_eq!(
            beta_construct(&g, 4).unwrap_err(),
            Error::KOutOfRange { k: 4, n: 5 }
        );
        assert_eq!(
            beta_construct(&g, 0).unwrap_err(),
            Error::KOutOfRange { k: 0, n: 5 }
        );
        assert_eq!(inst.role(0), Role::Padding { index: 0 });
    }

    #[test]
    fn beta_parts_follow_the_rules() {
        for g in sources(5) {
            for k in 1..g.n() - 1 {
                let inst = beta_construct(&g, k).unwrap();
                assert!(inst.size_identity_holds());
                assert_eq!(inst.padding(), g.m() * (g.n() - k - 1) + 1 - k);
                let t = &inst.target;
                let l = inst.padding();
                for p in 0..l {
                    assert_eq!(t.degree(p), g.m());
                }
                for (u, v) in g.edges() {
                    let e = inst.edge_vertex(u, v).unwrap();
                    assert_eq!(t.degree(e), l + g.n() - 2);
                    assert!(!t.has_edge(e, inst.vertex(u)) && !t.has_edge(e, inst.vertex(v)));
                }
            }
        }
    }

    /// Core prediction, extension equivalence and the size floor of PDS
    /// strictly containing the core, on every small source and every valid k.
    #[test]
    fn beta_correspondences_small() {
        for g in sources(4) {
            let alpha = max_independent_set_exact(&g, 24).unwrap().0;
            for k in 1..g.n() - 1 {
                let inst = beta_construct(&g, k).unwrap();
                let t = &inst.target;
                let core = inst.core();
                assert_eq!(
                    check_pds(t, &core).unwrap().holds,
                    inst.core_is_pds_predicted()
                );
                let mut best_with_core = 0;
                for mask in 1u64..(1 << g.n()) {
                    let s = core.union(&inst.layout.lift(&VertexSet::from_mask(g.n(), mask)));
                    if s.len() < t.n() && check_pds(t, &s).unwrap().holds {
                        assert!(s.len() >= inst.threshold(), "{g:?} k={k}");
                        assert!(t.induced_connected(&s));
                        best_with_core = best_with_core.max(s.len());
                    }
                }
                assert_eq!(best_with_core >= inst.threshold(), alpha >= k);
                assert_eq!(
                    crate::exact::pds_extension(t, &core, 63).unwrap().is_some(),
                    alpha >= k
                );
                if t.n() <= 24 {
                    let found =
                        crate::exact::pds_of_size_at_least(t, inst.threshold(), 24).unwrap();
                    assert_eq!(found.is_some(), alpha >= k);
                    if let Some(s) = found {
                        let is = beta_extract_is(&inst, &s).unwrap();
                        assert!(is.len() >= k);
                    }
                }
            }
        }
    }

    #[test]
    fn certificates_round_trip() {
        let g = fig2();
        let r = set(5, &[0, 2, 4]);
        let cert = ReductionCertificate::forward(ReductionKind::Sigma, &g, None, &r).unwrap();
        assert!(cert.verify().unwrap().valid());
        let json = serde_json::to_string(&cert).unwrap();
        let back: ReductionCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);

        let beta = ReductionCertificate::forward(ReductionKind::Beta, &g, Some(3), &r).unwrap();
        assert!(beta.verify().unwrap().valid());
        let inst = beta_construct(&g, 3).unwrap();
        let pds = beta_forward(&inst, &r).unwrap();
        let backward =
            ReductionCertificate::backward(ReductionKind::Beta, &g, Some(3), &pds).unwrap();
        assert!(backward.verify().unwrap().valid());

        let mut forged = cert.clone();
        forged.independent_set = vec![0, 1];
        assert!(!forged.verify().unwrap().valid());
        let mut shrunk = cert;
        shrunk.pds.pop();
        assert!(!shrunk.verify().unwrap().valid());
    }
}
