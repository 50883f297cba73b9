//! Brute-force oracle over bitmask subsets.
//!
//! Sizes are enumerated in descending order starting from the degree bound
//! (or `n − 1`), and within a size in increasing bitmask order, so the first
//! PDS found is maximum and the witness is the lexicographically smallest
//! mask of that size. Everything here is ground truth for the other modules.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pds::{pds_size_upper_bound, satisfies};
use crate::set::VertexSet;

/// Default enumeration cap; `PDSKIT_CAP` in the CLI overrides it.
pub const DEFAULT_CAP: usize = 24;
/// Masks are `u64` with one spare bit for the loop sentinel.
pub const HARD_CAP: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub connected_only: bool,
    pub all_optima: bool,
    pub cap: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            connected_only: false,
            all_optima: false,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub size: usize,
    pub witness: VertexSet,
    /// Every optimal set, in increasing mask order, when requested.
    pub all_optima: Option<Vec<VertexSet>>,
    pub subsets_examined: u64,
}

/// Graph view with neighbourhood masks; the hot loop of every sweep.
#[derive(Debug, Clone)]
pub struct MaskGraph {
    n: usize,
    adj: Vec<u64>,
    degree: Vec<u32>,
}

impl MaskGraph {
    pub fn new(g: &Graph, cap: usize) -> Result<Self> {
        let cap = cap.min(HARD_CAP);
        if g.n() > cap {
            return Err(Error::InstanceTooLarge { n: g.n(), cap });
        }
        let adj = g.adjacency_masks().expect("n <= 63");
        let degree = adj.iter().map(|m| m.count_ones()).collect();
        Ok(Self {
            n: g.n(),
            adj,
            degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Proportion condition for every member of `mask`; the size bounds are the caller's.
    #[inline]
    pub fn is_pds(&self, mask: u64) -> bool {
        let k = mask.count_ones() as usize;
        let mut rest = mask;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let inside = (self.adj[u] & mask).count_ones() as usize;
            let outside = self.degree[u] as usize - inside;
            if !satisfies(inside, outside, k, self.n) {
                return false;
            }
        }
        true
    }

    #[inline]
    pub fn is_connected(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let mut seen = mask & mask.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[u] & mask & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == mask
    }

    #[inline]
    pub fn is_independent(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[u] & mask != 0 {
                return false;
            }
        }
        true
    }
}

/// All `k`-subsets of the low `n` bits, in increasing numeric order
/// (Gosper's next-combination step).
#[derive(Debug, Clone)]
pub struct SameWeightSubsets {
    next: Option<u64>,
    limit: u64,
}

impl SameWeightSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= HARD_CAP && k <= n);
        let limit = 1u64 << n;
        let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
        Self {
            next: Some(first),
            limit,
        }
    }
}

impl Iterator for SameWeightSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let x = self.next?;
        self.next = if x == 0 {
            None
        } else {
            let low = x & x.wrapping_neg();
            let ripple = x + low;
            let succ = (((ripple ^ x) >> 2) / low) | ripple;
            (succ < self.limit).then_some(succ)
        };
        Some(x)
    }
}

/// `k`-subsets of the bits of `pool`, as masks over the full universe.
fn subsets_of_pool(pool: u64, k: usize) -> impl Iterator<Item = u64> {
    let positions: Vec<u32> = (0..64).filter(|&b| pool >> b & 1 == 1).collect();
    SameWeightSubsets::new(positions.len(), k).map(move |sel| {
        let mut out = 0u64;
        let mut rest = sel;
        while rest != 0 {
            out |= 1u64 << positions[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    })
}

/// Maximum PDS by exhaustive enumeration.
pub fn max_pds_exact(g: &Graph, opts: ExactOptions) -> Result<ExactResult> {
    let mg = MaskGraph::new(g, opts.cap)?;
    let n = g.n();
    let top = pds_size_upper_bound(g).min(n - 1);
    let mut examined = 0u64;
    for size in (2..=top).rev() {
        let mut found: Vec<u64> = Vec::new();
        for mask in SameWeightSubsets::new(n, size) {
            examined += 1;
            if mg.is_pds(mask) && (!opts.connected_only || mg.is_connected(mask)) {
                found.push(mask);
                if !opts.all_optima {
                    break;
                }
            }
        }
        if let Some(&first) = found.first() {
            return Ok(ExactResult {
                size,
                witness: VertexSet::from_mask(n, first),
                all_optima: opts
                    .all_optima
                    .then(|| found.iter().map(|&m| VertexSet::from_mask(n, m)).collect()),
                subsets_examined: examined,
            });
        }
    }
    Err(Error::NoPds)
}

/// Some PDS of size at least `k`, if one exists.
pub fn pds_of_size_at_least(g: &Graph, k: usize, cap: usize) -> Result<Option<VertexSet>> {
    let mg = MaskGraph::new(g, cap)?;
    let n = g.n();
    let top = pds_size_upper_bound(g).min(n - 1);
    for size in (k.max(2)..=top).rev() {
        if let Some(mask) = SameWeightSubsets::new(n, size).find(|&m| mg.is_pds(m)) {
            return Ok(Some(VertexSet::from_mask(n, mask)));
        }
    }
    Ok(None)
}

/// PDS Extension: some `S ⊋ u_set` with `2 ≤ |S| < n` inducing a PDS.
/// Smaller extensions are tried first.
pub fn pds_extension(g: &Graph, u_set: &VertexSet, cap: usize) -> Result<Option<VertexSet>> {
    u_set.ensure_universe(g)?;
    let mg = MaskGraph::new(g, cap)?;
    let n = g.n();
    let base = u_set.to_mask().expect("n <= 63");
    let pool = !base & ((1u64 << n) - 1);
    let base_len = u_set.len();
    for extra in 1..=pool.count_ones() as usize {
        let size = base_len + extra;
        if size >= n {
            break;
        }
        if size < 2 {
            continue;
        }
        if let Some(add) = subsets_of_pool(pool, extra).find(|&a| mg.is_pds(base | a)) {
            return Ok(Some(VertexSet::from_mask(n, base | add)));
        }
    }
    Ok(None)
}

/// Maximum independent set by include/exclude branching over bitmasks.
pub fn max_independent_set_exact(g: &Graph, cap: usize) -> Result<(usize, VertexSet)> {
    let mg = MaskGraph::new(g, cap)?;
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let best = mis_branch(&mg, all);
    Ok((
        best.count_ones() as usize,
        VertexSet::from_mask(g.n(), best),
    ))
}

fn mis_branch(mg: &MaskGraph, candidates: u64) -> u64 {
    if candidates == 0 {
        return 0;
    }
    let v = candidates.trailing_zeros() as usize;
    let bit = 1u64 << v;
    let with = bit | mis_branch(mg, candidates & !bit & !mg.adj[v]);
    // An isolated candidate is always taken.
    if mg.adj[v] & candidates == 0 {
        return with;
    }
    let without = mis_branch(mg, candidates & !bit);
    if without.count_ones() > with.count_ones() {
        without
    } else {
        with
    }
}
