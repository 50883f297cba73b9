//! The proportional-density predicate and degree-based size bounds.
//!
//! A set `S` with `2 ≤ |S| < n` induces a PDS when every `u ∈ S` satisfies
//! `d_S(u) · |S̄| ≥ d_S̄(u) · (|S| − 1)`. Everything here is integer
//! cross-multiplication; no floating point is involved.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact;
use crate::graph::Graph;
use crate::set::VertexSet;

/// A vertex of `S` that violates the proportion condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertex: usize,
    /// `d_S(v)`
    pub inside: usize,
    /// `d_S̄(v)`
    pub outside: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdsVerdict {
    pub holds: bool,
    /// Every unsatisfied vertex, in ascending id order.
    pub unsatisfied: Vec<Witness>,
}

/// `d_S(u) · |S̄| ≥ d_S̄(u) · (|S| − 1)` for raw counts.
#[inline]
pub fn satisfies(inside: usize, outside: usize, set_len: usize, n: usize) -> bool {
    (inside as u128) * ((n - set_len) as u128) >= (outside as u128) * ((set_len - 1) as u128)
}

fn check_size(s: &VertexSet, g: &Graph) -> Result<()> {
    s.ensure_universe(g)?;
    if s.len() < 2 || s.len() >= g.n() {
        return Err(Error::InvalidSubsetSize {
            size: s.len(),
            n: g.n(),
        });
    }
    Ok(())
}

pub fn is_satisfied(g: &Graph, s: &VertexSet, u: usize) -> Result<bool> {
    check_size(s, g)?;
    if !s.contains(u) {
        return Err(Error::NotMember(u));
    }
    let inside = s.degree_into(g, u);
    Ok(satisfies(inside, g.degree(u) - inside, s.len(), g.n()))
}

pub fn check_pds(g: &Graph, s: &VertexSet) -> Result<PdsVerdict> {
    check_size(s, g)?;
    let unsatisfied: Vec<Witness> = s
        .iter()
        .filter_map(|u| {
            let inside = s.degree_into(g, u);
            let outside = g.degree(u) - inside;
            (!satisfies(inside, outside, s.len(), g.n())).then_some(Witness {
                vertex: u,
                inside,
                outside,
            })
        })
        .collect();
    Ok(PdsVerdict {
        holds: unsatisfied.is_empty(),
        unsatisfied,
    })
}

/// Shorthand for `check_pds(..).holds`, with out-of-range sizes mapped to `false`.
pub fn is_pds(g: &Graph, s: &VertexSet) -> bool {
    check_pds(g, s).map(|v| v.holds).unwrap_or(false)
}

/// `⌊(n·(Δ−1)+1)/Δ⌋`: no PDS of a connected graph is larger.
pub fn pds_size_upper_bound(g: &Graph) -> usize {
    let delta = g.max_degree().max(1);
    (g.n() * (delta - 1) + 1) / delta
}

/// Whether no strict superset `S' ⊋ S` with `|S'| < n` induces a PDS.
/// Exhaustive; the instance must fit under `cap`.
pub fn is_inclusionwise_maximal(g: &Graph, s: &VertexSet, cap: usize) -> Result<bool> {
    if !check_pds(g, s)?.holds {
        return Err(Error::NotAPds);
    }
    Ok(exact::pds_extension(g, s, cap)?.is_none())
}
