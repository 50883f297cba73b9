//! Solvers for the maximum proportionally dense subgraph problem.
//!
//! A vertex set `S` with `2 ≤ |S| < n` induces a proportionally dense
//! subgraph (PDS) when every `u ∈ S` has `d_S(u)/(|S|−1) ≥ d(u)/(n−1)`.
//!
//! * [`pds`]: the predicate, witnesses and size bounds.
//! * [`exact`]: bitmask enumeration for desk-scale instances.
//! * [`approx`]: the local-move algorithm reaching `⌈n/2⌉`.
//! * [`reductions`]: the split and bipartite constructions from independent set.
//! * [`hamiltonian`]: the linear-time construction on Hamiltonian cubic graphs.
//! * [`generators`]: fixtures, random instances and exhaustive enumeration.

pub mod approx;
pub mod bench;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod hamiltonian;
pub mod pds;
pub mod reductions;
pub mod set;

pub use error::{Error, Result};
pub use graph::{parse_graph, Graph};
pub use pds::{check_pds, is_pds, PdsVerdict};
pub use set::VertexSet;
