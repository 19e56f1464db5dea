//! Computation of the 3-admissibility of sparse graphs.
//!
//! The central routine decides whether `adm_3(G) <= p` by greedily peeling
//! vertices whose maximum rooted packing of vertex-disjoint paths of length
//! at most three (into the not-yet-peeled part) has size at most `p`. An
//! incremental oracle maintains candidate vertices, rooted path packings and
//! a store of connecting vertices so that each peel touches only a small
//! neighborhood. Exact reference implementations (flow based and a separate
//! exhaustive enumerator) back the fast path in the test suite.
//!
//! Entry points:
//! - [`driver::decide`] — is `adm_3(G) <= p`?
//! - [`driver::compute_value`] — smallest such `p`, with witness ordering.
//! - [`graph::load_edge_list`] — edge-list ingestion (plain or gzip).
//! - [`reference`] — slow exact oracles for `r ∈ {1,2,3}`.

pub mod checks;
pub mod driver;
pub mod error;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod packing;
pub mod partition;
pub mod reference;
pub mod vias;

pub use error::Error;
pub use graph::{degeneracy, load_edge_list, load_edge_list_path, Graph, LoadedGraph, Vertex};
pub use partition::{Partition, Side};
