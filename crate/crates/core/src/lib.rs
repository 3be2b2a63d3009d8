//! Exact computations for Turán-type extremal problems on distance-k graphs.
//!
//! The crate provides a small bitset graph type with the distance-k
//! transform, canonical labelling and graph6 I/O ([`graph`], [`distance`],
//! [`canon`], [`graph6`]), deterministic builders for the extremal families
//! and closed-form bounds ([`constructions`]), an isomorph-free exhaustive
//! search engine ([`search`]) and the verification harness behind the
//! `distk` command-line tool ([`harness`]).

pub mod canon;
pub mod clique;
pub mod constructions;
pub mod distance;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod search;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm};
pub use clique::clique_number;
pub use distance::{all_pairs_distances, distance_k_graph, DistanceMatrix};
pub use error::{BoundError, ConstructionError, Graph6Error, GraphError, SearchError};
pub use graph::{Graph, MAX_VERTICES};
