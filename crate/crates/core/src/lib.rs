//! Matching invariants of finite simple graphs.
//!
//! Exact solvers for the matching number, the minimum maximal matching
//! number and the induced matching number; builders for three extremal
//! graph families; the realizability test for invariant triples on connected
//! graphs; edge-ideal regularity via Hochster's formula; and an exhaustive
//! verification harness for small vertex counts.

pub mod families;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod realizability;
pub mod regularity;
pub mod verifier;

pub use families::{build_family, predict_invariants, FamilyError, FamilySpec};
pub use graph::{Block, Edge, Graph, GraphError, StandardGraph, VertexSet};
pub use invariants::{
    ind_match_number, invariant_triple, match_number, min_match_number, InvariantTriple, Matching,
};
pub use realizability::{
    feasible_set, is_feasible, synthesize_witness, Infeasibility, TupleQuery, WitnessReport,
};
pub use regularity::{regularity, RegularityResult};
