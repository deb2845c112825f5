//! Exact vertex and extreme-direction enumeration for the polyhedron of
//! negative-weight flows `P(G,w)`, and the CNF reduction showing that
//! deciding completeness of a vertex list is hard even for 0/1-polyhedra.
//!
//! Vertices of `P(G,w)` correspond to negative cycles; its extreme
//! directions correspond to zero-weight cycles and 2-cycles. The
//! [`characterize`] module builds both sets from cycles and checks them
//! against the constraint-level oracle in [`polyhedra`].

pub mod characterize;
pub mod cycles;
pub mod generators;
pub mod graph;
pub mod linalg;
pub mod polyhedra;
pub mod rational;
pub mod reduction;

pub use characterize::{
    directions_from_cycles, verify_theorem1, vertices_from_negative_cycles, CharacterizationReport,
};
pub use cycles::{
    classify, decompose_circulation, enumerate_cycles, enumerate_two_cycles, is_two_cycle, Cycle,
    CycleDecomposition, CycleFamilies, CyclesError, SignClass, TwoCycle, TwoCycleShape,
};
pub use graph::{Arc, ArcId, ArcVector, GraphError, NodeId, WeightedDigraph};
pub use polyhedra::{
    build_p, build_p_prime, is_feasible_point, oracle_extreme_directions, oracle_vertices, HRep,
    PolyError, VertexSet,
};
pub use rational::{format_rational, parse_rational, Rational};

/// Default cap on enumerated cycles (and on negative/positive cycle pairs).
pub const DEFAULT_CYCLE_CAP: usize = 100_000;
