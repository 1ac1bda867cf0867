//! Hamiltonian graphs with no two cycles of the same length.
//!
//! The pipeline: a Singer perfect difference set in `Z_{q^2+q+1}`
//! ([`singer`]) is translated into a distinct cycle set `S` ([`cycleset`]),
//! whose graph `G_n(S)` ([`graph`]) has `q^2 + 2q` edges and no repeated cycle
//! length. [`oracle`] re-checks such graphs by brute-force cycle enumeration,
//! and [`search`] computes the exact extremal edge count for small `n`.

pub mod arith;
pub mod cycleset;
pub mod finite_field;
pub mod graph;
pub mod oracle;
pub mod search;
pub mod singer;

pub use cycleset::{derive_cycle_set, verify_distinct_cycle_set, Derivation, DistinctCycleSet};
pub use finite_field::{FieldElement, FieldSpec, Polynomial};
pub use graph::{build_graph, predicted_spectrum, ChordedCycleGraph, CycleSpectrum, GraphFormat};
pub use oracle::{enumerate_cycles, has_repeated_length, BoundReport};
pub use search::{exact_g, max_single_vertex_chords, ExactResult};
pub use singer::{singer_difference_set, PerfectDifferenceSet};
