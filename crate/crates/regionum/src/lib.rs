//! Exact combinatorics of knot diagrams.
//!
//! A [`diagram::Diagram`] is a combinatorial map built from a PD code. On top
//! of it this crate computes checkerboard shadings and the GF(2) incidence
//! system between regions and crossings ([`region_algebra`]), Goeritz
//! matrices with Smith normal forms ([`goeritz`], [`snf`]), Kauffman-bracket
//! unknot certificates ([`invariants`]), and the exhaustive multi-region
//! index search with its theorem-derived bound brackets ([`search`]).

pub mod diagram;
pub mod goeritz;
pub mod invariants;
pub mod laurent;
pub mod region_algebra;
pub mod search;
pub mod snf;

pub use diagram::{Diagram, DiagramError, Region};
pub use invariants::{is_unknot, UnknotCertificate, Verdict};
pub use region_algebra::{checkerboard_shade, incidence_system, Shading};
pub use search::{mri_of_diagram, SearchConfig, SearchResult};

/// Diagrams above this crossing count are rejected by the exponential-cost
/// operations (bracket state sums, target enumeration) unless a caller
/// raises the cap explicitly.
pub const DEFAULT_CROSSING_CAP: usize = 16;

/// Kernel dimensions above this make coset enumeration infeasible.
pub const DEFAULT_KERNEL_CAP: u32 = 20;
