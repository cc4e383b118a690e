//! Combinatorics of symplectic quotient singularities `ℂ²ⁿ/(Γ ≀ Sₙ)` for
//! cyclic `Γ`:
//!
//! * [`wreath`]: group arithmetic in `Γ ≀ Sₙ` and the census of elements by
//!   fixed-space codimension;
//! * [`configuration`]: the labeled intersection graph of the central fiber
//!   of `Hilb²(S) → (ℂ²/Γ)^(2)` for `Γ` of type `A_k`, rewritten by Mukai
//!   flops;
//! * [`explorer`]: breadth-first enumeration of all configurations reachable
//!   by flops, with canonical keys ([`canonical`]) and shortest flop paths;
//! * [`export`]: DOT and JSON output.

pub mod canonical;
pub mod configuration;
pub mod error;
pub mod explorer;
pub mod export;
pub mod wire;
pub mod wreath;

pub use canonical::{canonical_key, CanonicalKey, KeyMode};
pub use configuration::{
    initial_configuration, initial_configuration_with, Configuration, Edge, EdgeKind, FlopMove, InitialAdjacency,
    VertexId, VertexLabel,
};
pub use error::{Error, Result};
pub use explorer::{explore, DeadArc, ExploreOptions, FlopArc, FlopGraph};
pub use export::Format;
pub use wreath::{census, census_bounded, CensusReport, GroupParams, WreathElement};
