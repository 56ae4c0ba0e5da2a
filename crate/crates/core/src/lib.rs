//! Exact solution of the dissipative BCS-Hubbard Liouvillian.
//!
//! Spinless fermions with nearest-neighbor hopping `t`, staggered pairing
//! `Δ` and on-site dephasing `γ` on a bipartite hypercubic lattice. At
//! `t = Δ` the Liouvillian splits into `2^N` sectors labeled by conserved
//! charges `D_l = ±1`, each a free-fermion problem with an `N×N`
//! single-particle matrix.
//!
//! * [`lattice`] builds the lattice graph.
//! * [`sector`] solves a single sector.
//! * [`oracle`] brute-forces the full many-body Liouvillian on small
//!   lattices for cross-validation.
//! * [`effective`] holds the large-γ spin model and closed-form asymptotes.
//! * [`gap`] scans Liouvillian gaps over sector families.
//! * [`cli`] backs the `bcsl` binary.

pub mod cli;
pub mod effective;
pub mod error;
pub mod gap;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod sector;

pub use error::{Error, Result};
pub use lattice::{build_lattice, Boundary, LatticeGraph, LatticeSpec};
pub use linalg::C64;
pub use sector::{ModelParams, SectorConfig, SectorSpectrum};
