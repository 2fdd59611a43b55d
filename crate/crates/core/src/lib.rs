//! Randomized search heuristics for the Euclidean TSP together with the
//! planar geometry and exact oracles needed to study them.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its arguments and an explicit seed; file formats, the CLI
//! and the experiment harness live in the `tsp-lab` companion crate.
//!
//! Module map:
//!
//! * [`geom`] exact integer orientation, proper crossings, convex hull,
//!   angle/distance metrics and the grid angle bound.
//! * [`instance`] validated point sets and seeded generators.
//! * [`tour`] permutations as Hamiltonian cycles: inversions, jumps,
//!   crossings, hull order, 2-opt local optimality, canonical identity.
//! * [`search`] Poisson 2-opt and mixed mutation, RLS and the (μ+λ) EA.
//! * [`oracle`] brute force, Held–Karp and hull-order enumeration.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod geom;
pub mod instance;
pub mod oracle;
pub mod rng;
pub mod search;
pub mod tour;

pub use error::Error;
pub use geom::{InstanceMetrics, Point};
pub use instance::Instance;
pub use oracle::{OracleMethod, OracleResult};
pub use search::{EaConfig, MutationKind, MutationSpec, RlsConfig, StateClass, Trajectory};
pub use tour::Tour;

pub type Result<T> = core::result::Result<T, Error>;
