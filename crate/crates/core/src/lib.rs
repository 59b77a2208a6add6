//! Coherent (continuous-time quantum walk) and classical (continuous-time
//! random walk) transport on deterministic two-dimensional Apollonian
//! networks.
//!
//! The pipeline is always the same: build a [`Network`], take its
//! Laplacian as the [`Hamiltonian`], diagonalize it once into a
//! [`Spectrum`], and evaluate every transport quantity from the eigenpairs.
//!
//! ```
//! use apollonian_walk::prelude::*;
//!
//! let net = Network::generate(2)?;
//! let spectrum = eigendecompose(&net.laplacian())?;
//! let snap = quantum_probability(&spectrum, 4, std::f64::consts::PI / 7.0)?;
//! assert!((snap.at(4) - 25.0 / 49.0).abs() < 1e-12);
//! # Ok::<(), apollonian_walk::Error>(())
//! ```
//!
//! Runnable walkthroughs live in the crate's `examples/` directory; the
//! `apollonian-walk` binary exposes the same pipeline as subcommands.

pub mod cli;
pub mod closed_form;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod io;
pub mod jacobi;
pub mod spectral;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{CornerPermutation, Network, NodePermutation, OrbitPartition};
pub use spectral::{EigenspaceGrouping, Hamiltonian, Spectrum};

pub mod prelude {
    pub use crate::closed_form::{closed_form_g1, closed_form_g2};
    pub use crate::dynamics::{
        classical_probability, evolve_series, limiting_matrix, limiting_probability,
        max_return_probability, quantum_amplitude, quantum_probability, return_probability,
        time_averaged_probability, LimitingMatrix, Revival, TimeGrid, TransitionSnapshot,
        WalkKind,
    };
    pub use crate::graph::{
        corner_orbits, orbits, CornerPermutation, Network, NodePermutation, OrbitPartition,
    };
    pub use crate::spectral::{
        eigendecompose, eigendecompose_with, group_degenerate, group_degenerate_default,
        EigenSolver, EigenspaceGrouping, Hamiltonian, Spectrum,
    };
    pub use crate::symmetry::{
        analyze_source, cluster_equal_limits, localization_summary, orbit_consistency,
        ChiClustering, ClusterReport, Localization, OrbitConsistency,
        DEFAULT_CLUSTER_TOLERANCE,
    };
}
