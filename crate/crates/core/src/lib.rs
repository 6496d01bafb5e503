//! Combinatorial curve systems and the periodic parallelogram tilings they describe.
//!
//! The crate is organised along the pipeline:
//!
//! - [`ccs`] parses and validates combinatorial curve systems, rebuilds the
//!   surface they define (borders, face loops, genus) and applies Rototiler moves.
//! - [`homology`] computes the generalized intersection matrix, its exact rank,
//!   integral homology coordinates, essentiality and the spectral pair.
//! - [`geometry`] works with edge data: admissibility, zone vectors, the period
//!   lattice, the area form, canonical edge data, deformations and boundary strata.
//! - [`tiler`] develops an essential genus-1 system into a fundamental domain of
//!   parallelograms and exports periodic patches as SVG or JSON.
//! - [`generate`] draws random valid (optionally essential) systems.
//!
//! Batch workloads (deformation sampling, patch replication, sweeps) run through
//! [`exec::Strategy`], which uses rayon when the `parallel` feature is enabled and
//! falls back to plain iterators otherwise.

pub mod ccs;
pub mod error;
pub mod exec;
pub mod generate;
pub mod geometry;
pub mod homology;
pub mod json;
pub mod tiler;

pub use ccs::{Border, Curve, CurveSystem, FaceLoop, SignedLabel, SurfaceReport};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use geometry::{EdgeData, LatticeBasis, RealLinearMap};
pub use homology::{HomologyCoordinates, IntersectionMatrix, SpectralPair};
pub use num_complex::Complex64;
pub use tiler::{FundamentalDomain, TilingPatch};
