//! Slicer map lattice transport: exact interval-measure evolution, closed-form
//! coarse-grained distributions and moments, Monte Carlo ensembles, and the
//! quenched-disorder Lévy walk the map is compared against.
//!
//! The library is organized around the pipeline
//! [`map`] → [`measure`] / [`closed_form`] → [`ensemble`] → [`analysis`],
//! with [`levy`] providing the stochastic reference process.

pub mod analysis;
pub mod closed_form;
pub mod ensemble;
pub mod kahan;
pub mod levy;
pub mod map;
pub mod measure;
pub mod rng;

pub use map::{LatticePoint, SlicerFamily};
