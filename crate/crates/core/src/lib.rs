//! Computable content of local higher Lagrangian mutation.
//!
//! - [`algebra`]: exact Laurent algebra, mutation of potentials and local systems.
//! - [`geometry`]: planar paths in ℂ*, the one-form λₙ, torus segments.
//! - [`index`]: Fredholm index and virtual-dimension bookkeeping.
//! - [`elementary`]: the explicit elementary holomorphic sections and disc counts.
//! - [`floer`]: holonomy-weighted Floer complexes.
//! - [`broken`]: combinatorial types of broken strips and discs and their rigidity.

pub mod algebra;
pub mod broken;
pub mod elementary;
mod error;
pub mod floer;
pub mod geometry;
pub mod index;

pub use error::{Error, Result};
