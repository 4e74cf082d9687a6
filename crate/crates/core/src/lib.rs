//! Zonal valuations on convex bodies of revolution.

pub mod error;
pub mod bodies;
pub mod kernel;
pub mod measures;
pub mod special;
pub mod transforms;
pub mod valuations;
pub mod integral_geometry;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
