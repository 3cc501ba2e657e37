//! Exact Chern character cocycles for vector bundles given by local data.

pub mod cech;
pub mod chern;
pub mod connect;
pub mod error;
pub mod forms;
pub mod manifest;
pub mod random;
pub mod report;
pub mod scalar;
pub mod simplex;
pub mod unsym;
pub mod verify;

pub use error::{Error, Result};
