//! Numerical companion for the `L^p` spectrum of rank-one cusps.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod manifold;
pub mod model_operator;
pub mod quadrature;
pub mod quasimode;
pub mod region;
pub mod root_datum;

pub use error::{Error, Result};

/// A point of the complex spectral plane.
pub type ComplexPoint = num_complex::Complex64;
