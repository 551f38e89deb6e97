//! Exact symbolic computations in the extended reflection equation algebra
//! of gl(n): Hecke symmetry and quantum trace, truncated normal forms, the
//! center and its characters, and quantized semisimple orbits.

pub mod center;
pub mod ere;
pub mod error;
pub mod orbit;
pub mod qla;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod theta;

pub use error::{Error, Result};
