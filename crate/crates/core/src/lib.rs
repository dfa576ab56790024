//! Exact enumeration of chord diagrams on any number of backbones, classified
//! by genus and boundary spectra, with independent cross-checks.
//!
//! The primary engine is [`evolution`]: generating functions are built one
//! chord at a time by applying differential operators to exact sparse
//! series. [`oracle`] enumerates diagrams by brute force, [`matrix_model`]
//! samples Gaussian matrix integrals, [`freeprob`] computes planar limits
//! through free-probability transforms and [`kp`] checks the integrable
//! structure of the generating functions.

pub mod checks;
pub mod complete;
pub mod diagram_type;
pub mod error;
pub mod evolution;
pub mod freeprob;
pub mod kp;
pub mod matrix_model;
pub mod oracle;
pub mod poly;
pub mod power_series;
pub mod series;
pub mod spectrum;

pub use diagram_type::{validate_type, DiagramType, Orientability};
pub use error::{Error, Result};
pub use series::{Key, Series};
pub use spectrum::Spectrum;
