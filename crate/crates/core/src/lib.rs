//! Exact q-series arithmetic, lattice-path models and identity checking for
//! finite and infinite Andrews-Gordon type identities.
//!
//! All coefficients are exact integers. Infinite series are handled as
//! truncations with an explicit order, and every comparison is exact.

pub mod bressoud_paths;
pub mod content;
pub mod error;
pub mod exec;
pub mod gordon_paths;
pub mod identity_engine;
pub mod q_gadgets;
pub mod selftest;
pub mod series_core;

pub use content::ParticleContent;
pub use error::{Error, Result};
pub use exec::Execution;
pub use series_core::{ExactInt, LaurentPoly, TruncatedSeries};
