//! Multi-gauge cavity-QED eigensolver.
//!
//! One charged particle in a 1D potential (or periodic lattice) coupled to a
//! truncated set of cavity modes, represented in the Pauli–Fierz, p·A,
//! asymptotically-decoupled (AD) and reciprocal AD (RAD) frames.

pub mod config;
pub mod error;
pub mod hamiltonians;
pub mod matter;
pub mod observables;
pub mod operators;
pub mod runner;
pub mod scalar;
pub mod transforms;

pub use error::{Error, Result};
pub use scalar::Real;

/// Reduced Planck constant. Atomic units; every formula keeps ħ symbolic.
pub const HBAR: f64 = 1.0;

pub type C64 = num_complex::Complex64;

// concrete aliases for the scalar-generic frame transforms
pub type Bogoliubov = transforms::BogoliubovResult<f64>;
pub type Mode = transforms::CavityMode<f64>;
pub type Dispersion = transforms::Dispersion<f64>;
